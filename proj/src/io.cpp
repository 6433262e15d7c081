#include "dtlab/io.hpp"

#include <istream>
#include <string>
#include <vector>

#include "dtlab/errors.hpp"

namespace dtlab {

namespace {

template <typename Fn>
auto parsing(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

}  // namespace

namespace {

Json node_to_json(const DecisionTree& t, DecisionTree::NodeId id) {
  const auto& n = t.node(id);
  if (n.is_leaf()) return Json{{"leaf", n.label ? 1 : 0}};
  return Json{{"q", n.query}, {"0", node_to_json(t, n.child[0])}, {"1", node_to_json(t, n.child[1])}};
}

void node_from_json(const Json& j, DecisionTree& t, DecisionTree::NodeId id) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "tree node must be an object");
  if (j.contains("leaf")) {
    t.set_label(id, j.at("leaf").get<int>() != 0);
    return;
  }
  const auto [a, b] = t.split_leaf(id, j.at("q").get<std::size_t>());
  node_from_json(j.at("0"), t, a);
  node_from_json(j.at("1"), t, b);
}

}  // namespace

Json tree_to_json(const DecisionTree& t) { return node_to_json(t, 0); }

DecisionTree tree_from_json(const Json& j, std::optional<std::size_t> width) {
  return parsing("tree", [&] {
    DecisionTree t;
    node_from_json(j, t, 0);
    if (width) t.validate(*width);
    return t;
  });
}

Json fn_to_json(const PartialFn& f) {
  Json points = Json::array();
  for (const auto& p : f.points()) points.push_back(Json{{"x", p.x.to_string()}, {"label", p.label ? 1 : 0}});
  return points;
}

PartialFn fn_from_json(const Json& j, std::size_t width) {
  return parsing("function", [&] {
    std::vector<Point> points;
    for (const auto& p : j) {
      points.push_back({BitVector::from_string(p.at("x").get<std::string>()), p.at("label").get<int>() != 0});
    }
    return PartialFn(width, std::move(points));
  });
}

Json pmf_to_json(const Pmf& pmf) {
  Json masses = Json::array();
  for (const auto& m : pmf.support()) masses.push_back(Json{{"x", m.x.to_string()}, {"p", to_string(m.p)}});
  return masses;
}

Pmf pmf_from_json(const Json& j) {
  return parsing("pmf", [&] {
    std::vector<Mass> masses;
    for (const auto& m : j) {
      masses.push_back({BitVector::from_string(m.at("x").get<std::string>()), parse_rational(m.at("p").get<std::string>())});
    }
    return Pmf(std::move(masses));
  });
}

Json report_to_json(const BoundReport& rep) {
  Json j{{"name", rep.name}};
  if (rep.applicable) {
    j["lhs"] = to_string(rep.lhs);
    j["relation"] = std::string(to_string(rep.relation));
    j["rhs"] = to_string(rep.rhs);
    j["holds"] = rep.holds;
  } else {
    j["applicable"] = false;
  }
  j["context"] = rep.context;
  return j;
}

Json params_to_json(const ReductionParams& p) {
  return Json{{"delta", to_string(p.delta)},
              {"delta_prime", to_string(p.delta_prime)},
              {"eps", to_string(p.eps)},
              {"alpha", to_string(p.alpha)},
              {"d", p.d},
              {"k", p.k},
              {"m", p.m},
              {"n", p.n},
              {"ell", p.ell},
              {"r", p.r},
              {"amplification", to_string(p.amplification)},
              {"s", p.s.str()}};
}

Json transcript_to_json(const VcTranscript& t) {
  Json j{{"mode", std::string(to_string(t.mode))},
         {"learner", std::string(to_string(t.learner))},
         {"n", t.n},
         {"m", t.m},
         {"k", t.k},
         {"d", t.d}};
  if (t.degree_precheck_no) {
    j["degree_precheck_no"] = true;
    j["decision"] = "NO";
    return j;
  }
  j["params"] = params_to_json(t.params);
  j["gadget_width"] = t.gadget_width;
  j["size_threshold"] = to_string(t.size_threshold);
  j["hypothesis_size"] = t.hypothesis_size;
  j["learner_method"] = t.learner_method;
  j["learner_flagged"] = t.learner_flagged;
  j["learner_budget_exhausted"] = t.learner_budget_exhausted;
  j["learner_steps"] = t.learner_steps;
  j["error_mode"] = t.error_mode;
  if (t.error_mode == "exact") {
    j["support_points"] = t.support_points;
    j["eps_hyp"] = to_string(t.eps_hyp);
  } else {
    j["mc_estimate_decimal"] = t.mc_estimate;
    j["mc_half_width_decimal"] = t.mc_half_width;
    j["mc_samples"] = t.mc_samples;
  }
  j["decision"] = t.yes ? "YES" : "NO";
  return j;
}

Json instance_to_json(const DatasetMinInstance& inst) {
  return Json{{"width", inst.domain.width()},
              {"eps", to_string(inst.eps)},
              {"s", inst.s},
              {"s_prime", inst.s_prime},
              {"tree", tree_to_json(inst.tree)},
              {"domain", fn_to_json(inst.domain)},
              {"pmf", pmf_to_json(inst.pmf)}};
}

DatasetMinInstance instance_from_json(const Json& j) {
  return parsing("instance", [&] {
    DatasetMinInstance inst;
    const auto width = j.at("width").get<std::size_t>();
    inst.eps = parse_rational(j.at("eps").get<std::string>());
    inst.s = j.at("s").get<std::size_t>();
    inst.s_prime = j.at("s_prime").get<std::size_t>();
    inst.tree = tree_from_json(j.at("tree"), width);
    inst.domain = fn_from_json(j.at("domain"), width);
    inst.pmf = pmf_from_json(j.at("pmf"));
    if (!inst.pmf.supported_by(inst.domain)) throw Error(ErrorCode::SupportMismatch, "pmf mass outside the domain");
    if (inst.s == 0 || inst.s_prime < inst.s) throw Error(ErrorCode::InvalidArgument, "need s' >= s >= 1");
    return inst;
  });
}

Json read_json(std::istream& in) {
  return parsing("json", [&] { return Json::parse(in); });
}

}  // namespace dtlab
