#include "dtlab/suites.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <sstream>

#include "dtlab/errors.hpp"
#include "dtlab/generate.hpp"

namespace dtlab {

namespace {

using Reports = std::vector<BoundReport>;

void append(Reports& out, Reports more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

BoundReport tagged(BoundReport rep, std::size_t index) {
  rep.context = "case " + std::to_string(index) + ": " + rep.context;
  return rep;
}

BoundReport exactness(std::string name, const DecisionTree& t, const PartialFn& f, std::size_t index) {
  return make_report(std::move(name), is_exact_on(t, f) ? 1 : 0, Relation::Eq, 1,
                     "case " + std::to_string(index) + ": size " + std::to_string(t.size()));
}

PartialFn nonconstant_fn(CounterRng& rng, std::size_t width, std::size_t max_points) {
  for (;;) {
    auto f = random_partial_fn(rng, width, max_points);
    if (!f.is_constant()) return f;
  }
}

std::vector<BitVector> random_subset(CounterRng& rng, const std::vector<BitVector>& xs) {
  std::vector<BitVector> out;
  for (const auto& x : xs) {
    if (rng.coin()) out.push_back(x);
  }
  return out;
}

Graph single_edge() { return Graph(2, {{0, 1}}); }
Graph k3() { return gen_graph(GraphKind::Complete, 3, 0); }

// Suites ---------------------------------------------------------------------

Reports savicky_pairs(std::size_t trials, CounterRng rng) {
  DtOracle oracle;
  Reports out;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::vector<PartialFn> fs{random_partial_fn(rng, 1 + rng.below(4), 10),
                                    random_partial_fn(rng, 1 + rng.below(4), 10)};
    out.push_back(tagged(check_savicky(fs, oracle), i));
  }
  return out;
}

Reports savicky_triples(std::size_t trials, CounterRng rng) {
  DtOracle oracle;
  Reports out;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::vector<PartialFn> fs{random_partial_fn(rng, 1 + rng.below(3), 6),
                                    random_partial_fn(rng, 1 + rng.below(3), 6),
                                    random_partial_fn(rng, 1 + rng.below(3), 6)};
    out.push_back(tagged(check_savicky(fs, oracle), i));
  }
  return out;
}

Reports hard_dist_plain(std::size_t trials, CounterRng rng) {
  Reports out;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto f = nonconstant_fn(rng, 4, 10);
    const auto t = random_tree(rng, 4, 1 + rng.below(8));
    const auto chosen = random_subset(rng, f.ones());
    out.push_back(tagged(check_hard_dist(t, f, chosen), i));
  }
  return out;
}

Reports hard_dist_xor(std::size_t trials, CounterRng rng) {
  Reports out;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto f = nonconstant_fn(rng, 3, 6);
    const auto t = random_tree(rng, 6, 1 + rng.below(12));
    const auto chosen = random_subset(rng, f.ones());
    out.push_back(tagged(check_hard_dist_xor(t, f, chosen, 2), i));
  }
  return out;
}

Reports patchup_plain(std::size_t trials, CounterRng rng) {
  DtOracle oracle;
  Reports out;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto f = random_partial_fn(rng, 5, 14);
    const auto t = random_tree(rng, 5, 1 + rng.below(10));
    out.push_back(tagged(check_patchup(t, f, oracle), i));
    out.push_back(exactness("patchup_tree_exact", patch_up_tree(t, f), f, i));
  }
  return out;
}

// Per case: the stated per-input bound, the per-path bound, and exactness of
// the patched tree on the product domain.
Reports patchup_xor(std::size_t trials, CounterRng rng) {
  DtOracle oracle;
  Reports out;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto f = nonconstant_fn(rng, 3, 4);
    const auto t = random_tree(rng, 6, 1 + rng.below(10));
    out.push_back(tagged(check_patchup_xor(t, f, 2, oracle), i));
    out.push_back(tagged(check_patchup_xor_paths(t, f, 2, oracle), i));
    const auto product = xor_power(f, 2);
    out.push_back(exactness("patchup_xor_tree_exact", patch_up_tree(t, product), product, i));
  }
  return out;
}

Reports cutoff_all() {
  Reports out;
  for (const auto& g : {single_edge(), k3()}) {
    const Gadget gadget(g, 1);
    const auto cover = exact_vertex_cover(g).cover;
    for (std::size_t r = 2; r <= 3; ++r) {
      for (std::size_t tau = 0; tau <= r; ++tau) append(out, check_cutoff(gadget, r, tau, cover));
    }
  }
  return out;
}

Reports gadget_sensitivity(std::size_t graphs, CounterRng rng) {
  Reports out;
  for (std::size_t i = 0; i < graphs; ++i) {
    const std::size_t n = 2 + rng.below(7);
    const auto g = gen_graph(GraphKind::Random, n, rng());
    for (std::size_t ell = 1; ell <= 3; ++ell) {
      auto sub = rng.fork(i * 4 + ell);
      for (auto& rep : check_gadget_sensitivity(Gadget(g, ell), sub, 50)) out.push_back(tagged(std::move(rep), i));
    }
  }
  return out;
}

Reports coreset_monotone(std::size_t trials, CounterRng rng, std::span<const Rational> eps) {
  DtOracle oracle;
  Reports out;
  for (std::size_t i = 0; i < trials; ++i) {
    auto f = random_monotone_fn(rng, 1 + rng.below(5));
    while (f.is_constant()) f = random_monotone_fn(rng, 1 + rng.below(5));
    for (auto& rep : check_coreset(f, eps, oracle)) out.push_back(tagged(std::move(rep), i));
  }
  return out;
}

Reports prop_trials(std::size_t trials, CounterRng rng) {
  Reports out;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto delta = make_rational(static_cast<std::int64_t>(rng.below(20)), 100);
    const auto alpha = make_rational(static_cast<std::int64_t>(rng.below(10)), 100);
    const std::size_t k = 1 + rng.below(10);
    const std::size_t d = 1 + rng.below(4);
    const std::size_t m = 1 + rng.below(d * k);
    const std::size_t n = 2 + rng.below(10);
    const std::size_t ell = 1 + rng.below(200);
    // Smallest δ′ the precondition allows, plus a random positive slack.
    const auto floor_rhs = (delta + alpha) * d + delta + (1 + delta) * Rational(m * n) / Rational(k * (ell + 1));
    const auto delta_prime = floor_rhs + make_rational(1 + static_cast<std::int64_t>(rng.below(100)), 1000);
    out.push_back(tagged(prop_inequality(delta, delta_prime, alpha, ell, m, n, k, d), i));
  }
  return out;
}

Reports prop_xor_trials(std::size_t trials, CounterRng rng) {
  Reports out;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto b = make_rational(1 + static_cast<std::int64_t>(rng.below(50)), 1 + static_cast<std::int64_t>(rng.below(9)));
    const auto a =
        b + make_rational(static_cast<std::int64_t>(rng.below(50)), 1 + static_cast<std::int64_t>(rng.below(9)));
    out.push_back(tagged(prop_inequality_xor(a, b, 1 + rng.below(6)), i));
  }
  return out;
}

Reports choose_params_anchor() {
  const auto p = choose_params_kst(k3(), 2, make_rational(1, 10), 1, 0);
  return {make_report("choose_params_ell", p.ell, Relation::Eq, 7, "K3 k=2 delta=1/10 delta'=1 eps=0"),
          make_report("choose_params_s", Rational(p.s), Relation::Eq, 49, "K3 k=2 delta=1/10 delta'=1 eps=0")};
}

const std::array<std::string_view, 8> kSuites{"patchup", "harddist", "xor", "savicky", "gadget", "coreset", "params", "all"};

// Criteria ---------------------------------------------------------------------

std::size_t count_failed(const Reports& reps) {
  return static_cast<std::size_t>(std::count_if(reps.begin(), reps.end(), [](const auto& r) { return r.failed(); }));
}

std::size_t count_applicable(const Reports& reps) {
  return static_cast<std::size_t>(std::count_if(reps.begin(), reps.end(), [](const auto& r) { return r.applicable; }));
}

void collect(CriterionResult& res, const Reports& reps) {
  for (const auto& r : reps) {
    if (r.failed()) res.failures.push_back(r);
  }
}

std::string tally(const Reports& reps) {
  return std::to_string(count_applicable(reps) - count_failed(reps)) + "/" + std::to_string(count_applicable(reps));
}

std::string show(const BoundReport& r) {
  return r.name + " " + to_string(r.lhs) + " " + std::string(to_string(r.relation)) + " " + to_string(r.rhs);
}

CriterionResult criterion_savicky(CounterRng rng) {
  CriterionResult res;
  res.id = 1;
  res.title = "Savicky product";
  const auto pairs = savicky_pairs(100, rng.fork(1));
  const auto triples = savicky_triples(1, rng.fork(2));
  collect(res, pairs);
  collect(res, triples);
  res.pass = count_failed(pairs) == 0 && count_failed(triples) == 0 && pairs.size() == 100 && triples.size() == 1;
  res.summary = "pairs " + tally(pairs) + ", triple " + tally(triples) + " (" + show(triples[0]) + ")";
  return res;
}

CriterionResult criterion_gadget(CounterRng rng) {
  CriterionResult res;
  res.id = 2;
  res.title = "Gadget sensitivity";
  const auto reps = gadget_sensitivity(20, rng.fork(1));
  collect(res, reps);
  res.pass = count_failed(reps) == 0 && reps.size() == 120;
  res.summary = "20 graphs x ell 1..3: " + tally(reps) + " reports hold";
  return res;
}

CriterionResult criterion_zero_error(CounterRng) {
  CriterionResult res;
  res.id = 3;
  res.title = "Zero-error lower bound and cover tree";
  DtOracle oracle(OracleCaps{4096, 64, 100'000});
  Reports reps;
  for (std::size_t n = 2; n <= 5; ++n) {
    for (const auto& g : all_graphs(n)) {
      const auto cover = exact_vertex_cover(g).cover;
      for (std::size_t ell = 1; ell <= 2; ++ell) {
        const Gadget gadget(g, ell);
        reps.push_back(check_ell_isedge_lb_frontier(gadget, 0, oracle));
        append(reps, check_ell_isedge_ub(gadget, cover));
      }
    }
  }
  const Gadget anchor(k3(), 1);
  const auto lb = check_ell_isedge_lb_frontier(anchor, 0, oracle);
  const auto ub = check_ell_isedge_ub(anchor, exact_vertex_cover(k3()).cover);
  reps.push_back(lb);
  append(reps, ub);
  collect(res, reps);
  const bool anchors = lb.rhs == 10 && ub[0].rhs == 19;
  res.pass = count_failed(reps) == 0 && anchors;
  res.summary = "graphs n<=5, ell 1..2: " + tally(reps) + " hold; K3 anchors: " + show(lb) + ", " + show(ub[0]);
  return res;
}

CriterionResult criterion_eps_error(CounterRng) {
  CriterionResult res;
  res.id = 4;
  res.title = "Epsilon-error lower bound";
  DtOracle oracle;
  const Gadget gadget(k3(), 1);
  Reports reps;
  std::string detail;
  for (const auto& eps : {Rational(0), make_rational(1, 24), make_rational(1, 12), make_rational(1, 8)}) {
    reps.push_back(check_ell_isedge_lb_frontier(gadget, eps, oracle));
    detail += (detail.empty() ? "" : "; ") + std::string("eps=") + to_string(eps) + ": " + to_string(reps.back().lhs) +
              " >= " + to_string(reps.back().rhs);
  }
  collect(res, reps);
  res.pass = count_failed(reps) == 0;
  res.summary = "K3 ell=1: " + detail;
  return res;
}

CriterionResult criterion_hard_dist(CounterRng rng) {
  CriterionResult res;
  res.id = 5;
  res.title = "Hard-distribution bounds";
  const auto plain = hard_dist_plain(200, rng.fork(1));
  const auto xr = hard_dist_xor(50, rng.fork(2));
  const auto anchor = check_hard_dist(DecisionTree::leaf(false), Gadget(k3(), 1).hard_support());
  collect(res, plain);
  collect(res, xr);
  const bool anchored = anchor.lhs == make_rational(1, 2) && anchor.rhs == make_rational(1, 2);
  res.pass = count_failed(plain) == 0 && count_failed(xr) == 0 && anchored && plain.size() == 200 && xr.size() == 50;
  res.summary = "r=1 " + tally(plain) + ", r=2 " + tally(xr) + "; K3 constant-0 anchor " + show(anchor);
  return res;
}

CriterionResult criterion_patchup(CounterRng rng) {
  CriterionResult res;
  res.id = 6;
  res.title = "Patch-up bounds";
  const auto plain = patchup_plain(200, rng.fork(1));
  const auto xr = patchup_xor(50, rng.fork(2));
  Reports stated;
  Reports paths;
  Reports exact;
  for (const auto& rep : plain) (rep.name == "patchup" ? stated : exact).push_back(rep);
  Reports xor_stated;
  for (const auto& rep : xr) {
    if (rep.name == "patchup_xor") xor_stated.push_back(rep);
    else if (rep.name == "patchup_xor_paths") paths.push_back(rep);
    else exact.push_back(rep);
  }
  collect(res, stated);
  collect(res, xor_stated);
  collect(res, exact);
  res.pass = count_failed(stated) == 0 && count_failed(xor_stated) == 0 && count_failed(exact) == 0;
  res.summary = "r=1 " + tally(stated) + ", r=2 stated form " + tally(xor_stated) + ", patched trees exact " +
                tally(exact);
  res.notes.push_back("r=2 per-path form (supplementary): " + tally(paths));
  return res;
}

CriterionResult criterion_xor_lb(CounterRng) {
  CriterionResult res;
  res.id = 7;
  res.title = "XOR lower bound";
  DtOracle oracle(OracleCaps{512, 32, 100'000});
  const Gadget gadget(k3(), 1);
  Reports reps;
  std::string detail;
  for (const auto& eps : {Rational(0), make_rational(1, 128)}) {
    reps.push_back(check_xor_lb_frontier(gadget, 2, eps, oracle));
    detail += (detail.empty() ? "" : "; ") + std::string("eps=") + to_string(eps) + ": " + to_string(reps.back().lhs) +
              " >= " + to_string(reps.back().rhs);
  }
  collect(res, reps);
  res.pass = count_failed(reps) == 0;
  res.summary = "K3 ell=1 r=2, 225 points: " + detail;
  return res;
}

CriterionResult criterion_params(CounterRng rng) {
  CriterionResult res;
  res.id = 8;
  res.title = "Parameter inequalities";
  const auto plain = prop_trials(1000, rng.fork(1));
  const auto xr = prop_xor_trials(1000, rng.fork(2));
  const auto anchor = choose_params_anchor();
  collect(res, plain);
  collect(res, xr);
  collect(res, anchor);
  res.pass = count_failed(plain) == 0 && count_failed(xr) == 0 && count_failed(anchor) == 0 &&
             count_applicable(plain) == 1000 && count_applicable(xr) == 1000;
  res.summary = "prop_inequality " + tally(plain) + ", prop_inequality_xor " + tally(xr) + "; K3 k=2: ell=" +
                to_string(anchor[0].lhs) + " s=" + to_string(anchor[1].lhs);
  return res;
}

CriterionResult criterion_reduction(CounterRng rng) {
  CriterionResult res;
  res.id = 9;
  res.title = "End-to-end reduction";
  const auto yes_graph = k3();
  const auto no_graph = gen_graph(GraphKind::TriangleUnion, 6, 0);
  const Rational no_delta_prime = make_rational(1, 3);
  const auto yes_gap = audit_gap(yes_graph, 2, 1);
  const auto no_gap = audit_gap(no_graph, 3, no_delta_prime);

  struct Run {
    const char* label;
    const Graph* g;
    std::size_t k;
    ReductionParams params;
    ReductionMode mode;
    bool expect_yes;
  };
  const std::vector<Run> runs{
      {"plain K3 k=2", &yes_graph, 2, choose_params_kst(yes_graph, 2, make_rational(1, 10), 1, 0),
       ReductionMode::Plain, true},
      {"plain 2xK3 k=3", &no_graph, 3, choose_params_kst(no_graph, 3, make_rational(1, 1000), no_delta_prime, 0),
       ReductionMode::Plain, false},
      {"xor K3 k=2", &yes_graph, 2, choose_params_xor(yes_graph, 2, 2, make_rational(121, 100), 1, 0),
       ReductionMode::Xor, true},
      {"xor 2xK3 k=3", &no_graph, 3,
       choose_params_xor(no_graph, 3, 2, make_rational(1001 * 1001, 1000 * 1000), no_delta_prime, 0),
       ReductionMode::Xor, false},
  };
  bool ok = yes_gap == GapClass::Yes && no_gap == GapClass::GappedNo;
  std::string detail;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& run = runs[i];
    VcRunOptions options;
    options.mode = run.mode;
    options.seed = rng.fork(i)();
    auto tr = decide_vc(*run.g, run.k, run.params, options);
    const bool right = tr.yes == run.expect_yes;
    ok = ok && right;
    detail += (detail.empty() ? "" : "; ") + std::string(run.label) + " -> " + (tr.yes ? "YES" : "NO") +
              (right ? "" : " (wrong)");
    std::ostringstream note;
    note << run.label << ": ell=" << tr.params.ell << " s=" << tr.params.s << " threshold=" << to_string(tr.size_threshold)
         << " |T_hyp|=" << tr.hypothesis_size << " method=" << tr.learner_method
         << (tr.learner_flagged ? " flagged" : "") << " eps_hyp=" << to_string(tr.eps_hyp);
    res.notes.push_back(note.str());
    res.transcripts.push_back(std::move(tr));
  }
  res.notes.push_back("gap audit: K3 k=2 " + std::string(to_string(yes_gap)) + ", 2xK3 k=3 delta'=1/3 " +
                      std::string(to_string(no_gap)));
  res.pass = ok;
  res.summary = detail;
  return res;
}

CriterionResult criterion_coreset(CounterRng rng) {
  CriterionResult res;
  res.id = 10;
  res.title = "Coreset";
  const std::vector<Rational> eps{0, make_rational(1, 16)};
  const auto reps = coreset_monotone(30, rng.fork(1), eps);
  DtOracle oracle;
  const std::vector<Rational> zero{0};
  PartialFn x1_or_x2 = PartialFn::full_cube(2, [](const BitVector& x) { return x[0] || x[1]; });
  const auto anchor = check_coreset(x1_or_x2, zero, oracle);
  collect(res, reps);
  const bool anchored = anchor[0].lhs == 3 && anchor[0].rhs == 2 && anchor[0].holds;
  Reports dist;
  for (const auto& r : reps) {
    if (r.name == "coreset_distributional") dist.push_back(r);
  }
  res.pass = count_failed(reps) == 0 && anchored;
  res.summary = "30 monotone functions: " + tally(reps) + " hold (distributional " + tally(dist) +
                "); x1 or x2: " + show(anchor[0]);
  return res;
}

CriterionResult criterion_cutoff(CounterRng) {
  CriterionResult res;
  res.id = 11;
  res.title = "Cutoff tree";
  const auto reps = cutoff_all();
  collect(res, reps);
  std::size_t zeros = 0;
  for (const auto& r : reps) {
    if (r.name == "cutoff_exact" && r.holds) ++zeros;
  }
  res.pass = count_failed(reps) == 0 && zeros == 4;
  res.summary = "edge and K3, r in {2,3}, all tau: " + tally(reps) + " hold, " + std::to_string(zeros) +
                " tau=r cases with error 0";
  return res;
}

}  // namespace

std::span<const std::string_view> suite_names() { return kSuites; }

std::vector<BoundReport> run_suite(std::string_view name, std::size_t trials, std::uint64_t seed) {
  const CounterRng rng(seed);
  const std::size_t xor_trials = std::max<std::size_t>(1, trials / 4);
  if (name == "savicky") return savicky_pairs(trials, rng.fork(1));
  if (name == "harddist") return hard_dist_plain(trials, rng.fork(2));
  if (name == "patchup") {
    auto out = patchup_plain(trials, rng.fork(3));
    append(out, patchup_xor(xor_trials, rng.fork(4)));
    return out;
  }
  if (name == "xor") {
    auto out = hard_dist_xor(trials, rng.fork(5));
    append(out, cutoff_all());
    return out;
  }
  if (name == "gadget") return gadget_sensitivity(trials, rng.fork(6));
  if (name == "coreset") {
    const std::vector<Rational> eps{0, make_rational(1, 16)};
    return coreset_monotone(trials, rng.fork(7), eps);
  }
  if (name == "params") {
    auto out = prop_trials(trials, rng.fork(8));
    append(out, prop_xor_trials(trials, rng.fork(9)));
    append(out, choose_params_anchor());
    return out;
  }
  if (name == "all") {
    Reports out;
    for (const auto s : kSuites) {
      if (s != "all") append(out, run_suite(s, trials, seed));
    }
    return out;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown suite: " + std::string(name));
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  using Runner = CriterionResult (*)(CounterRng);
  static constexpr std::array<Runner, kLibraryCriteria> runners{
      criterion_savicky, criterion_gadget,   criterion_zero_error, criterion_eps_error,
      criterion_hard_dist, criterion_patchup, criterion_xor_lb,    criterion_params,
      criterion_reduction, criterion_coreset, criterion_cutoff};
  if (id < 1 || id > kLibraryCriteria) throw Error(ErrorCode::InvalidArgument, "criterion id out of range");
  return runners[static_cast<std::size_t>(id - 1)](CounterRng(seed).fork(static_cast<std::uint64_t>(id)));
}

}  // namespace dtlab
