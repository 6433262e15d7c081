#include "dtlab/reduction.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>

#include "dtlab/errors.hpp"

namespace dtlab {

void validate(const LearnTask& task) {
  if (task.s == 0 || task.s_prime < task.s) throw Error(ErrorCode::InvalidArgument, "need s' >= s >= 1");
  if (task.eps < 0 || task.eps > 1) throw Error(ErrorCode::InvalidArgument, "eps must lie in [0, 1]");
  if (!task.query || !task.sample) throw Error(ErrorCode::InvalidArgument, "task lacks query or sample access");
}

// ---------------------------------------------------------------------------
// Greedy learner

namespace {

struct Sample {
  std::vector<BitVector> xs;
  std::vector<std::uint64_t> counts;
  std::vector<bool> labels;
};

// 2ab/(a+b): Gini impurity scaled by the weight a+b.
Rational gini(std::uint64_t ones, std::uint64_t zeros) {
  if (ones == 0 || zeros == 0) return 0;
  return Rational(BigInt(2) * ones * zeros, BigInt(ones + zeros));
}

struct LeafState {
  DecisionTree::NodeId id = 0;
  std::vector<std::size_t> rows;
  bool impure = false;
  std::size_t best_coord = 0;
  Rational best_gain = -1;
};

void score_leaf(LeafState& leaf, const Sample& sample, std::size_t width) {
  std::uint64_t ones = 0;
  std::uint64_t zeros = 0;
  for (auto r : leaf.rows) (sample.labels[r] ? ones : zeros) += sample.counts[r];
  leaf.impure = ones > 0 && zeros > 0;
  if (!leaf.impure) return;
  const Rational parent = gini(ones, zeros);
  leaf.best_gain = -1;
  for (std::size_t c = 0; c < width; ++c) {
    std::uint64_t side[2][2] = {{0, 0}, {0, 0}};
    for (auto r : leaf.rows) side[sample.xs[r][c]][sample.labels[r]] += sample.counts[r];
    if (side[0][0] + side[0][1] == 0 || side[1][0] + side[1][1] == 0) continue;
    const Rational gain = parent - gini(side[0][1], side[0][0]) - gini(side[1][1], side[1][0]);
    if (gain > leaf.best_gain) {
      leaf.best_gain = gain;
      leaf.best_coord = c;
    }
  }
}

bool majority(const LeafState& leaf, const Sample& sample) {
  std::uint64_t ones = 0;
  std::uint64_t zeros = 0;
  for (auto r : leaf.rows) (sample.labels[r] ? ones : zeros) += sample.counts[r];
  return ones > zeros;
}

}  // namespace

LearnResult greedy_learner(const LearnTask& task, std::size_t samples) {
  validate(task);
  LearnResult out;
  out.method = "greedy";
  CounterRng rng = CounterRng(task.seed).fork(0x6772);
  auto spend = [&] {
    if (++out.steps > task.step_budget) out.budget_exhausted = true;
    return !out.budget_exhausted;
  };

  std::map<BitVector, std::size_t> index;
  Sample sample;
  for (std::size_t i = 0; i < samples && spend(); ++i) {
    BitVector x = task.sample(rng);
    auto [it, fresh] = index.emplace(x, sample.xs.size());
    if (fresh) {
      if (!spend()) break;
      sample.xs.push_back(std::move(x));
      sample.counts.push_back(0);
      sample.labels.push_back(task.query(sample.xs.back()));
    }
    ++sample.counts[it->second];
  }

  std::vector<LeafState> leaves(1);
  leaves[0].rows.resize(sample.xs.size());
  for (std::size_t r = 0; r < sample.xs.size(); ++r) leaves[0].rows[r] = r;
  out.tree = DecisionTree::leaf(majority(leaves[0], sample));
  score_leaf(leaves[0], sample, task.width);

  while (out.tree.size() < task.s_prime && !out.budget_exhausted) {
    std::size_t pick = leaves.size();
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (leaves[i].impure && (pick == leaves.size() || leaves[i].best_gain > leaves[pick].best_gain)) pick = i;
    }
    if (pick == leaves.size() || !spend()) break;
    LeafState parent = std::move(leaves[pick]);
    const auto [n0, n1] = out.tree.split_leaf(parent.id, parent.best_coord);
    LeafState kids[2];
    kids[0].id = n0;
    kids[1].id = n1;
    for (auto r : parent.rows) kids[sample.xs[r][parent.best_coord]].rows.push_back(r);
    for (auto& kid : kids) {
      out.tree.set_label(kid.id, majority(kid, sample));
      score_leaf(kid, sample, task.width);
    }
    leaves[pick] = std::move(kids[0]);
    leaves.insert(leaves.begin() + static_cast<std::ptrdiff_t>(pick) + 1, std::move(kids[1]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Oracle learner

LearnResult oracle_learner(const LearnTask& task, const OracleTarget& target, DtOracle& oracle) {
  validate(task);
  LearnResult out;
  const std::size_t before = oracle.memo_entries();
  const std::size_t r = target.r;
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "r must be positive");

  // Product support size, saturating.
  std::size_t points = 1;
  bool fits = true;
  for (std::size_t i = 0; i < r && fits; ++i) {
    if (points > oracle.caps().max_points / std::max<std::size_t>(1, target.support.size())) fits = false;
    points *= target.support.size();
  }
  fits = fits && points <= oracle.caps().max_points;

  if (r == 1 || fits) {
    const PartialFn f = r == 1 ? target.support : xor_power(target.support, r);
    const Pmf pmf = r == 1 ? target.pmf : product_pmf(target.pmf, r);
    std::size_t size = 0;
    if (task.eps == 0) {
      auto exact = oracle.minimize(f);
      size = exact.size;
      if (size <= task.s_prime) {
        out.tree = std::move(exact.tree);
        out.method = "exact";
      }
    } else {
      size = oracle.pareto(f, pmf).min_size(task.eps);
      if (size <= task.s_prime) {
        out.tree = oracle.pareto_tree(f, pmf, size);
        out.method = "frontier";
      }
    }
    if (size > task.s_prime) {
      out.tree = oracle.pareto_tree(f, pmf, task.s_prime);
      out.method = "frontier-budget";
      out.flagged = true;
    }
  } else if (task.eps == 0) {
    const auto block = oracle.minimize(target.support);
    const std::vector<DecisionTree> trees(r, block.tree);
    const std::vector<std::size_t> widths(r, target.support.width());
    out.tree = stacked_xor_tree(trees, widths);
    out.method = "stacked";
    out.flagged = out.tree.size() > task.s_prime;
  } else {
    throw Error(ErrorCode::SizeCap, "product support of " + std::to_string(points) +
                                        " points exceeds the oracle cap and eps > 0 rules out stacking");
  }
  out.steps = oracle.memo_entries() - before;
  return out;
}

// ---------------------------------------------------------------------------
// Vertex Cover through DT-Learn

std::string_view to_string(ReductionMode mode) { return mode == ReductionMode::Plain ? "plain" : "xor"; }
std::string_view to_string(LearnerKind kind) { return kind == LearnerKind::Oracle ? "oracle" : "greedy"; }

std::optional<ReductionMode> parse_reduction_mode(std::string_view name) {
  if (name == "plain") return ReductionMode::Plain;
  if (name == "xor") return ReductionMode::Xor;
  return std::nullopt;
}

std::optional<LearnerKind> parse_learner_kind(std::string_view name) {
  if (name == "oracle") return LearnerKind::Oracle;
  if (name == "greedy") return LearnerKind::Greedy;
  return std::nullopt;
}

std::string_view to_string(GapClass c) {
  switch (c) {
    case GapClass::Yes: return "yes";
    case GapClass::GappedNo: return "gapped-no";
    case GapClass::Middle: return "middle";
  }
  return "?";
}

GapClass audit_gap(const Graph& g, std::size_t k, const Rational& delta_prime) {
  const auto vc = exact_vertex_cover(g).k;
  if (vc <= k) return GapClass::Yes;
  if (Rational(BigInt(vc)) >= (1 + delta_prime) * Rational(BigInt(k))) return GapClass::GappedNo;
  return GapClass::Middle;
}

VcTranscript decide_vc(const Graph& g, std::size_t k, const ReductionParams& params, const VcRunOptions& options) {
  VcTranscript tr;
  tr.mode = options.mode;
  tr.learner = options.learner;
  tr.n = g.n();
  tr.m = g.m();
  tr.k = k;
  tr.d = g.max_degree();
  tr.params = params;
  if (tr.d * k < tr.m) {
    tr.degree_precheck_no = true;
    return tr;
  }
  if (params.k != k || params.m != g.m() || params.n != g.n() || params.d != tr.d) {
    throw Error(ErrorCode::InvalidArgument, "parameters were chosen for a different graph or k");
  }
  const std::size_t r = options.mode == ReductionMode::Xor ? params.r : 1;
  if (options.mode == ReductionMode::Plain && params.r != 1) {
    throw Error(ErrorCode::InvalidArgument, "plain mode needs parameters with r = 1");
  }

  const Gadget gadget(g, params.ell);
  const auto f = gadget.hard_support();
  const auto pmf = canonical_hard_pmf(f).pmf;
  tr.gadget_width = gadget.width() * r;

  tr.size_threshold = params.amplification * Rational(params.s);
  const BigInt floor_threshold = numerator_of(tr.size_threshold) / denominator_of(tr.size_threshold);
  if (floor_threshold > BigInt(std::numeric_limits<std::uint32_t>::max())) {
    throw Error(ErrorCode::SizeCap, "size budget too large for a tree");
  }

  const std::size_t block_width = gadget.width();
  auto target = [gadget, r, block_width](const BitVector& x) {
    bool v = false;
    for (std::size_t i = 0; i < r; ++i) v ^= gadget.evaluate(x.slice(i * block_width, block_width));
    return v;
  };
  auto sampler = std::make_shared<Sampler>(pmf, r);

  LearnTask task;
  task.width = tr.gadget_width;
  task.query = target;
  task.sample = [sampler](CounterRng& rng) { return (*sampler)(rng); };
  task.s = params.s.convert_to<std::size_t>();
  task.s_prime = std::max(task.s, floor_threshold.convert_to<std::size_t>());
  task.eps = params.eps;
  task.seed = options.seed;

  LearnResult res;
  if (options.learner == LearnerKind::Oracle) {
    DtOracle oracle(options.caps);
    res = oracle_learner(task, OracleTarget{f, pmf, r}, oracle);
  } else {
    res = greedy_learner(task, options.greedy_samples);
  }
  tr.hypothesis_size = res.tree.size();
  tr.learner_method = res.method;
  tr.learner_flagged = res.flagged;
  tr.learner_budget_exhausted = res.budget_exhausted;
  tr.learner_steps = res.steps;

  std::size_t points = 1;
  bool exact = true;
  for (std::size_t i = 0; i < r; ++i) {
    if (points > options.exact_error_cap / f.size()) exact = false;
    points *= f.size();
  }
  tr.support_points = exact ? points : 0;
  bool error_ok = false;
  if (exact) {
    tr.error_mode = "exact";
    tr.eps_hyp = r == 1 ? error_exact(res.tree, f, pmf)
                        : error_exact(res.tree, xor_power(f, r, options.exact_error_cap),
                                      product_pmf(pmf, r, options.exact_error_cap));
    error_ok = tr.eps_hyp <= params.eps;
  } else {
    tr.error_mode = "monte-carlo";
    const double e = to_double(params.eps);
    const std::size_t n = e > 0 ? static_cast<std::size_t>(std::ceil(std::log(2.0 / 1e-3) / (2 * (e / 4) * (e / 4))))
                                : 100'000;
    const auto mc = error_monte_carlo(
        res.tree, target, [sampler](CounterRng& rng) { return (*sampler)(rng); }, n, options.seed ^ 0xe770);
    tr.mc_estimate = mc.estimate;
    tr.mc_half_width = mc.half_width;
    tr.mc_samples = mc.samples;
    error_ok = mc.estimate <= e;
  }
  tr.yes = !res.budget_exhausted && Rational(BigInt(tr.hypothesis_size)) <= tr.size_threshold && error_ok;
  return tr;
}

// ---------------------------------------------------------------------------
// DT-Dataset-Min instances

DatasetMinInstance emit_dataset_min(const Graph& g, std::size_t ell, std::size_t r, const Rational& eps,
                                    std::optional<std::size_t> s, std::optional<std::size_t> s_prime,
                                    std::size_t cap) {
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "r must be positive");
  const Gadget gadget(g, ell);
  std::vector<std::size_t> all(g.n());
  for (std::size_t v = 0; v < g.n(); ++v) all[v] = v;
  const auto block = vc_upper_tree(gadget, all);
  const std::vector<DecisionTree> trees(r, block);
  const std::vector<std::size_t> widths(r, gadget.width());

  DatasetMinInstance out;
  out.tree = stacked_xor_tree(trees, widths);
  const auto f = gadget.hard_support();
  const auto base = canonical_hard_pmf(f).pmf;
  out.pmf = product_pmf(base, r, cap);
  std::vector<Point> points;
  points.reserve(out.pmf.size());
  for (const auto& m : out.pmf.support()) points.push_back({m.x, out.tree.evaluate(m.x)});
  out.domain = PartialFn(gadget.width() * r, std::move(points));
  out.eps = eps;
  out.s = s.value_or(out.tree.size());
  out.s_prime = s_prime.value_or(out.s);
  if (out.s == 0 || out.s_prime < out.s) throw Error(ErrorCode::InvalidArgument, "need s' >= s >= 1");
  return out;
}

DatasetMinVerdict check_dataset_min(const DatasetMinInstance& instance, const DecisionTree& candidate) {
  DatasetMinVerdict v;
  v.size = candidate.size();
  v.agreement = 0;
  for (const auto& m : instance.pmf.support()) {
    if (candidate.evaluate(m.x) == instance.domain.at(m.x)) v.agreement += m.p;
  }
  v.passes = v.size <= instance.s_prime && v.agreement >= 1 - instance.eps;
  return v;
}

}  // namespace dtlab
