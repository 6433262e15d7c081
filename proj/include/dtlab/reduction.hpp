#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "dtlab/bounds.hpp"
#include "dtlab/boolfn.hpp"
#include "dtlab/dtree.hpp"
#include "dtlab/gadget.hpp"
#include "dtlab/oracle.hpp"
#include "dtlab/pmf.hpp"
#include "dtlab/rational.hpp"
#include "dtlab/rng.hpp"

namespace dtlab {

/// A DT-Learn instance as a learner sees it: query and sample access only.
struct LearnTask {
  std::size_t width = 0;
  std::function<bool(const BitVector&)> query;
  /// Draws from the target distribution (unlabeled; labels cost a query).
  std::function<BitVector(CounterRng&)> sample;
  std::size_t s = 1;
  std::size_t s_prime = 1;
  Rational eps;
  /// Queries + samples + node expansions.
  std::size_t step_budget = 10'000'000;
  std::uint64_t seed = 0;
};

/// Throws InvalidArgument unless s' >= s >= 1 and 0 <= eps <= 1.
void validate(const LearnTask& task);

struct LearnResult {
  DecisionTree tree;
  /// Set when no tree of size <= s' reaches error eps on the support; the
  /// tree is then the best-error tree within the size budget, or the
  /// smallest exact tree when that budget tree cannot be computed.
  bool flagged = false;
  bool budget_exhausted = false;
  std::size_t steps = 0;
  std::string method;
};

inline constexpr std::size_t kDefaultGreedySamples = 4096;

/// Top-down learner on a labeled sample: repeatedly splits the leaf and
/// coordinate with the largest drop in count-weighted Gini impurity, until
/// every leaf is pure or the tree has s' leaves. Leaves take the majority
/// label. Deterministic given the task seed.
LearnResult greedy_learner(const LearnTask& task, std::size_t samples = kDefaultGreedySamples);

/// Support and distribution of a target of the form g^{⊕r}, given per block.
struct OracleTarget {
  PartialFn support;
  Pmf pmf;
  std::size_t r = 1;
};

/// Ideal learner: the smallest tree with error <= eps on the target's
/// support, or the best-error tree of size <= s' (flagged) when none is small
/// enough. Works on the product support while it fits the oracle's point cap;
/// past that, for eps = 0 only, stacks r exact trees of one block.
/// Throws SizeCap.
LearnResult oracle_learner(const LearnTask& task, const OracleTarget& target, DtOracle& oracle);

enum class ReductionMode { Plain, Xor };
enum class LearnerKind { Oracle, Greedy };
std::string_view to_string(ReductionMode mode);
std::string_view to_string(LearnerKind kind);
std::optional<ReductionMode> parse_reduction_mode(std::string_view name);
std::optional<LearnerKind> parse_learner_kind(std::string_view name);

struct VcTranscript {
  ReductionMode mode = ReductionMode::Plain;
  LearnerKind learner = LearnerKind::Oracle;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  std::size_t d = 0;
  bool degree_precheck_no = false;
  ReductionParams params;
  std::size_t gadget_width = 0;
  std::size_t support_points = 0;
  /// (1+δ)s or A·s.
  Rational size_threshold;
  std::size_t hypothesis_size = 0;
  std::string learner_method;
  bool learner_flagged = false;
  bool learner_budget_exhausted = false;
  std::size_t learner_steps = 0;
  /// "exact" or "monte-carlo".
  std::string error_mode;
  Rational eps_hyp;
  double mc_estimate = 0;
  double mc_half_width = 0;
  std::size_t mc_samples = 0;
  bool yes = false;
};

struct VcRunOptions {
  LearnerKind learner = LearnerKind::Oracle;
  ReductionMode mode = ReductionMode::Plain;
  std::uint64_t seed = 0;
  OracleCaps caps{5000, 4096, 100'000};
  std::size_t exact_error_cap = kDefaultProductCap;
  std::size_t greedy_samples = kDefaultGreedySamples;
};

/// Decides Vertex Cover through a DT-Learn run on the gadget built from
/// `params` (which must come from choose_params_* for this graph and k).
VcTranscript decide_vc(const Graph& g, std::size_t k, const ReductionParams& params, const VcRunOptions& options);

enum class GapClass { Yes, GappedNo, Middle };
std::string_view to_string(GapClass c);
/// VC(G) <= k, VC(G) >= (1+δ')k, or neither, by exact vertex cover.
GapClass audit_gap(const Graph& g, std::size_t k, const Rational& delta_prime);

struct DatasetMinInstance {
  DecisionTree tree;
  PartialFn domain;
  Pmf pmf;
  Rational eps;
  std::size_t s = 1;
  std::size_t s_prime = 1;
};

/// r stacked copies of the all-vertices cover tree, its labels on the r-fold
/// hard support, and the product canonical pmf. s defaults to the tree's
/// size and s' to s. Throws SizeCap.
DatasetMinInstance emit_dataset_min(const Graph& g, std::size_t ell, std::size_t r, const Rational& eps = 0,
                                    std::optional<std::size_t> s = {}, std::optional<std::size_t> s_prime = {},
                                    std::size_t cap = kDefaultProductCap);

struct DatasetMinVerdict {
  std::size_t size = 0;
  Rational agreement;
  bool passes = false;
};

/// Size of T' and its exact agreement with the instance labels under the
/// pmf; passes iff size <= s' and agreement >= 1 - eps.
DatasetMinVerdict check_dataset_min(const DatasetMinInstance& instance, const DecisionTree& candidate);

}  // namespace dtlab
