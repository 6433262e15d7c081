#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dtlab/boolfn.hpp"
#include "dtlab/dtree.hpp"
#include "dtlab/gadget.hpp"
#include "dtlab/oracle.hpp"
#include "dtlab/rational.hpp"
#include "dtlab/rng.hpp"

namespace dtlab {

enum class Relation { Le, Lt, Ge, Eq };
std::string_view to_string(Relation rel);

/// One exact comparison lhs REL rhs. A report whose precondition failed is
/// marked not applicable; it neither holds nor fails.
struct BoundReport {
  std::string name;
  Rational lhs;
  Rational rhs;
  Relation relation = Relation::Le;
  bool holds = false;
  bool applicable = true;
  std::string context;

  bool failed() const noexcept { return applicable && !holds; }
};

BoundReport make_report(std::string name, Rational lhs, Relation rel, Rational rhs, std::string context = {});
BoundReport not_applicable(std::string name, std::string context);

/// Parameters of the Vertex Cover reductions.
struct ReductionParams {
  Rational delta;
  Rational delta_prime;
  Rational eps;
  /// Upper bound on the error margin term: 4ε, or 8ε^{1/r} rounded up.
  Rational alpha;
  std::size_t d = 0;
  std::size_t k = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t ell = 1;
  std::size_t r = 1;
  /// Size slack: 1+δ for the plain reduction, A for the XOR one.
  Rational amplification = 1;
  BigInt s = 0;
};

inline constexpr std::size_t kDefaultEllCap = 1'000'000;

/// Error of T under the canonical hard pmf over C and its sensitive
/// neighbors, against the restricted-sensitivity average. C empty means all
/// 1-inputs. Throws NotApplicable for constant f.
BoundReport check_hard_dist(const DecisionTree& t, const PartialFn& f, std::span<const BitVector> chosen = {});
BoundReport check_hard_dist_xor(const DecisionTree& t, const PartialFn& f, std::span<const BitVector> chosen,
                                std::size_t r);

BoundReport check_patchup(const DecisionTree& t, const PartialFn& f, DtOracle& oracle);
BoundReport check_patchup_xor(const DecisionTree& t, const PartialFn& f, std::size_t r, DtOracle& oracle);
/// The per-path form of the XOR patch-up: |T| + 2^r times the sum over
/// leaves whose restricted XOR is nonconstant of prod_i max{1, sum of Cert
/// over the 1-inputs of block i}. Unlike the per-input form above, a block
/// with no 1-inputs under the path still contributes a factor of 1.
BoundReport check_patchup_xor_paths(const DecisionTree& t, const PartialFn& f, std::size_t r, DtOracle& oracle);

/// dtsize(f_1 ⊕ ... ⊕ f_r) against the product of the dtsizes.
BoundReport check_savicky(std::span<const PartialFn> factors, DtOracle& oracle);

/// |T| >= (ℓ+1)(VC(G) + (1-4ε)m), after confirming T's error is at most ε.
BoundReport check_ell_isedge_lb(const DecisionTree& t, const Gadget& gadget, const Rational& eps);
/// |T| >= [(ℓ+1)(VC(G)+m)]^r - ε[8m(ℓ+1)]^r, after confirming T's error.
BoundReport check_xor_lb(const DecisionTree& t, const Gadget& gadget, std::size_t r, const Rational& eps);

/// The same bounds for the smallest tree of error at most ε (a frontier
/// lookup), which covers every tree at once.
BoundReport check_ell_isedge_lb_frontier(const Gadget& gadget, const Rational& eps, DtOracle& oracle);
BoundReport check_xor_lb_frontier(const Gadget& gadget, std::size_t r, const Rational& eps, DtOracle& oracle);

/// |vc_upper_tree| <= (ℓ+1)(k+m)+mn and exactness on the whole cube.
std::vector<BoundReport> check_ell_isedge_ub(const Gadget& gadget, std::span<const std::size_t> cover);

/// Max sensitivity equals 2(ℓ+1); Cert equals |Sens| at every 1-input under
/// `restrictions` random path restrictions each.
std::vector<BoundReport> check_gadget_sensitivity(const Gadget& gadget, CounterRng& rng, std::size_t restrictions);

BoundReport prop_inequality(const Rational& delta, const Rational& delta_prime, const Rational& alpha, std::size_t ell,
                            std::size_t m, std::size_t n, std::size_t k, std::size_t d);
BoundReport prop_inequality_xor(const Rational& a, const Rational& b, std::size_t r);

/// Minimal ℓ with δ′ > (δ+4ε)d + δ + (1+δ)mn/(k(ℓ+1)); s = (ℓ+1)(k+m)+mn.
/// Throws NoFeasibleEll.
ReductionParams choose_params_kst(const Graph& g, std::size_t k, const Rational& delta, const Rational& delta_prime,
                                  const Rational& eps, std::size_t ell_cap = kDefaultEllCap);
/// δ := A^{1/r}-1 and α := 8ε^{1/r}, both rounded up; s = [(ℓ+1)(k+m)+mn]^r.
/// Throws EpsTooLarge unless ε < 2^{-3r}, and NoFeasibleEll.
ReductionParams choose_params_xor(const Graph& g, std::size_t k, std::size_t r, const Rational& amplification,
                                  const Rational& delta_prime, const Rational& eps,
                                  std::size_t ell_cap = kDefaultEllCap);
/// Re-evaluates the defining inequality of the parameters.
bool params_feasible(const ReductionParams& p);

/// Coreset reports: dtsize over H against the minterm count, against
/// dtsize/n, and for each ε the distributional bound under the canonical pmf
/// with C = minterms. Throws NotMonotone.
std::vector<BoundReport> check_coreset(const PartialFn& f, std::span<const Rational> eps, DtOracle& oracle);

/// Cutoff tree error against the binomial tail, and exactly 0 when τ = r.
std::vector<BoundReport> check_cutoff(const Gadget& gadget, std::size_t r, std::size_t tau,
                                      std::span<const std::size_t> cover);

}  // namespace dtlab
