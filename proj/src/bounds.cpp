#include "dtlab/bounds.hpp"

#include <algorithm>
#include <sstream>

#include "dtlab/errors.hpp"
#include "dtlab/generate.hpp"

namespace dtlab {

std::string_view to_string(Relation rel) {
  switch (rel) {
    case Relation::Le: return "<=";
    case Relation::Lt: return "<";
    case Relation::Ge: return ">=";
    case Relation::Eq: return "==";
  }
  return "?";
}

BoundReport make_report(std::string name, Rational lhs, Relation rel, Rational rhs, std::string context) {
  BoundReport rep;
  rep.name = std::move(name);
  rep.lhs = std::move(lhs);
  rep.rhs = std::move(rhs);
  rep.relation = rel;
  rep.context = std::move(context);
  switch (rel) {
    case Relation::Le: rep.holds = rep.lhs <= rep.rhs; break;
    case Relation::Lt: rep.holds = rep.lhs < rep.rhs; break;
    case Relation::Ge: rep.holds = rep.lhs >= rep.rhs; break;
    case Relation::Eq: rep.holds = rep.lhs == rep.rhs; break;
  }
  return rep;
}

BoundReport not_applicable(std::string name, std::string context) {
  BoundReport rep;
  rep.name = std::move(name);
  rep.applicable = false;
  rep.context = std::move(context);
  return rep;
}

namespace {

Rational q(std::size_t v) { return Rational(BigInt(v)); }

std::string describe(const Gadget& g) {
  std::ostringstream os;
  os << "n=" << g.graph().n() << " m=" << g.graph().m() << " ell=" << g.ell();
  return os.str();
}

std::string describe(const PartialFn& f) {
  std::ostringstream os;
  os << "width=" << f.width() << " points=" << f.size();
  return os.str();
}

// The part of a restriction on the block [block*width, (block+1)*width),
// re-indexed from 0.
Restriction block_part(const Restriction& rho, std::size_t block, std::size_t width) {
  Restriction out;
  for (const auto& [i, b] : rho.items()) {
    if (i >= block * width && i < (block + 1) * width) out.assign(i - block * width, b);
  }
  return out;
}

// Every r-tuple of indices into [0, base), last position fastest.
template <typename Fn>
void for_each_tuple(std::size_t base, std::size_t r, Fn&& fn) {
  std::vector<std::size_t> idx(r, 0);
  if (base == 0) return;
  for (;;) {
    fn(idx);
    std::size_t pos = r;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < base) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
  }
}

std::vector<BitVector> chosen_or_ones(const PartialFn& f, std::span<const BitVector> chosen) {
  if (!chosen.empty()) {
    std::vector<BitVector> c(chosen.begin(), chosen.end());
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
  }
  return f.ones();
}

BitVector concat_all(std::span<const BitVector> parts) {
  BitVector x = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) x = x.concat(parts[i]);
  return x;
}

Rational gadget_error(const DecisionTree& t, const Gadget& gadget, std::size_t r) {
  const auto f = gadget.hard_support();
  const auto pmf = canonical_hard_pmf(f).pmf;
  if (r == 1) return error_exact(t, f, pmf);
  return error_exact(t, xor_power(f, r), product_pmf(pmf, r));
}

Rational ell_isedge_lb_rhs(const Gadget& g, std::size_t vc, const Rational& eps) {
  return q(g.ell() + 1) * (q(vc) + (1 - 4 * eps) * q(g.graph().m()));
}

Rational xor_lb_rhs(const Gadget& g, std::size_t vc, std::size_t r, const Rational& eps) {
  const std::size_t m = g.graph().m();
  return pow(q((g.ell() + 1) * (vc + m)), static_cast<unsigned>(r)) -
         eps * pow(q(8 * m * (g.ell() + 1)), static_cast<unsigned>(r));
}

}  // namespace

// ---------------------------------------------------------------------------
// Hard distribution

BoundReport check_hard_dist(const DecisionTree& t, const PartialFn& f, std::span<const BitVector> chosen) {
  if (f.is_constant()) throw Error(ErrorCode::NotApplicable, "hard distribution needs a nonconstant function");
  const auto c = chosen_or_ones(f, chosen);
  const auto pmf = canonical_hard_pmf(f, c).pmf;
  const Rational lhs = error_exact(t, f, pmf);
  const std::size_t sens = max_sensitivity(f);
  Rational rhs = 0;
  if (sens > 0) {
    std::size_t total = 0;
    for (const auto& x : c) total += sensitivity_set(restrict(f, t.path_of(x)), x).size();
    rhs = Rational(BigInt(total), BigInt(2 * c.size() * sens));
  }
  return make_report("hard_dist", lhs, Relation::Ge, rhs, describe(f) + " tree=" + std::to_string(t.size()));
}

BoundReport check_hard_dist_xor(const DecisionTree& t, const PartialFn& f, std::span<const BitVector> chosen,
                                std::size_t r) {
  if (f.is_constant()) throw Error(ErrorCode::NotApplicable, "hard distribution needs a nonconstant function");
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "r must be positive");
  const auto c = chosen_or_ones(f, chosen);
  const auto pmf = canonical_hard_pmf(f, c).pmf;
  const Rational lhs = error_exact(t, xor_power(f, r), product_pmf(pmf, r));
  const std::size_t sens = max_sensitivity(f);
  const std::size_t w = f.width();
  BigInt total = 0;
  std::vector<BitVector> parts(r);
  for_each_tuple(c.size(), r, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < r; ++i) parts[i] = c[idx[i]];
    const auto path = t.path_of(concat_all(parts));
    // A flip in block i changes the XOR iff it changes block i, so the
    // product function is sensitive at x under the path iff some block is.
    BigInt prod = 1;
    bool any = false;
    for (std::size_t i = 0; i < r; ++i) {
      const auto s = sensitivity_set(restrict(f, block_part(path, i, w)), parts[i]).size();
      any = any || s > 0;
      prod *= std::max<std::size_t>(1, s);
    }
    if (any) total += prod;
  });
  Rational rhs = 0;
  if (sens > 0) rhs = Rational(total) / pow(q(2 * c.size() * sens), static_cast<unsigned>(r));
  return make_report("hard_dist_xor", lhs, Relation::Ge, rhs,
                     describe(f) + " r=" + std::to_string(r) + " tree=" + std::to_string(t.size()));
}

// ---------------------------------------------------------------------------
// Patch-up

BoundReport check_patchup(const DecisionTree& t, const PartialFn& f, DtOracle& oracle) {
  const std::size_t lhs = oracle.dtsize(f);
  std::size_t rhs = t.size();
  for (const auto& x : f.ones()) rhs += certificate_complexity(restrict(f, t.path_of(x)), x);
  return make_report("patchup", q(lhs), Relation::Le, q(rhs), describe(f) + " tree=" + std::to_string(t.size()));
}

BoundReport check_patchup_xor(const DecisionTree& t, const PartialFn& f, std::size_t r, DtOracle& oracle) {
  if (f.is_constant()) throw Error(ErrorCode::NotApplicable, "patch-up for XOR needs a nonconstant function");
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "r must be positive");
  const auto power = xor_power(f, r);
  const std::size_t lhs = oracle.dtsize(power);
  const auto ones = f.ones();
  const std::size_t w = f.width();
  BigInt total = 0;
  std::vector<BitVector> parts(r);
  for_each_tuple(ones.size(), r, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < r; ++i) parts[i] = ones[idx[i]];
    const auto path = t.path_of(concat_all(parts));
    if (restrict(power, path).is_constant()) return;
    BigInt prod = 1;
    for (std::size_t i = 0; i < r; ++i) {
      prod *= std::max<std::size_t>(1, certificate_complexity(restrict(f, block_part(path, i, w)), parts[i]));
    }
    total += prod;
  });
  const Rational rhs = q(t.size()) + Rational(total * (BigInt(1) << r));
  return make_report("patchup_xor", q(lhs), Relation::Le, rhs,
                     describe(f) + " r=" + std::to_string(r) + " tree=" + std::to_string(t.size()));
}

BoundReport check_patchup_xor_paths(const DecisionTree& t, const PartialFn& f, std::size_t r, DtOracle& oracle) {
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "r must be positive");
  const auto power = xor_power(f, r);
  const std::size_t lhs = oracle.dtsize(power);
  const std::size_t w = f.width();
  BigInt total = 0;
  for (const auto leaf : t.leaves()) {
    const auto path = t.path_to(leaf);
    if (restrict(power, path).is_constant()) continue;
    BigInt prod = 1;
    for (std::size_t i = 0; i < r; ++i) {
      const auto block = restrict(f, block_part(path, i, w));
      std::size_t sum = 0;
      for (const auto& x : block.ones()) sum += certificate_complexity(block, x);
      prod *= std::max<std::size_t>(1, sum);
    }
    total += prod;
  }
  const Rational rhs = q(t.size()) + Rational(total * (BigInt(1) << r));
  return make_report("patchup_xor_paths", q(lhs), Relation::Le, rhs,
                     describe(f) + " r=" + std::to_string(r) + " tree=" + std::to_string(t.size()));
}

BoundReport check_savicky(std::span<const PartialFn> factors, DtOracle& oracle) {
  BigInt prod = 1;
  std::string context;
  for (const auto& f : factors) {
    prod *= oracle.dtsize(f);
    if (!context.empty()) context += " x ";
    context += "(" + describe(f) + ")";
  }
  const std::size_t lhs = oracle.dtsize(xor_product(factors));
  return make_report("savicky", q(lhs), Relation::Eq, Rational(prod), context);
}

// ---------------------------------------------------------------------------
// ℓ-IsEdge size bounds

BoundReport check_ell_isedge_lb(const DecisionTree& t, const Gadget& gadget, const Rational& eps) {
  const Rational err = gadget_error(t, gadget, 1);
  const std::string ctx = describe(gadget) + " eps=" + to_string(eps) + " error=" + to_string(err);
  if (err > eps) return not_applicable("ell_isedge_lb", ctx);
  const auto vc = exact_vertex_cover(gadget.graph()).k;
  return make_report("ell_isedge_lb", q(t.size()), Relation::Ge, ell_isedge_lb_rhs(gadget, vc, eps), ctx);
}

BoundReport check_xor_lb(const DecisionTree& t, const Gadget& gadget, std::size_t r, const Rational& eps) {
  const Rational err = gadget_error(t, gadget, r);
  const std::string ctx =
      describe(gadget) + " r=" + std::to_string(r) + " eps=" + to_string(eps) + " error=" + to_string(err);
  if (err > eps) return not_applicable("xor_lb", ctx);
  const auto vc = exact_vertex_cover(gadget.graph()).k;
  return make_report("xor_lb", q(t.size()), Relation::Ge, xor_lb_rhs(gadget, vc, r, eps), ctx);
}

BoundReport check_ell_isedge_lb_frontier(const Gadget& gadget, const Rational& eps, DtOracle& oracle) {
  const auto f = gadget.hard_support();
  const auto curve = oracle.pareto(f, canonical_hard_pmf(f).pmf);
  const auto vc = exact_vertex_cover(gadget.graph()).k;
  return make_report("ell_isedge_lb_frontier", q(curve.min_size(eps)), Relation::Ge,
                     ell_isedge_lb_rhs(gadget, vc, eps), describe(gadget) + " eps=" + to_string(eps));
}

BoundReport check_xor_lb_frontier(const Gadget& gadget, std::size_t r, const Rational& eps, DtOracle& oracle) {
  const auto f = gadget.hard_support();
  const auto pmf = canonical_hard_pmf(f).pmf;
  const auto curve = oracle.pareto(xor_power(f, r), product_pmf(pmf, r));
  const auto vc = exact_vertex_cover(gadget.graph()).k;
  return make_report("xor_lb_frontier", q(curve.min_size(eps)), Relation::Ge, xor_lb_rhs(gadget, vc, r, eps),
                     describe(gadget) + " r=" + std::to_string(r) + " eps=" + to_string(eps));
}

std::vector<BoundReport> check_ell_isedge_ub(const Gadget& gadget, std::span<const std::size_t> cover) {
  const auto t = vc_upper_tree(gadget, cover);
  const auto cube = check_full_cube(gadget, t);
  const std::string ctx = describe(gadget) + " k=" + std::to_string(cover.size());
  std::vector<BoundReport> out;
  out.push_back(make_report("ell_isedge_ub", q(t.size()), Relation::Le,
                            q(vc_upper_bound(gadget, cover.size())), ctx));
  out.push_back(make_report("ell_isedge_ub_exact", q(cube.exact ? 1 : 0), Relation::Eq, q(1),
                            ctx + (cube.method == CubeCheck::Enumerated ? " enumerated" : " leaf-analysis")));
  return out;
}

std::vector<BoundReport> check_gadget_sensitivity(const Gadget& gadget, CounterRng& rng,
                                                  std::size_t restrictions) {
  const auto f = gadget.hard_support();
  std::vector<BoundReport> out;
  out.push_back(make_report("gadget_sensitivity", q(max_sensitivity(f)), Relation::Eq, q(2 * (gadget.ell() + 1)),
                            describe(gadget)));
  std::size_t violations = 0;
  for (std::size_t e = 0; e < gadget.graph().m(); ++e) {
    const auto x = gadget.indicator(e);
    for (std::size_t i = 0; i < restrictions; ++i) {
      const auto sub = restrict(f, random_path_restriction(rng, x, gadget.width()));
      if (certificate_complexity(sub, x) != sensitivity_set(sub, x).size()) ++violations;
    }
  }
  out.push_back(make_report("gadget_cert_equals_sens", q(violations), Relation::Eq, q(0),
                            describe(gadget) + " restrictions=" + std::to_string(restrictions)));
  return out;
}

// ---------------------------------------------------------------------------
// Parameters

namespace {

Rational ell_condition_rhs(const Rational& delta, const Rational& alpha, std::size_t ell, std::size_t m,
                           std::size_t n, std::size_t k, std::size_t d) {
  return (delta + alpha) * q(d) + delta + (1 + delta) * q(m * n) / q(k * (ell + 1));
}

void finish_params(ReductionParams& p, std::size_t ell_cap) {
  if (p.k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  const Rational margin = p.delta_prime - (p.delta + p.alpha) * q(p.d) - p.delta;
  if (margin <= 0) {
    throw Error(ErrorCode::NoFeasibleEll, "delta' " + to_string(p.delta_prime) + " leaves no margin for any ell");
  }
  // Need ℓ+1 > (1+δ)mn/(k·margin); the least such ℓ, but at least 1.
  const Rational x = (1 + p.delta) * q(p.m * p.n) / (q(p.k) * margin);
  const BigInt floor_x = numerator_of(x) / denominator_of(x);
  if (floor_x > BigInt(ell_cap)) {
    throw Error(ErrorCode::NoFeasibleEll, "minimal ell exceeds the cap of " + std::to_string(ell_cap));
  }
  p.ell = std::max<std::size_t>(1, floor_x.convert_to<std::size_t>());
  const BigInt base = BigInt((p.ell + 1) * (p.k + p.m) + p.m * p.n);
  p.s = pow(base, static_cast<unsigned>(p.r));
  if (!params_feasible(p)) throw Error(ErrorCode::NoFeasibleEll, "chosen ell fails its own inequality");
}

}  // namespace

BoundReport prop_inequality(const Rational& delta, const Rational& delta_prime, const Rational& alpha,
                            std::size_t ell, std::size_t m, std::size_t n, std::size_t k, std::size_t d) {
  std::ostringstream ctx;
  ctx << "delta=" << to_string(delta) << " delta'=" << to_string(delta_prime) << " alpha=" << to_string(alpha)
      << " ell=" << ell << " m=" << m << " n=" << n << " k=" << k << " d=" << d;
  if (k == 0 || ell == 0 || m > d * k || delta < 0 || alpha < 0 ||
      !(delta_prime > ell_condition_rhs(delta, alpha, ell, m, n, k, d))) {
    return not_applicable("prop_inequality", ctx.str());
  }
  const Rational lhs = (1 + delta) * q((ell + 1) * (k + m) + m * n);
  const Rational rhs = q(ell + 1) * ((1 + delta_prime) * q(k) + (1 - alpha) * q(m));
  return make_report("prop_inequality", lhs, Relation::Lt, rhs, ctx.str());
}

BoundReport prop_inequality_xor(const Rational& a, const Rational& b, std::size_t r) {
  const std::string ctx = "a=" + to_string(a) + " b=" + to_string(b) + " r=" + std::to_string(r);
  if (r == 0 || b <= 0 || a < b) return not_applicable("prop_inequality_xor", ctx);
  const auto e = static_cast<unsigned>(r);
  return make_report("prop_inequality_xor", pow(a, e) - pow(b, e), Relation::Ge, pow(Rational(a - b), e), ctx);
}

ReductionParams choose_params_kst(const Graph& g, std::size_t k, const Rational& delta, const Rational& delta_prime,
                                  const Rational& eps, std::size_t ell_cap) {
  if (delta < 0 || eps < 0) throw Error(ErrorCode::InvalidArgument, "delta and eps must be nonnegative");
  ReductionParams p;
  p.delta = delta;
  p.delta_prime = delta_prime;
  p.eps = eps;
  p.alpha = 4 * eps;
  p.d = g.max_degree();
  p.k = k;
  p.m = g.m();
  p.n = g.n();
  p.r = 1;
  p.amplification = 1 + delta;
  finish_params(p, ell_cap);
  return p;
}

ReductionParams choose_params_xor(const Graph& g, std::size_t k, std::size_t r, const Rational& amplification,
                                  const Rational& delta_prime, const Rational& eps, std::size_t ell_cap) {
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "r must be positive");
  if (amplification < 1 || eps < 0) throw Error(ErrorCode::InvalidArgument, "need A >= 1 and eps >= 0");
  if (eps >= Rational(BigInt(1), BigInt(1) << (3 * r))) {
    throw Error(ErrorCode::EpsTooLarge, "eps " + to_string(eps) + " is not below 2^-" + std::to_string(3 * r));
  }
  ReductionParams p;
  p.delta = nth_root_bounds(amplification, static_cast<unsigned>(r)).upper - 1;
  p.delta_prime = delta_prime;
  p.eps = eps;
  p.alpha = 8 * nth_root_bounds(eps, static_cast<unsigned>(r)).upper;
  p.d = g.max_degree();
  p.k = k;
  p.m = g.m();
  p.n = g.n();
  p.r = r;
  p.amplification = amplification;
  finish_params(p, ell_cap);
  return p;
}

bool params_feasible(const ReductionParams& p) {
  if (p.k == 0 || p.ell == 0 || p.r == 0) return false;
  if (!(p.delta_prime > ell_condition_rhs(p.delta, p.alpha, p.ell, p.m, p.n, p.k, p.d))) return false;
  return p.s == pow(BigInt((p.ell + 1) * (p.k + p.m) + p.m * p.n), static_cast<unsigned>(p.r));
}

// ---------------------------------------------------------------------------
// Coresets and the cutoff tree

std::vector<BoundReport> check_coreset(const PartialFn& f, std::span<const Rational> eps, DtOracle& oracle) {
  const auto h = coreset(f);
  const std::string ctx = describe(f) + " coreset=" + std::to_string(h.domain.size()) +
                          " minterms=" + std::to_string(h.minterm_count);
  std::vector<BoundReport> out;
  const std::size_t s = oracle.dtsize(h.domain);
  out.push_back(make_report("coreset_dtsize", q(s), Relation::Ge, q(h.minterm_count), ctx));
  out.push_back(make_report("coreset_dtsize_over_n", q(s), Relation::Ge,
                            Rational(BigInt(s), BigInt(std::max<std::size_t>(1, f.width()))), ctx));
  for (const auto& e : eps) {
    const std::string ectx = ctx + " eps=" + to_string(e);
    if (h.domain.is_constant()) {
      out.push_back(not_applicable("coreset_distributional", ectx));
      continue;
    }
    const auto mins = minterms(f);
    const auto pmf = canonical_hard_pmf(h.domain, mins).pmf;
    const auto curve = oracle.pareto(h.domain, pmf);
    const Rational rhs = (1 - q(h.max_sensitivity) * e) * q(h.minterm_count);
    out.push_back(make_report("coreset_distributional", q(curve.min_size(e)), Relation::Ge, rhs, ectx));
  }
  return out;
}

std::vector<BoundReport> check_cutoff(const Gadget& gadget, std::size_t r, std::size_t tau,
                                      std::span<const std::size_t> cover) {
  const auto t = cutoff_xor_tree(gadget, r, tau, cover);
  const auto f = gadget.hard_support();
  const auto pmf = canonical_hard_pmf(f).pmf;
  const Rational err = error_exact(t, xor_power(f, r), product_pmf(pmf, r));
  const std::string ctx = describe(gadget) + " r=" + std::to_string(r) + " tau=" + std::to_string(tau);
  std::vector<BoundReport> out;
  out.push_back(make_report("cutoff_tail", err, Relation::Le, binomial_tail_half(r, tau), ctx));
  if (tau == r) out.push_back(make_report("cutoff_exact", err, Relation::Eq, 0, ctx));
  return out;
}

}  // namespace dtlab
