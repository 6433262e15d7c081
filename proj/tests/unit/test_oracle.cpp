#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <map>

#include "dtlab/errors.hpp"
#include "dtlab/gadget.hpp"
#include "dtlab/generate.hpp"
#include "dtlab/oracle.hpp"
#include "helpers.hpp"

using namespace dtlab;
using namespace dtlab::testing;

namespace {

// Plain recursion over restrictions, no memo, no normal form.
std::size_t brute_dtsize(const PartialFn& f) {
  if (f.is_constant()) return 1;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < f.width(); ++i) {
    Restriction r0;
    Restriction r1;
    r0.assign(i, false);
    r1.assign(i, true);
    const auto f0 = restrict(f, r0);
    const auto f1 = restrict(f, r1);
    if (f0.size() == f.size() || f1.size() == f.size()) continue;
    best = std::min(best, brute_dtsize(f0) + brute_dtsize(f1));
  }
  return best;
}

// best[s] = least error of a tree with at most s leaves, for s in 1..cap.
std::vector<Rational> brute_errors(const PartialFn& f, const Pmf& pmf, std::size_t cap) {
  Rational mass[2] = {0, 0};
  for (const auto& p : f.points()) mass[p.label] += pmf.mass(p.x);
  std::vector<Rational> best(cap + 1, std::min(mass[0], mass[1]));
  if (f.is_constant()) return best;
  for (std::size_t i = 0; i < f.width(); ++i) {
    Restriction r0;
    Restriction r1;
    r0.assign(i, false);
    r1.assign(i, true);
    const auto f0 = restrict(f, r0);
    const auto f1 = restrict(f, r1);
    if (f0.size() == f.size() || f1.size() == f.size()) continue;
    const auto b0 = brute_errors(f0, pmf, cap);
    const auto b1 = brute_errors(f1, pmf, cap);
    for (std::size_t s = 2; s <= cap; ++s) {
      for (std::size_t a = 1; a < s; ++a) best[s] = std::min(best[s], Rational(b0[a] + b1[s - a]));
    }
  }
  return best;
}

Pmf uniform_on(const PartialFn& f) {
  std::vector<Mass> masses;
  for (const auto& p : f.points()) masses.push_back({p.x, make_rational(1, static_cast<long>(f.size()))});
  return Pmf(std::move(masses));
}

}  // namespace

TEST(ExactDtSize, Examples) {
  EXPECT_EQ(exact_dtsize(fn({{"00", 1}, {"11", 1}})).size, 1u);
  EXPECT_EQ(exact_dtsize(and_n(3)).size, 4u);
  EXPECT_EQ(exact_dtsize(parity_n(3)).size, 8u);
  EXPECT_EQ(exact_dtsize(fn({{"01", 0}, {"10", 1}})).size, 2u);
  const auto k3 = Gadget(gen_graph(GraphKind::Complete, 3, 0), 1).hard_support();
  EXPECT_GE(exact_dtsize(k3).size, 10u);
}

TEST(ExactDtSize, AgreesWithBruteForce) {
  CounterRng rng(404);
  for (int trial = 0; trial < 60; ++trial) {
    const auto f = random_partial_fn(rng, 1 + rng.below(5), 14);
    const auto r = exact_dtsize(f);
    ASSERT_EQ(r.size, brute_dtsize(f));
    EXPECT_EQ(r.tree.size(), r.size);
    EXPECT_TRUE(is_exact_on(r.tree, f));
    EXPECT_NO_THROW(r.tree.validate(f.width()));
  }
}

TEST(ExactDtSize, WitnessIsDeterministic) {
  CounterRng rng(8);
  const auto f = random_partial_fn(rng, 5, 12);
  DtOracle warm;
  warm.dtsize(and_n(4));
  EXPECT_EQ(warm.minimize(f).tree, exact_dtsize(f).tree);
}

TEST(ExactDtSize, MonotoneUnderAddingPoints) {
  CounterRng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_partial_fn(rng, 5, 16);
    std::vector<Point> fewer(f.points().begin(), f.points().end());
    fewer.resize(fewer.size() / 2);
    const PartialFn g(5, fewer);
    EXPECT_LE(exact_dtsize(g).size, exact_dtsize(f).size);
  }
}

TEST(ExactDtSize, XorOfTwoRandomFunctions) {
  // Sizes multiply for xor products of exact minimum trees.
  CounterRng rng(17);
  for (int trial = 0; trial < 8; ++trial) {
    const std::vector<PartialFn> parts{random_partial_fn(rng, 3, 6), random_partial_fn(rng, 3, 6)};
    const auto s0 = exact_dtsize(parts[0]).size;
    const auto s1 = exact_dtsize(parts[1]).size;
    EXPECT_EQ(exact_dtsize(xor_product(parts)).size, s0 * s1);
  }
}

TEST(ExactDtSize, Caps) {
  OracleCaps caps;
  caps.max_points = 4;
  EXPECT_THROW(exact_dtsize(and_n(3), caps), Error);
  caps = OracleCaps{};
  caps.max_width = 2;
  EXPECT_THROW(exact_dtsize(and_n(3), caps), Error);
}

TEST(Pareto, EndpointsAndBruteForce) {
  CounterRng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_partial_fn(rng, 1 + rng.below(4), 10);
    const auto pmf = uniform_on(f);
    const auto curve = pareto_size_error(f, pmf);
    ASSERT_FALSE(curve.points().empty());
    EXPECT_EQ(curve.points().back().error, 0);
    EXPECT_EQ(curve.min_size(0), exact_dtsize(f).size);
    const auto brute = brute_errors(f, pmf, curve.min_size(0));
    DtOracle oracle;
    for (std::size_t s = 1; s < brute.size(); ++s) {
      ASSERT_EQ(curve.min_error(s), brute[s]);
      const auto t = oracle.pareto_tree(f, pmf, s);
      EXPECT_LE(t.size(), s);
      EXPECT_EQ(error_exact(t, f, pmf), brute[s]);
    }
  }
}

TEST(Pareto, GadgetUnderCanonicalPmf) {
  const auto f = Gadget(gen_graph(GraphKind::Complete, 3, 0), 1).hard_support();
  const auto pmf = canonical_hard_pmf(f).pmf;
  const auto curve = pareto_size_error(f, pmf);
  EXPECT_EQ(curve.min_error(1), make_rational(1, 2));
  EXPECT_EQ(curve.min_size(0), exact_dtsize(f).size);
}

TEST(VertexCover, Examples) {
  EXPECT_EQ(exact_vertex_cover(gen_graph(GraphKind::Complete, 3, 0)).k, 2u);
  EXPECT_EQ(exact_vertex_cover(gen_graph(GraphKind::Cycle, 4, 0)).k, 2u);
  EXPECT_EQ(exact_vertex_cover(gen_graph(GraphKind::Complete, 6, 0)).k, 5u);
  EXPECT_EQ(exact_vertex_cover(gen_graph(GraphKind::Path, 5, 0)).k, 2u);
  EXPECT_EQ(exact_vertex_cover(gen_graph(GraphKind::TriangleUnion, 9, 0)).k, 6u);
}

TEST(VertexCover, AgreesWithSubsetEnumeration) {
  CounterRng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = gen_graph(GraphKind::Random, 2 + rng.below(9), rng());
    const auto vc = exact_vertex_cover(g);
    EXPECT_TRUE(g.is_vertex_cover(vc.cover));
    EXPECT_EQ(vc.cover.size(), vc.k);
    std::size_t brute = g.n();
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << g.n()); ++s) {
      std::vector<std::size_t> c;
      for (std::size_t v = 0; v < g.n(); ++v) {
        if ((s >> v) & 1U) c.push_back(v);
      }
      if (c.size() < brute && g.is_vertex_cover(c)) brute = c.size();
    }
    EXPECT_EQ(vc.k, brute);
    const auto greedy = greedy_vc(g);
    EXPECT_TRUE(g.is_vertex_cover(greedy));
    EXPECT_LE(greedy.size(), 2 * vc.k);
  }
}
