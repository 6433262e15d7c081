#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "dtlab/errors.hpp"
#include "dtlab/gadget.hpp"
#include "dtlab/generate.hpp"
#include "helpers.hpp"

using namespace dtlab;
using namespace dtlab::testing;

namespace {

Graph k3() { return gen_graph(GraphKind::Complete, 3, 0); }
Graph single_edge() { return Graph(2, {{0, 1}}); }

std::vector<std::size_t> all_vertices(const Graph& g) {
  std::vector<std::size_t> v(g.n());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

}  // namespace

TEST(Graph, Generators) {
  EXPECT_EQ(k3().m(), 3u);
  const auto c4 = gen_graph(GraphKind::Cycle, 4, 0);
  EXPECT_EQ(c4.m(), 4u);
  EXPECT_EQ(c4.max_degree(), 2u);
  const auto a = gen_graph(GraphKind::RandomRegular, 6, 42, 3);
  const auto b = gen_graph(GraphKind::RandomRegular, 6, 42, 3);
  EXPECT_EQ(a, b);
  for (std::size_t v = 0; v < 6; ++v) EXPECT_EQ(a.degree(v), 3u);
  EXPECT_THROW(gen_graph(GraphKind::RandomRegular, 5, 1, 3), Error);
  const auto t = gen_graph(GraphKind::TriangleUnion, 6, 0);
  EXPECT_EQ(t.m(), 6u);
  EXPECT_THROW(Graph(3, {{0, 0}}), Error);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), Error);
}

TEST(Graph, IsomorphismClassCounts) {
  // Unlabeled graphs with at least one edge: 1, 3, 10, 33 on 2..5 vertices.
  EXPECT_EQ(all_graphs(2).size(), 1u);
  EXPECT_EQ(all_graphs(3).size(), 3u);
  EXPECT_EQ(all_graphs(4).size(), 10u);
  EXPECT_EQ(all_graphs(5).size(), 33u);
}

TEST(Graph, TextRoundTrip) {
  std::stringstream ss;
  write_graph(ss, k3());
  EXPECT_EQ(ss.str(), "p 3 3\ne 1 2\ne 1 3\ne 2 3\n");
  EXPECT_EQ(read_graph(ss), k3());
  std::stringstream bad("p 3 2\ne 1 2\n");
  EXPECT_THROW(read_graph(bad), Error);
}

TEST(IsEdge, Examples) {
  EXPECT_TRUE(is_edge(k3(), bv("110")));
  EXPECT_FALSE(is_edge(k3(), bv("111")));
  EXPECT_FALSE(is_edge(gen_graph(GraphKind::Path, 3, 0), bv("101")));
  EXPECT_THROW(is_edge(k3(), bv("11")), Error);
}

TEST(EllIsEdge, Examples) {
  const Gadget g(k3(), 2);
  const auto x = g.indicator(0);
  EXPECT_EQ(x.to_string(), "110110110");
  EXPECT_TRUE(g.evaluate(x));
  for (std::size_t i = 0; i < x.width(); ++i) {
    if (x[i]) EXPECT_FALSE(g.evaluate(x.flipped(i)));
  }
  EXPECT_FALSE(g.evaluate(BitVector(9)));
  // Extra ones in the copies outside the edge do not matter.
  EXPECT_TRUE(g.evaluate(bv("110111111")));
  EXPECT_THROW(Gadget(Graph(3, {}), 1), Error);
}

TEST(HardSupport, Sizes) {
  const auto f = Gadget(k3(), 1).hard_support();
  EXPECT_EQ(f.size(), 15u);
  EXPECT_EQ(f.ones().size(), 3u);
  EXPECT_EQ(Gadget(single_edge(), 1).hard_support().size(), 5u);
  EXPECT_EQ(Gadget(k3(), 2).hard_support().size(), 21u);
}

TEST(HardSupport, RestrictionDropsIndicator) {
  const Gadget g(k3(), 1);
  const auto f = g.hard_support();
  const auto x = g.indicator(0);  // edge {1,2}
  Restriction rho;
  rho.assign(0, false);
  const auto sub = restrict(f, rho);
  EXPECT_FALSE(sub.contains(x));
  EXPECT_TRUE(sub.contains(x.flipped(0)));
  // Independent count: points of the support with coordinate 0 equal to 0.
  std::size_t expect = 0;
  for (const auto& p : f.points()) expect += p.x[0] ? 0 : 1;
  EXPECT_EQ(sub.size(), expect);
}

TEST(HardSupport, SensitivityOfIndicatorsAndNeighbors) {
  const Gadget g(k3(), 1);
  const auto f = g.hard_support();
  const auto x = g.indicator(0);
  EXPECT_EQ(sensitivity_set(f, x).size(), 4u);
  const auto y = x.flipped(1);
  EXPECT_EQ(sensitivity_set(f, y), std::vector<BitVector>{x});
  EXPECT_EQ(max_sensitivity(Gadget(k3(), 2).hard_support()), 6u);
  EXPECT_EQ(certificate_complexity(f, x), 4u);
}

TEST(HardSupport, CertEqualsSensUnderRandomRestrictions) {
  CounterRng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const auto graph = gen_graph(GraphKind::Random, 5, rng());
    const Gadget g(graph, 1 + trial % 3);
    const auto f = g.hard_support();
    for (std::size_t e = 0; e < graph.m(); ++e) {
      const auto x = g.indicator(e);
      for (int k = 0; k < 20; ++k) {
        const auto sub = restrict(f, random_path_restriction(rng, x, g.width()));
        ASSERT_EQ(certificate_complexity(sub, x), sensitivity_set(sub, x).size());
      }
    }
  }
}

TEST(CanonicalPmf, GadgetMasses) {
  const Gadget g(k3(), 1);
  const auto f = g.hard_support();
  const auto c = canonical_hard_pmf(f);
  EXPECT_FALSE(c.degenerate);
  EXPECT_EQ(c.pmf.size(), 15u);
  Rational ones = 0;
  for (const auto& m : c.pmf.support()) {
    if (f.at(m.x)) {
      EXPECT_EQ(m.p, make_rational(1, 6));
      ones += m.p;
    } else {
      EXPECT_EQ(m.p, make_rational(1, 24));
    }
  }
  EXPECT_EQ(ones, make_rational(1, 2));
  EXPECT_EQ(error_exact(DecisionTree::leaf(false), f, c.pmf), make_rational(1, 2));
}

TEST(CanonicalPmf, SmallCases) {
  const auto c = canonical_hard_pmf(fn({{"0", 0}, {"1", 1}}));
  ASSERT_EQ(c.pmf.size(), 2u);
  EXPECT_EQ(c.pmf.support()[0].p, make_rational(1, 2));
  EXPECT_EQ(c.pmf.support()[1].p, make_rational(1, 2));
  EXPECT_THROW(canonical_hard_pmf(fn({{"0", 1}, {"1", 1}})), Error);

  // 11 has no sensitive neighbor; its neighbor-branch mass stays on it.
  const auto d = canonical_hard_pmf(fn({{"00", 0}, {"01", 1}, {"11", 1}}));
  EXPECT_TRUE(d.degenerate);
  EXPECT_EQ(d.pmf.mass(bv("11")), make_rational(1, 2));
  EXPECT_EQ(d.pmf.mass(bv("00")), make_rational(1, 4));
}

TEST(CanonicalPmf, RandomSumsToOne) {
  CounterRng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_partial_fn(rng, 4, 12);
    if (f.is_constant()) continue;
    const auto c = canonical_hard_pmf(f);
    Rational total = 0;
    Rational ones = 0;
    for (const auto& m : c.pmf.support()) {
      total += m.p;
      if (f.at(m.x)) ones += m.p;
    }
    EXPECT_EQ(total, 1);
    if (!c.degenerate) EXPECT_EQ(ones, make_rational(1, 2));
  }
}

TEST(ProductPmf, Sizes) {
  const Pmf coin({{bv("0"), make_rational(1, 2)}, {bv("1"), make_rational(1, 2)}});
  const auto p2 = product_pmf(coin, 2);
  ASSERT_EQ(p2.size(), 4u);
  for (const auto& m : p2.support()) EXPECT_EQ(m.p, make_rational(1, 4));
  const auto k3pmf = canonical_hard_pmf(Gadget(k3(), 1).hard_support()).pmf;
  EXPECT_EQ(product_pmf(k3pmf, 1).size(), 15u);
  EXPECT_EQ(product_pmf(k3pmf, 2).size(), 225u);
  EXPECT_THROW(product_pmf(k3pmf, 6), Error);
}

TEST(Sampler, ChiSquaredSmoke) {
  const auto pmf = canonical_hard_pmf(Gadget(k3(), 1).hard_support()).pmf;
  const Sampler sampler(pmf);
  CounterRng rng(77);
  std::map<BitVector, int> counts;
  const int n = 24000;
  for (int i = 0; i < n; ++i) ++counts[sampler(rng)];
  double chi2 = 0;
  for (const auto& m : pmf.support()) {
    const double expect = to_double(m.p) * n;
    const double diff = counts[m.x] - expect;
    chi2 += diff * diff / expect;
  }
  // 14 degrees of freedom; 36.12 is the 0.999 quantile.
  EXPECT_LT(chi2, 36.12);
  const Sampler pair(pmf, 2);
  EXPECT_EQ(pair(rng).width(), 12u);
}

TEST(VcTree, Examples) {
  const Gadget g(k3(), 1);
  const std::vector<std::size_t> cover{0, 1};
  const auto t = vc_upper_tree(g, cover);
  EXPECT_TRUE(check_full_cube(g, t).exact);
  EXPECT_LE(t.size(), 19u);
  EXPECT_EQ(vc_upper_bound(g, 2), 19u);

  const Gadget e(single_edge(), 1);
  const std::vector<std::size_t> one{0};
  const auto te = vc_upper_tree(e, one);
  EXPECT_TRUE(check_full_cube(e, te).exact);
  EXPECT_LE(te.size(), 6u);

  const auto all = vc_upper_tree(g, all_vertices(k3()));
  EXPECT_TRUE(check_full_cube(g, all).exact);
  EXPECT_LE(all.size(), 21u);

  const std::vector<std::size_t> bad{0};
  EXPECT_THROW(vc_upper_tree(g, bad), Error);
}

TEST(VcTree, LeafAnalysisAgreesWithEnumeration) {
  CounterRng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto graph = gen_graph(GraphKind::Random, 4, rng());
    const Gadget g(graph, 1 + trial % 3);
    const auto t = vc_upper_tree(g, all_vertices(graph));
    const auto enumerated = check_full_cube(g, t, 22);
    const auto analysed = check_full_cube(g, t, 0);
    EXPECT_EQ(enumerated.method, CubeCheck::Enumerated);
    EXPECT_EQ(analysed.method, CubeCheck::LeafAnalysis);
    EXPECT_TRUE(enumerated.exact);
    EXPECT_TRUE(analysed.exact);
    // A corrupted tree must fail both checks.
    DecisionTree broken = t;
    const auto leaf = broken.leaves().front();
    broken.set_label(leaf, !broken.node(leaf).label);
    EXPECT_FALSE(check_full_cube(g, broken, 22).exact);
    EXPECT_FALSE(check_full_cube(g, broken, 0).exact);
  }
}

TEST(VcTree, WideGadgetUsesLeafAnalysis) {
  const Gadget g(gen_graph(GraphKind::Cycle, 5, 0), 4);
  const std::vector<std::size_t> cover{0, 1, 3};
  const auto t = vc_upper_tree(g, cover);
  const auto check = check_full_cube(g, t);
  EXPECT_EQ(check.method, CubeCheck::LeafAnalysis);
  EXPECT_TRUE(check.exact);
  EXPECT_LE(t.size(), vc_upper_bound(g, 3));
  EXPECT_TRUE(is_exact_on(t, g.hard_support()));
}

TEST(CutoffTree, ErrorWithinBinomialTail) {
  for (const auto& graph : {single_edge(), k3()}) {
    const Gadget g(graph, 1);
    const std::vector<std::size_t> cover = graph.n() == 2 ? std::vector<std::size_t>{0}
                                                          : std::vector<std::size_t>{0, 1};
    const auto pmf = canonical_hard_pmf(g.hard_support()).pmf;
    for (std::size_t r : {2u, 3u}) {
      const auto f = xor_power(g.hard_support(), r);
      const auto pr = product_pmf(pmf, r);
      for (std::size_t tau = 0; tau <= r; ++tau) {
        const auto t = cutoff_xor_tree(g, r, tau, cover);
        const auto err = error_exact(t, f, pr);
        EXPECT_LE(err, binomial_tail_half(r, tau));
        if (tau == r) EXPECT_EQ(err, 0);
      }
    }
  }
  EXPECT_EQ(binomial_tail_half(2, 1), make_rational(1, 4));
  EXPECT_EQ(binomial_tail_half(3, 0), make_rational(7, 8));
}

TEST(CutoffTree, FullCutoffMatchesStackedTrees) {
  const Gadget g(single_edge(), 1);
  const std::vector<std::size_t> cover{0};
  const auto cut = cutoff_xor_tree(g, 2, 2, cover);
  const auto base = vc_upper_tree(g, cover);
  const std::vector<DecisionTree> trees{base, base};
  const std::vector<std::size_t> widths{4, 4};
  const auto stacked = stacked_xor_tree(trees, widths);
  const auto f = xor_power(g.hard_support(), 2);
  for (const auto& p : f.points()) {
    EXPECT_EQ(cut.evaluate(p.x), stacked.evaluate(p.x));
  }
  EXPECT_THROW(cutoff_xor_tree(g, 2, 3, cover), Error);
}

TEST(Coreset, Examples) {
  const auto h = coreset(or_n(2));
  EXPECT_EQ(h.domain.size(), 3u);
  EXPECT_TRUE(h.domain.contains(bv("00")));
  EXPECT_EQ(h.minterm_count, 2u);
  const auto a = coreset(and_n(3));
  EXPECT_EQ(a.domain, fn({{"111", 1}, {"011", 0}, {"101", 0}, {"110", 0}}));
  const auto z = coreset(PartialFn::full_cube(2, [](const BitVector&) { return false; }));
  EXPECT_TRUE(z.empty);
  EXPECT_THROW(coreset(parity_n(2)), Error);
}

TEST(Coreset, SizeWithinBound) {
  CounterRng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_monotone_fn(rng, 1 + rng.below(5));
    ASSERT_TRUE(is_monotone(f));
    const auto h = coreset(f);
    EXPECT_LE(h.domain.size(), h.minterm_count * (h.max_sensitivity + 1));
  }
}
