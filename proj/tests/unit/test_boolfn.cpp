#include <gtest/gtest.h>

#include <sstream>

#include "dtlab/boolfn.hpp"
#include "dtlab/errors.hpp"
#include "dtlab/generate.hpp"
#include "helpers.hpp"

using namespace dtlab;
using namespace dtlab::testing;

TEST(BitVector, TextRoundTripAndOrder) {
  const auto x = bv("0110");
  EXPECT_EQ(x.to_string(), "0110");
  EXPECT_TRUE(x[1]);
  EXPECT_FALSE(x[0]);
  EXPECT_LT(bv("0111"), bv("1000"));
  EXPECT_LT(bv("0011"), bv("0100"));
  EXPECT_FALSE(bv("10") < bv("10"));
  EXPECT_THROW(BitVector::from_string("01x"), Error);
}

TEST(BitVector, OrderAcrossWordBoundary) {
  std::string a(70, '0');
  std::string b(70, '0');
  a[65] = '1';
  b[3] = '1';
  EXPECT_LT(BitVector::from_string(a), BitVector::from_string(b));
  a[3] = '1';
  EXPECT_LT(BitVector::from_string(b), BitVector::from_string(a));
}

TEST(BitVector, ConcatAndSlice) {
  std::string a(61, '1');
  const auto x = BitVector::from_string(a).concat(bv("0101"));
  EXPECT_EQ(x.width(), 65u);
  EXPECT_EQ(x.to_string(), a + "0101");
  EXPECT_EQ(x.slice(60, 5).to_string(), "10101");
}

TEST(Restriction, ConflictingAssignmentThrows) {
  Restriction rho;
  rho.assign(2, true);
  rho.assign(2, true);
  EXPECT_EQ(rho.size(), 1u);
  EXPECT_THROW(rho.assign(2, false), Error);
}

TEST(Restrict, FiltersConsistentPoints) {
  const auto f = fn({{"00", 0}, {"11", 1}});
  Restriction rho;
  rho.assign(0, true);
  const auto g = restrict(f, rho);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.points()[0].x, bv("11"));
  EXPECT_EQ(g.width(), 2u);
  EXPECT_EQ(restrict(f, Restriction{}), f);
}

TEST(Restrict, EmptyResultIsConstant) {
  const auto f = fn({{"00", 0}, {"01", 1}});
  Restriction rho;
  rho.assign(0, true);
  const auto g = restrict(f, rho);
  EXPECT_TRUE(g.empty());
  EXPECT_TRUE(g.is_constant());
  EXPECT_FALSE(g.constant_value().has_value());
}

TEST(Restrict, ComposesOverConsistentRestrictions) {
  CounterRng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_partial_fn(rng, 5, 20);
    Restriction a;
    Restriction b;
    a.assign(rng.below(5), rng.coin());
    b.assign(rng.below(5), rng.coin());
    if (!a.consistent_with(b)) continue;
    EXPECT_EQ(restrict(restrict(f, a), b), restrict(f, a.merged(b)));
  }
}

TEST(Sensitivity, RelativeToDomain) {
  const auto f = fn({{"000", 0}, {"100", 1}, {"110", 0}});
  const auto s = sensitivity_set(f, bv("100"));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], bv("000"));
  EXPECT_EQ(s[1], bv("110"));
  EXPECT_THROW(sensitivity_set(f, bv("111")), Error);
}

TEST(Sensitivity, ConstantAndParity) {
  const auto one = PartialFn::full_cube(3, [](const BitVector&) { return true; });
  EXPECT_TRUE(sensitivity_set(one, bv("010")).empty());
  EXPECT_EQ(max_sensitivity(one), 0u);
  EXPECT_EQ(max_sensitivity(parity_n(3)), 3u);
}

TEST(Certificate, Examples) {
  const auto one = PartialFn::full_cube(3, [](const BitVector&) { return true; });
  EXPECT_EQ(certificate_complexity(one, bv("101")), 0u);
  EXPECT_EQ(certificate_complexity(and_n(3), bv("111")), 3u);
  EXPECT_EQ(certificate_complexity(and_n(3), bv("011")), 1u);
  EXPECT_THROW(certificate_complexity(and_n(3), bv("11")), Error);
}

TEST(Certificate, LexicographicallySmallestMinimum) {
  // x = 000 with label 0; OR needs one zero among each 1-input's ones.
  const auto f = or_n(3);
  const auto c = min_certificate(f, bv("000"));
  EXPECT_EQ(c, (std::vector<std::size_t>{0, 1, 2}));
  const auto g = fn({{"000", 0}, {"110", 1}, {"011", 1}});
  EXPECT_EQ(min_certificate(g, bv("000")), (std::vector<std::size_t>{1}));
}

TEST(Certificate, MatchesBruteForceAndForcesConstant) {
  CounterRng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_partial_fn(rng, 5, 24);
    for (const auto& p : f.points()) {
      const auto cert = min_certificate(f, p.x);
      ASSERT_EQ(cert.size(), brute_certificate(f, p.x));
      const auto sub = restrict(f, restriction_from(p.x, cert));
      ASSERT_TRUE(sub.is_constant());
      ASSERT_EQ(sub.constant_value(), p.label);
    }
  }
}

TEST(Certificate, RejectsWideFunctions) {
  std::vector<Point> pts{{BitVector(33), false}, {BitVector(33).flipped(0), true}};
  const PartialFn f(33, pts);
  EXPECT_THROW(certificate_complexity(f, BitVector(33)), Error);
}

TEST(XorPower, SizesAndLabels) {
  const auto f = fn({{"00", 0}, {"01", 1}, {"11", 1}});
  EXPECT_EQ(xor_power(f, 1), f);
  const auto g = xor_power(f, 2);
  EXPECT_EQ(g.size(), 9u);
  EXPECT_EQ(g.width(), 4u);
  EXPECT_EQ(g.at(bv("0111")), false);
  EXPECT_EQ(g.at(bv("0001")), true);
  EXPECT_THROW(xor_power(f, 13, 1000), Error);
}

TEST(XorPower, LabelIsXorOfBlocks) {
  CounterRng rng(3);
  const auto f = random_partial_fn(rng, 4, 12);
  const auto g = xor_power(f, 3);
  for (int i = 0; i < 1000; ++i) {
    const auto& p = g.points()[rng.below(g.size())];
    bool expect = false;
    for (std::size_t b = 0; b < 3; ++b) expect ^= f.at(p.x.slice(4 * b, 4));
    ASSERT_EQ(p.label, expect);
  }
}

TEST(Minterms, Examples) {
  const auto m = minterms(or_n(2));
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0], bv("01"));
  EXPECT_EQ(m[1], bv("10"));
  EXPECT_EQ(minterms(and_n(3)), std::vector<BitVector>{bv("111")});
  const auto zero = PartialFn::full_cube(3, [](const BitVector&) { return false; });
  EXPECT_TRUE(minterms(zero).empty());
  EXPECT_FALSE(is_monotone(fn({{"0", 1}, {"1", 0}})));
  EXPECT_THROW(minterms(parity_n(2)), Error);
}

TEST(Minterms, OnlyComparablePairsMatter) {
  // 01 and 10 are incomparable, so this partial function is monotone.
  const auto f = fn({{"01", 1}, {"10", 0}});
  EXPECT_TRUE(is_monotone(f));
  EXPECT_EQ(minterms(f), std::vector<BitVector>{bv("01")});
}

TEST(TextFormat, RoundTrip) {
  const auto f = fn({{"010", 1}, {"111", 0}});
  std::stringstream ss;
  write_partial_fn(ss, f);
  EXPECT_EQ(ss.str(), "n 3\n010 1\n111 0\n");
  EXPECT_EQ(read_partial_fn(ss), f);
  std::stringstream bad("n 3\n01 1\n");
  EXPECT_THROW(read_partial_fn(bad), Error);
}
