#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dtlab/bitvector.hpp"
#include "dtlab/boolfn.hpp"
#include "dtlab/rational.hpp"
#include "dtlab/rng.hpp"

namespace dtlab {

struct Mass {
  BitVector x;
  Rational p;
};

/// Exact probability mass function on an explicit support.
class Pmf {
 public:
  Pmf() = default;
  /// Sorts the support and validates: shared width, distinct points, positive
  /// masses summing to exactly 1. Throws InvalidArgument.
  explicit Pmf(std::vector<Mass> support);

  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return support_.size(); }
  std::span<const Mass> support() const noexcept { return support_; }

  /// Mass of x (zero outside the support).
  Rational mass(const BitVector& x) const;

  /// True when every support point lies in the domain of f.
  bool supported_by(const PartialFn& f) const;

  /// Support as a partial function with labels taken from f. Throws SupportMismatch.
  PartialFn restrict_domain(const PartialFn& f) const;

 private:
  std::size_t width_ = 0;
  std::vector<Mass> support_;
};

/// r-wise product with blocks concatenated in order. Throws SizeCap.
Pmf product_pmf(const Pmf& pmf, std::size_t r, std::size_t cap = kDefaultProductCap);

/// Exact sampler for a pmf or for its r-wise product (sampled block by block,
/// so the product support is never materialized).
class Sampler {
 public:
  explicit Sampler(const Pmf& pmf, std::size_t r = 1);

  BitVector operator()(CounterRng& rng) const;

  std::size_t width() const noexcept { return width_ * r_; }

 private:
  std::size_t draw_index(CounterRng& rng) const;

  std::size_t width_ = 0;
  std::size_t r_ = 1;
  std::vector<BitVector> points_;
  std::vector<std::uint64_t> cumulative_;
};

}  // namespace dtlab
