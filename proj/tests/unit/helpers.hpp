#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "dtlab/boolfn.hpp"
#include "dtlab/dtree.hpp"
#include "dtlab/rng.hpp"

namespace dtlab::testing {

inline PartialFn fn(std::initializer_list<std::pair<const char*, int>> rows) {
  std::vector<Point> points;
  std::size_t width = 0;
  for (const auto& [bits, label] : rows) {
    points.push_back({BitVector::from_string(bits), label != 0});
    width = points.back().x.width();
  }
  return PartialFn(width, std::move(points));
}

inline BitVector bv(const char* bits) { return BitVector::from_string(bits); }

inline PartialFn and_n(std::size_t n) {
  return PartialFn::full_cube(n, [](const BitVector& x) { return x.popcount() == x.width(); });
}

inline PartialFn or_n(std::size_t n) {
  return PartialFn::full_cube(n, [](const BitVector& x) { return x.popcount() > 0; });
}

inline PartialFn parity_n(std::size_t n) {
  return PartialFn::full_cube(n, [](const BitVector& x) { return x.popcount() % 2 == 1; });
}

inline BitVector from_mask(std::uint64_t v, std::size_t width) {
  BitVector x(width);
  for (std::size_t i = 0; i < width; ++i) {
    if ((v >> i) & 1U) x.set(i, true);
  }
  return x;
}

/// Certificate complexity by trying every coordinate subset in order of size.
inline std::size_t brute_certificate(const PartialFn& f, const BitVector& x) {
  const std::size_t n = f.width();
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
      if (static_cast<std::size_t>(__builtin_popcountll(s)) != k) continue;
      Restriction rho;
      for (std::size_t i = 0; i < n; ++i) {
        if ((s >> i) & 1U) rho.assign(i, x[i]);
      }
      if (restrict(f, rho).is_constant()) return k;
    }
  }
  return n;
}

}  // namespace dtlab::testing
