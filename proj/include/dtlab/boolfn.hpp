#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dtlab/bitvector.hpp"

namespace dtlab {

inline constexpr std::size_t kDefaultFullCubeWidth = 22;
inline constexpr std::size_t kCertificateWidthCap = 32;
inline constexpr std::size_t kDefaultProductCap = 1'000'000;

/// Partial assignment of coordinates, kept sorted by index.
class Restriction {
 public:
  Restriction() = default;

  /// Adds x_index := bit. Reassigning an index to the same bit is a no-op;
  /// to the opposite bit it throws InvalidArgument.
  void assign(std::size_t index, bool bit);

  std::optional<bool> value(std::size_t index) const;
  bool contains(std::size_t index) const { return value(index).has_value(); }

  bool consistent_with(const BitVector& x) const;
  bool consistent_with(const Restriction& other) const;
  Restriction merged(const Restriction& other) const;

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  std::span<const std::pair<std::size_t, bool>> items() const noexcept { return items_; }

  friend bool operator==(const Restriction&, const Restriction&) = default;

 private:
  std::vector<std::pair<std::size_t, bool>> items_;
};

struct Point {
  BitVector x;
  bool label = false;
};

/// Boolean function on an explicit domain D of {0,1}^width.
///
/// Immutable and cheap to copy. Points are stored in lexicographic order of
/// their bitstrings. An empty domain is a legal value (the result of an
/// inconsistent restriction) and counts as constant.
class PartialFn {
 public:
  PartialFn() : PartialFn(0, {}) {}

  /// Throws InvalidArgument on mixed widths or repeated points.
  PartialFn(std::size_t width, std::vector<Point> points);

  /// Total function on the full cube. Throws SizeCap when width > cap.
  static PartialFn full_cube(std::size_t width, const std::function<bool(const BitVector&)>& pred,
                             std::size_t cap = kDefaultFullCubeWidth);

  std::size_t width() const noexcept;
  std::size_t size() const noexcept;
  bool empty() const noexcept;
  std::span<const Point> points() const noexcept;

  std::optional<bool> find(const BitVector& x) const;
  bool contains(const BitVector& x) const { return find(x).has_value(); }
  /// Throws OutOfDomain.
  bool at(const BitVector& x) const;

  bool is_constant() const noexcept;
  /// Label of a constant nonempty function; nullopt when nonconstant or empty.
  std::optional<bool> constant_value() const noexcept;

  std::vector<BitVector> ones() const;
  std::vector<BitVector> zeros() const;

  friend bool operator==(const PartialFn& a, const PartialFn& b);

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

PartialFn restrict(const PartialFn& f, const Restriction& rho);

/// Points y = x^(+i) of D with f(y) != f(x), in lexicographic order.
std::vector<BitVector> sensitivity_set(const PartialFn& f, const BitVector& x);
std::size_t max_sensitivity(const PartialFn& f);

/// Lexicographically smallest minimum-size set of coordinates whose values in
/// x force f constant. Throws OutOfDomain, or SizeCap for widths above 32.
std::vector<std::size_t> min_certificate(const PartialFn& f, const BitVector& x);
std::size_t certificate_complexity(const PartialFn& f, const BitVector& x);

/// The restriction fixing `coords` to their values in x.
Restriction restriction_from(const BitVector& x, std::span<const std::size_t> coords);

/// XOR of functions on disjoint contiguous blocks, block i after block i-1.
PartialFn xor_product(std::span<const PartialFn> factors, std::size_t cap = kDefaultProductCap);
PartialFn xor_power(const PartialFn& f, std::size_t r, std::size_t cap = kDefaultProductCap);

bool is_monotone(const PartialFn& f);
/// Throws NotMonotone.
std::vector<BitVector> minterms(const PartialFn& f);

/// Text format: a line `n <width>` followed by `<bitstring> <label>` lines.
PartialFn read_partial_fn(std::istream& in);
void write_partial_fn(std::ostream& out, const PartialFn& f);

}  // namespace dtlab
