#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dtlab {

/// Fixed-width string over {0,1}. Coordinate 0 is the first character of the
/// textual form and the most significant position for ordering.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t width);

  static BitVector from_string(std::string_view bits);

  std::size_t width() const noexcept { return width_; }

  bool operator[](std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  bool get(std::size_t i) const;
  void set(std::size_t i, bool value);
  void flip(std::size_t i);

  BitVector flipped(std::size_t i) const {
    BitVector copy = *this;
    copy.flip(i);
    return copy;
  }

  std::size_t popcount() const noexcept;
  bool none() const noexcept;

  /// Componentwise y <= x.
  bool is_below(const BitVector& other) const noexcept;

  /// Concatenation: this block first.
  BitVector concat(const BitVector& tail) const;
  BitVector slice(std::size_t begin, std::size_t length) const;

  std::string to_string() const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const BitVector& a, const BitVector& b) noexcept {
    return a.width_ == b.width_ && a.words_ == b.words_;
  }
  /// Lexicographic on the textual form (coordinate 0 first); shorter widths first.
  friend bool operator<(const BitVector& a, const BitVector& b) noexcept;

  std::size_t hash() const noexcept;

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const noexcept { return v.hash(); }
};

}  // namespace dtlab

template <>
struct std::hash<dtlab::BitVector> {
  std::size_t operator()(const dtlab::BitVector& v) const noexcept { return v.hash(); }
};
