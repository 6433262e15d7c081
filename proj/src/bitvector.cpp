#include "dtlab/bitvector.hpp"

#include <bit>

#include "dtlab/errors.hpp"

namespace dtlab {

namespace {

constexpr std::size_t word_count(std::size_t width) { return (width + 63) / 64; }

// Reverse bit order inside a word so that coordinate 0 becomes the most
// significant bit; lexicographic comparison then reduces to integer compare.
std::uint64_t reverse_bits(std::uint64_t v) {
  v = ((v >> 1) & 0x5555555555555555ULL) | ((v & 0x5555555555555555ULL) << 1);
  v = ((v >> 2) & 0x3333333333333333ULL) | ((v & 0x3333333333333333ULL) << 2);
  v = ((v >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((v & 0x0F0F0F0F0F0F0F0FULL) << 4);
  v = ((v >> 8) & 0x00FF00FF00FF00FFULL) | ((v & 0x00FF00FF00FF00FFULL) << 8);
  v = ((v >> 16) & 0x0000FFFF0000FFFFULL) | ((v & 0x0000FFFF0000FFFFULL) << 16);
  return (v >> 32) | (v << 32);
}

}  // namespace

BitVector::BitVector(std::size_t width) : width_(width), words_(word_count(width), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i, true);
    } else if (bits[i] != '0') {
      throw Error(ErrorCode::Parse, "bitstring contains '" + std::string(1, bits[i]) + "'");
    }
  }
  return v;
}

bool BitVector::get(std::size_t i) const {
  if (i >= width_) throw Error(ErrorCode::InvalidArgument, "bit index out of range");
  return (*this)[i];
}

void BitVector::set(std::size_t i, bool value) {
  if (i >= width_) throw Error(ErrorCode::InvalidArgument, "bit index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

void BitVector::flip(std::size_t i) {
  if (i >= width_) throw Error(ErrorCode::InvalidArgument, "bit index out of range");
  words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
}

std::size_t BitVector::popcount() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitVector::none() const noexcept {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

bool BitVector::is_below(const BitVector& other) const noexcept {
  if (width_ != other.width_) return false;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

BitVector BitVector::concat(const BitVector& tail) const {
  BitVector out(width_ + tail.width_);
  out.words_.assign(out.words_.size(), 0);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i];
  const std::size_t shift = width_ & 63;
  const std::size_t base = width_ >> 6;
  for (std::size_t i = 0; i < tail.words_.size(); ++i) {
    const std::uint64_t w = tail.words_[i];
    out.words_[base + i] |= w << shift;
    if (shift != 0 && base + i + 1 < out.words_.size()) out.words_[base + i + 1] |= w >> (64 - shift);
  }
  return out;
}

BitVector BitVector::slice(std::size_t begin, std::size_t length) const {
  if (begin + length > width_) throw Error(ErrorCode::InvalidArgument, "slice out of range");
  BitVector out(length);
  for (std::size_t i = 0; i < length; ++i) {
    if ((*this)[begin + i]) out.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  return out;
}

std::string BitVector::to_string() const {
  std::string s(width_, '0');
  for (std::size_t i = 0; i < width_; ++i) {
    if ((*this)[i]) s[i] = '1';
  }
  return s;
}

bool operator<(const BitVector& a, const BitVector& b) noexcept {
  if (a.width_ != b.width_) return a.width_ < b.width_;
  for (std::size_t i = 0; i < a.words_.size(); ++i) {
    if (a.words_[i] != b.words_[i]) return reverse_bits(a.words_[i]) < reverse_bits(b.words_[i]);
  }
  return false;
}

std::size_t BitVector::hash() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ width_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace dtlab
