#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace dtlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

/// Serialized as "num/den" (always with a denominator, even when it is 1).
std::string to_string(const Rational& q);

/// Accepts "num/den", "num", and a leading minus sign. Throws Error(Parse).
Rational parse_rational(std::string_view text);

BigInt numerator_of(const Rational& q);
BigInt denominator_of(const Rational& q);

Rational pow(const Rational& base, unsigned exponent);

/// Bounds on the r-th root of a nonnegative rational.
///
/// When the root is itself rational, `exact` is set and lower == upper.
/// Otherwise lower < root < upper with upper - lower = 2^-bits.
struct RootBounds {
  Rational lower;
  Rational upper;
  bool exact = false;
};

RootBounds nth_root_bounds(const Rational& value, unsigned r, unsigned bits = 64);

double to_double(const Rational& q);

}  // namespace dtlab
