#include "dtlab/rational.hpp"

#include <cctype>

#include "dtlab/errors.hpp"

namespace dtlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::SizeCap: return "SizeCap";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::EmptyGadget: return "EmptyGadget";
    case ErrorCode::NotACover: return "NotACover";
    case ErrorCode::NoFeasibleEll: return "NoFeasibleEll";
    case ErrorCode::EpsTooLarge: return "EpsTooLarge";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

BigInt numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
BigInt denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

std::string to_string(const Rational& q) {
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

namespace {

BigInt parse_integer(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::Parse, "empty integer");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw Error(ErrorCode::Parse, "bad integer '" + std::string(text) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw Error(ErrorCode::Parse, "bad integer '" + std::string(text) + "'");
    }
  }
  BigInt v(std::string(text.substr(start)));
  return text[0] == '-' ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const BigInt num = parse_integer(text.substr(0, slash));
  const BigInt den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1;
    if (exponent != 0) b *= b;
  }
  return result;
}

namespace {

BigInt pow_int(const BigInt& base, unsigned exponent) {
  BigInt result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

// Largest t with t^r <= v.
BigInt integer_root_floor(const BigInt& v, unsigned r) {
  if (v <= 1) return v;
  BigInt lo = 0;
  BigInt hi = 1;
  while (pow_int(hi, r) <= v) hi *= 2;
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (pow_int(mid, r) <= v) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

RootBounds nth_root_bounds(const Rational& value, unsigned r, unsigned bits) {
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "root of order 0");
  if (value < 0) throw Error(ErrorCode::InvalidArgument, "root of a negative rational");
  const BigInt num = numerator_of(value);
  const BigInt den = denominator_of(value);
  const BigInt num_root = integer_root_floor(num, r);
  const BigInt den_root = integer_root_floor(den, r);
  if (pow_int(num_root, r) == num && pow_int(den_root, r) == den) {
    Rational exact(num_root, den_root);
    return {exact, exact, true};
  }
  // floor(value^(1/r) * 2^bits) = floor((num * 2^(bits r) / den)^(1/r)).
  const BigInt scale = BigInt(1) << bits;
  const BigInt scaled = (num * pow_int(scale, r)) / den;
  const BigInt t = integer_root_floor(scaled, r);
  return {Rational(t, scale), Rational(t + 1, scale), false};
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace dtlab
