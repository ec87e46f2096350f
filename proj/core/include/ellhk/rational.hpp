#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "ellhk/errors.hpp"

namespace ellhk {

// Exact arbitrary-precision arithmetic. cpp_rational keeps values reduced
// with a positive denominator, which is exactly the invariant we need.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline BigInt to_integer(const Rational& r, const std::string& what) {
  check(is_integer(r), errc::non_integer_result, what + " is not an integer: " + r.str());
  return numerator(r);
}

inline Rational rational(std::int64_t num, std::int64_t den = 1) {
  check(den != 0, errc::division_by_zero, "rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

/// Non-negative remainder of a mod b (b > 0), as plain integers.
inline std::int64_t pos_mod(std::int64_t a, std::int64_t b) {
  std::int64_t r = a % b;
  return r < 0 ? r + b : r;
}

inline BigInt pos_mod_big(BigInt a, const BigInt& b) {
  BigInt r = a % b;
  return r < 0 ? r + b : r;
}

}  // namespace ellhk
