#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ilconv {

// Exact arithmetic everywhere: no floating point is used anywhere in the
// library. Densities, deltas, deviations and radii are all Rational.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

// Canonical text form: "p" when the value is integral, "p/q" otherwise.
inline std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// Least j >= 1 with 1/j <= eps. Requires eps > 0.
inline std::uint64_t ceil_inverse(const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("ceil_inverse requires eps > 0");
  const BigInt num = boost::multiprecision::numerator(eps);
  const BigInt den = boost::multiprecision::denominator(eps);
  BigInt j = (den + num - 1) / num; // ceil(den/num)
  if (j < 1) j = 1;
  if (j > BigInt(UINT64_MAX)) throw std::invalid_argument("epsilon too small");
  return j.convert_to<std::uint64_t>();
}

} // namespace ilconv
