#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace pb {

using BigInt = boost::multiprecision::cpp_int;

// Every amount of virtual money, probability and likelihood in this library
// is an exact rational; there is no floating point on any rule or likelihood
// path. cpp_rational keeps values in lowest terms with a positive
// denominator, which is exactly the invariant the rest of the code relies on.
using Rational = boost::multiprecision::cpp_rational;

// Builds num/den, normalising sign. Throws std::domain_error for den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);

inline BigInt rat_num(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline BigInt rat_den(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

// "3/4", or just "5" when the denominator is 1.
std::string to_fraction_string(const Rational& r);

// Decimal expansion. Exact when it terminates within max_digits fractional
// digits, truncated after max_digits otherwise; deterministic either way.
std::string to_decimal_string(const Rational& r, unsigned max_digits = 12);

}  // namespace pb
