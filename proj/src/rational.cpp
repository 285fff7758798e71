#include "pb/rational.hpp"

#include <stdexcept>

namespace pb {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  Rational r(num);
  r /= Rational(den);
  return r;
}

std::string to_fraction_string(const Rational& r) {
  BigInt num = rat_num(r);
  BigInt den = rat_den(r);
  if (den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

std::string to_decimal_string(const Rational& r, unsigned max_digits) {
  BigInt num = rat_num(r);
  const BigInt den = rat_den(r);
  const bool negative = num < 0;
  if (negative) {
    num = -num;
  }
  BigInt integral = num / den;
  BigInt rem = num % den;
  std::string out = negative && (integral != 0 || rem != 0) ? "-" : "";
  out += integral.str();
  if (rem == 0) {
    return out;
  }
  out += '.';
  for (unsigned i = 0; i < max_digits && rem != 0; ++i) {
    rem *= 10;
    out += static_cast<char>('0' + static_cast<int>(rem / den));
    rem %= den;
  }
  return out;
}

}  // namespace pb
