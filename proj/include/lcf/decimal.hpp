#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>

#include "lcf/rational.hpp"

namespace lcf {

// Variable-precision float; the working precision is set once from the
// engine configuration (see apply_numeric_precision in config.hpp).
using Decimal = bmp::number<bmp::mpfr_float_backend<0>, bmp::et_off>;

inline Decimal to_decimal(const Rational& q) { return Decimal(q); }

// base^p for decimal base and rational exponent. Callers have already
// enforced the sign policy, so a negative base only shows up with an odd
// root denominator and positive exponent.
inline Decimal decimal_pow(const Decimal& base, const Rational& p) {
  if (base == 0) {
    if (p < 0) raise(Errc::division_by_zero, "0 raised to a negative power");
    if (p == 0) return Decimal(1);
    return Decimal(0);
  }
  Decimal pd = to_decimal(p);
  if (base > 0) return pow(base, pd);
  bool odd_num = (num(p) % 2 != 0);
  Decimal mag = pow(Decimal(-base), pd);
  return odd_num ? Decimal(-mag) : mag;
}

// Render trimming trailing zeros; full precision when digits == 0.
inline std::string format_decimal(const Decimal& d, unsigned digits = 0) {
  std::string s = d.str(digits == 0 ? 0 : digits);
  if (s.find('.') != std::string::npos && s.find('e') == std::string::npos) {
    std::size_t last = s.find_last_not_of('0');
    if (s[last] == '.') --last;
    s.erase(last + 1);
  }
  return s;
}

}  // namespace lcf
