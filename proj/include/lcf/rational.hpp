#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "lcf/error.hpp"

namespace lcf {

namespace bmp = boost::multiprecision;

using BigInt = bmp::number<bmp::gmp_int, bmp::et_off>;
using Rational = bmp::number<bmp::gmp_rational, bmp::et_off>;

inline BigInt num(const Rational& q) { return numerator(q); }
inline BigInt den(const Rational& q) { return denominator(q); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

inline std::string to_string(const Rational& q) { return q.str(); }

// Floor of a rational; exact for negatives too (-3/2 -> -2).
inline BigInt rational_floor(const Rational& q) {
  BigInt n = num(q), d = den(q);
  BigInt quo = n / d;             // truncates toward zero
  if (n < 0 && quo * d != n) --quo;
  return quo;
}

// Accepts "p", "p/q", and decimal "p.d" forms with optional sign.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&](const std::string& why) -> Rational {
    raise(Errc::number_syntax_error, why + " in '" + std::string(text) + "'");
  };
  std::string s(text);
  if (s.empty()) return bad("empty rational literal");
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') neg = s[pos++] == '-';
  if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
    return bad("expected digits");
  std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  BigInt whole(s.substr(start, pos - start));
  Rational value(whole);
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::size_t fstart = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == fstart) return bad("expected digits after '.'");
    std::string frac = s.substr(fstart, pos - fstart);
    BigInt scale(1);
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    value += Rational(BigInt(frac)) / Rational(scale);
  } else if (pos < s.size() && s[pos] == '/') {
    ++pos;
    std::size_t dstart = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == dstart) return bad("expected digits after '/'");
    BigInt denom(s.substr(dstart, pos - dstart));
    if (denom == 0) return bad("zero denominator");
    value /= Rational(denom);
  }
  if (pos != s.size()) return bad("trailing characters");
  return neg ? Rational(-value) : value;
}

// q^n for machine-size n.
inline Rational pow_int(const Rational& q, long n) {
  if (n == 0) return Rational(1);
  if (q == 0) {
    if (n < 0) raise(Errc::division_by_zero, "0 raised to a negative power");
    return Rational(0);
  }
  bool invert = n < 0;
  unsigned long e = invert ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  Rational base = q, acc(1);
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  if (invert) acc = Rational(1) / acc;
  return acc;
}

// Exact integer n-th root, or nullopt when x is not a perfect power.
// pre: x >= 0, n >= 1.
inline std::optional<BigInt> try_exact_root(const BigInt& x, unsigned long n) {
  BigInt r;
  int exact = mpz_root(r.backend().data(), x.backend().data(), n);
  if (!exact) return std::nullopt;
  return r;
}

// c^p when the value is rational; nullopt when it is irrational.
// Sign policy (shared by field powers and jets): an even root or a negative
// fractional power of a negative base is rejected outright.
inline std::optional<Rational> rational_pow_exact(const Rational& c, const Rational& p) {
  BigInt pn = num(p), pd = den(p);
  if (pd == 1) {
    if (pn > 1000000 || pn < -1000000)
      raise(Errc::domain_error, "integer exponent out of supported range");
    return pow_int(c, static_cast<long>(pn));
  }
  if (c == 0) {
    if (p < 0) raise(Errc::division_by_zero, "0 raised to a negative power");
    return Rational(0);
  }
  Rational base = c;
  bool flip = false;
  if (c < 0) {
    if (pd % 2 == 0)
      raise(Errc::negative_leading_coefficient,
            "even root of a negative quantity");
    if (p < 0)
      raise(Errc::negative_leading_coefficient,
            "negative fractional power of a negative quantity");
    base = -c;
    flip = (pn % 2 != 0);
  }
  unsigned long d = static_cast<unsigned long>(pd);
  auto rn = try_exact_root(num(base), d);
  if (!rn) return std::nullopt;
  auto rd = try_exact_root(den(base), d);
  if (!rd) return std::nullopt;
  Rational root = Rational(*rn) / Rational(*rd);
  if (flip) root = -root;
  if (pn > 1000000 || pn < -1000000)
    raise(Errc::domain_error, "exponent numerator out of supported range");
  return pow_int(root, static_cast<long>(pn));
}

inline BigInt factorial(unsigned n) {
  BigInt f(1);
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return BigInt(0);
  BigInt acc(1);
  for (unsigned i = 0; i < k; ++i) {
    acc *= (n - i);
    acc /= (i + 1);  // always divides exactly at this point
  }
  return acc;
}

// Generalized binomial coefficient C(p, k) for rational p; drives the
// fractional-power series (1+u)^p = sum_k C(p,k) u^k.
inline Rational binomial_rational(const Rational& p, unsigned k) {
  Rational acc(1);
  for (unsigned i = 0; i < k; ++i) {
    acc *= (p - Rational(i));
    acc /= Rational(i + 1);
  }
  return acc;
}

}  // namespace lcf
