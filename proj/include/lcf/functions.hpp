#pragma once

#include <vector>

#include "lcf/expr.hpp"
#include "lcf/number.hpp"

namespace lcf {

// Taylor expansion of f about the standard part a0: the argument splits as
// a0 + v with v infinitesimal, and f(a0 + v) = sum_k d_k/k! v^k. Exact mode
// only admits centers where every d_k is rational (0 for exp/sin/cos, 1 for
// ln); anywhere else requires numeric mode.
inline LCNumber transcendental(expr::Func f, const LCNumber& a,
                               const EngineConfig& cfg = default_config()) {
  using expr::Func;
  if (!a.vanishes() && a.terms().front().exponent < 0)
    raise(Errc::domain_error,
          std::string(expr::func_name(f)) + " of an infinite quantity");
  if (a.vanishes() && a.accuracy().finite() && a.accuracy().value() <= 0)
    raise(Errc::insufficient_precision,
          "argument is unknown at and below eps^0");

  const Mode mode = a.mode();
  Coefficient a0 = standard_part(a);
  LCNumber v = subtract(a, LCNumber::from_coefficient(a0), cfg);

  if (f == Func::ln) {
    if (a0.sign() <= 0)
      raise(Errc::domain_error, "ln of a non-positive standard part");
    if (mode == Mode::exact && !(a0.rational() == 1))
      raise(Errc::numeric_mode_required,
            "exact ln expects a standard part of exactly 1, got " + a0.str());
  } else if (mode == Mode::exact && !a0.is_zero()) {
    raise(Errc::numeric_mode_required,
          std::string("exact ") + expr::func_name(f) +
              " expects a standard part of exactly 0, got " + a0.str());
  }

  // d_k: k-th derivative of f at a0, as a coefficient of the right mode.
  auto deriv = [&](unsigned k) -> Coefficient {
    switch (f) {
      case Func::exp: {
        if (mode == Mode::exact) return Coefficient::one(Mode::exact);
        return Coefficient(Decimal(exp(a0.decimal())));
      }
      case Func::sin:
      case Func::cos: {
        // sin cycle: s, c, -s, -c; cos cycle: c, -s, -c, s.
        unsigned phase = (k + (f == Func::cos ? 1 : 0)) % 4;
        if (mode == Mode::exact) {
          // a0 == 0: sin 0, cos 1.
          switch (phase) {
            case 0: return Coefficient(Rational(0));
            case 1: return Coefficient(Rational(1));
            case 2: return Coefficient(Rational(0));
            default: return Coefficient(Rational(-1));
          }
        }
        Decimal s = sin(a0.decimal()), c = cos(a0.decimal());
        switch (phase) {
          case 0: return Coefficient(s);
          case 1: return Coefficient(c);
          case 2: return Coefficient(Decimal(-s));
          default: return Coefficient(Decimal(-c));
        }
      }
      case Func::ln: {
        if (k == 0) {
          if (mode == Mode::exact) return Coefficient(Rational(0));
          return Coefficient(Decimal(log(a0.decimal())));
        }
        // d^k/dx^k ln = (-1)^(k+1) (k-1)! / x^k
        Rational magnitude = Rational(factorial(k - 1));
        if (k % 2 == 0) magnitude = -magnitude;
        Coefficient base_pow =
            mode == Mode::exact
                ? Coefficient(pow_int(a0.rational(), static_cast<long>(k)))
                : Coefficient(decimal_pow(a0.decimal(), Rational(k)));
        return Coefficient::of(magnitude, mode) * base_pow.inverse();
      }
    }
    raise(Errc::domain_error, "unreachable function");
  };

  if (v.vanishes() && !v.accuracy().finite()) {
    // Purely standard argument: a single exact coefficient.
    return LCNumber::from_coefficient(deriv(0));
  }

  // Leading order of the result: the first non-vanishing derivative term.
  Rational vstep = v.vanishes() ? Rational(1) : v.terms().front().exponent;
  Rational lead(0);
  for (unsigned k = 0; k < 4; ++k) {
    if (!deriv(k).is_zero()) {
      lead = Rational(k) * vstep;
      break;
    }
  }
  Horizon acc = min(Horizon::at(lead + cfg.window), v.accuracy());
  Rational target = acc.value();  // both bounds are finite here

  LCNumber sum = LCNumber::zero(mode);
  LCNumber power = LCNumber::one(mode);
  Rational kfact(1);
  for (unsigned k = 0;; ++k) {
    if (k > 0) {
      if (Rational(k) * vstep >= target) break;
      power = truncate(multiply(power, v, cfg), target);
      if (power.vanishes()) break;
      kfact *= k;
    }
    Coefficient dk = deriv(k);
    if (dk.is_zero()) continue;
    LCNumber term = multiply(
        power, LCNumber::from_coefficient(dk.scaled(Rational(1) / kfact)), cfg);
    sum = add(sum, term, cfg);
  }
  return sum.with_accuracy(acc);
}

}  // namespace lcf
