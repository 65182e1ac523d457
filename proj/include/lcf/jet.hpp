#pragma once

#include <string>

#include "lcf/coefficient.hpp"
#include "lcf/expr.hpp"

namespace lcf {

// First-order jet a + b*d where the generator d squares to exactly zero.
// Unlike the field elements, a nonzero d has no inverse here; that failure
// is a feature of the algebra, not a precision limit.
class Jet2 {
public:
  Jet2(Coefficient value, Coefficient slope)
      : v_(std::move(value)), d_(std::move(slope)) {
    if (v_.mode() != d_.mode())
      raise(Errc::mode_mismatch, "jet components use different modes");
  }

  static Jet2 constant(const Rational& q, Mode m = Mode::exact) {
    return Jet2(Coefficient::of(q, m), Coefficient::zero(m));
  }
  static Jet2 variable(const Rational& x0, Mode m = Mode::exact) {
    return Jet2(Coefficient::of(x0, m), Coefficient::one(m));
  }
  static Jet2 generator(Mode m = Mode::exact) {
    return Jet2(Coefficient::zero(m), Coefficient::one(m));
  }

  const Coefficient& value() const { return v_; }
  const Coefficient& slope() const { return d_; }
  Mode mode() const { return v_.mode(); }

  friend Jet2 operator+(const Jet2& a, const Jet2& b) {
    return Jet2(a.v_ + b.v_, a.d_ + b.d_);
  }
  friend Jet2 operator-(const Jet2& a, const Jet2& b) {
    return Jet2(a.v_ - b.v_, a.d_ - b.d_);
  }
  friend Jet2 operator-(const Jet2& a) {
    return Jet2(a.v_.negated(), a.d_.negated());
  }
  // (a + b d)(c + e d) = ac + (ae + bc) d, the d^2 term vanishing outright.
  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    return Jet2(a.v_ * b.v_, a.v_ * b.d_ + a.d_ * b.v_);
  }

  Jet2 inverted() const {
    if (v_.is_zero())
      raise(Errc::non_invertible_jet,
            "jet with nilpotent value has no inverse");
    Coefficient iv = v_.inverse();
    return Jet2(iv, (d_ * iv * iv).negated());
  }
  friend Jet2 operator/(const Jet2& a, const Jet2& b) {
    return a * b.inverted();
  }

  friend bool operator==(const Jet2& a, const Jet2& b) {
    return a.v_ == b.v_ && a.d_ == b.d_;
  }

  std::string str() const { return "(" + v_.str() + ", " + d_.str() + ")"; }

private:
  Coefficient v_, d_;
};

inline Jet2 pow_rational(const Jet2& a, const Rational& p) {
  if (p == 0) return Jet2(Coefficient::one(a.mode()), Coefficient::zero(a.mode()));
  if (is_integer(p) && p > 0) {
    BigInt pn = num(p);
    if (pn > 1000000)
      raise(Errc::domain_error, "integer exponent out of supported range");
    Jet2 acc(Coefficient::one(a.mode()), Coefficient::zero(a.mode()));
    Jet2 base = a;
    unsigned long e = static_cast<unsigned long>(pn);
    while (e) {
      if (e & 1) acc = acc * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return acc;
  }
  if (a.value().is_zero()) {
    if (p < 0)
      raise(Errc::non_invertible_jet,
            "negative power of a jet with nilpotent value");
    raise(Errc::domain_error,
          "fractional power of a jet with nilpotent value");
  }
  // value^p with slope p * value^(p-1) * d; in exact mode both powers must
  // land in the rationals (value^(p-1) = value^p / value keeps that true).
  if (a.value().sign() < 0 && den(p) != 1 && (den(p) % 2 == 0 || p < 0))
    raise(Errc::negative_leading_coefficient,
          den(p) % 2 == 0 ? "even root of a negative jet value"
                          : "negative fractional power of a negative jet value");
  Coefficient vp;
  if (a.mode() == Mode::exact) {
    auto exact = rational_pow_exact(a.value().rational(), p);
    if (!exact)
      raise(Errc::numeric_mode_required,
            "value " + a.value().str() + " has no rational power " +
                to_string(p));
    vp = Coefficient(*exact);
  } else {
    vp = Coefficient(decimal_pow(a.value().decimal(), p));
  }
  Coefficient slope =
      Coefficient::of(p, a.mode()) * vp * a.value().inverse() * a.slope();
  return Jet2(vp, slope);
}

inline Jet2 jet_sqrt(const Jet2& a) { return pow_rational(a, Rational(1) / 2); }

inline Jet2 jet_call(expr::Func f, const Jet2& a) {
  using expr::Func;
  const Mode m = a.mode();
  if (m == Mode::exact) {
    // Same centering discipline as the field: exact transcendentals live at
    // the rational points of the unit circle's axis.
    const Coefficient& v = a.value();
    switch (f) {
      case Func::exp:
        if (!v.is_zero())
          raise(Errc::numeric_mode_required, "exact exp expects value 0");
        return Jet2(Coefficient(Rational(1)), a.slope());
      case Func::sin:
        if (!v.is_zero())
          raise(Errc::numeric_mode_required, "exact sin expects value 0");
        return Jet2(Coefficient(Rational(0)), a.slope());
      case Func::cos:
        if (!v.is_zero())
          raise(Errc::numeric_mode_required, "exact cos expects value 0");
        return Jet2(Coefficient(Rational(1)), Coefficient(Rational(0)));
      case Func::ln:
        if (v.sign() <= 0)
          raise(Errc::domain_error, "ln of a non-positive jet value");
        if (!(v.rational() == 1))
          raise(Errc::numeric_mode_required, "exact ln expects value 1");
        return Jet2(Coefficient(Rational(0)), a.slope());
    }
  }
  Decimal v = a.value().decimal();
  Decimal d = a.slope().decimal();
  switch (f) {
    case Func::exp: {
      Decimal e = exp(v);
      return Jet2(Coefficient(e), Coefficient(Decimal(e * d)));
    }
    case Func::ln:
      if (v <= 0) raise(Errc::domain_error, "ln of a non-positive jet value");
      return Jet2(Coefficient(Decimal(log(v))), Coefficient(Decimal(d / v)));
    case Func::sin:
      return Jet2(Coefficient(Decimal(sin(v))),
                  Coefficient(Decimal(cos(v) * d)));
    case Func::cos:
      return Jet2(Coefficient(Decimal(cos(v))),
                  Coefficient(Decimal(-sin(v) * d)));
  }
  raise(Errc::domain_error, "unreachable function");
}

}  // namespace lcf
