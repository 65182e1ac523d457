#pragma once

#include <string>
#include <utility>
#include <variant>

#include "lcf/config.hpp"
#include "lcf/decimal.hpp"
#include "lcf/error.hpp"
#include "lcf/rational.hpp"

namespace lcf {

// A single series coefficient: rational in exact mode, decimal in numeric
// mode. Mixing the two in one operation is a ModeMismatch, never a silent
// promotion.
class Coefficient {
public:
  Coefficient() : v_(Rational(0)) {}
  explicit Coefficient(Rational q) : v_(std::move(q)) {}
  explicit Coefficient(Decimal d) : v_(std::move(d)) {}

  static Coefficient zero(Mode m) { return of(Rational(0), m); }
  static Coefficient one(Mode m) { return of(Rational(1), m); }
  static Coefficient of(const Rational& q, Mode m) {
    return m == Mode::exact ? Coefficient(q) : Coefficient(to_decimal(q));
  }

  Mode mode() const {
    return std::holds_alternative<Rational>(v_) ? Mode::exact : Mode::numeric;
  }
  bool is_rational() const { return std::holds_alternative<Rational>(v_); }

  const Rational& rational() const {
    if (!is_rational())
      raise(Errc::non_rational_value, "coefficient is a decimal");
    return std::get<Rational>(v_);
  }
  const Decimal& decimal() const { return std::get<Decimal>(v_); }

  Decimal to_dec() const {
    return is_rational() ? to_decimal(std::get<Rational>(v_))
                         : std::get<Decimal>(v_);
  }

  bool is_zero() const {
    return is_rational() ? std::get<Rational>(v_) == 0
                         : std::get<Decimal>(v_) == 0;
  }
  int sign() const {
    if (is_rational()) {
      const Rational& q = std::get<Rational>(v_);
      return q == 0 ? 0 : (q < 0 ? -1 : 1);
    }
    const Decimal& d = std::get<Decimal>(v_);
    return d == 0 ? 0 : (d < 0 ? -1 : 1);
  }

  Coefficient abs() const { return sign() < 0 ? negated() : *this; }
  Coefficient negated() const {
    return is_rational() ? Coefficient(Rational(-std::get<Rational>(v_)))
                         : Coefficient(Decimal(-std::get<Decimal>(v_)));
  }
  Coefficient inverse() const {
    if (is_zero()) raise(Errc::division_by_zero, "coefficient is zero");
    return is_rational()
               ? Coefficient(Rational(1 / std::get<Rational>(v_)))
               : Coefficient(Decimal(1 / std::get<Decimal>(v_)));
  }

  std::string str() const {
    return is_rational() ? to_string(std::get<Rational>(v_))
                         : format_decimal(std::get<Decimal>(v_));
  }

  friend Coefficient operator+(const Coefficient& a, const Coefficient& b) {
    check_modes(a, b, "add");
    return a.is_rational()
               ? Coefficient(Rational(a.rational() + b.rational()))
               : Coefficient(Decimal(a.decimal() + b.decimal()));
  }
  friend Coefficient operator-(const Coefficient& a, const Coefficient& b) {
    check_modes(a, b, "subtract");
    return a.is_rational()
               ? Coefficient(Rational(a.rational() - b.rational()))
               : Coefficient(Decimal(a.decimal() - b.decimal()));
  }
  friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    check_modes(a, b, "multiply");
    return a.is_rational()
               ? Coefficient(Rational(a.rational() * b.rational()))
               : Coefficient(Decimal(a.decimal() * b.decimal()));
  }
  friend Coefficient operator/(const Coefficient& a, const Coefficient& b) {
    return a * b.inverse();
  }

  friend bool operator==(const Coefficient& a, const Coefficient& b) {
    check_modes(a, b, "compare");
    return a.is_rational() ? a.rational() == b.rational()
                           : a.decimal() == b.decimal();
  }

  // Scale by an exact rational regardless of mode.
  Coefficient scaled(const Rational& q) const {
    return *this * Coefficient::of(q, mode());
  }

private:
  static void check_modes(const Coefficient& a, const Coefficient& b,
                          const char* what) {
    if (a.mode() != b.mode())
      raise(Errc::mode_mismatch, std::string("cannot ") + what +
                                     " an exact and a numeric coefficient");
  }

  std::variant<Rational, Decimal> v_;
};

}  // namespace lcf
