#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcf/coefficient.hpp"
#include "lcf/config.hpp"
#include "lcf/error.hpp"

namespace lcf {

// Accuracy horizon: the exponent from which terms are unknown. Finite h
// means "every term with exponent < h is present"; infinity means the value
// is known exactly.
class Horizon {
public:
  static Horizon infinity() { return Horizon(); }
  static Horizon at(Rational h) {
    Horizon r;
    r.h_ = std::move(h);
    return r;
  }

  bool finite() const { return h_.has_value(); }
  const Rational& value() const { return *h_; }
  bool covers(const Rational& e) const { return !finite() || e < *h_; }

  Horizon plus(const Rational& shift) const {
    return finite() ? at(*h_ + shift) : infinity();
  }
  // Sum where either side may be infinite: an unlimited contribution keeps
  // the other side unlimited (0 * anything is exactly 0, etc.).
  Horizon plus(const Horizon& o) const {
    if (!finite() || !o.finite()) return infinity();
    return at(*h_ + *o.h_);
  }

  friend Horizon min(const Horizon& a, const Horizon& b) {
    if (!a.finite()) return b;
    if (!b.finite()) return a;
    return a.value() < b.value() ? a : b;
  }

  bool operator==(const Horizon& o) const { return h_ == o.h_; }

  std::string str() const {
    return finite() ? "eps^" + to_string(*h_) : "inf";
  }

private:
  std::optional<Rational> h_;
};

struct Term {
  Rational exponent;
  Coefficient coeff;
};

enum class Ordering { less, equal, greater };
enum class Classification { zero, infinitesimal, appreciable, infinite };

inline const char* classification_name(Classification c) {
  switch (c) {
    case Classification::zero: return "Zero";
    case Classification::infinitesimal: return "Infinitesimal";
    case Classification::appreciable: return "Appreciable";
    case Classification::infinite: return "Infinite";
  }
  return "?";
}

// A truncated Levi-Civita field element: finitely many terms c * eps^q with
// strictly ascending rational exponents, nonzero coefficients of one mode
// throughout, plus an accuracy horizon.
class LCNumber {
public:
  using TermMap = std::map<Rational, Coefficient>;

  LCNumber() : mode_(Mode::exact), accuracy_(Horizon::infinity()) {}

  static LCNumber zero(Mode m = Mode::exact) {
    LCNumber x;
    x.mode_ = m;
    return x;
  }
  static LCNumber from_rational(const Rational& q, Mode m = Mode::exact) {
    return monomial(Coefficient::of(q, m), Rational(0));
  }
  static LCNumber from_coefficient(const Coefficient& c) {
    return monomial(c, Rational(0));
  }
  static LCNumber epsilon(Mode m = Mode::exact) {
    return monomial(Coefficient::one(m), Rational(1));
  }
  static LCNumber one(Mode m = Mode::exact) {
    return from_rational(Rational(1), m);
  }
  static LCNumber monomial(const Coefficient& c, const Rational& e) {
    LCNumber x;
    x.mode_ = c.mode();
    if (!c.is_zero()) x.terms_.push_back({e, c});
    return x;
  }

  // Normalizing factory: drops zero coefficients and terms at or past the
  // horizon, checks the term cap, verifies mode uniformity.
  static LCNumber make(Mode m, TermMap terms, Horizon accuracy,
                       const EngineConfig& cfg = default_config()) {
    LCNumber x;
    x.mode_ = m;
    x.accuracy_ = accuracy;
    for (auto& [e, c] : terms) {
      if (c.mode() != m)
        raise(Errc::mode_mismatch, "coefficient mode differs from value mode");
      if (c.is_zero()) continue;
      if (!accuracy.covers(e)) continue;
      x.terms_.push_back({e, c});
    }
    if (x.terms_.size() > cfg.max_terms)
      raise(Errc::term_overflow,
            "value would carry " + std::to_string(x.terms_.size()) +
                " terms (cap " + std::to_string(cfg.max_terms) + ")");
    return x;
  }

  static LCNumber from_terms(Mode m, const std::vector<Term>& terms,
                             Horizon accuracy,
                             const EngineConfig& cfg = default_config()) {
    TermMap map;
    for (const Term& t : terms) {
      auto [it, fresh] = map.emplace(t.exponent, t.coeff);
      if (!fresh) it->second = it->second + t.coeff;
    }
    return make(m, std::move(map), accuracy, cfg);
  }

  Mode mode() const { return mode_; }
  const std::vector<Term>& terms() const { return terms_; }
  const Horizon& accuracy() const { return accuracy_; }

  // No visible terms (the value is zero up to the horizon).
  bool vanishes() const { return terms_.empty(); }
  // Exactly zero: no terms and nothing hiding past a finite horizon.
  bool is_zero() const { return terms_.empty() && !accuracy_.finite(); }

  LCNumber with_accuracy(Horizon h) const {
    LCNumber x;
    x.mode_ = mode_;
    x.accuracy_ = h;
    for (const Term& t : terms_)
      if (h.covers(t.exponent)) x.terms_.push_back(t);
    return x;
  }

  LCNumber negated() const {
    LCNumber x;
    x.mode_ = mode_;
    x.accuracy_ = accuracy_;
    x.terms_.reserve(terms_.size());
    for (const Term& t : terms_) x.terms_.push_back({t.exponent, t.coeff.negated()});
    return x;
  }

private:
  Mode mode_;
  std::vector<Term> terms_;
  Horizon accuracy_;
};

inline const Rational& leading_exponent(const LCNumber& a) {
  if (a.vanishes())
    raise(Errc::zero_has_no_leading_exponent,
          "value has no terms" +
              std::string(a.accuracy().finite()
                              ? " (known only up to " + a.accuracy().str() + ")"
                              : ""));
  return a.terms().front().exponent;
}

inline const Coefficient& leading_coefficient(const LCNumber& a) {
  leading_exponent(a);  // reuse the emptiness check
  return a.terms().front().coeff;
}

// Lower bound on the leading exponent, usable even for term-free values:
// anything hiding below a finite horizon sits at or past it.
inline Horizon lambda_bound(const LCNumber& a) {
  if (!a.vanishes()) return Horizon::at(a.terms().front().exponent);
  return a.accuracy();
}

inline Classification classify(const LCNumber& a) {
  if (a.vanishes()) {
    if (!a.accuracy().finite()) return Classification::zero;
    raise(Errc::insufficient_precision,
          "zero and O(" + a.accuracy().str() + ") are indistinguishable");
  }
  const Rational& lead = a.terms().front().exponent;
  if (lead > 0) return Classification::infinitesimal;
  if (lead == 0) return Classification::appreciable;
  return Classification::infinite;
}

// Coefficient of eps^0, once the value is known to be finite.
inline Coefficient standard_part(const LCNumber& a) {
  for (const Term& t : a.terms()) {
    if (t.exponent < 0)
      raise(Errc::infinite_part,
            "term at eps^" + to_string(t.exponent) + " has no standard part");
    if (t.exponent == 0) return t.coeff;
    break;  // ascending order: first positive exponent ends the scan
  }
  if (!a.accuracy().covers(Rational(0)))
    raise(Errc::insufficient_precision,
          "standard part hidden past horizon " + a.accuracy().str());
  return Coefficient::zero(a.mode());
}

inline LCNumber truncate(const LCNumber& a, const Rational& order) {
  return a.with_accuracy(min(a.accuracy(), Horizon::at(order)));
}

namespace detail {

inline void check_modes(const LCNumber& a, const LCNumber& b) {
  if (a.mode() != b.mode())
    raise(Errc::mode_mismatch, "operands use different coefficient modes");
}

}  // namespace detail

inline LCNumber add(const LCNumber& a, const LCNumber& b,
                    const EngineConfig& cfg = default_config()) {
  detail::check_modes(a, b);
  LCNumber::TermMap map;
  for (const Term& t : a.terms()) map.emplace(t.exponent, t.coeff);
  for (const Term& t : b.terms()) {
    auto [it, fresh] = map.emplace(t.exponent, t.coeff);
    if (!fresh) it->second = it->second + t.coeff;
  }
  return LCNumber::make(a.mode(), std::move(map),
                        min(a.accuracy(), b.accuracy()), cfg);
}

inline LCNumber negate(const LCNumber& a) { return a.negated(); }

inline LCNumber subtract(const LCNumber& a, const LCNumber& b,
                         const EngineConfig& cfg = default_config()) {
  return add(a, negate(b), cfg);
}

inline LCNumber multiply(const LCNumber& a, const LCNumber& b,
                         const EngineConfig& cfg = default_config()) {
  detail::check_modes(a, b);
  // An unknown tail in one factor is scaled by the other factor's leading
  // order, so the product is reliable up to min over both directions.
  Horizon acc =
      min(a.accuracy().plus(lambda_bound(b)), b.accuracy().plus(lambda_bound(a)));
  LCNumber::TermMap map;
  for (const Term& ta : a.terms()) {
    for (const Term& tb : b.terms()) {
      Rational e = ta.exponent + tb.exponent;
      if (!acc.covers(e)) continue;
      Coefficient c = ta.coeff * tb.coeff;
      auto [it, fresh] = map.emplace(std::move(e), c);
      if (!fresh) it->second = it->second + c;
    }
  }
  return LCNumber::make(a.mode(), std::move(map), acc, cfg);
}

inline LCNumber invert(const LCNumber& a,
                       const EngineConfig& cfg = default_config()) {
  if (a.vanishes()) {
    if (a.is_zero()) raise(Errc::division_by_zero, "cannot invert zero");
    raise(Errc::insufficient_precision,
          "cannot invert a value indistinguishable from zero (horizon " +
              a.accuracy().str() + ")");
  }
  const Rational lead = a.terms().front().exponent;
  const Coefficient c = a.terms().front().coeff;

  // Relative knowledge of a, and the window-capped relative target.
  Horizon rel_acc = a.accuracy().plus(-lead);
  Rational target = rel_acc.finite() && rel_acc.value() < cfg.window
                        ? rel_acc.value()
                        : cfg.window;

  // u := a / (c eps^lead) - 1, built by stripping the leading term first so
  // the constant slot cancels exactly in both modes.
  LCNumber tail = subtract(a, LCNumber::monomial(c, lead), cfg);
  LCNumber u = multiply(tail, LCNumber::monomial(c.inverse(), -lead), cfg);

  LCNumber head = LCNumber::monomial(c.inverse(), -lead);
  if (u.vanishes()) {
    // Pure monomial: the geometric series is vacuous. Only a finite input
    // horizon limits the result.
    if (!u.accuracy().finite() && !a.accuracy().finite()) return head;
    return head.with_accuracy(Horizon::at(-lead + target));
  }

  const Rational step = u.terms().front().exponent;  // > 0 by construction
  LCNumber sum = LCNumber::one(a.mode());
  LCNumber power = sum;
  LCNumber neg_u = negate(u);
  for (unsigned k = 1; Rational(k) * step < target; ++k) {
    power = truncate(multiply(power, neg_u, cfg), target);
    if (power.vanishes()) break;
    sum = add(sum, power, cfg);
  }
  LCNumber result = multiply(sum, head, cfg);
  return result.with_accuracy(Horizon::at(-lead + target));
}

inline LCNumber divide(const LCNumber& a, const LCNumber& b,
                       const EngineConfig& cfg = default_config()) {
  detail::check_modes(a, b);
  return multiply(a, invert(b, cfg), cfg);
}

// a^p for rational p. Integer exponents stay exact (up to accuracy
// propagation); fractional exponents expand the binomial series around the
// leading monomial and in exact mode demand a rational leading-coefficient
// root.
inline LCNumber power_rational(const LCNumber& a, const Rational& p,
                               const EngineConfig& cfg = default_config()) {
  if (p == 0) return LCNumber::one(a.mode());
  if (is_integer(p)) {
    BigInt pn = num(p);
    if (pn > 1000000 || pn < -1000000)
      raise(Errc::domain_error, "integer exponent out of supported range");
    long n = static_cast<long>(pn);
    if (n < 0) return invert(power_rational(a, -p, cfg), cfg);
    if (a.vanishes() && a.accuracy().finite()) {
      // (O(eps^h))^n is zero up to eps^(n h).
      return a.with_accuracy(Horizon::at(a.accuracy().value() * p));
    }
    LCNumber acc = LCNumber::one(a.mode());
    LCNumber base = a;
    unsigned long e = static_cast<unsigned long>(n);
    while (e) {
      if (e & 1) acc = multiply(acc, base, cfg);
      e >>= 1;
      if (e) base = multiply(base, base, cfg);
    }
    return acc;
  }

  if (a.vanishes()) {
    if (!a.is_zero())
      raise(Errc::insufficient_precision,
            "fractional power of a value indistinguishable from zero");
    if (p < 0) raise(Errc::division_by_zero, "0 raised to a negative power");
    return LCNumber::zero(a.mode());
  }

  const Rational lead = a.terms().front().exponent;
  const Coefficient c = a.terms().front().coeff;
  if (c.sign() < 0 && (den(p) % 2 == 0 || p < 0)) {
    // Match the exact-root sign policy before any series work.
    raise(Errc::negative_leading_coefficient,
          den(p) % 2 == 0 ? "even root of a negative leading coefficient"
                          : "negative fractional power of a negative leading "
                            "coefficient");
  }

  Coefficient cp;  // c^p in the value's mode
  if (a.mode() == Mode::exact) {
    auto exact = rational_pow_exact(c.rational(), p);
    if (!exact)
      raise(Errc::numeric_mode_required,
            "leading coefficient " + c.str() + " has no rational power " +
                to_string(p));
    cp = Coefficient(*exact);
  } else {
    cp = Coefficient(decimal_pow(c.decimal(), p));
  }

  Horizon rel_acc = a.accuracy().plus(-lead);
  Rational target = rel_acc.finite() && rel_acc.value() < cfg.window
                        ? rel_acc.value()
                        : cfg.window;

  LCNumber tail = subtract(a, LCNumber::monomial(c, lead), cfg);
  LCNumber u = multiply(tail, LCNumber::monomial(c.inverse(), -lead), cfg);

  LCNumber head = LCNumber::monomial(cp, p * lead);
  if (u.vanishes()) {
    if (!u.accuracy().finite() && !a.accuracy().finite()) return head;
    return head.with_accuracy(Horizon::at(p * lead + target));
  }

  const Rational step = u.terms().front().exponent;
  LCNumber sum = LCNumber::one(a.mode());
  LCNumber power = sum;
  for (unsigned k = 1; Rational(k) * step < target; ++k) {
    power = truncate(multiply(power, u, cfg), target);
    if (power.vanishes()) break;
    sum = add(sum,
              multiply(power, LCNumber::from_rational(binomial_rational(p, k),
                                                      a.mode()),
                       cfg),
              cfg);
  }
  LCNumber result = multiply(sum, head, cfg);
  return result.with_accuracy(Horizon::at(p * lead + target));
}

inline Ordering compare(const LCNumber& a, const LCNumber& b,
                        const EngineConfig& cfg = default_config()) {
  LCNumber diff = subtract(a, b, cfg);
  if (diff.vanishes()) {
    if (!diff.accuracy().finite()) return Ordering::equal;
    raise(Errc::insufficient_precision,
          "values agree up to horizon " + diff.accuracy().str());
  }
  const Coefficient& c = diff.terms().front().coeff;
  if (c.mode() == Mode::numeric) {
    Decimal mag = c.decimal() < 0 ? Decimal(-c.decimal()) : c.decimal();
    if (mag <= numeric_tolerance(cfg))
      raise(Errc::insufficient_precision,
            "leading coefficient " + c.str() + " is below comparison tolerance");
  }
  return c.sign() > 0 ? Ordering::greater : Ordering::less;
}

inline LCNumber abs(const LCNumber& a) {
  if (a.vanishes()) return a;
  return a.terms().front().coeff.sign() < 0 ? negate(a) : a;
}

// --- operator sugar over the default configuration -------------------------

inline LCNumber operator+(const LCNumber& a, const LCNumber& b) { return add(a, b); }
inline LCNumber operator-(const LCNumber& a, const LCNumber& b) { return subtract(a, b); }
inline LCNumber operator*(const LCNumber& a, const LCNumber& b) { return multiply(a, b); }
inline LCNumber operator/(const LCNumber& a, const LCNumber& b) { return divide(a, b); }
inline LCNumber operator-(const LCNumber& a) { return negate(a); }

inline LCNumber operator+(const LCNumber& a, const Rational& q) {
  return add(a, LCNumber::from_rational(q, a.mode()));
}
inline LCNumber operator+(const Rational& q, const LCNumber& a) { return a + q; }
inline LCNumber operator-(const LCNumber& a, const Rational& q) {
  return subtract(a, LCNumber::from_rational(q, a.mode()));
}
inline LCNumber operator-(const Rational& q, const LCNumber& a) {
  return subtract(LCNumber::from_rational(q, a.mode()), a);
}
inline LCNumber operator*(const LCNumber& a, const Rational& q) {
  return multiply(a, LCNumber::from_rational(q, a.mode()));
}
inline LCNumber operator*(const Rational& q, const LCNumber& a) { return a * q; }
inline LCNumber operator/(const LCNumber& a, const Rational& q) {
  return divide(a, LCNumber::from_rational(q, a.mode()));
}
inline LCNumber operator/(const Rational& q, const LCNumber& a) {
  return divide(LCNumber::from_rational(q, a.mode()), a);
}

inline bool operator==(const LCNumber& a, const LCNumber& b) {
  return compare(a, b) == Ordering::equal;
}
inline bool operator!=(const LCNumber& a, const LCNumber& b) { return !(a == b); }
inline bool operator<(const LCNumber& a, const LCNumber& b) {
  return compare(a, b) == Ordering::less;
}
inline bool operator>(const LCNumber& a, const LCNumber& b) {
  return compare(a, b) == Ordering::greater;
}
inline bool operator<=(const LCNumber& a, const LCNumber& b) { return !(a > b); }
inline bool operator>=(const LCNumber& a, const LCNumber& b) { return !(a < b); }

}  // namespace lcf
