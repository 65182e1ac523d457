#pragma once

#include <string>
#include <vector>

#include "lcf/number.hpp"

namespace lcf {

// Dense univariate polynomial over the rationals, ascending coefficients.
struct Polynomial {
  std::vector<Rational> c;

  static Polynomial zero() { return {}; }
  static Polynomial constant(const Rational& q) {
    Polynomial p;
    if (q != 0) p.c.push_back(q);
    return p;
  }
  static Polynomial identity() { return Polynomial{{Rational(0), Rational(1)}}; }

  bool is_zero() const { return c.empty(); }
  std::size_t degree() const { return c.empty() ? 0 : c.size() - 1; }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  }

  LCNumber eval_lc(const LCNumber& x,
                   const EngineConfig& cfg = default_config()) const {
    LCNumber acc = LCNumber::zero(x.mode());
    for (std::size_t i = c.size(); i-- > 0;) {
      acc = add(multiply(acc, x, cfg),
                LCNumber::from_rational(c[i], x.mode()), cfg);
    }
    return acc;
  }

  Polynomial derivative() const {
    Polynomial d;
    for (std::size_t i = 1; i < c.size(); ++i)
      d.c.push_back(c[i] * Rational(i));
    d.trim();
    return d;
  }

  Polynomial antiderivative() const {
    Polynomial a;
    if (c.empty()) return a;
    a.c.push_back(Rational(0));
    for (std::size_t i = 0; i < c.size(); ++i)
      a.c.push_back(c[i] / Rational(i + 1));
    return a;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Rational(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Rational(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.trim();
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    Polynomial r;
    r.c.resize(a.c.size() + b.c.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j)
        r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
  }
  Polynomial scaled(const Rational& q) const {
    if (q == 0) return zero();
    Polynomial r = *this;
    for (Rational& v : r.c) v *= q;
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.c == b.c;
  }

  std::string str() const {
    if (c.empty()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      Rational mag = c[i] < 0 ? Rational(-c[i]) : c[i];
      if (first) {
        if (c[i] < 0) out += "-";
        first = false;
      } else {
        out += c[i] < 0 ? " - " : " + ";
      }
      if (i == 0) {
        out += to_string(mag);
      } else {
        std::string xs = i == 1 ? "x" : "x^" + std::to_string(i);
        out += (mag == 1) ? xs : to_string(mag) + "*" + xs;
      }
    }
    return out.empty() ? "0" : out;
  }
};

}  // namespace lcf
