#pragma once

#include <string>

#include "lcf/expr.hpp"
#include "lcf/functions.hpp"
#include "lcf/jet.hpp"
#include "lcf/number.hpp"
#include "lcf/polynomial.hpp"

namespace lcf::expr {

namespace detail {

inline std::string span_suffix(const Span& s) {
  if (s.begin == 0 && s.end == 0) return "";
  return " (expression offsets " + std::to_string(s.begin) + ".." +
         std::to_string(s.end) + ")";
}

}  // namespace detail

// Evaluate an AST over any algebra exposing literal/add/sub/mul/div/pow/
// sqrt/call. Errors thrown by an operation get the offending node's source
// span appended once.
template <class Alg>
typename Alg::Value evaluate_with(const Alg& alg, const NodePtr& n,
                                  const typename Alg::Value& x) {
  try {
    switch (n->kind) {
      case Kind::variable: return x;
      case Kind::literal: return alg.literal(n->value);
      case Kind::add:
        return alg.add(evaluate_with(alg, n->a, x), evaluate_with(alg, n->b, x));
      case Kind::sub:
        return alg.sub(evaluate_with(alg, n->a, x), evaluate_with(alg, n->b, x));
      case Kind::mul:
        return alg.mul(evaluate_with(alg, n->a, x), evaluate_with(alg, n->b, x));
      case Kind::div:
        return alg.div(evaluate_with(alg, n->a, x), evaluate_with(alg, n->b, x));
      case Kind::pow:
        return alg.pow(evaluate_with(alg, n->a, x), n->exponent);
      case Kind::sqrt:
        return alg.sqrt(evaluate_with(alg, n->a, x));
      case Kind::call:
        return alg.call(n->func, evaluate_with(alg, n->a, x));
    }
  } catch (const Error& e) {
    std::string msg = e.what();
    if (msg.find("expression offsets") == std::string::npos)
      throw Error(e.code(), msg + detail::span_suffix(n->span));
    throw;
  }
  raise(Errc::domain_error, "unreachable expression kind");
}

// --- algebras ---------------------------------------------------------------

struct LcAlgebra {
  using Value = LCNumber;
  Mode mode = Mode::exact;
  EngineConfig cfg = default_config();

  Value literal(const Rational& q) const {
    return LCNumber::from_rational(q, mode);
  }
  Value add(const Value& a, const Value& b) const { return lcf::add(a, b, cfg); }
  Value sub(const Value& a, const Value& b) const {
    return lcf::subtract(a, b, cfg);
  }
  Value mul(const Value& a, const Value& b) const {
    return lcf::multiply(a, b, cfg);
  }
  Value div(const Value& a, const Value& b) const { return lcf::divide(a, b, cfg); }
  Value pow(const Value& a, const Rational& p) const {
    return lcf::power_rational(a, p, cfg);
  }
  Value sqrt(const Value& a) const {
    return lcf::power_rational(a, Rational(1) / 2, cfg);
  }
  Value call(Func f, const Value& a) const {
    return lcf::transcendental(f, a, cfg);
  }
};

struct RationalAlgebra {
  using Value = Rational;

  Value literal(const Rational& q) const { return q; }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value div(const Value& a, const Value& b) const {
    if (b == 0) raise(Errc::division_by_zero, "rational division by zero");
    return a / b;
  }
  Value pow(const Value& a, const Rational& p) const {
    auto exact = rational_pow_exact(a, p);
    if (!exact)
      raise(Errc::non_rational_value,
            to_string(a) + "^" + to_string(p) + " is irrational");
    return *exact;
  }
  Value sqrt(const Value& a) const { return pow(a, Rational(1) / 2); }
  Value call(Func f, const Value& a) const {
    // Only the classical exact points survive in pure rational arithmetic.
    switch (f) {
      case Func::exp:
        if (a == 0) return Rational(1);
        break;
      case Func::ln:
        if (a <= 0) raise(Errc::domain_error, "ln of a non-positive rational");
        if (a == 1) return Rational(0);
        break;
      case Func::sin:
        if (a == 0) return Rational(0);
        break;
      case Func::cos:
        if (a == 0) return Rational(1);
        break;
    }
    raise(Errc::non_rational_value,
          std::string(func_name(f)) + "(" + to_string(a) + ") is irrational");
  }
};

struct JetAlgebra {
  using Value = Jet2;
  Mode mode = Mode::exact;

  Value literal(const Rational& q) const { return Jet2::constant(q, mode); }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value div(const Value& a, const Value& b) const { return a / b; }
  Value pow(const Value& a, const Rational& p) const {
    return pow_rational(a, p);
  }
  Value sqrt(const Value& a) const { return jet_sqrt(a); }
  Value call(Func f, const Value& a) const { return jet_call(f, a); }
};

struct PolynomialAlgebra {
  using Value = Polynomial;

  Value literal(const Rational& q) const { return Polynomial::constant(q); }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value div(const Value& a, const Value& b) const {
    if (b.is_zero()) raise(Errc::division_by_zero, "division by zero polynomial");
    if (b.degree() != 0)
      raise(Errc::domain_error, "division by a non-constant polynomial");
    return a.scaled(Rational(1) / b.c[0]);
  }
  Value pow(const Value& a, const Rational& p) const {
    if (!is_integer(p) || p < 0)
      raise(Errc::domain_error,
            "polynomial power must be a non-negative integer");
    BigInt pn = num(p);
    if (pn > 64) raise(Errc::domain_error, "polynomial power too large");
    Value acc = Polynomial::constant(Rational(1));
    for (BigInt i = 0; i < pn; ++i) acc = acc * a;
    return acc;
  }
  Value sqrt(const Value&) const {
    raise(Errc::domain_error, "sqrt leaves the polynomial ring");
  }
  Value call(Func f, const Value&) const {
    raise(Errc::domain_error,
          std::string(func_name(f)) + " leaves the polynomial ring");
  }
};

// --- public wrappers ---------------------------------------------------------

inline LCNumber evaluate(const NodePtr& f, const LCNumber& x,
                         const EngineConfig& cfg = default_config()) {
  LcAlgebra alg{x.mode(), cfg};
  return evaluate_with(alg, f, x);
}

inline Rational evaluate_rational(const NodePtr& f, const Rational& x) {
  RationalAlgebra alg;
  return evaluate_with(alg, f, x);
}

inline Jet2 evaluate_jet(const NodePtr& f, const Rational& x0,
                         Mode mode = Mode::exact) {
  JetAlgebra alg{mode};
  return evaluate_with(alg, f, Jet2::variable(x0, mode));
}

// Lower an expression to an honest polynomial, or fail loudly.
inline Polynomial to_polynomial(const NodePtr& f) {
  PolynomialAlgebra alg;
  return evaluate_with(alg, f, Polynomial::identity());
}

}  // namespace lcf::expr
