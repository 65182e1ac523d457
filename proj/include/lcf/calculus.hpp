#pragma once

#include <json.hpp>

#include <concepts>
#include <string>
#include <utility>
#include <vector>

#include "lcf/eval.hpp"
#include "lcf/number_io.hpp"

namespace lcf::calculus {

// (f(x0 + dx) - f(x0)) / dx over the field, for an actual infinitesimal
// increment. No limit is taken; the quotient keeps its infinitesimal tail.
inline LCNumber difference_quotient(const expr::NodePtr& f, const Rational& x0,
                                    const LCNumber& dx,
                                    const EngineConfig& cfg = default_config()) {
  bool ok = !dx.vanishes() && classify(dx) == Classification::infinitesimal;
  if (!ok)
    raise(Errc::not_infinitesimal,
          "increment must be a nonzero infinitesimal, got " + render(dx));
  LCNumber x = LCNumber::from_rational(x0, dx.mode());
  LCNumber fx = expr::evaluate(f, x, cfg);
  LCNumber fxdx = expr::evaluate(f, add(x, dx, cfg), cfg);
  return divide(subtract(fxdx, fx, cfg), dx, cfg);
}

// The assignable slope: standard part of the quotient at dx = eps.
inline Coefficient derivative(const expr::NodePtr& f, const Rational& x0,
                              const EngineConfig& cfg = default_config(),
                              Mode mode = Mode::exact) {
  return standard_part(difference_quotient(f, x0, LCNumber::epsilon(mode), cfg));
}

// n-th derivative read off the eps-expansion: n! times the coefficient of
// eps^n in f(x0 + eps).
inline Coefficient nth_derivative(const expr::NodePtr& f, const Rational& x0,
                                  unsigned n,
                                  const EngineConfig& cfg = default_config(),
                                  Mode mode = Mode::exact) {
  LCNumber x = add(LCNumber::from_rational(x0, mode), LCNumber::epsilon(mode), cfg);
  LCNumber expansion = expr::evaluate(f, x, cfg);
  Rational order(n);
  if (!expansion.accuracy().covers(order))
    raise(Errc::window_too_small,
          "expansion horizon " + expansion.accuracy().str() +
              " does not reach order " + std::to_string(n) +
              "; raise the truncation window");
  for (const Term& t : expansion.terms()) {
    if (t.exponent >= order) break;
    if (t.exponent < 0 || !is_integer(t.exponent))
      raise(Errc::infinite_part,
            "expansion carries eps^" + to_string(t.exponent) +
                ": derivative of order " + std::to_string(n) +
                " is unbounded at this point");
  }
  Coefficient cn = Coefficient::zero(mode);
  for (const Term& t : expansion.terms())
    if (t.exponent == order) cn = t.coeff;
  return cn.scaled(Rational(factorial(n)));
}

// Leibniz's paired assignable increments: once the ratio L = (d)y/(d)x is
// fixed, any assignable (d)x yields (d)y = L (d)x exactly.
struct DdPair {
  Rational dx;
  Coefficient ratio;
  Coefficient dy;
};

inline DdPair dd_pair(const expr::NodePtr& f, const Rational& x0,
                      const Rational& dx_assignable,
                      const EngineConfig& cfg = default_config(),
                      Mode mode = Mode::exact) {
  if (dx_assignable == 0)
    raise(Errc::zero_argument, "(d)x must be a nonzero assignable quantity");
  Coefficient ratio = derivative(f, x0, cfg, mode);
  Coefficient dy = ratio.scaled(dx_assignable);
  return DdPair{dx_assignable, ratio, dy};
}

inline nlohmann::json dd_pair_to_json(const DdPair& p) {
  nlohmann::json j;
  j["dx"] = to_string(p.dx);
  j["ratio"] = p.ratio.str();
  j["dy"] = p.dy.str();
  return j;
}

// --- tangent lines -----------------------------------------------------------

enum class LineNormalization { slope_intercept, unit_normal, max_coeff };

inline const char* normalization_name(LineNormalization n) {
  switch (n) {
    case LineNormalization::slope_intercept: return "slope_intercept";
    case LineNormalization::unit_normal: return "unit_normal";
    case LineNormalization::max_coeff: return "max_coeff";
  }
  return "?";
}

// A x + B y = C with standard coefficients.
struct LineEq {
  Coefficient A, B, C;
  LineNormalization normalization;
};

namespace detail {

inline std::string signed_coeff(const Coefficient& c, const std::string& unit,
                                bool leading) {
  std::string mag = c.abs().str();
  std::string body;
  if (!unit.empty() && mag == "1") body = unit;
  else if (unit.empty()) body = mag;
  else body = mag + unit;
  if (leading) return (c.sign() < 0 ? "-" : "") + body;
  return (c.sign() < 0 ? " - " : " + ") + body;
}

}  // namespace detail

inline std::string render_line(const LineEq& line) {
  if (line.normalization == LineNormalization::slope_intercept) {
    // A x - y = C  rendered as  y = A x - C.
    std::string out = "y = ";
    bool have_slope = !line.A.is_zero();
    if (have_slope) out += detail::signed_coeff(line.A, "x", true);
    Coefficient intercept = line.C.negated();
    if (!intercept.is_zero() || !have_slope)
      out += have_slope ? detail::signed_coeff(intercept, "", false)
                        : intercept.str();
    return out;
  }
  std::string out;
  bool leading = true;
  if (!line.A.is_zero()) {
    out += detail::signed_coeff(line.A, "x", leading);
    leading = false;
  }
  if (!line.B.is_zero()) {
    out += detail::signed_coeff(line.B, "y", leading);
    leading = false;
  }
  if (leading) out += "0";
  out += " = " + line.C.str();
  return out;
}

inline nlohmann::json line_to_json(const LineEq& line) {
  nlohmann::json j;
  j["A"] = line.A.str();
  j["B"] = line.B.str();
  j["C"] = line.C.str();
  j["normalization"] = normalization_name(line.normalization);
  return j;
}

namespace detail {

// Largest-magnitude value among candidates, settled over the field so
// infinitesimal coefficients rank below appreciable ones.
inline std::size_t dominant_index(const std::vector<LCNumber>& vals,
                                  const EngineConfig& cfg) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < vals.size(); ++i) {
    if (vals[i].vanishes()) continue;
    if (vals[best].vanishes()) {
      best = i;
      continue;
    }
    try {
      if (compare(lcf::abs(vals[i]), lcf::abs(vals[best]), cfg) ==
          Ordering::greater)
        best = i;
    } catch (const Error&) {
      // ties and horizon-limited comparisons keep the earlier candidate
    }
  }
  return best;
}

}  // namespace detail

// The line through the infinitely close points (x0, f(x0)) and
// (x0 + eps, f(x0 + eps)). The raw coefficients are all infinitesimal, so
// normalization happens over the field *before* taking standard parts.
inline LineEq tangent_line(const expr::NodePtr& f, const Rational& x0,
                           LineNormalization normalization,
                           const EngineConfig& cfg = default_config(),
                           Mode mode = Mode::exact) {
  LCNumber e = LCNumber::epsilon(mode);
  LCNumber X = LCNumber::from_rational(x0, mode);
  LCNumber y0 = expr::evaluate(f, X, cfg);
  LCNumber y1 = expr::evaluate(f, add(X, e, cfg), cfg);
  LCNumber dy = subtract(y1, y0, cfg);
  // Through both points: dy * x - eps * y = dy * x0 - eps * f(x0).
  LCNumber A = dy;
  LCNumber B = negate(e);
  LCNumber C = subtract(multiply(dy, X, cfg), multiply(e, y0, cfg), cfg);

  switch (normalization) {
    case LineNormalization::slope_intercept: {
      LCNumber slope = divide(A, e, cfg);
      try {
        Coefficient sA = standard_part(slope);
        Coefficient sC = standard_part(
            subtract(multiply(slope, X, cfg), y0, cfg));
        return LineEq{sA, Coefficient::of(Rational(-1), mode), sC,
                      normalization};
      } catch (const Error& err) {
        if (err.code() == Errc::infinite_part)
          raise(Errc::vertical_tangent,
                "slope has an infinite part; use unit_normal or max_coeff");
        throw;
      }
    }
    case LineNormalization::unit_normal: {
      LCNumber nsq = add(multiply(dy, dy, cfg), multiply(e, e, cfg), cfg);
      LCNumber norm = power_rational(nsq, Rational(1) / 2, cfg);
      LCNumber inv = invert(norm, cfg);
      return LineEq{standard_part(multiply(A, inv, cfg)),
                    standard_part(multiply(B, inv, cfg)),
                    standard_part(multiply(C, inv, cfg)), normalization};
    }
    case LineNormalization::max_coeff: {
      std::vector<LCNumber> vals{A, B, C};
      std::size_t dom = detail::dominant_index(vals, cfg);
      LCNumber inv = invert(lcf::abs(vals[dom]), cfg);
      return LineEq{standard_part(multiply(A, inv, cfg)),
                    standard_part(multiply(B, inv, cfg)),
                    standard_part(multiply(C, inv, cfg)), normalization};
    }
  }
  raise(Errc::domain_error, "unreachable normalization");
}

// --- osculating circle ---------------------------------------------------

struct CircleEq {
  Coefficient cx, cy, radius_squared;
};

struct OsculatingResult {
  CircleEq circle;
  Coefficient curvature;
  bool curvature_exact;  // exact mode only: whether 1/r stayed rational
};

inline std::string render_circle(const CircleEq& c) {
  return "center (" + c.cx.str() + ", " + c.cy.str() +
         "), r^2 = " + c.radius_squared.str();
}

inline nlohmann::json osculating_to_json(const OsculatingResult& r) {
  nlohmann::json j;
  j["center"] = {r.circle.cx.str(), r.circle.cy.str()};
  j["radius_squared"] = r.circle.radius_squared.str();
  j["curvature"] = r.curvature.str();
  j["curvature_exact"] = r.curvature_exact;
  return j;
}

// Circle through the three infinitely close curve points at t0 - eps, t0,
// t0 + eps: the circumcenter comes from the two perpendicular-bisector
// equations, solved exactly over the field, and only then standardized.
inline OsculatingResult osculating_circle(const expr::NodePtr& fx,
                                          const expr::NodePtr& fy,
                                          const Rational& t0,
                                          const EngineConfig& cfg = default_config(),
                                          Mode mode = Mode::exact) {
  LCNumber e = LCNumber::epsilon(mode);
  LCNumber T = LCNumber::from_rational(t0, mode);
  LCNumber Tp = add(T, e, cfg), Tm = subtract(T, e, cfg);
  LCNumber x0 = expr::evaluate(fx, T, cfg), y0 = expr::evaluate(fy, T, cfg);
  LCNumber xp = expr::evaluate(fx, Tp, cfg), yp = expr::evaluate(fy, Tp, cfg);
  LCNumber xm = expr::evaluate(fx, Tm, cfg), ym = expr::evaluate(fy, Tm, cfg);

  auto sq = [&](const LCNumber& v) { return multiply(v, v, cfg); };
  LCNumber a11 = subtract(xp, x0, cfg), a12 = subtract(yp, y0, cfg);
  LCNumber a21 = subtract(xm, x0, cfg), a22 = subtract(ym, y0, cfg);
  LCNumber r1 = multiply(add(subtract(sq(xp), sq(x0), cfg),
                             subtract(sq(yp), sq(y0), cfg), cfg),
                         LCNumber::from_rational(Rational(1) / 2, mode), cfg);
  LCNumber r2 = multiply(add(subtract(sq(xm), sq(x0), cfg),
                             subtract(sq(ym), sq(y0), cfg), cfg),
                         LCNumber::from_rational(Rational(1) / 2, mode), cfg);

  LCNumber det = subtract(multiply(a11, a22, cfg), multiply(a12, a21, cfg), cfg);
  if (det.vanishes()) {
    if (det.is_zero())
      raise(Errc::zero_curvature,
            "the three points are collinear at the dominant order");
    raise(Errc::insufficient_precision,
          "circumcenter system is singular up to horizon " +
              det.accuracy().str());
  }
  LCNumber inv_det = invert(det, cfg);
  LCNumber cx = multiply(
      subtract(multiply(r1, a22, cfg), multiply(r2, a12, cfg), cfg), inv_det,
      cfg);
  LCNumber cy = multiply(
      subtract(multiply(a11, r2, cfg), multiply(a21, r1, cfg), cfg), inv_det,
      cfg);

  Coefficient scx, scy;
  try {
    scx = standard_part(cx);
    scy = standard_part(cy);
  } catch (const Error& err) {
    if (err.code() == Errc::infinite_part)
      raise(Errc::zero_curvature,
            "circumcenter escapes to infinity: the curve is straight here");
    throw;
  }
  LCNumber r2v = add(sq(subtract(cx, x0, cfg)), sq(subtract(cy, y0, cfg)), cfg);
  Coefficient rsq = standard_part(r2v);
  if (rsq.sign() <= 0)
    raise(Errc::domain_error,
          "osculating circle degenerates to a point (cusp?)");

  Coefficient curvature;
  bool curvature_exact = true;
  if (mode == Mode::exact) {
    auto k = rational_pow_exact(rsq.rational(), Rational(-1) / 2);
    if (k) {
      curvature = Coefficient(*k);
    } else {
      curvature = Coefficient(decimal_pow(to_decimal(rsq.rational()),
                                          Rational(-1) / 2));
      curvature_exact = false;
    }
  } else {
    curvature = Coefficient(decimal_pow(rsq.decimal(), Rational(-1) / 2));
    curvature_exact = false;
  }
  return OsculatingResult{CircleEq{scx, scy, rsq}, curvature, curvature_exact};
}

// --- Archimedean audit ------------------------------------------------------

// Translate "the slope is L" into the style of Archimedes: find the least
// n such that every sampled m >= n keeps |(f(x0+1/m)-f(x0))*m - L| < tol,
// scanning m = 1..limit with exact rational arithmetic.
inline unsigned long archimedean_check(const expr::NodePtr& f,
                                       const Rational& x0, const Rational& L,
                                       const Rational& tol,
                                       unsigned long limit = 1000) {
  if (tol <= 0) raise(Errc::domain_error, "tolerance must be positive");
  if (limit < 1) raise(Errc::domain_error, "scan limit must be at least 1");
  Rational fx0 = expr::evaluate_rational(f, x0);
  unsigned long last_violation = 0;
  Rational worst(0);
  for (unsigned long m = 1; m <= limit; ++m) {
    Rational h = Rational(1) / Rational(m);
    Rational quotient = (expr::evaluate_rational(f, x0 + h) - fx0) * Rational(m);
    Rational residual = quotient - L;
    if (residual < 0) residual = -residual;
    if (residual >= tol) {
      last_violation = m;
      if (residual > worst) worst = residual;
    }
  }
  if (last_violation == limit)
    raise(Errc::no_witness_found,
          "residual still " + to_string(worst) + " at m = " +
              std::to_string(limit) + "; no stabilization witness in range");
  return last_violation + 1;
}

// --- jets / microaffine slope ---------------------------------------------

inline Jet2 jet_eval(const expr::NodePtr& f, const Rational& x0,
                     Mode mode = Mode::exact) {
  return expr::evaluate_jet(f, x0, mode);
}

// Slope b of the microaffine law g(x0 + d) = g(x0) + b d, read off a
// nilsquare jet pass. Works for any callable over Jet2.
template <class G>
  requires std::invocable<G&, Jet2>
Coefficient microaffine_slope(G&& g, const Rational& x0,
                              Mode mode = Mode::exact) {
  Jet2 r = g(Jet2::variable(x0, mode));
  return r.slope();
}

inline Coefficient microaffine_slope(const expr::NodePtr& f, const Rational& x0,
                                     Mode mode = Mode::exact) {
  return jet_eval(f, x0, mode).slope();
}

}  // namespace lcf::calculus
