#pragma once

#include <json.hpp>

#include <array>
#include <string>
#include <vector>

#include "lcf/eval.hpp"
#include "lcf/number_io.hpp"
#include "lcf/polynomial.hpp"

namespace lcf::hyperfinite {

// The bounded infinity: mu = 1/eps, an infinite quantity that still obeys
// the field laws (mu < mu + 1 < 2 mu < mu^2 and so on).
inline LCNumber mu(Mode m = Mode::exact) {
  return LCNumber::monomial(Coefficient::one(m), Rational(-1));
}

// Wrapper asserting infiniteness at construction.
struct BoundedInfinite {
  LCNumber value;
  explicit BoundedInfinite(LCNumber v) : value(std::move(v)) {
    if (classify(value) != Classification::infinite)
      raise(Errc::domain_error,
            "bounded-infinity wrapper needs an infinite value, got " +
                render(value));
  }
};

// Bernoulli numbers in the B(1) = +1/2 convention, which makes the power
// sums below come out without the off-by-one shuffle.
inline const Rational& bernoulli_plus(unsigned j) {
  static const std::vector<Rational> table = [] {
    // Standard recurrence for B(1) = -1/2, flipping the single sign at the
    // end: sum_{i=0..m} C(m+1, i) B_i = 0.
    const unsigned count = 40;
    std::vector<Rational> b(count, Rational(0));
    b[0] = 1;
    for (unsigned m = 1; m < count; ++m) {
      Rational acc(0);
      for (unsigned i = 0; i < m; ++i)
        acc += Rational(binomial(m + 1, i)) * b[i];
      b[m] = -acc / Rational(m + 1);
    }
    b[1] = -b[1];
    return b;
  }();
  if (j >= table.size())
    raise(Errc::domain_error, "power-sum order beyond precomputed range");
  return table[j];
}

// Closed form for sum_{i=1..n} i^k as a polynomial in n of degree k+1:
// (1/(k+1)) sum_{j=0..k} C(k+1, j) B+_j n^(k+1-j).
inline Polynomial sum_powers(unsigned k) {
  Polynomial p;
  p.c.assign(k + 2, Rational(0));
  for (unsigned j = 0; j <= k; ++j) {
    Rational coeff = Rational(binomial(k + 1, j)) * bernoulli_plus(j) /
                     Rational(k + 1);
    p.c[k + 1 - j] += coeff;
  }
  p.trim();
  return p;
}

// Right-endpoint Riemann sum with mu panels over [a, b], evaluated in
// closed form: p(a + i*delta) expands to sum_m g_m i^m with g_m carrying
// delta^m = ((b-a) eps)^m, and each sum_i i^m collapses via sum_powers(mu).
// Everything stays exact; the answer is the integral plus an explicit
// infinitesimal correction.
inline LCNumber riemann_sum_poly(const Polynomial& p, const Rational& a,
                                 const Rational& b,
                                 const EngineConfig& cfg = default_config()) {
  if (p.is_zero() || a == b) return LCNumber::zero(Mode::exact);
  const Rational width = b - a;
  const std::size_t deg = p.degree();

  // Binomial expansion of p(a + i delta): g[m] collects the i^m coefficient,
  // with delta^m contributing width^m (rational) times eps^m (handled below).
  std::vector<Rational> g(deg + 1, Rational(0));
  for (std::size_t j = 0; j < p.c.size(); ++j) {
    if (p.c[j] == 0) continue;
    for (std::size_t m = 0; m <= j; ++m) {
      Rational am = pow_int(a, static_cast<long>(j - m));
      Rational wm = pow_int(width, static_cast<long>(m));
      g[m] += p.c[j] * Rational(binomial(static_cast<unsigned>(j),
                                         static_cast<unsigned>(m))) *
              am * wm;
    }
  }

  LCNumber muv = mu(Mode::exact);
  LCNumber total = LCNumber::zero(Mode::exact);
  for (std::size_t m = 0; m < g.size(); ++m) {
    if (g[m] == 0) continue;
    // g_m eps^m * F_m(mu), then the trailing delta from the panel width.
    LCNumber fm = sum_powers(static_cast<unsigned>(m)).eval_lc(muv, cfg);
    LCNumber coeff = LCNumber::monomial(Coefficient(g[m]), Rational(m));
    total = add(total, multiply(coeff, fm, cfg), cfg);
  }
  LCNumber delta = LCNumber::monomial(Coefficient(width), Rational(1));
  return multiply(total, delta, cfg);
}

// The assignable value of the hyperfinite sum.
inline Rational integrate_poly(const Polynomial& p, const Rational& a,
                               const Rational& b,
                               const EngineConfig& cfg = default_config()) {
  return standard_part(riemann_sum_poly(p, a, b, cfg)).rational();
}

// mu^2 |alpha(t0 + 1/mu) - alpha(t0)|^2: appreciable exactly when the curve
// moves at unit-order speed, the squared length of one polygon side scaled
// back up by the panel count.
inline LCNumber microstraightness_check(const expr::NodePtr& fx,
                                        const expr::NodePtr& fy,
                                        const Rational& t0,
                                        const EngineConfig& cfg = default_config(),
                                        Mode mode = Mode::exact) {
  LCNumber e = LCNumber::epsilon(mode);
  LCNumber T = LCNumber::from_rational(t0, mode);
  LCNumber Tp = add(T, e, cfg);
  LCNumber dx = subtract(expr::evaluate(fx, Tp, cfg), expr::evaluate(fx, T, cfg), cfg);
  LCNumber dy = subtract(expr::evaluate(fy, Tp, cfg), expr::evaluate(fy, T, cfg), cfg);
  LCNumber len2 = add(multiply(dx, dx, cfg), multiply(dy, dy, cfg), cfg);
  LCNumber mu2 = LCNumber::monomial(Coefficient::one(mode), Rational(-2));
  return multiply(mu2, len2, cfg);
}

// --- conic family limits ----------------------------------------------------

// A t-indexed family A x^2 + B xy + C y^2 + D x + E y + F = 0 with
// polynomial coefficients in the parameter t.
struct ConicFamily {
  Polynomial A, B, C, D, E, F;

  const Polynomial& at(std::size_t i) const {
    const Polynomial* slots[6] = {&A, &B, &C, &D, &E, &F};
    return *slots[i];
  }
};

struct ConicLimit {
  std::array<Rational, 6> coeffs;
  std::size_t dominant;  // index normalized to scale the family
};

// Push the parameter to the bounded infinity mu, rescale by the dominant
// coefficient, and take standard parts: the terminal conic of the family.
inline ConicLimit conic_limit(const ConicFamily& family,
                              const EngineConfig& cfg = default_config()) {
  LCNumber muv = mu(Mode::exact);
  std::array<LCNumber, 6> values;
  bool any = false;
  for (std::size_t i = 0; i < 6; ++i) {
    values[i] = family.at(i).eval_lc(muv, cfg);
    if (!values[i].vanishes()) any = true;
  }
  if (!any)
    raise(Errc::degenerate_family, "every coefficient vanishes identically");

  std::size_t dominant = 6;
  for (std::size_t i = 0; i < 6; ++i) {
    if (values[i].vanishes()) continue;
    if (dominant == 6 ||
        leading_exponent(values[i]) < leading_exponent(values[dominant]))
      dominant = i;
  }

  LCNumber scale = invert(values[dominant], cfg);
  ConicLimit out;
  out.dominant = dominant;
  for (std::size_t i = 0; i < 6; ++i) {
    out.coeffs[i] =
        standard_part(multiply(values[i], scale, cfg)).rational();
  }
  return out;
}

// Human form with negative terms moved across the equals sign:
// (1,0,0,0,-4,0) prints as "x^2 = 4*y".
inline std::string render_conic(const std::array<Rational, 6>& k) {
  static const char* monomials[6] = {"x^2", "x*y", "y^2", "x", "y", ""};
  auto side = [&](bool positive) {
    std::string out;
    for (std::size_t i = 0; i < 6; ++i) {
      if (k[i] == 0 || (k[i] > 0) != positive) continue;
      Rational mag = k[i] < 0 ? Rational(-k[i]) : k[i];
      std::string mono = monomials[i];
      std::string piece;
      if (mono.empty()) piece = to_string(mag);
      else if (mag == 1) piece = mono;
      else piece = to_string(mag) + "*" + mono;
      if (!out.empty()) out += " + ";
      out += piece;
    }
    return out;
  };
  std::string lhs = side(true), rhs = side(false);
  if (lhs.empty()) lhs = "0";
  if (rhs.empty()) rhs = "0";
  return lhs + " = " + rhs;
}

inline nlohmann::json conic_limit_to_json(const ConicLimit& lim) {
  nlohmann::json j;
  static const char* names[6] = {"A", "B", "C", "D", "E", "F"};
  for (std::size_t i = 0; i < 6; ++i) j[names[i]] = to_string(lim.coeffs[i]);
  j["dominant"] = names[lim.dominant];
  j["equation"] = render_conic(lim.coeffs);
  return j;
}

inline nlohmann::json conic_family_to_json(const ConicFamily& fam) {
  nlohmann::json j;
  static const char* names[6] = {"A", "B", "C", "D", "E", "F"};
  for (std::size_t i = 0; i < 6; ++i) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Rational& c : fam.at(i).c) arr.push_back(to_string(c));
    j[names[i]] = std::move(arr);
  }
  return j;
}

inline ConicFamily conic_family_from_json(const nlohmann::json& j) {
  auto poly = [&](const char* name) {
    Polynomial p;
    if (!j.contains(name)) return p;
    for (const auto& v : j[name]) {
      if (v.is_string()) p.c.push_back(parse_rational(v.get<std::string>()));
      else p.c.push_back(Rational(v.get<long long>()));
    }
    p.trim();
    return p;
  };
  return ConicFamily{poly("A"), poly("B"), poly("C"),
                     poly("D"), poly("E"), poly("F")};
}

// The worked family: ellipses through the origin with foci at (0, 1) and
// (0, t + 1), stretching toward a parabola as t grows without bound.
inline ConicFamily ellipse_family() {
  ConicFamily fam;
  fam.A = Polynomial{{Rational(4), Rational(4), Rational(1)}};   // (t+2)^2
  fam.C = Polynomial{{Rational(4), Rational(4)}};                // 4t + 4
  fam.E = Polynomial{{Rational(-8), Rational(-12), Rational(-4)}};  // -2(t+2)(2t+2)
  return fam;
}

}  // namespace lcf::hyperfinite
