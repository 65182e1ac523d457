// Acceptance gate: eleven behavioral criteria, one PASS/FAIL line each,
// nonzero exit if anything fails. Every check is fully deterministic given
// the seeds below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "lcf/calculus.hpp"
#include "lcf/hyperfinite.hpp"
#include "lcf/relations.hpp"
#include "lcf/transfer.hpp"
#include "support/gen.hpp"

using namespace lcf;

namespace {

const EngineConfig cfg = default_config();

struct Criterion {
  const char* name;
  bool (*check)(std::string& detail);
};

LCNumber num(const char* s) { return parse_number(s, Mode::exact, cfg); }

bool fail(std::string& detail, std::string msg) {
  detail = std::move(msg);
  return false;
}

// 1. Symbolic-rule derivatives and infinitesimal-quotient derivatives agree
//    exactly on 200 random rational functions.
bool c1_derivative_oracle(std::string& detail) {
  auto t0 = std::chrono::steady_clock::now();
  gen::Rng rng(101);
  int done = 0;
  long attempts = 0;
  while (done < 200) {
    if (++attempts > 20000) return fail(detail, "resample budget exhausted");
    expr::NodePtr f = gen::random_rational_function(rng, 5);
    Rational q = gen::random_rational(rng, 6, 4);
    try {
      Rational oracle = expr::evaluate_rational(expr::differentiate(f), q);
      Coefficient d = calculus::derivative(f, q, cfg);
      if (!(d.rational() == oracle))
        return fail(detail, "mismatch at sample " + std::to_string(done) +
                                ": quotient " + d.str() + " vs rule " +
                                to_string(oracle));
      ++done;
    } catch (const Error&) {
      // pole or undefined point: resample
    }
  }
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            t0).count();
  if (secs >= 30.0)
    return fail(detail, "took " + std::to_string(secs) + "s (budget 30s)");
  detail = "200 agreements, " + std::to_string(attempts) + " samples drawn";
  return true;
}

// 2. Purging 11 eps + 2 eps^2 keeps the dominant infinitesimal and drops the
//    relatively negligible tail.
bool c2_purge(std::string& detail) {
  LCNumber v = num("11*eps + 2*eps^2");
  if (render(relations::purge(v)) != "11*eps")
    return fail(detail, "purge gave " + render(relations::purge(v)));
  if (!relations::negligible_relative(num("2*eps^2"), num("11*eps"), cfg))
    return fail(detail, "2 eps^2 not judged negligible against 11 eps");
  detail = "purge(11 eps + 2 eps^2) = 11 eps";
  return true;
}

// 3. The worked difference quotient at x^2, x0 = 3: the quotient is 6 + eps,
//    its standard part 6, and the assignable pair at (d)x = 1/2 gives
//    (d)y = 3.
bool c3_difference_quotient(std::string& detail) {
  expr::NodePtr f = expr::parse_expr("x^2");
  LCNumber q = calculus::difference_quotient(f, Rational(3),
                                             LCNumber::epsilon(Mode::exact),
                                             cfg);
  if (render(q) != "6 + eps") return fail(detail, "quotient " + render(q));
  if (!(standard_part(q).rational() == 6))
    return fail(detail, "standard part " + standard_part(q).str());
  calculus::DdPair p = calculus::dd_pair(f, Rational(3), Rational(1, 2), cfg);
  if (!(p.dy.rational() == 3)) return fail(detail, "(d)y = " + p.dy.str());
  detail = "quotient 6 + eps, st 6, (d)y = 3 at (d)x = 1/2";
  return true;
}

// 4. Hyperfinite sums of 100 random polynomials (degree <= 10) equal the
//    antiderivative difference exactly, with an infinitesimal correction
//    term; the power-sum closed forms match brute force for k <= 12,
//    n <= 50.
bool c4_quadrature(std::string& detail) {
  auto t0 = std::chrono::steady_clock::now();
  gen::Rng rng(104);
  for (int i = 0; i < 100; ++i) {
    Polynomial p = gen::random_polynomial(rng, 10);
    Rational a = gen::random_rational(rng, 4, 3);
    Rational b = gen::random_rational(rng, 4, 3);
    Polynomial P = p.antiderivative();
    Rational expected = P.eval(b) - P.eval(a);
    if (!(hyperfinite::integrate_poly(p, a, b, cfg) == expected))
      return fail(detail, "integral mismatch at sample " + std::to_string(i));
    if (a != b && !p.is_zero()) {
      LCNumber corr = subtract(hyperfinite::riemann_sum_poly(p, a, b, cfg),
                               LCNumber::from_rational(expected, Mode::exact),
                               cfg);
      if (!corr.is_zero() &&
          classify(corr) != Classification::infinitesimal)
        return fail(detail,
                    "correction not infinitesimal at sample " +
                        std::to_string(i) + ": " + render(corr));
    }
  }
  for (unsigned k = 0; k <= 12; ++k) {
    Polynomial s = hyperfinite::sum_powers(k);
    Rational acc(0);
    for (unsigned n = 1; n <= 50; ++n) {
      acc += pow_int(Rational(n), k);
      if (!(s.eval(Rational(n)) == acc))
        return fail(detail, "power-sum closed form wrong at k = " +
                                std::to_string(k) + ", n = " +
                                std::to_string(n));
    }
  }
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            t0).count();
  if (secs >= 30.0)
    return fail(detail, "took " + std::to_string(secs) + "s (budget 30s)");
  detail = "100 integrals exact, 13 power-sum forms verified to n = 50";
  return true;
}

// 5. The stretching-ellipse family ends at x^2 = 4y, and the same limit is
//    visible numerically at t = 10^6.
bool c5_conic_limit(std::string& detail) {
  hyperfinite::ConicFamily fam = hyperfinite::ellipse_family();
  hyperfinite::ConicLimit lim = hyperfinite::conic_limit(fam, cfg);
  std::array<Rational, 6> want{Rational(1), Rational(0), Rational(0),
                               Rational(0), Rational(-4), Rational(0)};
  if (!(lim.coeffs == want))
    return fail(detail, "limit " + hyperfinite::render_conic(lim.coeffs));

  Rational t(1000000);
  Rational dom = fam.at(lim.dominant).eval(t);
  for (std::size_t i = 0; i < 6; ++i) {
    double approx =
        (fam.at(i).eval(t) / dom).convert_to<double>();
    double target = want[i].convert_to<double>();
    if (std::abs(approx - target) > 1e-4)
      return fail(detail, "coefficient " + std::to_string(i) +
                              " at t = 10^6 is " + std::to_string(approx));
  }
  detail = "exact limit x^2 = 4*y; finite-t family within 1e-4 at t = 10^6";
  return true;
}

// 6. Tangents and osculating circles: y = 2x - 1 at x^2, the parabola's
//    circle center (0, 1/2) with r^2 = 1/4, both exact; the unit circle's
//    numeric curvature within 1e-10 of 1.
bool c6_tangency(std::string& detail) {
  calculus::LineEq tan = calculus::tangent_line(
      expr::parse_expr("x^2"), Rational(1),
      calculus::LineNormalization::slope_intercept, cfg);
  if (calculus::render_line(tan) != "y = 2x - 1" ||
      !(tan.A.rational() == 2) || !(tan.C.rational() == 1))
    return fail(detail, "tangent " + calculus::render_line(tan));

  calculus::OsculatingResult osc = calculus::osculating_circle(
      expr::parse_expr("x"), expr::parse_expr("x^2"), Rational(0), cfg);
  if (!(osc.circle.cx.rational() == 0) ||
      !(osc.circle.cy.rational() == Rational(1, 2)) ||
      !(osc.circle.radius_squared.rational() == Rational(1, 4)))
    return fail(detail, "circle " + calculus::render_circle(osc.circle));

  EngineConfig ncfg = cfg;
  apply_numeric_precision(ncfg);
  calculus::OsculatingResult unit = calculus::osculating_circle(
      expr::parse_expr("cos(x)"), expr::parse_expr("sin(x)"), Rational(1, 3),
      ncfg, Mode::numeric);
  double curv = unit.curvature.to_dec().convert_to<double>();
  if (std::abs(curv - 1.0) > 1e-10)
    return fail(detail, "unit-circle curvature " + std::to_string(curv));
  detail = "y = 2x - 1; center (0, 1/2), r^2 = 1/4; curvature 1 to 1e-10";
  return true;
}

// 7. Incomparability and comparability report correctly (no witness for
//    inc(eps, 1), witness 2 for comparable(2, 3)), and the three relations
//    partition 1000 random positive pairs.
bool c7_relations(std::string& detail) {
  relations::RelationReport i = relations::inc(LCNumber::epsilon(Mode::exact),
                                    LCNumber::one(Mode::exact), cfg);
  if (!i.holds || i.witness.has_value())
    return fail(detail, "inc(eps, 1): " + i.rationale);
  relations::RelationReport c = relations::comparable(num("2"), num("3"), cfg);
  if (!c.holds || !c.witness || *c.witness != 2)
    return fail(detail, "comparable(2, 3): " + c.rationale);

  gen::Rng rng(107);
  gen::NumberShape shape;
  shape.positive = true;
  for (int t = 0; t < 1000; ++t) {
    LCNumber a = gen::random_number(rng, cfg, shape);
    LCNumber b = gen::random_number(rng, cfg, shape);
    int holds = 0;
    if (relations::inc(a, b, cfg).holds) ++holds;
    if (relations::inc(b, a, cfg).holds) ++holds;
    if (relations::comparable(a, b, cfg).holds) ++holds;
    if (holds != 1)
      return fail(detail, "trichotomy violated at pair " + std::to_string(t) +
                              ": " + render(a) + " vs " + render(b));
  }
  detail = "worked witnesses correct; 1000 positive pairs partition cleanly";
  return true;
}

// 8. Field and order laws hold exactly on 1000 random exact values, and
//    multiplicative inverses cancel within the accuracy horizon.
bool c8_field_laws(std::string& detail) {
  gen::Rng rng(108);
  for (int t = 0; t < 1000; ++t) {
    LCNumber a = gen::random_number(rng, cfg);
    LCNumber b = gen::random_number(rng, cfg);
    LCNumber c = gen::random_number(rng, cfg);
    // ring laws
    if (!(add(a, b, cfg) == add(b, a, cfg)))
      return fail(detail, "a + b != b + a at " + std::to_string(t));
    if (!(multiply(a, b, cfg) == multiply(b, a, cfg)))
      return fail(detail, "a b != b a at " + std::to_string(t));
    if (!(add(add(a, b, cfg), c, cfg) == add(a, add(b, c, cfg), cfg)))
      return fail(detail, "(a+b)+c != a+(b+c) at " + std::to_string(t));
    if (!(multiply(multiply(a, b, cfg), c, cfg) ==
          multiply(a, multiply(b, c, cfg), cfg)))
      return fail(detail, "(ab)c != a(bc) at " + std::to_string(t));
    if (!(multiply(a, add(b, c, cfg), cfg) ==
          add(multiply(a, b, cfg), multiply(a, c, cfg), cfg)))
      return fail(detail, "a(b+c) != ab+ac at " + std::to_string(t));
    if (!add(a, negate(a), cfg).is_zero())
      return fail(detail, "a + (-a) != 0 at " + std::to_string(t));
    // order laws on the same draws
    try {
      Ordering ab = compare(a, b, cfg);
      if (compare(add(a, c, cfg), add(b, c, cfg), cfg) != ab)
        return fail(detail, "translation breaks order at " + std::to_string(t));
      Ordering bc = compare(b, c, cfg);
      if (ab == Ordering::less && bc == Ordering::less &&
          compare(a, c, cfg) != Ordering::less)
        return fail(detail, "transitivity fails at " + std::to_string(t));
    } catch (const Error&) {
      return fail(detail, "comparison refused on exact values at " +
                              std::to_string(t));
    }
    // inverse cancellation within the horizon
    if (!a.is_zero()) {
      LCNumber p = multiply(a, invert(a, cfg), cfg);
      if (!(standard_part(p).rational() == 1))
        return fail(detail, "a/a standard part " + standard_part(p).str());
      for (const Term& term : p.terms())
        if (!(term.exponent == 0))
          return fail(detail, "a/a residue " + render(p));
    }
  }
  detail = "ring, order, and inverse laws held on all 1000 draws";
  return true;
}

// 9. The nilsquare jet algebra: the generator squares to zero and refuses
//    inversion; jet slopes match the field derivative on 100 random
//    polynomials.
bool c9_jets(std::string& detail) {
  Jet2 d = Jet2::generator(Mode::exact);
  Jet2 sq = d * d;
  if (!sq.value().is_zero() || !sq.slope().is_zero())
    return fail(detail, "generator square " + sq.str());
  bool threw = false;
  try {
    d.inverted();
  } catch (const Error&) {
    threw = true;
  }
  if (!threw) return fail(detail, "nilpotent inversion did not raise");

  gen::Rng rng(109);
  for (int i = 0; i < 100; ++i) {
    Polynomial p = gen::random_polynomial(rng, 8);
    Rational x0 = gen::random_rational(rng, 5, 3);
    expr::NodePtr f = expr::parse_expr(p.str());
    Coefficient jet_slope = calculus::microaffine_slope(f, x0);
    Coefficient field_slope = calculus::derivative(f, x0, cfg);
    if (!(jet_slope.rational() == field_slope.rational()))
      return fail(detail, "slope mismatch at sample " + std::to_string(i));
  }
  detail = "d^2 = 0, d not invertible, 100 slope agreements";
  return true;
}

// 10. The transfer checker misses nothing on 1000 structurally random
//     formulas; the commutativity rewrite drops exactly the relativization;
//     instance testing finds an infinite counterexample to forall x (x < 1000).
bool c10_transfer(std::string& detail) {
  std::mt19937_64 rng(110);
  std::uniform_int_distribution<int> coin(0, 99);
  using namespace transfer;

  for (int trial = 0; trial < 1000; ++trial) {
    bool planted_st = false;
    auto term = [&](auto&& self, int depth) -> TermPtr {
      int pick = coin(rng);
      if (depth <= 0 || pick < 40) {
        if (pick % 3 == 0) return tvar("x");
        if (pick % 3 == 1) return tconst(Rational(pick % 7));
        return tvar((pick % 2) ? "H" : "k");
      }
      TermKind k = pick < 60   ? TermKind::add
                   : pick < 75 ? TermKind::mul
                   : pick < 90 ? TermKind::sub
                               : TermKind::div;
      return tbin(k, self(self, depth - 1), self(self, depth - 1));
    };
    auto leaf = [&]() -> FormulaPtr {
      if (coin(rng) < 22) {
        planted_st = true;
        return atom_standard(term(term, 1));
      }
      Cmp c = coin(rng) < 40 ? Cmp::lt : coin(rng) < 70 ? Cmp::le : Cmp::eq;
      return atom(c, term(term, 2), term(term, 2));
    };
    auto build = [&](auto&& self, int depth) -> FormulaPtr {
      int pick = coin(rng);
      if (depth <= 0 || pick < 30) return leaf();
      if (pick < 45)
        return quantified(FKind::forall, "x", coin(rng) < 50,
                          self(self, depth - 1));
      if (pick < 55)
        return quantified(FKind::exists, "x", coin(rng) < 50,
                          self(self, depth - 1));
      if (pick < 70)
        return connective(FKind::conj, self(self, depth - 1),
                          self(self, depth - 1));
      if (pick < 85)
        return connective(FKind::disj, self(self, depth - 1),
                          self(self, depth - 1));
      if (pick < 95)
        return connective(FKind::implies, self(self, depth - 1),
                          self(self, depth - 1));
      return connective(FKind::neg, self(self, depth - 1));
    };

    FormulaPtr phi = build(build, 3);
    std::map<std::string, bool> marks;
    bool planted_nonstandard = false;
    for (const std::string& p : free_parameters(phi)) {
      bool standard = coin(rng) < 50;
      marks[p] = standard;
      if (!standard) planted_nonstandard = true;
    }
    TransferVerdict v = check_applicability(phi, marks);
    bool expect = !planted_st && !planted_nonstandard;
    if (v.applicable != expect)
      return fail(detail, "checker verdict wrong on trial " +
                              std::to_string(trial) + ": " +
                              render_formula(phi));
  }

  FormulaPtr comm = parse_formula("forall^st x. forall^st y. x + y = y + x");
  FormulaPtr lifted = apply_transfer(comm);
  if (render_formula(lifted) != "forall x. forall y. x + y = y + x")
    return fail(detail, "rewrite gave " + render_formula(lifted));
  if (node_count(lifted) != node_count(comm))
    return fail(detail, "rewrite changed the node count");

  TestReport r = test_instances(parse_formula("forall x. x < 1000"), cfg);
  if (!r.counterexample_found || r.bindings.size() != 1)
    return fail(detail, "no counterexample for forall x (x < 1000)");
  LCNumber w = parse_number(r.bindings[0].second, Mode::exact, cfg);
  if (classify(w) != Classification::infinite)
    return fail(detail, "counterexample " + r.bindings[0].second +
                            " is not infinite");
  detail = "1000 checker verdicts exact; rewrite clean; witness " +
           r.bindings[0].second;
  return true;
}

// 11. The stabilization audit certifies slope 6 for x^2 at 3 with witness
//     n <= 101 at tolerance 1/100, and refuses slope 5.
bool c11_archimedean(std::string& detail) {
  unsigned long n = calculus::archimedean_check(
      expr::parse_expr("x^2"), Rational(3), Rational(6), Rational(1, 100),
      1000);
  if (n > 101)
    return fail(detail, "witness " + std::to_string(n) + " exceeds 101");
  bool threw = false;
  try {
    calculus::archimedean_check(expr::parse_expr("x^2"), Rational(3),
                                Rational(5), Rational(1, 100), 1000);
  } catch (const Error&) {
    threw = true;
  }
  if (!threw) return fail(detail, "slope 5 was not refused");
  detail = "slope 6 certified with witness n = " + std::to_string(n) +
           "; slope 5 refused";
  return true;
}

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"derivative agreement on random rational functions", c1_derivative_oracle},
      {"purge and relative negligibility", c2_purge},
      {"difference quotient and assignable pair", c3_difference_quotient},
      {"hyperfinite quadrature and power sums", c4_quadrature},
      {"terminal conic of the ellipse family", c5_conic_limit},
      {"tangent line and osculating circles", c6_tangency},
      {"incomparability witnesses and trichotomy", c7_relations},
      {"field and order laws on random values", c8_field_laws},
      {"nilsquare jet algebra", c9_jets},
      {"transfer checking, rewriting, instance testing", c10_transfer},
      {"stabilization witnesses", c11_archimedean},
  };

  int failures = 0;
  auto start = std::chrono::steady_clock::now();
  for (const Criterion& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("unexpected exception: ") + e.what();
    }
    std::printf("%s  %-48s  %s\n", ok ? "PASS" : "FAIL", c.name,
                detail.c_str());
    if (!ok) ++failures;
  }
  auto secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::printf("%d/11 criteria passed in %.1fs\n", 11 - failures, secs);
  return failures == 0 ? 0 : 1;
}
