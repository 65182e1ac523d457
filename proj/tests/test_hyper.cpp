#include <catch2/catch_amalgamated.hpp>

#include "lcf/hyperfinite.hpp"
#include "support/gen.hpp"

using namespace lcf;
using namespace lcf::hyperfinite;

namespace {
const EngineConfig cfg = default_config();
}

TEST_CASE("the bounded infinity", "[hyperfinite][mu]") {
  LCNumber m = mu();
  REQUIRE(classify(m) == Classification::infinite);
  REQUIRE(render(m) == "eps^-1");
  REQUIRE(multiply(m, LCNumber::epsilon(Mode::exact), cfg).is_zero() == false);
  REQUIRE(render(multiply(m, LCNumber::epsilon(Mode::exact), cfg)) == "1");

  // mu obeys the field's order: mu < mu + 1 < 2 mu < mu^2
  LCNumber one = LCNumber::from_rational(Rational(1), Mode::exact);
  LCNumber mu1 = add(m, one, cfg);
  LCNumber mu2 = add(m, m, cfg);
  LCNumber musq = multiply(m, m, cfg);
  REQUIRE(compare(m, mu1, cfg) == Ordering::less);
  REQUIRE(compare(mu1, mu2, cfg) == Ordering::less);
  REQUIRE(compare(mu2, musq, cfg) == Ordering::less);

  REQUIRE_NOTHROW(BoundedInfinite(mu1));
  REQUIRE_THROWS_AS(BoundedInfinite(one), Error);
  REQUIRE_THROWS_AS(BoundedInfinite(LCNumber::epsilon(Mode::exact)), Error);
}

TEST_CASE("power-sum machinery", "[hyperfinite][faulhaber]") {
  SECTION("Bernoulli numbers, plus convention") {
    REQUIRE(bernoulli_plus(0) == 1);
    REQUIRE(bernoulli_plus(1) == Rational(1, 2));
    REQUIRE(bernoulli_plus(2) == Rational(1, 6));
    REQUIRE(bernoulli_plus(3) == 0);
    REQUIRE(bernoulli_plus(4) == Rational(-1, 30));
    REQUIRE(bernoulli_plus(12) == Rational(-691, 2730));
    REQUIRE_THROWS_AS(bernoulli_plus(40), Error);
  }
  SECTION("closed forms match the textbook ones") {
    REQUIRE(sum_powers(0).str() == "x");
    REQUIRE(sum_powers(1).str() == "1/2*x + 1/2*x^2");
    REQUIRE(sum_powers(2).str() == "1/6*x + 1/2*x^2 + 1/3*x^3");
  }
  SECTION("closed forms match brute-force sums") {
    for (unsigned k = 0; k <= 12; ++k) {
      Polynomial p = sum_powers(k);
      Rational acc(0);
      for (unsigned n = 1; n <= 50; ++n) {
        acc += pow_int(Rational(n), k);
        REQUIRE(p.eval(Rational(n)) == acc);
      }
    }
  }
}

TEST_CASE("hyperfinite quadrature", "[hyperfinite][integral]") {
  SECTION("the worked square") {
    Polynomial sq{{Rational(0), Rational(0), Rational(1)}};
    LCNumber s = riemann_sum_poly(sq, Rational(0), Rational(1), cfg);
    REQUIRE(render(s) == "1/3 + 1/2*eps + 1/6*eps^2");
    REQUIRE(standard_part(s).rational() == Rational(1, 3));
    REQUIRE(integrate_poly(sq, Rational(0), Rational(1), cfg) == Rational(1, 3));
    // the correction term is a definite infinitesimal, not an error bound
    LCNumber corr = subtract(
        s, LCNumber::from_rational(Rational(1, 3), Mode::exact), cfg);
    REQUIRE(classify(corr) == Classification::infinitesimal);
  }
  SECTION("degenerate intervals and orientation") {
    Polynomial p{{Rational(1), Rational(2)}};
    REQUIRE(riemann_sum_poly(p, Rational(2), Rational(2), cfg).is_zero());
    REQUIRE(integrate_poly(p, Rational(0), Rational(1), cfg) == Rational(2));
    REQUIRE(integrate_poly(p, Rational(1), Rational(0), cfg) == Rational(-2));
  }
  SECTION("random polynomials agree with the antiderivative") {
    gen::Rng rng(53);
    for (int i = 0; i < 100; ++i) {
      Polynomial p = gen::random_polynomial(rng, 10);
      Rational a = gen::random_rational(rng, 4, 2);
      Rational b = gen::random_rational(rng, 4, 2);
      Polynomial P = p.antiderivative();
      REQUIRE(integrate_poly(p, a, b, cfg) == P.eval(b) - P.eval(a));
      if (a != b && !p.is_zero()) {
        LCNumber corr = subtract(
            riemann_sum_poly(p, a, b, cfg),
            LCNumber::from_rational(P.eval(b) - P.eval(a), Mode::exact), cfg);
        REQUIRE((corr.is_zero() ||
                 classify(corr) == Classification::infinitesimal));
      }
    }
  }
}

TEST_CASE("polygons of infinitely many sides", "[hyperfinite][polygon]") {
  // a parabola traversed at unit speed in x: one mu-th of the curve, scaled
  // back up, has appreciable squared length
  LCNumber par = microstraightness_check(expr::parse_expr("x"),
                                         expr::parse_expr("x^2"), Rational(0),
                                         cfg);
  REQUIRE(classify(par) == Classification::appreciable);
  REQUIRE(standard_part(par).rational() == 1);

  LCNumber circ = microstraightness_check(expr::parse_expr("cos(x)"),
                                          expr::parse_expr("sin(x)"),
                                          Rational(0), cfg);
  REQUIRE(standard_part(circ).rational() == 1);
  REQUIRE(render(truncate(circ, Rational(4))) ==
          "1 - 1/12*eps^2 + O(eps^4)");

  // a curve that does not move has no appreciable side at all
  LCNumber still = microstraightness_check(expr::parse_expr("1"),
                                           expr::parse_expr("2"), Rational(5),
                                           cfg);
  REQUIRE(still.is_zero());
}

TEST_CASE("terminal conics of coefficient families", "[hyperfinite][conic]") {
  SECTION("the stretching ellipse ends at a parabola") {
    ConicLimit lim = conic_limit(ellipse_family(), cfg);
    REQUIRE(lim.coeffs == std::array<Rational, 6>{
                              Rational(1), Rational(0), Rational(0),
                              Rational(0), Rational(-4), Rational(0)});
    REQUIRE(lim.dominant == 0);
    REQUIRE(render_conic(lim.coeffs) == "x^2 = 4*y");
    nlohmann::json j = conic_limit_to_json(lim);
    REQUIRE(j["A"] == "1");
    REQUIRE(j["E"] == "-4");
    REQUIRE(j["dominant"] == "A");
    REQUIRE(j["equation"] == "x^2 = 4*y");
  }
  SECTION("families carrying no ceiling degree still normalize") {
    // x^2 + t y^2 = t: dividing by t, the limit is y^2 = 1
    ConicFamily f;
    f.A = Polynomial{{Rational(1)}};
    f.C = Polynomial::identity();
    f.F = Polynomial{{Rational(0), Rational(-1)}};
    ConicLimit lim = conic_limit(f, cfg);
    REQUIRE(lim.dominant == 2);
    REQUIRE(render_conic(lim.coeffs) == "y^2 = 1");
  }
  SECTION("ties pick the first slot") {
    ConicFamily f;
    f.A = Polynomial::identity();
    f.C = Polynomial::identity();
    ConicLimit lim = conic_limit(f, cfg);
    REQUIRE(lim.dominant == 0);
    REQUIRE(render_conic(lim.coeffs) == "x^2 + y^2 = 0");
  }
  SECTION("the empty family is refused by name") {
    try {
      conic_limit(ConicFamily{}, cfg);
      FAIL("expected a degenerate-family error");
    } catch (const Error& e) {
      REQUIRE(e.code() == Errc::degenerate_family);
    }
  }
  SECTION("families survive the JSON round trip") {
    ConicFamily f = ellipse_family();
    ConicFamily g = conic_family_from_json(conic_family_to_json(f));
    REQUIRE(g.A == f.A);
    REQUIRE(g.C == f.C);
    REQUIRE(g.E == f.E);
    REQUIRE(g.B.is_zero());
    // integer shorthand is accepted on the way in
    ConicFamily h = conic_family_from_json(
        nlohmann::json::parse(R"({"A": [1], "E": [0, -2]})"));
    REQUIRE(h.A == Polynomial::constant(Rational(1)));
    REQUIRE(h.E == Polynomial{{Rational(0), Rational(-2)}});
  }
}
