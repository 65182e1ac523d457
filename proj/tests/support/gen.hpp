#pragma once

// Seeded random inputs shared by the property suites and the acceptance
// runner. Everything is deterministic given the engine.

#include <random>
#include <vector>

#include "lcf/expr.hpp"
#include "lcf/number.hpp"
#include "lcf/polynomial.hpp"

namespace lcf::gen {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int max_num = 9, int max_den = 9,
                                bool nonzero = false) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  Rational q(num(rng), den(rng));
  while (nonzero && q == 0) q = Rational(num(rng), den(rng));
  return q;
}

// Exponents stay in a small grid so products and witnesses remain tame.
inline Rational random_exponent(Rng& rng) {
  std::uniform_int_distribution<int> num(-4, 6);
  std::uniform_int_distribution<int> den(1, 3);
  return Rational(num(rng), den(rng));
}

struct NumberShape {
  int max_term_count = 4;
  bool positive = false;       // force a positive leading coefficient
  bool appreciable = false;    // force leading exponent 0
};

inline LCNumber random_number(Rng& rng, const EngineConfig& cfg,
                              NumberShape shape = {}) {
  std::uniform_int_distribution<int> count(1, shape.max_term_count);
  LCNumber::TermMap terms;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Rational e = random_exponent(rng);
    Rational c = random_rational(rng, 9, 4, /*nonzero=*/true);
    terms[e] = Coefficient(c);
  }
  if (shape.appreciable) {
    auto first = terms.begin();
    Rational c = first->second.rational();
    terms.erase(first);
    terms[Rational(0)] = Coefficient(c);
  }
  if (shape.positive) {
    Rational lead = terms.begin()->second.rational();
    if (lead < 0) terms.begin()->second = Coefficient(Rational(-lead));
  }
  return LCNumber::make(Mode::exact, std::move(terms), Horizon::infinity(), cfg);
}

inline Polynomial random_polynomial(Rng& rng, unsigned max_degree = 10) {
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  Polynomial p;
  unsigned d = deg(rng);
  for (unsigned i = 0; i <= d; ++i) p.c.push_back(random_rational(rng, 6, 3));
  p.trim();
  return p;
}

// Random rational function of x: arithmetic over x and literals, with small
// integer powers. Division makes poles possible; callers resample the
// evaluation point until it lands off every pole.
inline expr::NodePtr random_rational_function(Rng& rng, int depth = 5) {
  std::uniform_int_distribution<int> pick(0, 9);
  if (depth <= 0) {
    if (pick(rng) < 6) return expr::variable();
    return expr::signed_literal(random_rational(rng, 5, 3));
  }
  switch (pick(rng)) {
    case 0:
    case 1:
      return expr::add(random_rational_function(rng, depth - 1),
                       random_rational_function(rng, depth - 1));
    case 2:
    case 3:
      return expr::sub(random_rational_function(rng, depth - 1),
                       random_rational_function(rng, depth - 1));
    case 4:
    case 5:
      return expr::mul(random_rational_function(rng, depth - 1),
                       random_rational_function(rng, depth - 1));
    case 6:
      return expr::div(random_rational_function(rng, depth - 1),
                       random_rational_function(rng, depth - 1));
    case 7: {
      std::uniform_int_distribution<int> p(2, 3);
      return expr::pow(random_rational_function(rng, depth - 1),
                       Rational(p(rng)));
    }
    case 8:
      return expr::neg(random_rational_function(rng, depth - 1));
    default:
      if (pick(rng) < 6) return expr::variable();
      return expr::signed_literal(random_rational(rng, 5, 3));
  }
}

}  // namespace lcf::gen
