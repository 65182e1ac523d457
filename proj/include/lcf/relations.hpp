#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "lcf/number.hpp"
#include "lcf/number_io.hpp"

namespace lcf::relations {

struct RelationReport {
  bool holds = false;
  std::optional<BigInt> witness;  // multiplier demonstrating (or refuting)
  std::string rationale;
};

inline nlohmann::json relation_to_json(const RelationReport& r) {
  nlohmann::json j;
  j["holds"] = r.holds;
  j["witness"] = r.witness ? nlohmann::json(r.witness->str()) : nlohmann::json();
  j["rationale"] = r.rationale;
  return j;
}

namespace detail {

inline void require_usable(const LCNumber& x, const char* role) {
  if (!x.vanishes()) return;
  if (x.is_zero())
    raise(Errc::zero_argument, std::string(role) + " must be nonzero");
  raise(Errc::insufficient_precision,
        std::string(role) + " is indistinguishable from zero (horizon " +
            x.accuracy().str() + ")");
}

inline BigInt floor_of(const Coefficient& c) {
  if (c.is_rational()) return rational_floor(c.rational());
  Decimal f = floor(c.decimal());
  return BigInt(f.str(0, std::ios_base::fixed));
}

// Smallest natural n with n*|a| > |b|, assuming the leading exponents make
// one exist. The standard part of |b|/|a| pins the answer to within two
// candidates; exact comparison settles the boundary.
inline BigInt smallest_multiplier(const LCNumber& a, const LCNumber& b,
                                  const EngineConfig& cfg) {
  LCNumber absa = lcf::abs(a), absb = lcf::abs(b);
  LCNumber ratio = divide(absb, absa, cfg);
  BigInt n = floor_of(standard_part(ratio));
  if (n < 1) n = 1;
  for (int tries = 0; tries < 4; ++tries) {
    LCNumber scaled = multiply(LCNumber::from_rational(Rational(n), a.mode()),
                               absa, cfg);
    if (compare(scaled, absb, cfg) == Ordering::greater) return n;
    ++n;
  }
  raise(Errc::insufficient_precision,
        "could not settle the multiplier near " + n.str());
}

}  // namespace detail

// Euclid V.4 comparability: finitely many copies of either quantity exceed
// the other. Holds exactly when the leading exponents agree; the witness is
// the least n with n*|a| > |b|.
inline RelationReport comparable(const LCNumber& a, const LCNumber& b,
                                 const EngineConfig& cfg = default_config()) {
  detail::require_usable(a, "first argument");
  detail::require_usable(b, "second argument");
  const Rational& la = leading_exponent(a);
  const Rational& lb = leading_exponent(b);
  RelationReport r;
  if (la == lb) {
    r.holds = true;
    r.witness = detail::smallest_multiplier(a, b, cfg);
    r.rationale = "leading exponents agree (" + to_string(la) + "); " +
                  r.witness->str() + "*|a| > |b|";
  } else {
    r.holds = false;
    r.rationale = "leading exponents differ (" + to_string(la) + " vs " +
                  to_string(lb) + "): the " +
                  (la > lb ? "first" : "second") +
                  " argument stays below every finite multiple of itself "
                  "against the other";
  }
  return r;
}

// Incomparably smaller: no finite multiple of |a| reaches |b|.
inline RelationReport inc(const LCNumber& a, const LCNumber& b,
                          const EngineConfig& cfg = default_config()) {
  detail::require_usable(a, "first argument");
  detail::require_usable(b, "second argument");
  const Rational& la = leading_exponent(a);
  const Rational& lb = leading_exponent(b);
  RelationReport r;
  if (la > lb) {
    r.holds = true;
    r.rationale = "leading exponent " + to_string(la) + " exceeds " +
                  to_string(lb) + ": every n*|a| stays below |b|";
  } else {
    r.holds = false;
    r.witness = detail::smallest_multiplier(a, b, cfg);
    r.rationale = r.witness->str() + "*|a| > |b| refutes incomparability";
  }
  return r;
}

// a is negligible relative to reference b (zero a trivially so).
inline bool negligible_relative(const LCNumber& a, const LCNumber& b,
                                const EngineConfig& cfg = default_config()) {
  if (b.vanishes()) {
    if (b.is_zero())
      raise(Errc::zero_reference, "reference quantity must be nonzero");
    raise(Errc::insufficient_precision,
          "reference is indistinguishable from zero (horizon " +
              b.accuracy().str() + ")");
  }
  if (a.is_zero()) return true;
  return inc(a, b, cfg).holds;
}

// a ~ b up to a relatively negligible discrepancy: the difference is
// incomparably smaller than the dominant argument. Equal values qualify;
// 0 ~ eps does not (the whole difference is the dominant argument).
inline bool approx_eq(const LCNumber& a, const LCNumber& b,
                      const EngineConfig& cfg = default_config()) {
  LCNumber diff = subtract(a, b, cfg);
  if (diff.vanishes()) {
    if (!diff.accuracy().finite()) return true;
    raise(Errc::insufficient_precision,
          "difference is hidden past horizon " + diff.accuracy().str());
  }
  Horizon la = lambda_bound(a), lb = lambda_bound(b);
  Horizon dominant = min(la, lb);
  if (!dominant.finite()) return false;  // both zero yet diff nonzero: unreachable
  if ((la == dominant && a.vanishes()) || (lb == dominant && b.vanishes()))
    raise(Errc::insufficient_precision,
          "dominant argument is known only past its horizon");
  return leading_exponent(diff) > dominant.value();
}

// Keep only the dominant term (Leibniz's legitimate omission of the
// incomparably smaller summands).
inline LCNumber purge(const LCNumber& a) {
  detail::require_usable(a, "purge argument");
  const Term& lead = a.terms().front();
  return LCNumber::monomial(lead.coeff, lead.exponent)
      .with_accuracy(a.accuracy());
}

// Keep every term up to and including order k.
inline LCNumber purge_to_order(const LCNumber& a, const Rational& k) {
  detail::require_usable(a, "purge argument");
  std::vector<Term> kept;
  for (const Term& t : a.terms())
    if (t.exponent <= k) kept.push_back(t);
  return LCNumber::from_terms(a.mode(), kept, a.accuracy());
}

}  // namespace lcf::relations
