#pragma once

#include <cstddef>

#include "lcf/decimal.hpp"
#include "lcf/rational.hpp"

namespace lcf {

// Two coefficient regimes: exact keeps every coefficient a bignum rational
// and refuses operations that would leave that field; numeric carries
// arbitrary-precision decimals and tolerates irrational values.
enum class Mode { exact, numeric };

inline const char* mode_name(Mode m) {
  return m == Mode::exact ? "exact" : "numeric";
}

struct EngineConfig {
  // Relative truncation window for inexact operations (inversion,
  // fractional powers, transcendentals): how many orders past the leading
  // exponent survive before the accuracy horizon cuts in.
  Rational window{12};
  // Working decimal digits in numeric mode.
  unsigned precision_digits = 50;
  // Hard cap on the term count of any single value.
  std::size_t max_terms = 256;
};

inline void validate_config(const EngineConfig& cfg) {
  if (cfg.window <= 0)
    raise(Errc::domain_error, "truncation window must be positive");
  if (cfg.precision_digits < 20)
    raise(Errc::domain_error, "numeric precision below 20 digits");
  if (cfg.max_terms < 8)
    raise(Errc::domain_error, "max_terms below 8");
}

inline const EngineConfig& default_config() {
  static const EngineConfig cfg{};
  return cfg;
}

// Point mpfr at the configured working precision. Call once per process
// (or after changing precision_digits) before numeric-mode work.
inline void apply_numeric_precision(const EngineConfig& cfg) {
  Decimal::default_precision(cfg.precision_digits);
}

// Comparison tolerance in numeric mode: ten guard digits under the
// working precision.
inline Decimal numeric_tolerance(const EngineConfig& cfg) {
  Decimal t = pow(Decimal(10), -static_cast<int>(cfg.precision_digits) + 10);
  return t;
}

}  // namespace lcf
