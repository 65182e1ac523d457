#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lcf {

// Every failure mode the library can report. CLI maps these to exit code 3;
// usage problems (bad flags, missing args) never reach this enum.
enum class Errc {
  mode_mismatch,
  term_overflow,
  division_by_zero,
  negative_leading_coefficient,
  numeric_mode_required,
  insufficient_precision,
  infinite_part,
  zero_has_no_leading_exponent,
  number_syntax_error,
  zero_argument,
  zero_reference,
  parse_error,
  non_rational_value,
  domain_error,
  not_infinitesimal,
  window_too_small,
  vertical_tangent,
  zero_curvature,
  non_invertible_jet,
  no_witness_found,
  formula_syntax_error,
  unbound_variable,
  not_applicable,
  degenerate_family,
  io_error,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::mode_mismatch: return "ModeMismatch";
    case Errc::term_overflow: return "TermOverflow";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::negative_leading_coefficient: return "NegativeLeadingCoefficient";
    case Errc::numeric_mode_required: return "NumericModeRequired";
    case Errc::insufficient_precision: return "InsufficientPrecision";
    case Errc::infinite_part: return "InfinitePart";
    case Errc::zero_has_no_leading_exponent: return "ZeroHasNoLeadingExponent";
    case Errc::number_syntax_error: return "NumberSyntaxError";
    case Errc::zero_argument: return "ZeroArgument";
    case Errc::zero_reference: return "ZeroReference";
    case Errc::parse_error: return "ParseError";
    case Errc::non_rational_value: return "NonRationalValue";
    case Errc::domain_error: return "DomainError";
    case Errc::not_infinitesimal: return "NotInfinitesimal";
    case Errc::window_too_small: return "WindowTooSmall";
    case Errc::vertical_tangent: return "VerticalTangent";
    case Errc::zero_curvature: return "ZeroCurvature";
    case Errc::non_invertible_jet: return "NonInvertibleJet";
    case Errc::no_witness_found: return "NoWitnessFound";
    case Errc::formula_syntax_error: return "FormulaSyntaxError";
    case Errc::unbound_variable: return "UnboundVariable";
    case Errc::not_applicable: return "NotApplicable";
    case Errc::degenerate_family: return "DegenerateFamily";
    case Errc::io_error: return "IoError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }
  const char* name() const { return errc_name(code_); }

private:
  Errc code_;
};

// Syntax failures carry the offset of the offending token plus what the
// parser wanted vs. what it saw, so callers can point at the input.
class SyntaxError : public Error {
public:
  SyntaxError(Errc code, std::size_t position, std::string expected,
              std::string found)
      : Error(code, errc_name(code) + std::string(" at offset ") +
                        std::to_string(position) + ": expected " + expected +
                        ", found " + found),
        position_(position),
        expected_(std::move(expected)),
        found_(std::move(found)) {}

  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

private:
  std::size_t position_;
  std::string expected_;
  std::string found_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, std::string(errc_name(code)) + ": " + message);
}

}  // namespace lcf
