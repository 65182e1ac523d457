#pragma once

#include <json.hpp>

#include <cctype>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "lcf/number.hpp"

namespace lcf {

namespace detail {

// Exponents print bare when integral ("eps^2", "eps^-1") and parenthesized
// otherwise ("eps^(1/2)", "eps^(-3/2)").
inline std::string exponent_str(const Rational& q) {
  if (is_integer(q)) return to_string(q);
  return "(" + to_string(q) + ")";
}

inline std::string eps_str(const Rational& q) {
  if (q == 1) return "eps";
  return "eps^" + exponent_str(q);
}

}  // namespace detail

// Canonical text form: "3 + 5*eps - 1/2*eps^2 + O(eps^12)". parse_number
// accepts everything render emits.
inline std::string render(const LCNumber& a) {
  std::string out;
  bool first = true;
  for (const Term& t : a.terms()) {
    Coefficient mag = t.coeff.abs();
    bool negative = t.coeff.sign() < 0;
    if (first) {
      if (negative) out += "-";
      first = false;
    } else {
      out += negative ? " - " : " + ";
    }
    bool unit = mag == Coefficient::one(a.mode());
    if (t.exponent == 0) {
      out += mag.str();
    } else if (unit) {
      out += detail::eps_str(t.exponent);
    } else {
      out += mag.str() + "*" + detail::eps_str(t.exponent);
    }
  }
  if (a.accuracy().finite()) {
    if (!first) out += " + ";
    out += "O(eps^" + detail::exponent_str(a.accuracy().value()) + ")";
  } else if (first) {
    out = "0";
  }
  return out;
}

namespace detail {

class NumberParser {
public:
  NumberParser(std::string_view s, Mode mode) : s_(s), mode_(mode) {}

  LCNumber run(const EngineConfig& cfg) {
    std::vector<Term> terms;
    Horizon horizon = Horizon::infinity();
    bool horizon_seen = false;
    skip_ws();
    if (at_end()) fail("a term", "end of input");
    int sign = 1;
    if (eat('-')) sign = -1;
    else eat('+');
    while (true) {
      skip_ws();
      if (lookahead_horizon()) {
        if (horizon_seen) fail("a single O(...) marker", "a second one");
        if (sign < 0) fail("a term after '-'", "O(...)");
        horizon = Horizon::at(parse_horizon());
        horizon_seen = true;
        skip_ws();
        if (!at_end()) fail("end of input after O(...)", snippet());
        break;
      }
      terms.push_back(parse_term(sign));
      skip_ws();
      if (at_end()) break;
      if (eat('+')) sign = 1;
      else if (eat('-')) sign = -1;
      else fail("'+' or '-'", snippet());
    }
    return LCNumber::from_terms(mode_, terms, horizon, cfg);
  }

private:
  std::string_view s_;
  std::size_t i_ = 0;
  Mode mode_;

  bool at_end() const { return i_ >= s_.size(); }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    if (!at_end() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  std::string snippet() const {
    if (at_end()) return "end of input";
    return "'" + std::string(1, s_[i_]) + "'";
  }
  [[noreturn]] void fail(const std::string& expected,
                         const std::string& found) const {
    throw SyntaxError(Errc::number_syntax_error, i_, expected, found);
  }

  bool word_at(std::string_view w) const {
    return s_.substr(i_, w.size()) == w;
  }
  bool lookahead_horizon() const { return word_at("O("); }

  Rational parse_horizon() {
    i_ += 2;  // "O("
    expect_word("eps");
    if (!eat('^')) fail("'^' in O(eps^...)", snippet());
    Rational h = parse_exponent();
    if (!eat(')')) fail("')'", snippet());
    return h;
  }

  void expect_word(std::string_view w) {
    if (!word_at(w)) fail("'" + std::string(w) + "'", snippet());
    i_ += w.size();
  }

  Rational parse_exponent() {
    if (eat('(')) {
      Rational r = parse_signed_rational();
      if (!eat(')')) fail("')'", snippet());
      return r;
    }
    bool neg = eat('-');
    Rational r(parse_digits());
    return neg ? Rational(-r) : r;
  }

  Rational parse_signed_rational() {
    bool neg = eat('-');
    Rational r(parse_digits());
    if (eat('/')) {
      BigInt d = parse_digits();
      if (d == 0) fail("nonzero denominator", "0");
      r /= Rational(d);
    }
    return neg ? Rational(-r) : r;
  }

  BigInt parse_digits() {
    std::size_t start = i_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == start) fail("digits", snippet());
    return BigInt(std::string(s_.substr(start, i_ - start)));
  }

  // Coefficient literal: digits with optional '.', '/', and (numeric mode)
  // scientific exponent. The 'e' of "eps" never starts an exponent because
  // it is always followed by 'p'.
  Coefficient parse_coefficient() {
    std::size_t start = i_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == start) fail("a coefficient", snippet());
    if (!at_end() && s_[i_] == '.') {
      ++i_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool sci = false;
    if (!at_end() && (s_[i_] == 'e' || s_[i_] == 'E') && i_ + 1 < s_.size()) {
      char next = s_[i_ + 1];
      if (std::isdigit(static_cast<unsigned char>(next)) || next == '+' ||
          next == '-') {
        sci = true;
        i_ += 2;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      }
    }
    std::string lit(s_.substr(start, i_ - start));
    if (!sci && eat('/')) {
      BigInt d = parse_digits();
      if (d == 0) fail("nonzero denominator", "0");
      Rational q = parse_rational(lit) / Rational(d);
      return Coefficient::of(q, mode_);
    }
    if (sci) {
      if (mode_ == Mode::exact)
        fail("a rational coefficient in exact mode", "'" + lit + "'");
      return Coefficient(Decimal(lit));
    }
    if (mode_ == Mode::numeric) return Coefficient(Decimal(lit));
    return Coefficient(parse_rational(lit));
  }

  Term parse_term(int sign) {
    Coefficient c = Coefficient::one(mode_);
    Rational exponent(0);
    bool have_coeff = false;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      c = parse_coefficient();
      have_coeff = true;
    }
    skip_ws();
    bool want_eps = false;
    if (have_coeff) {
      if (eat('*')) {
        skip_ws();
        want_eps = true;
      }
    } else {
      want_eps = true;
    }
    if (want_eps) {
      expect_word("eps");
      exponent = Rational(1);
      if (eat('^')) exponent = parse_exponent();
    }
    if (sign < 0) c = c.negated();
    return Term{exponent, c};
  }
};

}  // namespace detail

inline LCNumber parse_number(std::string_view text, Mode mode = Mode::exact,
                             const EngineConfig& cfg = default_config()) {
  return detail::NumberParser(text, mode).run(cfg);
}

// --- JSON ------------------------------------------------------------------
// Exact terms serialize as [exp_num, exp_den, coeff_num, coeff_den]; numeric
// terms as [exp_num, exp_den, coeff_string]. Bignums travel as strings.

inline nlohmann::json number_to_json(const LCNumber& a) {
  nlohmann::json terms = nlohmann::json::array();
  for (const Term& t : a.terms()) {
    nlohmann::json row = nlohmann::json::array();
    row.push_back(num(t.exponent).str());
    row.push_back(den(t.exponent).str());
    if (a.mode() == Mode::exact) {
      row.push_back(num(t.coeff.rational()).str());
      row.push_back(den(t.coeff.rational()).str());
    } else {
      row.push_back(t.coeff.decimal().str());
    }
    terms.push_back(std::move(row));
  }
  nlohmann::json j;
  j["mode"] = mode_name(a.mode());
  j["terms"] = std::move(terms);
  if (a.accuracy().finite()) {
    j["accuracy"] = {num(a.accuracy().value()).str(),
                     den(a.accuracy().value()).str()};
  } else {
    j["accuracy"] = nullptr;
  }
  return j;
}

inline LCNumber number_from_json(const nlohmann::json& j,
                                 const EngineConfig& cfg = default_config()) {
  auto bad = [](const std::string& why) -> LCNumber {
    raise(Errc::number_syntax_error, "bad number JSON: " + why);
  };
  if (!j.is_object() || !j.contains("mode") || !j.contains("terms"))
    return bad("expected an object with mode and terms");
  std::string ms = j["mode"].get<std::string>();
  if (ms != "exact" && ms != "numeric") return bad("unknown mode " + ms);
  Mode mode = ms == "exact" ? Mode::exact : Mode::numeric;
  std::vector<Term> terms;
  for (const auto& row : j["terms"]) {
    if (!row.is_array()) return bad("term row is not an array");
    std::size_t want = mode == Mode::exact ? 4 : 3;
    if (row.size() != want) return bad("term row has wrong arity");
    BigInt en(row[0].get<std::string>()), ed(row[1].get<std::string>());
    if (ed == 0) return bad("zero exponent denominator");
    Rational e = Rational(en) / Rational(ed);
    Coefficient c =
        mode == Mode::exact
            ? Coefficient(parse_rational(row[2].get<std::string>() + "/" +
                                         row[3].get<std::string>()))
            : Coefficient(Decimal(row[2].get<std::string>()));
    terms.push_back({e, c});
  }
  Horizon h = Horizon::infinity();
  if (j.contains("accuracy") && !j["accuracy"].is_null()) {
    const auto& acc = j["accuracy"];
    if (!acc.is_array() || acc.size() != 2) return bad("bad accuracy field");
    BigInt an(acc[0].get<std::string>()), ad(acc[1].get<std::string>());
    if (ad == 0) return bad("zero accuracy denominator");
    h = Horizon::at(Rational(an) / Rational(ad));
  }
  return LCNumber::from_terms(mode, terms, h, cfg);
}

inline std::ostream& operator<<(std::ostream& os, const LCNumber& a) {
  return os << render(a);
}
inline std::ostream& operator<<(std::ostream& os, const Coefficient& c) {
  return os << c.str();
}
inline std::ostream& operator<<(std::ostream& os, Ordering o) {
  switch (o) {
    case Ordering::less: return os << "less";
    case Ordering::equal: return os << "equal";
    case Ordering::greater: return os << "greater";
  }
  return os;
}
inline std::ostream& operator<<(std::ostream& os, Classification c) {
  return os << classification_name(c);
}

}  // namespace lcf
