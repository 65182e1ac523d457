#pragma once

#include <json.hpp>

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lcf/number_io.hpp"

namespace lcf::transfer {

// --- field terms --------------------------------------------------------

enum class TermKind { variable, constant, add, sub, mul, div, neg };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind;
  std::string name;  // variable / parameter
  Rational value;    // constant
  TermPtr a, b;
};

inline TermPtr tvar(std::string name) {
  auto n = std::make_shared<Term>();
  n->kind = TermKind::variable;
  n->name = std::move(name);
  return n;
}
inline TermPtr tconst(Rational q) {
  auto n = std::make_shared<Term>();
  n->kind = TermKind::constant;
  n->value = std::move(q);
  return n;
}
inline TermPtr tbin(TermKind k, TermPtr a, TermPtr b) {
  auto n = std::make_shared<Term>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
inline TermPtr tneg(TermPtr a) {
  auto n = std::make_shared<Term>();
  n->kind = TermKind::neg;
  n->a = std::move(a);
  return n;
}

// --- formulas -----------------------------------------------------------

enum class Cmp { eq, lt, le };

inline const char* cmp_symbol(Cmp c) {
  switch (c) {
    case Cmp::eq: return "=";
    case Cmp::lt: return "<";
    default: return "<=";
  }
}

enum class FKind { forall, exists, conj, disj, neg, implies, atom_cmp, atom_st };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FKind kind;
  std::string var;           // quantifiers
  bool standard_only = false;
  FormulaPtr a, b;           // connectives
  Cmp cmp = Cmp::eq;         // atom_cmp
  TermPtr lhs, rhs;          // atoms (atom_st uses lhs only)
};

inline FormulaPtr quantified(FKind k, std::string var, bool standard_only,
                             FormulaPtr body) {
  auto n = std::make_shared<Formula>();
  n->kind = k;
  n->var = std::move(var);
  n->standard_only = standard_only;
  n->a = std::move(body);
  return n;
}
inline FormulaPtr connective(FKind k, FormulaPtr a, FormulaPtr b = nullptr) {
  auto n = std::make_shared<Formula>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
inline FormulaPtr atom(Cmp c, TermPtr l, TermPtr r) {
  auto n = std::make_shared<Formula>();
  n->kind = FKind::atom_cmp;
  n->cmp = c;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}
inline FormulaPtr atom_standard(TermPtr t) {
  auto n = std::make_shared<Formula>();
  n->kind = FKind::atom_st;
  n->lhs = std::move(t);
  return n;
}

// --- surface syntax -----------------------------------------------------
//
//   formula   := disjunct ['->' formula]                (right associative)
//   disjunct  := conjunct {('|' | 'or') conjunct}
//   conjunct  := negation {('&' | 'and') negation}
//   negation  := ('!' | 'not') negation | quantified
//   quantified:= ('forall' | 'exists') ['^st'] IDENT '.' formula   (maximal scope)
//              | atom
//   atom      := '(' formula ')' | 'st' '(' term ')' | term CMP term
//   CMP       := '=' | '!=' | '<' | '<=' | '>' | '>='
//   term      := tproduct {('+' | '-') tproduct}        ('-' not part of '->')
//   tproduct  := tunary {('*' | '/') tunary}
//   tunary    := '-' tunary | tatom
//   tatom     := '(' term ')' | NUMBER | IDENT

namespace detail {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  FormulaPtr parse() {
    FormulaPtr f = formula();
    skip_ws();
    if (pos_ != text_.size())
      fail("end of input", describe_here());
    return f;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& expected, const std::string& found) {
    throw SyntaxError(Errc::formula_syntax_error, pos_, expected, found);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  char peek(std::size_t k = 0) const {
    return pos_ + k < text_.size() ? text_[pos_ + k] : '\0';
  }
  bool match(char c) {
    skip_ws();
    if (peek() == c) { ++pos_; return true; }
    return false;
  }
  bool match2(char c0, char c1) {
    skip_ws();
    if (peek() == c0 && peek(1) == c1) { pos_ += 2; return true; }
    return false;
  }
  void expect(char c, const char* what) {
    if (!match(c)) fail(what, describe_here());
  }
  static bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }
  bool match_word(std::string_view w) {
    skip_ws();
    if (text_.compare(pos_, w.size(), w) != 0) return false;
    if (pos_ + w.size() < text_.size() && word_char(text_[pos_ + w.size()]))
      return false;
    pos_ += w.size();
    return true;
  }
  std::string describe_here() {
    skip_ws();
    if (pos_ >= text_.size()) return "end of input";
    std::string out = "'";
    out += text_[pos_];
    out += "'";
    return out;
  }
  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || word_char(text_[pos_]) == false ||
        std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("an identifier", describe_here());
    while (pos_ < text_.size() && word_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  FormulaPtr formula() {
    FormulaPtr left = disjunct();
    if (match2('-', '>')) return connective(FKind::implies, left, formula());
    return left;
  }
  FormulaPtr disjunct() {
    FormulaPtr left = conjunct();
    while (true) {
      skip_ws();
      if (match('|') || match_word("or"))
        left = connective(FKind::disj, left, conjunct());
      else
        return left;
    }
  }
  FormulaPtr conjunct() {
    FormulaPtr left = negation();
    while (true) {
      skip_ws();
      if (match('&') || match_word("and"))
        left = connective(FKind::conj, left, negation());
      else
        return left;
    }
  }
  FormulaPtr negation() {
    skip_ws();
    if (peek() == '!' && peek(1) != '=') {
      ++pos_;
      return connective(FKind::neg, negation());
    }
    if (match_word("not")) return connective(FKind::neg, negation());
    return quantified();
  }
  FormulaPtr quantified() {
    skip_ws();
    bool uni = false;
    if (match_word("forall")) uni = true;
    else if (!match_word("exists")) return atom_level();
    bool st = match2('^', 's') && [&] {
      // matched "^s" — insist on the trailing 't'
      if (peek() == 't' && !word_char(peek(1))) { ++pos_; return true; }
      fail("'^st'", describe_here());
    }();
    std::string var = identifier();
    if (var == "forall" || var == "exists" || var == "st" || var == "not" ||
        var == "and" || var == "or")
      fail("a variable name", "keyword '" + var + "'");
    expect('.', "'.' after the bound variable");
    return quantified_node(uni, st, std::move(var), formula());
  }
  static FormulaPtr quantified_node(bool uni, bool st, std::string var,
                                    FormulaPtr body) {
    return lcf::transfer::quantified(uni ? FKind::forall : FKind::exists,
                                     std::move(var), st, std::move(body));
  }
  FormulaPtr atom_level() {
    skip_ws();
    if (match_word("st")) {
      expect('(', "'(' after st");
      TermPtr t = term();
      expect(')', "')' closing st(...)");
      return atom_standard(std::move(t));
    }
    if (peek() == '(') {
      // Could open a parenthesized formula or a parenthesized term; try the
      // formula reading and fall back on a syntax error.
      std::size_t save = pos_;
      try {
        ++pos_;
        FormulaPtr inner = formula();
        expect(')', "')'");
        return inner;
      } catch (const SyntaxError&) {
        pos_ = save;
      }
    }
    return comparison();
  }
  FormulaPtr comparison() {
    TermPtr left = term();
    skip_ws();
    if (match2('<', '=')) return atom(Cmp::le, left, term());
    if (match2('>', '=')) return atom(Cmp::le, term(), std::move(left));
    if (match2('!', '='))
      return connective(FKind::neg, atom(Cmp::eq, left, term()));
    if (match('<')) return atom(Cmp::lt, left, term());
    if (match('>')) return atom(Cmp::lt, term(), std::move(left));
    if (match('=')) return atom(Cmp::eq, left, term());
    fail("a comparison operator", describe_here());
  }

  TermPtr term() {
    TermPtr left = tproduct();
    while (true) {
      skip_ws();
      if (peek() == '-' && peek(1) == '>') return left;  // implication arrow
      if (match('+')) left = tbin(TermKind::add, left, tproduct());
      else if (match('-')) left = tbin(TermKind::sub, left, tproduct());
      else return left;
    }
  }
  TermPtr tproduct() {
    TermPtr left = tunary();
    while (true) {
      if (match('*')) left = tbin(TermKind::mul, left, tunary());
      else if (match('/')) left = tbin(TermKind::div, left, tunary());
      else return left;
    }
  }
  TermPtr tunary() {
    skip_ws();
    if (peek() == '-' && peek(1) != '>') {
      ++pos_;
      return tneg(tunary());
    }
    return tatom();
  }
  TermPtr tatom() {
    skip_ws();
    if (match('(')) {
      TermPtr t = term();
      expect(')', "')'");
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        ++pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
      return tconst(parse_rational(text_.substr(start, pos_ - start)));
    }
    if (word_char(peek())) {
      std::string name = identifier();
      if (name == "forall" || name == "exists" || name == "st" ||
          name == "not" || name == "and" || name == "or")
        fail("a term", "keyword '" + name + "'");
      return tvar(std::move(name));
    }
    fail("a term", describe_here());
  }
};

}  // namespace detail

inline FormulaPtr parse_formula(std::string_view text) {
  return detail::FormulaParser(text).parse();
}

// --- rendering ----------------------------------------------------------

inline std::string render_term(const TermPtr& t);

namespace detail {

inline void render_term_at(const TermPtr& t, int level, std::string& out) {
  auto wrap = [&](int prec, auto&& body) {
    bool paren = prec < level;
    if (paren) out += '(';
    body();
    if (paren) out += ')';
  };
  switch (t->kind) {
    case TermKind::variable: out += t->name; return;
    case TermKind::constant: out += to_string(t->value); return;
    case TermKind::neg:
      wrap(3, [&] {
        out += '-';
        render_term_at(t->a, 3, out);
      });
      return;
    case TermKind::add:
    case TermKind::sub:
      wrap(1, [&] {
        render_term_at(t->a, 1, out);
        out += t->kind == TermKind::add ? " + " : " - ";
        render_term_at(t->b, 2, out);
      });
      return;
    case TermKind::mul:
    case TermKind::div:
      wrap(2, [&] {
        render_term_at(t->a, 2, out);
        out += t->kind == TermKind::mul ? "*" : "/";
        render_term_at(t->b, 3, out);
      });
      return;
  }
}

inline void render_formula_at(const FormulaPtr& f, int level, std::string& out) {
  auto wrap = [&](int prec, auto&& body) {
    bool paren = prec < level;
    if (paren) out += '(';
    body();
    if (paren) out += ')';
  };
  switch (f->kind) {
    case FKind::forall:
    case FKind::exists:
      wrap(1, [&] {
        out += f->kind == FKind::forall ? "forall" : "exists";
        if (f->standard_only) out += "^st";
        out += ' ';
        out += f->var;
        out += ". ";
        render_formula_at(f->a, 1, out);
      });
      return;
    case FKind::implies:
      wrap(1, [&] {
        render_formula_at(f->a, 2, out);
        out += " -> ";
        render_formula_at(f->b, 1, out);  // right associative
      });
      return;
    case FKind::disj:
      wrap(2, [&] {
        render_formula_at(f->a, 2, out);
        out += " | ";
        render_formula_at(f->b, 3, out);
      });
      return;
    case FKind::conj:
      wrap(3, [&] {
        render_formula_at(f->a, 3, out);
        out += " & ";
        render_formula_at(f->b, 4, out);
      });
      return;
    case FKind::neg:
      wrap(4, [&] {
        out += '!';
        render_formula_at(f->a, 4, out);
      });
      return;
    case FKind::atom_cmp:
      out += render_term(f->lhs);
      out += ' ';
      out += cmp_symbol(f->cmp);
      out += ' ';
      out += render_term(f->rhs);
      return;
    case FKind::atom_st:
      out += "st(";
      out += render_term(f->lhs);
      out += ')';
      return;
  }
}

}  // namespace detail

inline std::string render_term(const TermPtr& t) {
  std::string out;
  detail::render_term_at(t, 0, out);
  return out;
}

inline std::string render_formula(const FormulaPtr& f) {
  std::string out;
  detail::render_formula_at(f, 0, out);
  return out;
}

// --- structural helpers -------------------------------------------------

inline std::size_t node_count(const TermPtr& t) {
  if (!t) return 0;
  return 1 + node_count(t->a) + node_count(t->b);
}

inline std::size_t node_count(const FormulaPtr& f) {
  if (!f) return 0;
  return 1 + node_count(f->a) + node_count(f->b) + node_count(f->lhs) +
         node_count(f->rhs);
}

inline std::size_t quantifier_depth(const FormulaPtr& f) {
  if (!f) return 0;
  std::size_t inner = std::max(quantifier_depth(f->a), quantifier_depth(f->b));
  if (f->kind == FKind::forall || f->kind == FKind::exists) return inner + 1;
  return inner;
}

namespace detail {

inline void term_names(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == TermKind::variable) out.insert(t->name);
  term_names(t->a, out);
  term_names(t->b, out);
}

inline void free_names(const FormulaPtr& f, std::set<std::string> bound,
                       std::set<std::string>& out) {
  if (!f) return;
  if (f->kind == FKind::forall || f->kind == FKind::exists) {
    bound.insert(f->var);
    free_names(f->a, std::move(bound), out);
    return;
  }
  if (f->lhs || f->rhs) {
    std::set<std::string> names;
    term_names(f->lhs, names);
    term_names(f->rhs, names);
    for (const auto& n : names)
      if (!bound.count(n)) out.insert(n);
    return;
  }
  free_names(f->a, bound, out);
  free_names(f->b, std::move(bound), out);
}

inline bool contains_st_atom(const FormulaPtr& f) {
  if (!f) return false;
  if (f->kind == FKind::atom_st) return true;
  return contains_st_atom(f->a) || contains_st_atom(f->b);
}

}  // namespace detail

inline std::set<std::string> free_parameters(const FormulaPtr& f) {
  std::set<std::string> out;
  detail::free_names(f, {}, out);
  return out;
}

// --- applicability check and the rewrite --------------------------------

enum class ViolationKind { st_predicate_in_matrix, nonstandard_parameter };

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct TransferVerdict {
  bool applicable = false;
  std::vector<Violation> reasons;
};

inline TransferVerdict check_applicability(
    const FormulaPtr& phi,
    const std::map<std::string, bool>& params = {}) {
  TransferVerdict v;
  if (detail::contains_st_atom(phi))
    v.reasons.push_back({ViolationKind::st_predicate_in_matrix,
                         "standardness predicate appears in the matrix"});
  for (const std::string& name : free_parameters(phi)) {
    auto it = params.find(name);
    if (it == params.end())
      raise(Errc::unbound_variable,
            "parameter '" + name + "' has no standard/nonstandard marking");
    if (!it->second)
      v.reasons.push_back({ViolationKind::nonstandard_parameter,
                           "parameter '" + name + "' is marked nonstandard"});
  }
  v.applicable = v.reasons.empty();
  return v;
}

inline nlohmann::json verdict_to_json(const TransferVerdict& v) {
  nlohmann::json reasons = nlohmann::json::array();
  for (const Violation& r : v.reasons) {
    nlohmann::json item;
    item["kind"] = r.kind == ViolationKind::st_predicate_in_matrix
                       ? "StPredicateInMatrix"
                       : "NonstandardParameter";
    item["detail"] = r.detail;
    reasons.push_back(std::move(item));
  }
  return nlohmann::json{{"applicable", v.applicable},
                        {"reasons", std::move(reasons)}};
}

// Clears every standard_only flag: forall^st x -> forall x, same for exists.
inline FormulaPtr apply_transfer(const FormulaPtr& phi,
                                 const std::map<std::string, bool>& params = {}) {
  TransferVerdict v = check_applicability(phi, params);
  if (!v.applicable) {
    std::string msg = "transfer rejected:";
    for (const Violation& r : v.reasons) msg += " " + r.detail + ";";
    msg.pop_back();
    raise(Errc::not_applicable, msg);
  }
  struct Rewriter {
    static FormulaPtr walk(const FormulaPtr& f) {
      if (!f) return nullptr;
      auto n = std::make_shared<Formula>(*f);
      n->standard_only = false;
      n->a = walk(f->a);
      n->b = walk(f->b);
      return n;
    }
  };
  return Rewriter::walk(phi);
}

// --- instance testing ---------------------------------------------------

// A value is standard when it is exactly a known rational: one order-zero
// term (or none at all) under an unbounded accuracy horizon.
inline bool is_standard_value(const LCNumber& v) {
  if (v.accuracy().finite()) return false;
  if (v.vanishes()) return true;
  return v.terms().size() == 1 && v.terms()[0].exponent == 0;
}

struct TestOptions {
  std::uint64_t seed = 20260819;
  std::size_t budget = 4000;
};

struct TestReport {
  bool counterexample_found = false;
  std::vector<std::pair<std::string, std::string>> bindings;
  std::size_t instances_checked = 0;
  std::size_t indeterminate_instances = 0;
  bool budget_exhausted = false;
  std::string summary;
};

namespace detail {

enum class TV { ff, unknown, tt };

inline TV tv_not(TV v) {
  if (v == TV::tt) return TV::ff;
  if (v == TV::ff) return TV::tt;
  return TV::unknown;
}
inline TV tv_and(TV a, TV b) {
  if (a == TV::ff || b == TV::ff) return TV::ff;
  if (a == TV::tt && b == TV::tt) return TV::tt;
  return TV::unknown;
}
inline TV tv_or(TV a, TV b) {
  if (a == TV::tt || b == TV::tt) return TV::tt;
  if (a == TV::ff && b == TV::ff) return TV::ff;
  return TV::unknown;
}

struct InstanceTester {
  const EngineConfig& cfg;
  Mode mode;
  std::vector<LCNumber> base_pool;
  std::size_t budget;
  std::size_t instances_checked = 0;
  std::size_t indeterminate_instances = 0;
  bool budget_exhausted = false;
  std::vector<std::pair<std::string, LCNumber>> env;
  std::optional<std::vector<std::pair<std::string, std::string>>> counterexample;

  LCNumber eval_term(const TermPtr& t) {
    switch (t->kind) {
      case TermKind::variable: {
        for (auto it = env.rbegin(); it != env.rend(); ++it)
          if (it->first == t->name) return it->second;
        raise(Errc::unbound_variable, "no binding for '" + t->name + "'");
      }
      case TermKind::constant:
        return LCNumber::from_rational(t->value, mode);
      case TermKind::neg:
        return negate(eval_term(t->a));
      case TermKind::add:
        return add(eval_term(t->a), eval_term(t->b), cfg);
      case TermKind::sub:
        return subtract(eval_term(t->a), eval_term(t->b), cfg);
      case TermKind::mul:
        return multiply(eval_term(t->a), eval_term(t->b), cfg);
      default:
        return divide(eval_term(t->a), eval_term(t->b), cfg);
    }
  }

  TV eval_atom(const FormulaPtr& f) {
    try {
      if (f->kind == FKind::atom_st)
        return is_standard_value(eval_term(f->lhs)) ? TV::tt : TV::ff;
      Ordering ord = compare(eval_term(f->lhs), eval_term(f->rhs), cfg);
      switch (f->cmp) {
        case Cmp::eq: return ord == Ordering::equal ? TV::tt : TV::ff;
        case Cmp::lt: return ord == Ordering::less ? TV::tt : TV::ff;
        default:
          return ord != Ordering::greater ? TV::tt : TV::ff;
      }
    } catch (const Error&) {
      // Undefined instance (division by zero, comparison below the horizon):
      // three-valued escape rather than a verdict.
      return TV::unknown;
    }
  }

  std::vector<LCNumber> candidates(bool standard_only) {
    std::vector<LCNumber> out;
    auto push = [&](const LCNumber& v) {
      if (standard_only && !is_standard_value(v)) return;
      out.push_back(v);
    };
    for (const LCNumber& v : base_pool) push(v);
    // Values reachable from what is already bound: negations, successors,
    // reciprocals. This is where inverse witnesses come from.
    for (const auto& [name, v] : env) {
      (void)name;
      push(negate(v));
      push(add(v, LCNumber::one(mode), cfg));
      if (!v.vanishes()) {
        try {
          push(invert(v, cfg));
        } catch (const Error&) {
        }
      }
    }
    return out;
  }

  TV eval(const FormulaPtr& f) {
    switch (f->kind) {
      case FKind::neg: return tv_not(eval(f->a));
      case FKind::conj: return tv_and(eval(f->a), eval(f->b));
      case FKind::disj: return tv_or(eval(f->a), eval(f->b));
      case FKind::implies: return tv_or(tv_not(eval(f->a)), eval(f->b));
      case FKind::atom_cmp:
      case FKind::atom_st: {
        TV r = eval_atom(f);
        if (r == TV::unknown) ++indeterminate_instances;
        return r;
      }
      case FKind::forall:
      case FKind::exists: {
        bool universal = f->kind == FKind::forall;
        for (const LCNumber& v : candidates(f->standard_only)) {
          if (instances_checked >= budget) {
            budget_exhausted = true;
            return TV::unknown;
          }
          ++instances_checked;
          env.emplace_back(f->var, v);
          TV r = eval(f->a);
          if (universal && r == TV::ff) {
            if (!counterexample) {
              counterexample.emplace();
              for (const auto& [name, bound] : env)
                counterexample->emplace_back(name, render(bound));
            }
            env.pop_back();
            return TV::ff;
          }
          env.pop_back();
          if (!universal && r == TV::tt) return TV::tt;
        }
        // A sampled pool can refute a universal and witness an existential,
        // never the reverse; everything else stays open.
        return TV::unknown;
      }
    }
    return TV::unknown;
  }
};

}  // namespace detail

inline TestReport test_instances(const FormulaPtr& phi,
                                 const EngineConfig& cfg = default_config(),
                                 Mode mode = Mode::exact,
                                 const TestOptions& options = {}) {
  if (!free_parameters(phi).empty())
    raise(Errc::unbound_variable,
          "instance testing needs a closed formula; free: '" +
              *free_parameters(phi).begin() + "'");
  if (quantifier_depth(phi) > 3)
    raise(Errc::domain_error, "quantifier depth beyond the supported 3");

  detail::InstanceTester tester{cfg, mode, {}, options.budget};
  std::mt19937_64 rng(options.seed);

  auto rat = [&](const Rational& q) {
    return LCNumber::from_rational(q, mode);
  };
  LCNumber eps = LCNumber::epsilon(mode);
  LCNumber muv = LCNumber::monomial(Coefficient::one(mode), Rational(-1));

  for (const Rational& q :
       {Rational(0), Rational(1), Rational(-1), Rational(2), Rational(-2),
        Rational(1, 2), Rational(-3, 2), Rational(7, 3)})
    tester.base_pool.push_back(rat(q));
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  for (int i = 0; i < 4; ++i)
    tester.base_pool.push_back(rat(Rational(num(rng), den(rng))));

  // Off the standard line: infinitesimals, perturbed rationals, infinite
  // values, and one value known only to a finite horizon.
  tester.base_pool.push_back(eps);
  tester.base_pool.push_back(negate(eps));
  tester.base_pool.push_back(multiply(eps, eps, cfg));
  tester.base_pool.push_back(multiply(rat(Rational(3)), eps, cfg));
  tester.base_pool.push_back(add(rat(Rational(1, 2)), eps, cfg));
  tester.base_pool.push_back(muv);
  tester.base_pool.push_back(negate(muv));
  tester.base_pool.push_back(multiply(rat(Rational(2)), muv, cfg));
  tester.base_pool.push_back(add(muv, LCNumber::one(mode), cfg));
  tester.base_pool.push_back(
      LCNumber::epsilon(mode).with_accuracy(Horizon::at(Rational(2))));

  detail::TV top = tester.eval(phi);

  TestReport report;
  report.instances_checked = tester.instances_checked;
  report.indeterminate_instances = tester.indeterminate_instances;
  report.budget_exhausted = tester.budget_exhausted;
  if (top == detail::TV::ff) {
    report.counterexample_found = true;
    if (tester.counterexample) report.bindings = *tester.counterexample;
    report.summary = "counterexample found";
  } else if (top == detail::TV::tt) {
    report.summary = "witnessed true on sampled instances";
  } else {
    report.summary = "no counterexample in budget (consistent with transfer)";
  }
  return report;
}

inline nlohmann::json report_to_json(const TestReport& r) {
  nlohmann::json j;
  j["counterexample_found"] = r.counterexample_found;
  if (r.counterexample_found) {
    nlohmann::json b = nlohmann::json::object();
    for (const auto& [name, value] : r.bindings) b[name] = value;
    j["counterexample"] = std::move(b);
  }
  j["instances_checked"] = r.instances_checked;
  j["indeterminate_instances"] = r.indeterminate_instances;
  j["budget_exhausted"] = r.budget_exhausted;
  j["summary"] = r.summary;
  return j;
}

inline nlohmann::json formula_to_json(const FormulaPtr& f) {
  nlohmann::json j;
  switch (f->kind) {
    case FKind::forall:
    case FKind::exists:
      j["kind"] = f->kind == FKind::forall ? "forall" : "exists";
      j["var"] = f->var;
      j["standard_only"] = f->standard_only;
      j["body"] = formula_to_json(f->a);
      return j;
    case FKind::conj:
    case FKind::disj:
    case FKind::implies:
      j["kind"] = f->kind == FKind::conj ? "and"
                  : f->kind == FKind::disj ? "or"
                                           : "implies";
      j["left"] = formula_to_json(f->a);
      j["right"] = formula_to_json(f->b);
      return j;
    case FKind::neg:
      j["kind"] = "not";
      j["body"] = formula_to_json(f->a);
      return j;
    case FKind::atom_st:
      j["kind"] = "st";
      j["term"] = render_term(f->lhs);
      return j;
    case FKind::atom_cmp:
      j["kind"] = "cmp";
      j["op"] = cmp_symbol(f->cmp);
      j["left"] = render_term(f->lhs);
      j["right"] = render_term(f->rhs);
      return j;
  }
  return j;
}

// Bundled ordered-field sentences, quantifiers standardness-relativized;
// apply_transfer lifts them to the whole field.
inline const std::vector<std::string>& ordered_field_axioms() {
  static const std::vector<std::string> axioms = {
      "forall^st x. forall^st y. x + y = y + x",
      "forall^st x. forall^st y. forall^st z. (x + y) + z = x + (y + z)",
      "forall^st x. x + 0 = x",
      "forall^st x. x - x = 0",
      "forall^st x. forall^st y. x*y = y*x",
      "forall^st x. forall^st y. forall^st z. (x*y)*z = x*(y*z)",
      "forall^st x. x*1 = x",
      "forall^st x. forall^st y. forall^st z. x*(y + z) = x*y + x*z",
      "forall^st x. forall^st y. forall^st z. x < y -> x + z < y + z",
      "forall^st x. forall^st y. forall^st z. (x < y & y < z) -> x < z",
  };
  return axioms;
}

}  // namespace lcf::transfer
