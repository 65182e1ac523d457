#pragma once

#include <json.hpp>

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "lcf/error.hpp"
#include "lcf/rational.hpp"

namespace lcf::expr {

enum class Kind { variable, literal, add, sub, mul, div, pow, sqrt, call };
enum class Func { exp, ln, sin, cos };

inline const char* func_name(Func f) {
  switch (f) {
    case Func::exp: return "exp";
    case Func::ln: return "ln";
    case Func::sin: return "sin";
    case Func::cos: return "cos";
  }
  return "?";
}

// Half-open [begin, end) offsets into the source text; zero for synthesized
// nodes (differentiation results, folded constants).
struct Span {
  std::size_t begin = 0, end = 0;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  Rational value;     // literal
  Rational exponent;  // pow
  Func func = Func::exp;
  NodePtr a, b;
  Span span;
};

inline NodePtr literal(Rational q, Span s = {}) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::literal;
  n->value = std::move(q);
  n->span = s;
  return n;
}
inline NodePtr variable(Span s = {}) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::variable;
  n->span = s;
  return n;
}
inline NodePtr binary(Kind k, NodePtr a, NodePtr b, Span s = {}) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  n->span = s;
  return n;
}
inline NodePtr add(NodePtr a, NodePtr b, Span s = {}) {
  return binary(Kind::add, std::move(a), std::move(b), s);
}
inline NodePtr sub(NodePtr a, NodePtr b, Span s = {}) {
  return binary(Kind::sub, std::move(a), std::move(b), s);
}
inline NodePtr mul(NodePtr a, NodePtr b, Span s = {}) {
  return binary(Kind::mul, std::move(a), std::move(b), s);
}
inline NodePtr div(NodePtr a, NodePtr b, Span s = {}) {
  return binary(Kind::div, std::move(a), std::move(b), s);
}
inline NodePtr pow(NodePtr base, Rational exponent, Span s = {}) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::pow;
  n->a = std::move(base);
  n->exponent = std::move(exponent);
  n->span = s;
  return n;
}
inline NodePtr sqrt(NodePtr arg, Span s = {}) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::sqrt;
  n->a = std::move(arg);
  n->span = s;
  return n;
}
inline NodePtr call(Func f, NodePtr arg, Span s = {}) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::call;
  n->func = f;
  n->a = std::move(arg);
  n->span = s;
  return n;
}
// Unary minus is spelled sub(0, e); literals themselves stay non-negative.
inline NodePtr neg(NodePtr e, Span s = {}) {
  return sub(literal(Rational(0)), std::move(e), s);
}
inline NodePtr signed_literal(const Rational& q, Span s = {}) {
  if (q < 0) return neg(literal(-q), s);
  return literal(q, s);
}

// --- parser ------------------------------------------------------------

namespace detail {

class ExprParser {
public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  NodePtr run() {
    NodePtr e = parse_sum();
    skip_ws();
    if (!at_end()) fail("end of input", snippet());
    return e;
  }

private:
  std::string_view s_;
  std::size_t i_ = 0;

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
  char peek() const { return at_end() ? '\0' : s_[i_]; }
  std::string snippet() const {
    if (at_end()) return "end of input";
    return "'" + std::string(1, s_[i_]) + "'";
  }
  [[noreturn]] void fail(const std::string& expected,
                         const std::string& found) const {
    throw SyntaxError(Errc::parse_error, i_, expected, found);
  }

  NodePtr parse_sum() {
    skip_ws();
    std::size_t begin = i_;
    NodePtr lhs = parse_product();
    while (true) {
      skip_ws();
      if (eat('+')) {
        NodePtr rhs = parse_product();
        lhs = add(lhs, rhs, {begin, i_});
      } else if (eat('-')) {
        NodePtr rhs = parse_product();
        lhs = sub(lhs, rhs, {begin, i_});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_product() {
    skip_ws();
    std::size_t begin = i_;
    NodePtr lhs = parse_unary();
    while (true) {
      skip_ws();
      if (eat('*')) {
        NodePtr rhs = parse_unary();
        lhs = mul(lhs, rhs, {begin, i_});
      } else if (eat('/')) {
        NodePtr rhs = parse_unary();
        lhs = div(lhs, rhs, {begin, i_});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    skip_ws();
    std::size_t begin = i_;
    if (eat('-')) {
      NodePtr e = parse_unary();
      return neg(e, {begin, i_});
    }
    return parse_power();
  }

  NodePtr parse_power() {
    skip_ws();
    std::size_t begin = i_;
    NodePtr base = parse_primary();
    skip_ws();
    if (eat('^')) {
      Rational e = parse_rational_exponent();
      return pow(base, e, {begin, i_});
    }
    return base;
  }

  Rational parse_rational_exponent() {
    skip_ws();
    if (eat('(')) {
      bool negd = eat('-');
      Rational r(parse_digits());
      if (eat('/')) {
        BigInt d = parse_digits();
        if (d == 0) fail("nonzero denominator", "0");
        r /= Rational(d);
      }
      if (!eat(')')) fail("')'", snippet());
      return negd ? Rational(-r) : r;
    }
    bool negd = eat('-');
    Rational r(parse_digits());
    return negd ? Rational(-r) : r;
  }

  BigInt parse_digits() {
    std::size_t start = i_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == start) fail("digits", snippet());
    return BigInt(std::string(s_.substr(start, i_ - start)));
  }

  NodePtr parse_primary() {
    skip_ws();
    std::size_t begin = i_;
    if (eat('(')) {
      NodePtr e = parse_sum();
      skip_ws();
      if (!eat(')')) fail("')'", snippet());
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::size_t start = i_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (!at_end() && s_[i_] == '.') {
        ++i_;
        std::size_t fstart = i_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ == fstart) fail("digits after '.'", snippet());
      }
      Rational q = parse_rational(s_.substr(start, i_ - start));
      return literal(q, {begin, i_});
    }
    if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
      std::size_t start = i_;
      while (!at_end() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
        ++i_;
      std::string word(s_.substr(start, i_ - start));
      if (word == "x") return variable({begin, i_});
      Func f;
      bool is_func = true;
      if (word == "exp") f = Func::exp;
      else if (word == "ln") f = Func::ln;
      else if (word == "sin") f = Func::sin;
      else if (word == "cos") f = Func::cos;
      else is_func = false;
      if (is_func || word == "sqrt") {
        skip_ws();
        if (!eat('(')) fail("'(' after " + word, snippet());
        NodePtr arg = parse_sum();
        skip_ws();
        if (!eat(')')) fail("')'", snippet());
        if (word == "sqrt") return sqrt(arg, {begin, i_});
        return call(f, arg, {begin, i_});
      }
      throw SyntaxError(Errc::parse_error, start,
                        "'x', a function name, or a literal",
                        "identifier '" + word + "'");
    }
    fail("a primary expression", snippet());
  }
};

}  // namespace detail

inline NodePtr parse_expr(std::string_view text) {
  return detail::ExprParser(text).run();
}

// --- rendering -----------------------------------------------------------

namespace detail {

inline bool is_neg_form(const Node& n) {
  return n.kind == Kind::sub && n.a->kind == Kind::literal && n.a->value == 0;
}

// Precedence levels: sum 1, product 2, unary minus 3, power/primary 4.
inline int precedence(const Node& n) {
  switch (n.kind) {
    case Kind::add: return 1;
    case Kind::sub: return is_neg_form(n) ? 3 : 1;
    case Kind::mul:
    case Kind::div: return 2;
    case Kind::pow: return 4;
    default: break;
  }
  if (n.kind == Kind::literal && n.value < 0) return 3;
  return 5;
}

inline std::string exponent_text(const Rational& q) {
  if (is_integer(q)) return to_string(q);
  return "(" + to_string(q) + ")";
}

inline std::string render_node(const Node& n, int need) {
  std::string out;
  switch (n.kind) {
    case Kind::variable: out = "x"; break;
    case Kind::literal: out = to_string(n.value); break;
    case Kind::add:
      out = render_node(*n.a, 1) + " + " + render_node(*n.b, 2);
      break;
    case Kind::sub:
      if (is_neg_form(n)) {
        out = "-" + render_node(*n.b, 3);
      } else {
        out = render_node(*n.a, 1) + " - " + render_node(*n.b, 2);
      }
      break;
    case Kind::mul:
      out = render_node(*n.a, 2) + "*" + render_node(*n.b, 3);
      break;
    case Kind::div:
      out = render_node(*n.a, 2) + "/" + render_node(*n.b, 3);
      break;
    case Kind::pow:
      out = render_node(*n.a, 5) + "^" + exponent_text(n.exponent);
      break;
    case Kind::sqrt:
      out = "sqrt(" + render_node(*n.a, 0) + ")";
      break;
    case Kind::call:
      out = std::string(func_name(n.func)) + "(" + render_node(*n.a, 0) + ")";
      break;
  }
  if (precedence(n) < need) return "(" + out + ")";
  return out;
}

}  // namespace detail

inline std::string render_expr(const NodePtr& n) {
  return detail::render_node(*n, 0);
}

inline nlohmann::json expr_to_json(const NodePtr& n) {
  nlohmann::json j;
  j["span"] = {n->span.begin, n->span.end};
  switch (n->kind) {
    case Kind::variable:
      j["kind"] = "variable";
      j["name"] = "x";
      break;
    case Kind::literal:
      j["kind"] = "literal";
      j["value"] = to_string(n->value);
      break;
    case Kind::add:
    case Kind::sub:
    case Kind::mul:
    case Kind::div: {
      const char* names[] = {"add", "sub", "mul", "div"};
      j["kind"] = names[static_cast<int>(n->kind) - static_cast<int>(Kind::add)];
      j["args"] = {expr_to_json(n->a), expr_to_json(n->b)};
      break;
    }
    case Kind::pow:
      j["kind"] = "pow";
      j["base"] = expr_to_json(n->a);
      j["exponent"] = to_string(n->exponent);
      break;
    case Kind::sqrt:
      j["kind"] = "sqrt";
      j["arg"] = expr_to_json(n->a);
      break;
    case Kind::call:
      j["kind"] = "call";
      j["func"] = func_name(n->func);
      j["arg"] = expr_to_json(n->a);
      break;
  }
  return j;
}

// --- symbolic differentiation ---------------------------------------------
// Independent of the infinitesimal engine on purpose: these rules are the
// classical ones, so agreement with the eps-quotient path is a real check.

namespace detail {

inline bool is_literal(const NodePtr& n, const Rational& q) {
  return n->kind == Kind::literal && n->value == q;
}
inline std::optional<Rational> literal_value(const NodePtr& n) {
  if (n->kind == Kind::literal) return n->value;
  if (is_neg_form(*n) && n->b->kind == Kind::literal) return Rational(-n->b->value);
  return std::nullopt;
}

inline NodePtr fadd(NodePtr a, NodePtr b) {
  auto va = literal_value(a), vb = literal_value(b);
  if (va && vb) return signed_literal(*va + *vb);
  if (va && *va == 0) return b;
  if (vb && *vb == 0) return a;
  return add(std::move(a), std::move(b));
}
inline NodePtr fsub(NodePtr a, NodePtr b) {
  auto va = literal_value(a), vb = literal_value(b);
  if (va && vb) return signed_literal(*va - *vb);
  if (vb && *vb == 0) return a;
  if (va && *va == 0 && vb) return signed_literal(-*vb);
  return sub(std::move(a), std::move(b));
}
inline NodePtr fmul(NodePtr a, NodePtr b) {
  auto va = literal_value(a), vb = literal_value(b);
  if (va && vb) return signed_literal(*va * *vb);
  if ((va && *va == 0) || (vb && *vb == 0)) return literal(Rational(0));
  if (va && *va == 1) return b;
  if (vb && *vb == 1) return a;
  return mul(std::move(a), std::move(b));
}
inline NodePtr fdiv(NodePtr a, NodePtr b) {
  auto va = literal_value(a), vb = literal_value(b);
  if (vb && *vb != 0) {
    if (va) return signed_literal(*va / *vb);
    if (*vb == 1) return a;
  }
  if (va && *va == 0 && !(vb && *vb == 0)) return literal(Rational(0));
  return div(std::move(a), std::move(b));
}
inline NodePtr fpow(NodePtr base, const Rational& e) {
  if (e == 0) return literal(Rational(1));
  if (e == 1) return base;
  auto vb = literal_value(base);
  if (vb) {
    auto exact = rational_pow_exact(*vb, e);
    if (exact) return signed_literal(*exact);
  }
  return pow(std::move(base), e);
}

}  // namespace detail

inline NodePtr differentiate(const NodePtr& n) {
  using namespace detail;
  switch (n->kind) {
    case Kind::variable: return literal(Rational(1));
    case Kind::literal: return literal(Rational(0));
    case Kind::add: return fadd(differentiate(n->a), differentiate(n->b));
    case Kind::sub: return fsub(differentiate(n->a), differentiate(n->b));
    case Kind::mul:
      return fadd(fmul(differentiate(n->a), n->b),
                  fmul(n->a, differentiate(n->b)));
    case Kind::div:
      return fdiv(fsub(fmul(differentiate(n->a), n->b),
                       fmul(n->a, differentiate(n->b))),
                  fmul(n->b, n->b));
    case Kind::pow:
      return fmul(fmul(signed_literal(n->exponent),
                       fpow(n->a, n->exponent - 1)),
                  differentiate(n->a));
    case Kind::sqrt:
      return fdiv(differentiate(n->a),
                  fmul(literal(Rational(2)), sqrt(n->a)));
    case Kind::call: {
      NodePtr inner = differentiate(n->a);
      switch (n->func) {
        case Func::exp: return fmul(call(Func::exp, n->a), inner);
        case Func::ln: return fdiv(inner, n->a);
        case Func::sin: return fmul(call(Func::cos, n->a), inner);
        case Func::cos:
          return fsub(literal(Rational(0)),
                      fmul(call(Func::sin, n->a), inner));
      }
    }
  }
  raise(Errc::domain_error, "unreachable expression kind");
}

}  // namespace lcf::expr
