// SPDX-License-Identifier: Apache-2.0
#include "orlicz/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <utility>
#include <vector>

#include "orlicz/numeric.hpp"

namespace orlicz {
namespace detail {

enum class Op { add, sub, mul, div, pow, neg, num, var, exp, ln, sqrt, abs, floor, ceil, min, max };

struct ExprNode {
  Op op;
  double value = 0.0;  // for Op::num
  std::shared_ptr<const ExprNode> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr make_num(double v) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::num;
  n->value = v;
  return n;
}

struct Parser {
  std::string_view s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw config_error("expression error at position " + std::to_string(pos) +
                       " in \"" + std::string(s) + "\": " + what);
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  NodePtr parse_expr() {
    NodePtr left = parse_term();
    while (true) {
      if (eat('+'))
        left = make(Op::add, left, parse_term());
      else if (eat('-'))
        left = make(Op::sub, left, parse_term());
      else
        return left;
    }
  }

  NodePtr parse_term() {
    NodePtr left = parse_factor();
    while (true) {
      if (eat('*'))
        left = make(Op::mul, left, parse_factor());
      else if (eat('/'))
        left = make(Op::div, left, parse_factor());
      else
        return left;
    }
  }

  NodePtr parse_factor() {
    // -x^y parses as -(x^y): exponentiation binds above unary minus
    if (eat('-')) return make(Op::neg, parse_factor());
    NodePtr base = parse_unary();
    if (eat('^')) return make(Op::pow, base, parse_factor());
    return base;
  }

  NodePtr parse_unary() {
    if (eat('-')) return make(Op::neg, parse_unary());
    return parse_primary();
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    const char c = s[pos];
    if (c == '(') {
      ++pos;
      NodePtr e = parse_expr();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    const char* begin = s.data() + pos;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("bad number");
    pos += static_cast<std::size_t>(end - begin);
    return make_num(v);
  }

  NodePtr parse_name() {
    const std::size_t start = pos;
    while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
    const std::string_view name = s.substr(start, pos - start);
    if (name == "j" || name == "t" || name == "x" || name == "n") return make(Op::var);
    Op op;
    int arity = 1;
    if (name == "exp")
      op = Op::exp;
    else if (name == "ln")
      op = Op::ln;
    else if (name == "sqrt")
      op = Op::sqrt;
    else if (name == "abs")
      op = Op::abs;
    else if (name == "floor")
      op = Op::floor;
    else if (name == "ceil")
      op = Op::ceil;
    else if (name == "min") {
      op = Op::min;
      arity = 2;
    } else if (name == "max") {
      op = Op::max;
      arity = 2;
    } else {
      fail("unknown name '" + std::string(name) + "'");
    }
    if (!eat('(')) fail("expected '(' after '" + std::string(name) + "'");
    NodePtr a = parse_expr();
    NodePtr b;
    if (arity == 2) {
      if (!eat(',')) fail("expected ',' in two-argument call");
      b = parse_expr();
    }
    if (!eat(')')) fail("missing ')'");
    return make(op, a, b);
  }
};

double eval(const ExprNode& n, double v) {
  switch (n.op) {
    case Op::num: return n.value;
    case Op::var: return v;
    case Op::add: return eval(*n.a, v) + eval(*n.b, v);
    case Op::sub: return eval(*n.a, v) - eval(*n.b, v);
    case Op::mul: return eval(*n.a, v) * eval(*n.b, v);
    case Op::div: return eval(*n.a, v) / eval(*n.b, v);
    case Op::pow: return std::pow(eval(*n.a, v), eval(*n.b, v));
    case Op::neg: return -eval(*n.a, v);
    case Op::exp: return std::exp(eval(*n.a, v));
    case Op::ln: return std::log(eval(*n.a, v));
    case Op::sqrt: return std::sqrt(eval(*n.a, v));
    case Op::abs: return std::abs(eval(*n.a, v));
    case Op::floor: return std::floor(eval(*n.a, v));
    case Op::ceil: return std::ceil(eval(*n.a, v));
    case Op::min: return std::min(eval(*n.a, v), eval(*n.b, v));
    case Op::max: return std::max(eval(*n.a, v), eval(*n.b, v));
  }
  throw numeric_error("expression: corrupt node");
}

}  // namespace
}  // namespace detail

Expression Expression::parse(std::string_view text) {
  detail::Parser p{text};
  Expression e;
  e.root_ = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  e.text_ = std::string(text);
  return e;
}

double Expression::operator()(double v) const {
  if (!root_) throw numeric_error("expression: evaluating empty expression");
  return detail::eval(*root_, v);
}

}  // namespace orlicz
