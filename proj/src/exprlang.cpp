#include "zdirac/exprlang.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace zdirac::expr {

std::string_view to_string(Func f) {
  switch (f) {
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
    case Func::Sinh: return "sinh";
    case Func::Cosh: return "cosh";
    case Func::Tanh: return "tanh";
    case Func::Sech: return "sech";
  }
  return "?";
}

namespace {

bool mentions_x(const Node& n) {
  if (n.kind == NodeKind::Variable) return true;
  if (n.lhs && mentions_x(*n.lhs)) return true;
  if (n.rhs && mentions_x(*n.rhs)) return true;
  return false;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse_all() {
    skip_ws();
    if (pos_ >= text_.size()) fail("empty expression");
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what, ErrorKind kind = ErrorKind::SyntaxError) const {
    std::ostringstream os;
    os << what << " at byte " << pos_;
    throw Error(kind, os.str()).with_span(pos_, 0);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr make(NodeKind kind, NodePtr lhs, NodePtr rhs, std::size_t begin, std::size_t end) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    n->offset = begin;
    n->length = end - begin;
    return n;
  }

  NodePtr parse_expr() {
    skip_ws();
    std::size_t begin = pos_;
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = make(NodeKind::Add, lhs, parse_term(), begin, pos_);
      } else if (accept('-')) {
        lhs = make(NodeKind::Sub, lhs, parse_term(), begin, pos_);
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    skip_ws();
    std::size_t begin = pos_;
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(NodeKind::Mul, lhs, parse_unary(), begin, pos_);
      } else if (accept('/')) {
        lhs = make(NodeKind::Div, lhs, parse_unary(), begin, pos_);
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    skip_ws();
    std::size_t begin = pos_;
    if (accept('-')) return make(NodeKind::Negate, parse_unary(), nullptr, begin, pos_);
    return parse_power();
  }

  NodePtr parse_power() {
    skip_ws();
    std::size_t begin = pos_;
    NodePtr base = parse_primary();
    if (accept('^')) {
      skip_ws();
      std::size_t exp_begin = pos_;
      NodePtr exponent = parse_unary();
      if (mentions_x(*exponent)) {
        pos_ = exp_begin;
        fail("exponent depends on x", ErrorKind::NonConstantExponent);
      }
      return make(NodeKind::Pow, base, exponent, begin, pos_);
    }
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    std::size_t begin = pos_;
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view ident = text_.substr(begin, pos_ - begin);
      if (ident == "x") return make(NodeKind::Variable, nullptr, nullptr, begin, pos_);
      if (ident == "pi") return make(NodeKind::Pi, nullptr, nullptr, begin, pos_);
      static constexpr Func kFuncs[] = {Func::Exp, Func::Log, Func::Sqrt, Func::Sinh,
                                        Func::Cosh, Func::Tanh, Func::Sech};
      for (Func f : kFuncs) {
        if (ident == to_string(f)) {
          if (!accept('(')) fail("expected '(' after function name");
          NodePtr arg = parse_expr();
          if (!accept(')')) fail("expected ')' closing function call");
          auto n = std::make_shared<Node>();
          n->kind = NodeKind::Call;
          n->func = f;
          n->lhs = std::move(arg);
          n->offset = begin;
          n->length = pos_ - begin;
          return n;
        }
      }
      pos_ = begin;
      fail("unknown identifier '" + std::string(ident) + "'", ErrorKind::UnknownIdentifier);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    std::size_t begin = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = save;
      }
    }
    std::string_view lit = text_.substr(begin, pos_ - begin);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(lit.data(), lit.data() + lit.size(), value);
    if (ec != std::errc() || ptr != lit.data() + lit.size() || lit == ".") {
      pos_ = begin;
      fail("malformed number");
    }
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Number;
    n->number = value;
    n->offset = begin;
    n->length = pos_ - begin;
    return n;
  }
};

Jet eval_node(const Node& n, const Jet& x) {
  try {
    switch (n.kind) {
      case NodeKind::Number: return Jet::constant(x.base(), x.order(), n.number);
      case NodeKind::Variable: return x;
      case NodeKind::Pi: return Jet::constant(x.base(), x.order(), std::numbers::pi);
      case NodeKind::Negate: return -eval_node(*n.lhs, x);
      case NodeKind::Add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
      case NodeKind::Sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
      case NodeKind::Mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
      case NodeKind::Div: return eval_node(*n.lhs, x) / eval_node(*n.rhs, x);
      case NodeKind::Pow: {
        Complex p = eval_node(*n.rhs, Jet::constant(x.base(), 0, x[0]))[0];
        return pow(eval_node(*n.lhs, x), p);
      }
      case NodeKind::Call: {
        Jet a = eval_node(*n.lhs, x);
        switch (n.func) {
          case Func::Exp: return exp(a);
          case Func::Log: return log(a);
          case Func::Sqrt: return sqrt(a);
          case Func::Sinh: return sinh(a);
          case Func::Cosh: return cosh(a);
          case Func::Tanh: return tanh(a);
          case Func::Sech: return sech(a);
        }
      }
    }
  } catch (const Error& e) {
    // Innermost failing node wins; outer frames keep the span already set.
    if (e.length() == 0) throw e.with_span(n.offset, n.length);
    throw;
  }
  throw Error(ErrorKind::SyntaxError, "corrupt expression tree");
}

void render_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Number: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n.number);
      out += buf;
      return;
    }
    case NodeKind::Variable: out += "x"; return;
    case NodeKind::Pi: out += "pi"; return;
    case NodeKind::Negate:
      out += "(-";
      render_node(*n.lhs, out);
      out += ")";
      return;
    case NodeKind::Call:
      out += to_string(n.func);
      out += "(";
      render_node(*n.lhs, out);
      out += ")";
      return;
    default: break;
  }
  char op = '?';
  switch (n.kind) {
    case NodeKind::Add: op = '+'; break;
    case NodeKind::Sub: op = '-'; break;
    case NodeKind::Mul: op = '*'; break;
    case NodeKind::Div: op = '/'; break;
    case NodeKind::Pow: op = '^'; break;
    default: break;
  }
  out += "(";
  render_node(*n.lhs, out);
  out += op;
  render_node(*n.rhs, out);
  out += ")";
}

}  // namespace

Expr parse(std::string_view text) {
  Parser p(text);
  return Expr(p.parse_all(), std::string(text));
}

Jet evaluate(const Expr& e, const Jet& x) { return eval_node(e.root(), x); }

Complex evaluate(const Expr& e, double x) { return eval_node(e.root(), Jet::constant(x, 0, x))[0]; }

std::string render(const Expr& e) {
  std::string out;
  render_node(e.root(), out);
  return out;
}

bool same_tree(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == NodeKind::Number && a.number != b.number) return false;
  if (a.kind == NodeKind::Call && a.func != b.func) return false;
  if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
  if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
  if (a.lhs && !same_tree(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !same_tree(*a.rhs, *b.rhs)) return false;
  return true;
}

Field to_field(const Expr& e) {
  return Field([e](double x, int order) { return evaluate(e, Jet::variable(x, order)); }, e.source());
}

Field parse_field(std::string_view text) { return to_field(parse(text)); }

}  // namespace zdirac::expr
