#pragma once

// Field expressions: a small real-valued language over the coordinate x.
//
//   expr    := term (("+" | "-") term)*
//   term    := unary (("*" | "/") unary)*
//   unary   := "-" unary | power
//   power   := primary ("^" unary)?          (right-associative)
//   primary := NUMBER | "x" | "pi" | IDENT "(" expr ")" | "(" expr ")"
//   IDENT   := exp | log | sqrt | sinh | cosh | tanh | sech
//
// Unary minus binds tighter than * and / but looser than ^, so "-x^2" is
// -(x^2). Exponents may not depend on x.

#include <memory>
#include <string>
#include <string_view>

#include "zdirac/field.hpp"
#include "zdirac/jet.hpp"

namespace zdirac::expr {

enum class NodeKind { Number, Variable, Pi, Negate, Add, Sub, Mul, Div, Pow, Call };
enum class Func { Exp, Log, Sqrt, Sinh, Cosh, Tanh, Sech };

std::string_view to_string(Func f);

struct Node {
  NodeKind kind;
  double number = 0.0;
  Func func = Func::Exp;
  std::shared_ptr<const Node> lhs;  // operand for Negate / Call
  std::shared_ptr<const Node> rhs;
  std::size_t offset = 0;  // source span
  std::size_t length = 0;
};

using NodePtr = std::shared_ptr<const Node>;

class Expr {
 public:
  Expr(NodePtr root, std::string source) : root_(std::move(root)), source_(std::move(source)) {}

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }
  const std::string& source() const { return source_; }

 private:
  NodePtr root_;
  std::string source_;
};

Expr parse(std::string_view text);

Jet evaluate(const Expr& e, const Jet& x);
Complex evaluate(const Expr& e, double x);

// Canonical text: binary operations and negations fully parenthesized,
// numbers with 17 significant digits.
std::string render(const Expr& e);

// Structural equality ignoring source spans.
bool same_tree(const Node& a, const Node& b);

Field to_field(const Expr& e);
Field parse_field(std::string_view text);

}  // namespace zdirac::expr
