#pragma once

// Coefficient expressions in the single variable t.
//
// Grammar (explicit `*` required, `^` is right associative and binds tighter
// than unary minus, so -t^2 == -(t^2)):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?
//   primary := number | 't' | 'pi' | func '(' expr ')' | '(' expr ')'
//   func    := sin | cos | tan | sinh | cosh | tanh | exp | log | sqrt | abs
//
// Numbers use a decimal point ("2.36502"); a decimal comma is rejected.

#include <memory>
#include <string>
#include <string_view>

namespace greensign {

enum class FuncKind { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct ExprNode;

/// Immutable expression tree handle. Copies share structure.
class CoefficientExpr {
 public:
  /// The constant 0.
  CoefficientExpr();

  static CoefficientExpr constant(double value);
  static CoefficientExpr variable();
  static CoefficientExpr pi();

  CoefficientExpr operator-() const;
  friend CoefficientExpr operator+(const CoefficientExpr& l, const CoefficientExpr& r);
  friend CoefficientExpr operator-(const CoefficientExpr& l, const CoefficientExpr& r);
  friend CoefficientExpr operator*(const CoefficientExpr& l, const CoefficientExpr& r);
  friend CoefficientExpr operator/(const CoefficientExpr& l, const CoefficientExpr& r);
  friend CoefficientExpr pow(const CoefficientExpr& base, const CoefficientExpr& exponent);
  friend CoefficientExpr apply(FuncKind f, const CoefficientExpr& arg);

  /// True when the tree is a literal constant (after folding).
  bool is_constant() const;
  /// True when the tree is the literal constant 0.
  bool is_zero() const;
  /// Value of a constant tree; only meaningful when is_constant().
  double constant_value() const;

  const ExprNode& node() const { return *node_; }
  const std::shared_ptr<const ExprNode>& shared_node() const { return node_; }

  /// Wraps an existing node; `node` must not be null.
  static CoefficientExpr wrap(std::shared_ptr<const ExprNode> node);

 private:
  explicit CoefficientExpr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  enum class Kind { Constant, Variable, Pi, Negate, Binary, Function };

  Kind kind = Kind::Constant;
  double value = 0.0;
  BinaryOp op = BinaryOp::Add;
  FuncKind func = FuncKind::Sin;
  std::shared_ptr<const ExprNode> lhs;  // operand for Negate/Function, left for Binary
  std::shared_ptr<const ExprNode> rhs;
};

/// Parses `text`; throws ParseError on syntax errors and unknown identifiers.
CoefficientExpr parse_expr(std::string_view text);

/// Evaluates at t. Throws DomainError rather than returning a non-finite value.
double eval(const CoefficientExpr& e, double t);

/// Symbolic d/dt.
CoefficientExpr differentiate(const CoefficientExpr& e);

/// k-th derivative (k >= 0).
CoefficientExpr differentiate(const CoefficientExpr& e, int k);

/// Fully parenthesised text that parse_expr accepts; constants use 17 digits.
std::string unparse(const CoefficientExpr& e);

std::string_view function_name(FuncKind f);

}  // namespace greensign
