#pragma once

// A small expression language for metric coefficients G(t, theta).
//
//   expression  ::= signed_term (('+' | '-') signed_term)*
//   signed_term ::= '-' signed_term | term
//   term        ::= factor (('*' | '/') factor)*
//   factor      ::= base ('^' factor)?
//   base        ::= number | 't' | 'theta' | name '(' expression ')'
//                 | '(' expression ')' | '-' base
//
// A minus sign that starts an additive operand negates the whole
// multiplicative term that follows it, so "-2*t" is neg(mul(2, t)) and
// "-t^2" is neg(pow(t, 2)). Inside a product or exponent ("2*-t", "t^-1")
// it binds to the next base. '^' is right associative.
//
// Functions: exp log sqrt sin cos cosh sinh tanh.

#include <cvlab/jet.hpp>

#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace cvlab {

enum class Variable { T, Theta };
enum class UnaryOp { Neg, Exp, Log, Sqrt, Sin, Cos, Cosh, Sinh, Tanh };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ConstantNode {
  double value;  // always finite and >= 0; negation is a Neg node
};
struct VariableNode {
  Variable var;
};
struct UnaryNode {
  UnaryOp op;
  ExprPtr arg;
};
struct BinaryNode {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct ExprNode {
  std::variant<ConstantNode, VariableNode, UnaryNode, BinaryNode> data;
};

ExprPtr make_constant(double value);
ExprPtr make_variable(Variable v);
ExprPtr make_unary(UnaryOp op, ExprPtr arg);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);

/// Parsed, immutable metric coefficient expression.
class MetricExpr {
 public:
  MetricExpr(ExprPtr root, std::string source);
  explicit MetricExpr(ExprPtr root);

  const ExprNode& root() const { return *root_; }
  const ExprPtr& root_ptr() const { return root_; }
  const std::string& source() const { return source_; }

 private:
  ExprPtr root_;
  std::string source_;
};

/// Throws ParseError or UnknownIdentifier.
MetricExpr parse_metric(std::string_view source);

/// Value and first two t-derivatives at (t, theta); theta is passive.
/// Throws DomainError on log/sqrt of a negative number, division by zero,
/// non-integer power of a nonpositive base, or any non-finite intermediate.
Jet2 eval_jet(const MetricExpr& expr, double t, double theta);

/// Canonical fully parenthesized form: "(a op b)", "(-a)", "f(a)".
std::string serialize(const MetricExpr& expr);
std::string serialize(const ExprNode& node);

bool structurally_equal(const ExprNode& a, const ExprNode& b);

std::string_view to_string(UnaryOp op);
std::string_view to_string(BinaryOp op);

}  // namespace cvlab
