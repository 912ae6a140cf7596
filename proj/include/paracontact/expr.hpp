// Scalar-field expressions over chart coordinates.
//
// Grammar (whitespace insignificant):
//   expr   := term (("+" | "-") term)*
//   term   := factor (("*" | "/") factor)*
//   factor := "-" factor | base ("^" ["-" | "+"] number)?
//   base   := number | ident | "(" expr ")" | func "(" expr ")"
//   func   := "exp" | "ln" | "sqrt" | "sin" | "cos"
// A unary minus applied directly to a numeric literal yields a negative
// constant, which keeps to_string() / parse_expr() round trips exact.
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "paracontact/jet.hpp"

namespace paracontact {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t position);
  /// Zero-based byte offset into the source text.
  std::size_t position() const { return position_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::size_t position_;
};

class UnknownIdentifierError : public ParseError {
 public:
  UnknownIdentifierError(std::string token, std::size_t position);
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

class ScalarExpr {
 public:
  enum class Op : std::uint8_t {
    Constant,
    Coordinate,
    Neg,
    Exp,
    Ln,
    Sqrt,
    Sin,
    Cos,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
  };

  ScalarExpr();  // the constant 0
  explicit ScalarExpr(double value);
  static ScalarExpr coordinate(int index);
  static ScalarExpr unary(Op op, ScalarExpr arg);
  static ScalarExpr binary(Op op, ScalarExpr lhs, ScalarExpr rhs);
  static ScalarExpr power(ScalarExpr base, double exponent);

  Op op() const;
  /// Constant value, or the exponent of a Pow node.
  double number() const;
  int coordinate_index() const;
  const ScalarExpr& lhs() const;
  const ScalarExpr& rhs() const;

  bool is_constant(double value) const;
  /// Largest coordinate index referenced, or -1.
  int max_coordinate() const;

  double evaluate(std::span<const double> point) const;
  /// Evaluates with every coordinate leaf replaced by the given jet.
  Jet compose(std::span<const Jet> args) const;

  std::string to_string(std::span<const std::string> coords) const;

  friend bool operator==(const ScalarExpr& a, const ScalarExpr& b);

 private:
  struct Node;
  explicit ScalarExpr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

ScalarExpr operator+(ScalarExpr a, ScalarExpr b);
ScalarExpr operator-(ScalarExpr a, ScalarExpr b);
ScalarExpr operator*(ScalarExpr a, ScalarExpr b);
ScalarExpr operator/(ScalarExpr a, ScalarExpr b);
ScalarExpr operator-(ScalarExpr a);

ScalarExpr parse_expr(std::string_view source, std::span<const std::string> coords);

/// Taylor jet of expr at point, exact to rounding, with order() == order.
Jet jet_eval(const ScalarExpr& expr, std::span<const double> point, int order);

/// Coordinate jets x_i = point_i + t_i for a jet expansion at point.
std::vector<Jet> coordinate_jets(std::span<const double> point, int order);

}  // namespace paracontact
