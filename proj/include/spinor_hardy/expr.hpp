#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spinh {

//! Parse or evaluation failure; position is a 0-based byte offset into the
//! source text, reported in the message as a 1-based column.
class ExprError : public std::runtime_error {
 public:
  ExprError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

//! A parsed expression in the single variable r.
//!
//! Grammar: + - * / with the usual precedence, right-associative ^, unary
//! minus, parentheses, decimal and scientific literals, and the functions
//! exp, sin, cos, sqrt and pow(base, exponent).
class RadialExpr {
 public:
  static RadialExpr parse(std::string_view text);

  double operator()(double r) const;
  const std::string& text() const { return text_; }

 private:
  struct Node {
    enum class Op { number, var, add, sub, mul, div, pow, neg, exp, sin, cos, sqrt };
    Op op;
    double value = 0.0;  // for number
    int a = -1, b = -1;  // child indices
  };

  std::string text_;
  std::vector<Node> nodes_;
  int root_ = -1;

  double eval(int node, double r) const;
  friend class ExprParser;
};

}  // namespace spinh
