// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "orlicz/numeric.hpp"

namespace orlicz {

namespace detail {
struct ExprNode;
}

// A compiled one-variable expression. The variable may be written as
// `j`, `t`, `x`, or `n` inside the source text; all aliases bind to the
// single argument of operator().
//
// Grammar: numbers (decimal, scientific), the variable, parentheses,
// binary + - * / ^ (^ is right-associative), unary minus, and the calls
// exp, ln, sqrt, abs, floor, ceil, min, max.
class Expression {
 public:
  Expression() = default;

  // Throws config_error with a position marker on malformed input.
  static Expression parse(std::string_view text);

  double operator()(double v) const;

  bool valid() const { return root_ != nullptr; }
  const std::string& text() const { return text_; }

 private:
  std::shared_ptr<const detail::ExprNode> root_;
  std::string text_;
};

}  // namespace orlicz
