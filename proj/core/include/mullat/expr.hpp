#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mullat/integer.hpp"

/// Syntax tree for polynomial and factored-product text: integers, variables
/// [a-z][0-9]*, + - * /, parentheses and ^ with an integer or (p/q) exponent.
namespace mullat::expr {

struct Node {
  enum class Kind { number, variable, add, sub, mul, div, neg, pow };

  Kind kind = Kind::number;
  Rational value;        ///< number literal
  std::string name;      ///< variable
  Rational exponent;     ///< pow
  std::vector<Node> children;
};

Node parse(std::string_view text);

std::set<std::string> variables(const Node& node);

}  // namespace mullat::expr
