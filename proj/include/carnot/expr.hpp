#pragma once

#include "carnot/types.hpp"

#include <functional>
#include <string>

namespace carnot {

/// Compile an arithmetic expression over the coordinates x1..xq into an
/// evaluator. Grammar: +, -, *, /, ^ (right-associative), unary minus,
/// parentheses, numeric literals, sin, cos, abs. Parse errors carry the
/// offending position.
std::function<double(const Vec&)> parse_expression(const std::string& src, int q);

} // namespace carnot
