#pragma once

#include <string>
#include <string_view>

#include "pegboard/curve.hpp"

namespace pegboard {

/// Line-oriented format:
///   # comment
///   component winding=<0|1>
///   v <x> <y>
/// Rationals are written a/b or as integers. Throws SyntaxError (with line:column) or
/// InvariantViolation when the parsed diagram fails validation.
CurveDiagram parse_curve_text(std::string_view text, std::string source = "text");

/// Emits the canonical form (see canonicalize).
std::string emit_curve_text(const CurveDiagram& d);

}  // namespace pegboard
