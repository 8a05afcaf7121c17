#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pegboard/curve.hpp"

namespace pegboard::cli {

/// Exit codes of run().
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kInvalid = 2;
inline constexpr int kTheoremViolation = 3;

/// Zoo name or zoo spec ("staircase:<poly>", "thin:<tau>,<f>"), a curve file path, or the
/// stem of a *.curve file in $PEGBOARD_ZOO_DIR. Throws BadSpec when nothing matches.
CurveDiagram resolve_knot(std::string_view selector);

/// args excludes the program name. Writes the artifact to out (or to --output) and
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pegboard::cli
