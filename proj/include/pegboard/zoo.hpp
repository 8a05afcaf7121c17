#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pegboard/curve.hpp"

namespace pegboard {

/// Laurent polynomial as exponent -> coefficient (zero coefficients omitted).
using Laurent = std::map<long, long>;

/// Parses e.g. "t^3 - t^2 + 1 - t^-2 + t^-3". Throws BadSpec.
Laurent parse_laurent(std::string_view text);
std::string format_laurent(const Laurent& poly);

/// Wrap radius of the constructors: vertices pass this close to the pegs they turn around.
Rational wrap_radius();

CurveDiagram unknot();

/// Staircase curve of an L-space knot. Throws BadAlexander unless the polynomial is
/// symmetric with coefficients alternating +1, -1, ..., +1 from the top exponent down.
CurveDiagram lspace_staircase(const Laurent& alexander);

/// Zigzag distinguished component with |tau| steps up (tau > 0) or down (tau < 0)
/// plus f figure-eight components placed symmetrically about height 0.
CurveDiagram thin(long tau, int f);

CurveDiagram figure_eight_knot();

/// Figure-eight acyclic component around the pegs at c - 1/2 and c + 1/2.
Component figure_eight_component(long c);

/// Unknot with an extra removable zigzag; not part of the zoo (it is not taut).
CurveDiagram wiggled_unknot();

struct ZooEntry {
  std::string name;
  std::string description;
  std::function<CurveDiagram()> build;
};

const std::vector<ZooEntry>& zoo();

/// Accepts zoo names and the forms "staircase:<poly>" and "thin:<tau>,<f>". Throws BadSpec.
CurveDiagram build_zoo(std::string_view spec);

}  // namespace pegboard
