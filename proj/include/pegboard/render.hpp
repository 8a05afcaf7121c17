#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pegboard/curve.hpp"
#include "pegboard/pairing.hpp"

namespace pegboard {

/// An overlay is either the surgery line family of a slope or, with a height, one arc
/// lift of that slope (drawn in both periods).
struct Overlay {
  SlopeSpec slope;
  std::optional<Rational> arc_height;

  /// "p/q" for lines, "p/q@h" for an arc at height h. Throws BadSpec.
  static Overlay parse(std::string_view text);
};

struct RenderSpec {
  /// Vertical window [lo, hi]; defaults to the diagram's bounding box padded to peg levels.
  std::optional<std::pair<Rational, Rational>> window;
  std::vector<Overlay> overlays;
  double scale = 80.0;  // pixels per unit
  double stroke = 2.0;
};

/// Deterministic SVG of the fundamental domain plus one ghost period to the right: pegs as
/// filled circles at (i, j + 1/2), the distinguished component as one polyline across both
/// periods, each closed component as a polyline plus a lighter ghost copy, overlays dashed. Throws InvariantViolation for an invalid diagram.
std::string render_svg(const CurveDiagram& d, const RenderSpec& spec);

}  // namespace pegboard
