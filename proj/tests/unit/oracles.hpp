#pragma once

// Independent reference computations used only by tests. They use floating point or
// brute force on purpose, so they share no code path with the exact library.

#include <vector>

#include "pegboard/geometry.hpp"

namespace oracle {

/// Winding number by summing signed turning angles (atan2).
long angle_winding(const std::vector<pegboard::Point>& loop, double px, double py);

/// Translates n*(0,step), |n| <= limit, whose bounding box meets the box.
std::vector<long> brute_force_lifts(const std::vector<pegboard::Segment>& templ,
                                    const pegboard::Box& box, const pegboard::Rational& step,
                                    long limit);

}  // namespace oracle

namespace oracle {

/// Crossings of one period of each component with the lines p*x - q*y = k + offset,
/// by scanning every k in a generous range in double precision.
long float_line_crossings(const std::vector<std::vector<pegboard::Point>>& periods, long p, long q,
                          double offset);

/// Heegaard Floer rank of p/q-surgery (p, q >= 1) on an L-space knot of genus g.
long lspace_surgery_rank(long p, long q, long g);

}  // namespace oracle
