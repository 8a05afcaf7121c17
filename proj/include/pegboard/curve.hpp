#pragma once

#include <map>
#include <optional>
#include <utility>
#include <string>
#include <vector>

#include "pegboard/geometry.hpp"

namespace pegboard {

/// One PL component in the planar cover.
/// winding = 1: vertices span one period and back() == front() + (1,0).
/// winding = 0: closed, back() joins front().
struct Component {
  std::vector<Point> vertices;
  int winding = 0;

  /// Number of segments in one period (or in the closed loop).
  long size() const {
    return static_cast<long>(vertices.size()) - (winding == 1 ? 1 : 0);
  }
  Point shift() const { return winding == 1 ? Point{1, 0} : Point{0, 0}; }
  /// Vertex k of the periodic extension; k may be any integer.
  Point vertex(long k) const;
  /// Segment from vertex(i) to vertex(i + 1).
  Segment segment(long i) const { return Segment(vertex(i), vertex(i + 1)); }

  friend bool operator==(const Component&, const Component&) = default;
};

struct CurveDiagram {
  std::vector<Component> components;
  std::string source;

  /// Index of the winding-1 component. Throws InvariantViolation if there is none.
  std::size_t distinguished_index() const;
  const Component& distinguished() const { return components[distinguished_index()]; }
  long vertex_count() const;
};

struct Violation {
  std::string kind;
  long component = -1;
  long segment = -1;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate(const CurveDiagram& d);

/// Throws InvariantViolation with the report summary when d is invalid.
void require_valid(const CurveDiagram& d);

enum class ExtremumKind { Max, Min };

struct Extremum {
  ExtremumKind kind;
  long height;
  friend bool operator==(const Extremum&, const Extremum&) = default;
};

struct ExtremaCensus {
  std::vector<std::vector<Extremum>> per_component;
  std::map<long, long> n_plus;
  std::map<long, long> n_minus;
};

/// Integer h with y in (h - 1/2, h + 1/2). Throws AmbiguousHeight for half-integers.
long height_of(const Rational& y);

ExtremaCensus extrema_census(const CurveDiagram& d);

struct TauEpsilon {
  long tau = 0;
  int epsilon = 0;
  friend bool operator==(const TauEpsilon&, const TauEpsilon&) = default;
};

TauEpsilon tau_epsilon(const CurveDiagram& d);

/// (x,y) -> (-x,-y), orientation reversed.
CurveDiagram rotate180(const CurveDiagram& d);
/// (x,y) -> (x,-y): the diagram of the mirror knot.
CurveDiagram mirror(const CurveDiagram& d);

/// Distinguished component cut at its x = 1/2 (mod 1) crossing and translated so the
/// period runs from (-1/2, y0) to (1/2, y0). Collinear interior vertices are kept.
Component cut_at_seam(const Component& c);

struct LineCrossing {
  long segment = 0;  // crossing at curve position segment + t, t in [0, 1)
  Rational t;
  Point point;
  Rational along;  // dot(point - origin, dir)
};

/// Transversal crossings of one period (or the closed loop) of c with the line through
/// origin along dir, keeping those with `along` strictly inside the window when given.
/// A vertex on the line counts when its neighbours lie on opposite sides.
/// Throws DegenerateIncidence for a tangential vertex and CollinearOverlap for a segment
/// lying on the line, in both cases only inside the window.
std::vector<LineCrossing> line_crossings(const Component& c, const Point& origin, const Point& dir,
                                         const std::optional<std::pair<Rational, Rational>>& window = {});

/// Canonical form: distinguished component cut at the seam, acyclic components shifted
/// into the window, collinear vertices removed, closed loops started at their least vertex,
/// components sorted (distinguished first, then by least vertex).
CurveDiagram canonicalize(const CurveDiagram& d);

}  // namespace pegboard
