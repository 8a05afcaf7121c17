#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pegboard/rational.hpp"

namespace pegboard {

/// x runs along the meridian (period 1 in the cylinder), y along the longitude.
struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
  std::string str() const { return "(" + x.str() + ", " + y.str() + ")"; }
};

inline Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator-(const Point& a) { return {-a.x, -a.y}; }
inline Point operator*(const Rational& s, const Point& a) { return {s * a.x, s * a.y}; }

inline Rational cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }
inline Rational dot(const Point& u, const Point& v) { return u.x * v.x + u.y * v.y; }

/// Sign of the turn a -> b -> c: +1 left, -1 right, 0 collinear.
int orient(const Point& a, const Point& b, const Point& c);

struct Segment {
  Point a;
  Point b;

  Segment(Point a_, Point b_);
  Point direction() const { return b - a; }
  /// Point a + t (b - a).
  Point at(const Rational& t) const { return a + t * (b - a); }
  bool contains(const Point& p) const;
};

/// Closed axis-aligned rectangle.
struct Box {
  Rational x0, y0, x1, y1;

  bool empty() const { return x1 < x0 || y1 < y0; }
  bool intersects(const Box& o) const {
    return !(o.x1 < x0 || x1 < o.x0 || o.y1 < y0 || y1 < o.y0);
  }
  Box grown(const Rational& m) const { return {x0 - m, y0 - m, x1 + m, y1 + m}; }
};

Box bounding_box(std::span<const Point> pts);
Box bounding_box(std::span<const Segment> segs);

/// Pegs sit at (i, j + 1/2) for integers i, j.
namespace peg {
bool is_peg(const Point& p);
/// Every peg inside the closed box, sorted by (x, y).
std::vector<Point> in_box(const Box& box);
/// True when the closed segment contains a peg.
bool segment_hits_peg(const Segment& s);
}  // namespace peg

struct SegmentHit {
  Point point;
  bool transversal;
};

/// Throws CollinearOverlap when the segments share more than one point.
std::optional<SegmentHit> segment_intersection(const Segment& s1, const Segment& s2);

/// Winding number of the closed polygon loop[0] -> ... -> loop[n-1] -> loop[0] around p.
/// Throws PointOnLoop.
long winding_number(std::span<const Point> loop, const Point& p);

/// Translation lattice acting on lift templates.
struct LatticeSpec {
  std::optional<Point> u;
  std::optional<Point> v;

  static LatticeSpec horizontal() { return {Point{1, 0}, std::nullopt}; }
  static LatticeSpec vertical() { return {Point{0, 1}, std::nullopt}; }
  static LatticeSpec both() { return {Point{1, 0}, Point{0, 1}}; }
  /// Translations by multiples of (0, step).
  static LatticeSpec spacing(const Rational& step) { return {Point{0, step}, std::nullopt}; }
};

struct Lift {
  long i = 0;  // multiple of u
  long j = 0;  // multiple of v
  Point offset;
  std::vector<Segment> segments;
};

/// Translates of the template whose bounding boxes meet the box, ordered by (i, j).
/// A two-generator lattice must be axis-aligned. Throws UnboundedQuery for an inverted box.
std::vector<Lift> relevant_lifts(std::span<const Segment> templ, const Box& box,
                                 const LatticeSpec& lattice);

}  // namespace pegboard
