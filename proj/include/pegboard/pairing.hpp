#pragma once

#include <compare>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pegboard/curve.hpp"

namespace pegboard {

/// Reduced slope p/q with q >= 0; q = 0 is the vertical slope 1/0.
struct SlopeSpec {
  long p = 0;
  long q = 1;

  /// Reduces and normalizes the sign of q. Throws BadSpec for 0/0.
  static SlopeSpec make(long p, long q);
  /// "p/q" or an integer "n" (= n/1). Throws BadSpec.
  static SlopeSpec parse(std::string_view text);

  bool vertical() const { return q == 0; }
  /// Direction of the lines and arcs of this slope.
  Point direction() const { return vertical() ? Point{0, 1} : Point{Rational(q), Rational(p)}; }
  Rational value() const { return Rational(p, q); }
  std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }

  friend bool operator==(const SlopeSpec&, const SlopeSpec&) = default;
  friend std::strong_ordering operator<=>(const SlopeSpec& a, const SlopeSpec& b);
};

/// Straight arc from peg (m, j + 1/2) to peg (m + q, j + 1/2 + p) with j = h - (p + 1)/2,
/// so its midpoint sits at height h. For the vertical slope the arc runs from
/// (m, h - 1/2) to (m, h + 1/2).
struct ArcLift {
  SlopeSpec slope;
  Rational height;

  /// Throws GradingOutOfRange unless height lies in Z + (p - 1)/2.
  ArcLift(SlopeSpec s, Rational h);
  Point start(long m = 0) const;
  Point end(long m = 0) const;
  static bool valid_height(const SlopeSpec& s, const Rational& h);
};

enum class PairingMode { SurgeryLine, Arc };

/// A family of disjoint straight objects of one slope, indexed by an integer lift.
/// Surgery lines: line k is p*x - q*y = k + offset.
/// Arcs: lift m is the ArcLift translated by (m, 0).
struct PairingObject {
  PairingMode mode = PairingMode::SurgeryLine;
  SlopeSpec slope;
  Rational height;
  Rational offset;

  Point direction() const { return slope.direction(); }
  /// Change of the lift index under the deck translation (x, y) -> (x + 1, y).
  long lift_step() const { return mode == PairingMode::SurgeryLine ? slope.p : 1; }
};

/// Line family offset: the mid-gap value between peg levels plus a small generic shift
/// that keeps every vertex of d off the lines.
PairingObject surgery_lines(const CurveDiagram& d, const SlopeSpec& s);
PairingObject arc_family(const SlopeSpec& s, const Rational& height);

struct Intersection {
  std::size_t component = 0;
  Rational curve_pos;  // segment index + parameter, in [0, N)
  Point point;
  long obj = 0;        // lift index of the object
  Rational obj_pos;    // dot(point, direction): increases along the object

  friend bool operator==(const Intersection&, const Intersection&) = default;
};

/// Intersection translated by n deck periods (no-op on acyclic components).
Intersection lift(const Intersection& x, const CurveDiagram& d, const PairingObject& obj, long n);

struct CancelledBigon {
  Intersection x;
  Intersection y;  // partner, lifted into the same plane copy as x
  std::vector<Point> loop;
  long pegs_checked = 0;
};

struct ReducedPairing {
  std::vector<Intersection> raw;
  std::vector<Intersection> remaining;
  std::vector<CancelledBigon> audit;
};

/// All transversal intersections of one period of every component with the object family,
/// sorted by (component, curve_pos). Throws DegenerateIncidence for tangencies.
std::vector<Intersection> raw_intersections(const CurveDiagram& d, const PairingObject& obj);

/// Removes bigons that cover no peg until none is left. Pairs must be consecutive along
/// the curve, on the same object lift and consecutive along it. With rng the next bigon
/// is drawn at random among the removable ones; otherwise the first one is taken.
ReducedPairing cancel_bigons(std::vector<Intersection> points, const CurveDiagram& d,
                             const PairingObject& obj, std::mt19937_64* rng = nullptr);

ReducedPairing reduced_pairing(const CurveDiagram& d, const PairingObject& obj);

struct PairingReport {
  SlopeSpec slope;
  PairingMode mode = PairingMode::SurgeryLine;
  std::map<Rational, long> counts;  // arc mode: height -> count
  long total = 0;
  long raw_total = 0;
  std::vector<CancelledBigon> cancelled;
  std::vector<std::string> flags;
};

inline const char* zero_surgery_flag() {
  return "0-surgery: dual knot not rationally null-homologous; grading ops refuse this slope";
}

PairingReport surgery_report(const CurveDiagram& d, const SlopeSpec& s);
long surgery_dim(const CurveDiagram& d, const SlopeSpec& s);

/// Heights h in Z + (p-1)/2 whose arcs can meet the diagram, ascending.
std::vector<Rational> arc_heights(const CurveDiagram& d, const SlopeSpec& s);

/// Knot Floer dimensions of the dual knot by height (nonzero entries only).
/// Requires p != 0 (ZeroSurgery) and q >= 1, or the vertical slope 1/0.
PairingReport dual_hfk_report(const CurveDiagram& d, const SlopeSpec& s);
std::map<Rational, long> dual_hfk_dims(const CurveDiagram& d, const SlopeSpec& s);

long genus_of(const CurveDiagram& d);

}  // namespace pegboard
