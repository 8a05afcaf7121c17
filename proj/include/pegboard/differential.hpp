#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pegboard/pairing.hpp"

namespace pegboard {

/// Psi_h raises the Alexander grading by |p|, Phi_h lowers it by |p|. Slopes carry the
/// sign on p with q >= 1.
enum class DiffKind { Phi, Psi };

std::string to_string(DiffKind k);

struct MarkedBigon {
  Intersection from;  // on the source arc
  Intersection to;    // on the target arc, in the same plane copy
  std::vector<Point> loop;
  long n_z = 0;
  long n_w = 0;
};

using F2Matrix = std::vector<std::vector<std::uint8_t>>;

/// Rank over the two-element field.
long rank_f2(F2Matrix m);

struct DiffMatrix {
  DiffKind kind = DiffKind::Phi;
  SlopeSpec slope;
  Rational source_grading;
  Rational target_grading;
  std::vector<Intersection> sources;
  std::vector<Intersection> targets;
  F2Matrix entries;  // entries[i][j]: source i -> target j
  long rank = 0;
  std::vector<MarkedBigon> bigons;

  long kernel_dim() const { return static_cast<long>(sources.size()) - rank; }
};

/// Marker pair beside a peg P on the arc line: z left of the arc oriented upwards, w right.
struct Markers {
  Point z;
  Point w;
};

/// Markers beside peg P for slope s, spaced so the z-w segment misses every curve segment.
Markers place_markers(const CurveDiagram& d, const SlopeSpec& s, const Point& P);

/// Bigons from arc L_{s,h} to its neighbour on the same peg line through one endpoint peg:
/// the upper endpoint for Psi, the lower one for Phi. Counts bigons with
/// (n_z, n_w) = (1, 0) for Phi and (0, 1) for Psi.
/// Requires q >= 1 and p != 0 (ZeroSurgery); throws GradingOutOfRange for bad h.
DiffMatrix differential_matrix(const CurveDiagram& d, const SlopeSpec& s, const Rational& h,
                               DiffKind kind);

struct CensusContribution {
  std::size_t component = 0;
  Extremum extremum;
  DiffKind kind;
  Rational grading;
  bool discounted = false;
};

/// Lower bounds on rank of Phi and Psi per source grading, read off the extrema census.
/// For p > 0 a maximum at height H bounds Phi at H + (p - 1)/2 and a minimum bounds Psi
/// at H - (p - 1)/2. For p < 0, with P = |p|, a maximum bounds Psi at H - (P + 1)/2 and a
/// minimum bounds Phi at H + (P + 1)/2. On the distinguished component one tau extremum
/// of each kind is discounted when tau > 0, epsilon = 1 and p/q > 2 tau - 1, or tau < 0,
/// epsilon = -1 and p/q < 2 tau + 1.
struct CensusBound {
  SlopeSpec slope;
  std::map<Rational, long> phi;
  std::map<Rational, long> psi;
  std::vector<CensusContribution> contributions;
  std::optional<std::string> exception;

  long phi_at(const Rational& h) const;
  long psi_at(const Rational& h) const;
};

CensusBound census_bounds(const CurveDiagram& d, const SlopeSpec& s);

bool is_lspace_slope(const CurveDiagram& d, const SlopeSpec& s);

struct DuallySimpleVerdict {
  SlopeSpec slope;
  long dual_total = 0;
  long surgery = 0;
  bool lspace = false;
  bool beyond_genus_bound = false;  // |p/q| > 2g - 1

  /// A dually simple slope that is not an L-space slope beyond 2g - 1 contradicts the
  /// dimension theorem.
  bool violation() const { return !(lspace && beyond_genus_bound); }
};

/// Slopes p/q with 0 < |p| <= pmax and 1 <= q <= qmax whose dual knot Floer dimension
/// equals the surgery dimension.
std::vector<DuallySimpleVerdict> dually_simple_scan(const CurveDiagram& d, long pmax, long qmax);

struct SpectralReport {
  SlopeSpec slope;
  long dual_total = 0;
  long rank_psi = 0;
  long rank_phi = 0;
  long surgery = 0;

  long page_bound() const { return dual_total - 2 * rank_psi; }
  bool holds() const { return page_bound() >= surgery; }
  bool equality() const { return page_bound() == surgery; }
};

SpectralReport spectral_check(const CurveDiagram& d, const SlopeSpec& s);

/// Phi_h and Psi_h for every grading with nonzero dimension, ascending by grading.
std::vector<DiffMatrix> all_differentials(const CurveDiagram& d, const SlopeSpec& s, DiffKind kind);

}  // namespace pegboard
