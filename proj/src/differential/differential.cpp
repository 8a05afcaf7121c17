#include "pegboard/differential.hpp"

#include <algorithm>

#include "pegboard/errors.hpp"

namespace pegboard {

std::string to_string(DiffKind k) { return k == DiffKind::Phi ? "Phi" : "Psi"; }

long rank_f2(F2Matrix m) {
  long rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t col = 0; col < cols && rank < static_cast<long>(rows); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && !m[pivot][col]) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r != static_cast<std::size_t>(rank) && m[r][col]) {
        for (std::size_t c = col; c < cols; ++c) m[r][c] ^= m[rank][c];
      }
    }
    ++rank;
  }
  return rank;
}

namespace {

void require_arc_slope(const SlopeSpec& s) {
  if (s.vertical()) {
    throw Error(ErrorCode::PreconditionViolation, "differentials need a finite slope");
  }
  if (s.p == 0) throw Error(ErrorCode::ZeroSurgery, "no Alexander grading for the 0-surgery slope");
}

/// Upward direction of the arc line.
Point upward(const SlopeSpec& s) {
  return s.p > 0 ? Point{Rational(s.q), Rational(s.p)} : Point{Rational(-s.q), Rational(-s.p)};
}

/// Curve path from position a to position b > a on the periodic or cyclic extension.
std::vector<Point> curve_path(const Component& c, const Point& pa, const Rational& a,
                              const Point& pb, const Rational& b) {
  std::vector<Point> out{pa};
  for (long k = a.floor_long() + 1; Rational(k) < b; ++k) {
    Point v = c.vertex(k);
    if (v != out.back()) out.push_back(v);
  }
  if (pb != out.back()) out.push_back(pb);
  return out;
}

/// Every segment of every component copy whose bounding box meets the box.
std::vector<Segment> segments_near(const CurveDiagram& d, const Box& box) {
  std::vector<Segment> out;
  for (const auto& c : d.components) {
    std::vector<Segment> period;
    for (long k = 0; k < c.size(); ++k) period.push_back(c.segment(k));
    for (const auto& l : relevant_lifts(period, box, LatticeSpec::horizontal())) {
      for (const auto& s : l.segments) {
        if (bounding_box(std::span<const Segment>(&s, 1)).intersects(box)) out.push_back(s);
      }
    }
  }
  return out;
}

}  // namespace

Markers place_markers(const CurveDiagram& d, const SlopeSpec& s, const Point& P) {
  const Point up = upward(s);
  const Point left{-up.y, up.x};
  Rational eps(1, 4);
  const auto near = segments_near(d, Box{P.x, P.y, P.x, P.y}.grown(Rational(1, 2)));
  for (;;) {
    Markers m{P + eps * left, P - eps * left};
    const Segment zw(m.z, m.w);
    bool clean = true;
    for (const auto& seg : near) {
      if (segment_intersection(zw, seg)) {
        clean = false;
        break;
      }
    }
    if (clean) return m;
    eps /= Rational(2);
  }
}

namespace {

struct Candidate {
  Intersection from, to;
  std::vector<Point> loop;
};

std::optional<MarkedBigon> mark(const Candidate& c, const Point& P, const Markers& m,
                                DiffKind kind) {
  for (const auto& peg : peg::in_box(bounding_box(c.loop))) {
    if (peg != P && winding_number(c.loop, peg) != 0) return std::nullopt;
  }
  const long wz = winding_number(c.loop, m.z), ww = winding_number(c.loop, m.w);
  MarkedBigon b{c.from, c.to, c.loop, wz < 0 ? -wz : wz, ww < 0 ? -ww : ww};
  const bool wanted = kind == DiffKind::Phi ? (b.n_z == 1 && b.n_w == 0) : (b.n_z == 0 && b.n_w == 1);
  if (!wanted) return std::nullopt;
  return b;
}

/// Loops from x to target points y in the plane copy where y's arc shares peg P with x's.
std::vector<Candidate> candidates(const CurveDiagram& d, const Intersection& x,
                                  const Intersection& y, long target_obj) {
  const Component& c = d.components[x.component];
  const Rational N(c.size());
  std::vector<Candidate> out;
  if (y.component != x.component) return out;
  auto add = [&](const Intersection& from, const Rational& a, const Intersection& to,
                 const Rational& b) {
    // Path from the earlier point to the later one, closed by the straight arc segment.
    out.push_back({x, y, curve_path(c, from.point, a, to.point, b)});
  };
  if (c.winding == 1) {
    const long n = target_obj - y.obj;
    const Intersection yl = lift(y, d, PairingObject{PairingMode::Arc, {}, {}, {}}, n);
    const Rational delta = yl.curve_pos - x.curve_pos;
    if (delta.is_zero() || !(delta.abs() < N)) return out;
    if (delta.sign() > 0) {
      add(x, x.curve_pos, yl, yl.curve_pos);
    } else {
      add(yl, yl.curve_pos, x, x.curve_pos);
    }
    out.back().to = yl;
    return out;
  }
  if (y.obj != target_obj || y.curve_pos == x.curve_pos) return out;
  const Rational yb = y.curve_pos < x.curve_pos ? y.curve_pos + N : y.curve_pos;
  add(x, x.curve_pos, y, yb);
  const Rational xb = x.curve_pos < y.curve_pos ? x.curve_pos + N : x.curve_pos;
  add(y, y.curve_pos, x, xb);
  return out;
}

}  // namespace

DiffMatrix differential_matrix(const CurveDiagram& d, const SlopeSpec& s, const Rational& h,
                               DiffKind kind) {
  require_arc_slope(s);
  const ArcLift source_arc(s, h);
  const long ap = s.p < 0 ? -s.p : s.p;
  const Rational target_h = kind == DiffKind::Psi ? h + Rational(ap) : h - Rational(ap);
  // Psi uses the upper endpoint peg, Phi the lower; for p < 0 the arc starts at the top.
  const bool at_end = (kind == DiffKind::Psi) == (s.p > 0);
  const long shift = at_end ? s.q : -s.q;

  DiffMatrix out;
  out.kind = kind;
  out.slope = s;
  out.source_grading = h;
  out.target_grading = target_h;
  out.sources = reduced_pairing(d, arc_family(s, h)).remaining;
  out.targets = reduced_pairing(d, arc_family(s, target_h)).remaining;
  out.entries.assign(out.sources.size(), std::vector<std::uint8_t>(out.targets.size(), 0));

  std::map<long, Markers> markers;  // by source lift
  for (std::size_t i = 0; i < out.sources.size(); ++i) {
    const Intersection& x = out.sources[i];
    const Point P = at_end ? source_arc.end(x.obj) : source_arc.start(x.obj);
    auto it = markers.find(x.obj);
    if (it == markers.end()) it = markers.emplace(x.obj, place_markers(d, s, P)).first;
    for (std::size_t j = 0; j < out.targets.size(); ++j) {
      for (const auto& cand : candidates(d, x, out.targets[j], x.obj + shift)) {
        if (auto b = mark(cand, P, it->second, kind)) {
          out.entries[i][j] ^= 1;
          out.bigons.push_back(std::move(*b));
        }
      }
    }
  }
  out.rank = rank_f2(out.entries);
  return out;
}

std::vector<DiffMatrix> all_differentials(const CurveDiagram& d, const SlopeSpec& s, DiffKind kind) {
  require_arc_slope(s);
  std::vector<DiffMatrix> out;
  for (const auto& [h, n] : dual_hfk_dims(d, s)) out.push_back(differential_matrix(d, s, h, kind));
  return out;
}

long CensusBound::phi_at(const Rational& h) const {
  auto it = phi.find(h);
  return it == phi.end() ? 0 : it->second;
}

long CensusBound::psi_at(const Rational& h) const {
  auto it = psi.find(h);
  return it == psi.end() ? 0 : it->second;
}

CensusBound census_bounds(const CurveDiagram& d, const SlopeSpec& s) {
  require_arc_slope(s);
  CensusBound out;
  out.slope = s;
  const auto census = extrema_census(d);
  const std::size_t g0 = d.distinguished_index();
  const TauEpsilon te = tau_epsilon(d);
  const long tau = te.tau;
  const Rational slope = s.value();
  const bool exception = (tau > 0 && te.epsilon == 1 && slope > Rational(2 * tau - 1)) ||
                         (tau < 0 && te.epsilon == -1 && slope < Rational(2 * tau + 1));
  const long top = tau < 0 ? -tau : tau;
  bool max_done = !exception, min_done = !exception;
  if (exception) {
    out.exception = "tau = " + std::to_string(tau) + ", epsilon = " + std::to_string(te.epsilon) +
                    ": the tau extrema of the distinguished component are discounted";
  }
  const bool positive = s.p > 0;
  const long ap = positive ? s.p : -s.p;
  const Rational half_shift = positive ? Rational(ap - 1, 2) : Rational(ap + 1, 2);
  for (std::size_t ci = 0; ci < census.per_component.size(); ++ci) {
    for (const auto& e : census.per_component[ci]) {
      CensusContribution c{ci, e, DiffKind::Phi, Rational(e.height) + half_shift, false};
      if (e.kind == ExtremumKind::Max && !positive) {
        c.kind = DiffKind::Psi;
        c.grading = Rational(e.height) - half_shift;
      }
      if (e.kind == ExtremumKind::Min && positive) {
        c.kind = DiffKind::Psi;
        c.grading = Rational(e.height) - half_shift;
      }
      if (ci == g0) {
        if (e.kind == ExtremumKind::Max && !max_done && e.height == top) {
          c.discounted = max_done = true;
        } else if (e.kind == ExtremumKind::Min && !min_done && e.height == -top) {
          c.discounted = min_done = true;
        }
      }
      if (!c.discounted) (c.kind == DiffKind::Phi ? out.phi : out.psi)[c.grading] += 1;
      out.contributions.push_back(c);
    }
  }
  return out;
}

bool is_lspace_slope(const CurveDiagram& d, const SlopeSpec& s) {
  if (s.p == 0) throw Error(ErrorCode::ZeroSurgery, "0-surgery is never an L-space filling");
  return surgery_dim(d, s) == (s.p < 0 ? -s.p : s.p);
}

std::vector<DuallySimpleVerdict> dually_simple_scan(const CurveDiagram& d, long pmax, long qmax) {
  if (pmax < 1 || qmax < 1) throw Error(ErrorCode::PreconditionViolation, "scan bounds must be >= 1");
  const long g = genus_of(d);
  std::vector<DuallySimpleVerdict> out;
  for (long q = 1; q <= qmax; ++q) {
    for (long p = -pmax; p <= pmax; ++p) {
      if (p == 0 || std::gcd(p < 0 ? -p : p, q) != 1) continue;
      const SlopeSpec s{p, q};
      DuallySimpleVerdict v;
      v.slope = s;
      v.dual_total = dual_hfk_report(d, s).total;
      v.surgery = surgery_dim(d, s);
      if (v.dual_total != v.surgery) continue;
      v.lspace = v.surgery == (p < 0 ? -p : p);
      v.beyond_genus_bound = s.value().abs() > Rational(2 * g - 1);
      out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.slope < b.slope; });
  return out;
}

SpectralReport spectral_check(const CurveDiagram& d, const SlopeSpec& s) {
  require_arc_slope(s);
  SpectralReport r;
  r.slope = s;
  r.dual_total = dual_hfk_report(d, s).total;
  r.surgery = surgery_dim(d, s);
  for (const auto& m : all_differentials(d, s, DiffKind::Psi)) r.rank_psi += m.rank;
  for (const auto& m : all_differentials(d, s, DiffKind::Phi)) r.rank_phi += m.rank;
  return r;
}

}  // namespace pegboard
