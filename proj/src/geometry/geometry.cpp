#include "pegboard/geometry.hpp"

#include <algorithm>
#include <stdexcept>

#include "pegboard/errors.hpp"

namespace pegboard {

int orient(const Point& a, const Point& b, const Point& c) { return cross(b - a, c - a).sign(); }

Segment::Segment(Point a_, Point b_) : a(std::move(a_)), b(std::move(b_)) {
  if (a == b) throw std::invalid_argument("degenerate segment at " + a.str());
}

bool Segment::contains(const Point& p) const {
  if (orient(a, b, p) != 0) return false;
  return min(a.x, b.x) <= p.x && p.x <= max(a.x, b.x) && min(a.y, b.y) <= p.y &&
         p.y <= max(a.y, b.y);
}

Box bounding_box(std::span<const Point> pts) {
  if (pts.empty()) throw std::invalid_argument("bounding box of no points");
  Box b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const auto& p : pts) {
    b.x0 = min(b.x0, p.x);
    b.y0 = min(b.y0, p.y);
    b.x1 = max(b.x1, p.x);
    b.y1 = max(b.y1, p.y);
  }
  return b;
}

Box bounding_box(std::span<const Segment> segs) {
  std::vector<Point> pts;
  pts.reserve(2 * segs.size());
  for (const auto& s : segs) {
    pts.push_back(s.a);
    pts.push_back(s.b);
  }
  return bounding_box(pts);
}

namespace peg {

bool is_peg(const Point& p) { return p.x.is_integer() && (p.y - Rational(1, 2)).is_integer(); }

std::vector<Point> in_box(const Box& box) {
  std::vector<Point> out;
  if (box.empty()) return out;
  const Rational half(1, 2);
  long i0 = box.x0.ceil_long(), i1 = box.x1.floor_long();
  long j0 = (box.y0 - half).ceil_long(), j1 = (box.y1 - half).floor_long();
  for (long i = i0; i <= i1; ++i) {
    for (long j = j0; j <= j1; ++j) out.push_back({Rational(i), Rational(j) + half});
  }
  return out;
}

bool segment_hits_peg(const Segment& s) {
  for (const auto& p : in_box(bounding_box(std::span<const Segment>(&s, 1)))) {
    if (s.contains(p)) return true;
  }
  return false;
}

}  // namespace peg

std::optional<SegmentHit> segment_intersection(const Segment& s1, const Segment& s2) {
  const Point d1 = s1.direction(), d2 = s2.direction();
  const Point w = s2.a - s1.a;
  const Rational denom = cross(d1, d2);
  if (denom.is_zero()) {
    if (!cross(w, d1).is_zero()) return std::nullopt;
    const Rational len = dot(d1, d1);
    Rational ta = dot(w, d1) / len;
    Rational tb = dot(s2.b - s1.a, d1) / len;
    Rational lo = max(Rational(0), min(ta, tb));
    Rational hi = min(Rational(1), max(ta, tb));
    if (hi < lo) return std::nullopt;
    if (lo == hi) return SegmentHit{s1.at(lo), false};
    throw Error(ErrorCode::CollinearOverlap,
                "segments overlap along " + s1.at(lo).str() + " - " + s1.at(hi).str());
  }
  const Rational t = cross(w, d2) / denom;
  const Rational u = cross(w, d1) / denom;
  if (t.sign() < 0 || t > Rational(1) || u.sign() < 0 || u > Rational(1)) return std::nullopt;
  const bool interior = t.sign() > 0 && t < Rational(1) && u.sign() > 0 && u < Rational(1);
  return SegmentHit{s1.at(t), interior};
}

long winding_number(std::span<const Point> loop, const Point& p) {
  const std::size_t n = loop.size();
  long w = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = loop[i];
    const Point& b = loop[(i + 1) % n];
    if (a == b) continue;
    int o = orient(a, b, p);
    if (o == 0 && Segment(a, b).contains(p)) {
      throw Error(ErrorCode::PointOnLoop, p.str() + " lies on the loop");
    }
    if (a.y <= p.y) {
      if (b.y > p.y && o > 0) ++w;
    } else if (b.y <= p.y && o < 0) {
      --w;
    }
  }
  return w;
}

namespace {

struct Range {
  bool bounded = false;
  mpz_class lo, hi;
  bool empty = false;
};

void constrain(Range& r, const Rational& step, const Rational& t0, const Rational& t1,
               const Rational& b0, const Rational& b1) {
  if (step.is_zero()) {
    if (t1 < b0 || b1 < t0) r.empty = true;
    return;
  }
  // [t0 + n s, t1 + n s] meets [b0, b1].
  Rational e0 = (b0 - t1) / step, e1 = (b1 - t0) / step;
  if (step.sign() < 0) std::swap(e0, e1);
  mpz_class lo = e0.ceil(), hi = e1.floor();
  if (!r.bounded) {
    r.bounded = true;
    r.lo = lo;
    r.hi = hi;
  } else {
    r.lo = std::max(r.lo, lo);
    r.hi = std::min(r.hi, hi);
  }
}

Range range_for(const Point& g, const Box& t, const Box& box) {
  Range r;
  constrain(r, g.x, t.x0, t.x1, box.x0, box.x1);
  constrain(r, g.y, t.y0, t.y1, box.y0, box.y1);
  if (!r.bounded) throw std::invalid_argument("zero lattice generator");
  if (r.lo > r.hi) r.empty = true;
  return r;
}

Lift make_lift(std::span<const Segment> templ, long i, long j, const Point& off) {
  Lift l{i, j, off, {}};
  l.segments.reserve(templ.size());
  for (const auto& s : templ) l.segments.emplace_back(s.a + off, s.b + off);
  return l;
}

long to_long(const mpz_class& z) {
  if (!z.fits_slong_p()) throw Error(ErrorCode::UnboundedQuery, "lift range too large");
  return z.get_si();
}

}  // namespace

std::vector<Lift> relevant_lifts(std::span<const Segment> templ, const Box& box,
                                 const LatticeSpec& lattice) {
  if (box.empty()) throw Error(ErrorCode::UnboundedQuery, "inverted query box");
  std::vector<Lift> out;
  if (templ.empty() || !lattice.u) return out;
  const Box t = bounding_box(templ);
  if (!lattice.v) {
    Range r = range_for(*lattice.u, t, box);
    if (r.empty) return out;
    for (long n = to_long(r.lo); n <= to_long(r.hi); ++n) {
      out.push_back(make_lift(templ, n, 0, Rational(n) * *lattice.u));
    }
    return out;
  }
  const Point& u = *lattice.u;
  const Point& v = *lattice.v;
  if (!u.y.is_zero() || !v.x.is_zero()) {
    throw std::invalid_argument("two-generator lattices must be (a,0) and (0,b)");
  }
  Range ri;
  constrain(ri, u.x, t.x0, t.x1, box.x0, box.x1);
  Range rj;
  constrain(rj, v.y, t.y0, t.y1, box.y0, box.y1);
  if (ri.empty || rj.empty || ri.lo > ri.hi || rj.lo > rj.hi) return out;
  for (long i = to_long(ri.lo); i <= to_long(ri.hi); ++i) {
    for (long j = to_long(rj.lo); j <= to_long(rj.hi); ++j) {
      out.push_back(make_lift(templ, i, j, Rational(i) * u + Rational(j) * v));
    }
  }
  return out;
}

}  // namespace pegboard
