#include "pegboard/pairing.hpp"

#include <algorithm>
#include <numeric>

#include "pegboard/errors.hpp"

namespace pegboard {

SlopeSpec SlopeSpec::make(long p, long q) {
  if (p == 0 && q == 0) throw Error(ErrorCode::BadSpec, "slope 0/0");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  long g = std::gcd(p < 0 ? -p : p, q);
  return SlopeSpec{p / g, q / g};
}

SlopeSpec SlopeSpec::parse(std::string_view text) {
  auto slash = text.find('/');
  auto num = [&](std::string_view s) -> long {
    std::string str(s);
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(str, &used);
    } catch (const std::logic_error&) {
      used = std::string::npos;
    }
    if (str.empty() || used != str.size()) {
      throw Error(ErrorCode::BadSpec, "malformed slope '" + std::string(text) + "'");
    }
    return v;
  };
  if (slash == std::string_view::npos) return make(num(text), 1);
  return make(num(text.substr(0, slash)), num(text.substr(slash + 1)));
}

std::strong_ordering operator<=>(const SlopeSpec& a, const SlopeSpec& b) {
  // Vertical sorts last; otherwise by value, then by q.
  if (a.vertical() || b.vertical()) {
    if (a.vertical() && b.vertical()) return a.p <=> b.p;
    return a.vertical() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  auto c = Rational(a.p, a.q) <=> Rational(b.p, b.q);
  if (c != 0) return c;
  return a.q <=> b.q;
}

bool ArcLift::valid_height(const SlopeSpec& s, const Rational& h) {
  const long p = s.vertical() ? 1 : s.p;
  return (h - Rational(p - 1, 2)).is_integer();
}

ArcLift::ArcLift(SlopeSpec s, Rational h) : slope(s), height(std::move(h)) {
  if (!valid_height(slope, height)) {
    throw Error(ErrorCode::GradingOutOfRange,
                "height " + height.str() + " is not a grading of slope " + slope.str());
  }
}

Point ArcLift::start(long m) const {
  if (slope.vertical()) return {Rational(m), height - Rational(1, 2)};
  return {Rational(m), height - Rational(slope.p, 2)};
}

Point ArcLift::end(long m) const {
  if (slope.vertical()) return {Rational(m), height + Rational(1, 2)};
  return {Rational(m + slope.q), height + Rational(slope.p, 2)};
}

namespace {

Rational line_value(const SlopeSpec& s, const Point& v) {
  return Rational(s.p) * v.x - Rational(s.q) * v.y;
}

}  // namespace

PairingObject surgery_lines(const CurveDiagram& d, const SlopeSpec& s) {
  mpz_class den = 1;
  long n = 0;
  for (const auto& c : d.components) {
    for (const auto& v : c.vertices) {
      den = lcm(den, v.x.den());
      den = lcm(den, v.y.den());
      ++n;
    }
  }
  const Rational mid = s.q % 2 == 1 ? Rational(0) : Rational(1, 2);
  Rational delta(mpq_class(mpz_class(1), den * 2 * std::max<long>(n, 1)));
  for (;;) {
    const Rational off = mid + delta;
    bool clean = true;
    for (const auto& c : d.components) {
      for (const auto& v : c.vertices) {
        if ((line_value(s, v) - off).is_integer()) clean = false;
      }
    }
    if (clean) return PairingObject{PairingMode::SurgeryLine, s, Rational(0), off};
    delta /= Rational(2);
  }
}

PairingObject arc_family(const SlopeSpec& s, const Rational& height) {
  ArcLift check(s, height);
  return PairingObject{PairingMode::Arc, s, height, Rational(0)};
}

Intersection lift(const Intersection& x, const CurveDiagram& d, const PairingObject& obj, long n) {
  const Component& c = d.components[x.component];
  if (c.winding != 1 || n == 0) return x;
  Intersection y = x;
  y.curve_pos += Rational(n * c.size());
  y.point.x += Rational(n);
  y.obj += n * obj.lift_step();
  y.obj_pos += Rational(n) * obj.direction().x;
  return y;
}

std::vector<Intersection> raw_intersections(const CurveDiagram& d, const PairingObject& obj) {
  std::vector<Intersection> out;
  const Point dir = obj.direction();
  for (std::size_t ci = 0; ci < d.components.size(); ++ci) {
    const Component& c = d.components[ci];
    const long n = c.size();
    if (obj.mode == PairingMode::SurgeryLine) {
      for (long k = 0; k < n; ++k) {
        const Point a = c.vertex(k), b = c.vertex(k + 1);
        const Rational fa = line_value(obj.slope, a) - obj.offset;
        const Rational fb = line_value(obj.slope, b) - obj.offset;
        if (fa == fb) continue;
        const long lo = min(fa, fb).ceil_long(), hi = max(fa, fb).floor_long();
        std::vector<Intersection> seg;
        for (long line = lo; line <= hi; ++line) {
          const Rational t = (Rational(line) - fa) / (fb - fa);
          const Point p = a + t * (b - a);
          seg.push_back({ci, Rational(k) + t, p, line, dot(p, dir)});
        }
        if (fb < fa) std::reverse(seg.begin(), seg.end());
        out.insert(out.end(), seg.begin(), seg.end());
      }
      continue;
    }
    ArcLift arc(obj.slope, obj.height);
    std::vector<Point> period;
    for (long k = 0; k <= n; ++k) period.push_back(c.vertex(k));
    std::vector<Segment> templ{Segment(arc.start(0), arc.end(0))};
    const Rational len = dot(dir, dir);
    for (const auto& l : relevant_lifts(templ, bounding_box(period), LatticeSpec::horizontal())) {
      const Point origin = arc.start(l.i);
      for (const auto& x : line_crossings(c, origin, dir, std::make_pair(Rational(0), len))) {
        out.push_back({ci, Rational(x.segment) + x.t, x.point, l.i, dot(x.point, dir)});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Intersection& a, const Intersection& b) {
    return std::tie(a.component, a.curve_pos) < std::tie(b.component, b.curve_pos);
  });
  return out;
}

namespace {

/// Curve subarc from x to y (y.curve_pos > x.curve_pos, same plane copy), closed by the
/// straight object segment from y back to x.
std::vector<Point> bigon_loop(const Component& c, const Intersection& x, const Intersection& y) {
  std::vector<Point> loop{x.point};
  for (long k = x.curve_pos.floor_long() + 1; Rational(k) < y.curve_pos; ++k) {
    Point v = c.vertex(k);
    if (v != loop.back()) loop.push_back(v);
  }
  if (y.point != loop.back()) loop.push_back(y.point);
  return loop;
}

struct Cancellation {
  std::size_t xi, yi;
  CancelledBigon bigon;
};

class Canceller {
 public:
  Canceller(const CurveDiagram& d, const PairingObject& obj, std::vector<Intersection> pts)
      : d_(d), obj_(obj), pts_(std::move(pts)), alive_(pts_.size(), true) {}

  /// Removable bigons in canonical order; stops at the first one when `all` is false.
  std::vector<Cancellation> candidates(bool all) const {
    std::vector<Cancellation> out;
    for (std::size_t ci = 0; ci < d_.components.size(); ++ci) {
      std::vector<std::size_t> on;
      for (std::size_t i = 0; i < pts_.size(); ++i) {
        if (alive_[i] && pts_[i].component == ci) on.push_back(i);
      }
      if (on.size() < 2) continue;
      for (std::size_t k = 0; k < on.size(); ++k) {
        const bool wrap = k + 1 == on.size();
        const std::size_t xi = on[k], yi = on[wrap ? 0 : k + 1];
        const Intersection& x = pts_[xi];
        Intersection y = pts_[yi];
        if (wrap) {
          y = lift(y, d_, obj_, 1);
          if (d_.components[ci].winding == 0) y.curve_pos += Rational(d_.components[ci].size());
        }
        if (x.obj != y.obj) continue;
        if (!adjacent_on_object(x, y)) continue;
        CancelledBigon b{x, y, bigon_loop(d_.components[ci], x, y), 0};
        if (!covers_no_peg(b)) continue;
        out.push_back({xi, yi, std::move(b)});
        if (!all) return out;
      }
    }
    return out;
  }

  void remove(const Cancellation& c) {
    alive_[c.xi] = false;
    alive_[c.yi] = false;
  }

  std::vector<Intersection> remaining() const {
    std::vector<Intersection> out;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (alive_[i]) out.push_back(pts_[i]);
    }
    return out;
  }

 private:
  bool adjacent_on_object(const Intersection& x, const Intersection& y) const {
    const Rational lo = min(x.obj_pos, y.obj_pos), hi = max(x.obj_pos, y.obj_pos);
    const long step = obj_.lift_step();
    const Rational shift = obj_.direction().x;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (!alive_[i]) continue;
      const Intersection& z = pts_[i];
      const bool periodic = d_.components[z.component].winding == 1;
      if (!periodic || (step == 0 && shift.is_zero())) {
        if (z.obj == x.obj && lo < z.obj_pos && z.obj_pos < hi) return false;
        continue;
      }
      if (step != 0) {
        const long diff = x.obj - z.obj;
        if (diff % step != 0) continue;
        const Rational pos = z.obj_pos + Rational(diff / step) * shift;
        if (lo < pos && pos < hi) return false;
        continue;
      }
      if (z.obj != x.obj) continue;
      // Every deck translate of z lies on the same line; look for one strictly inside.
      Rational a = (lo - z.obj_pos) / shift, b = (hi - z.obj_pos) / shift;
      if (b < a) std::swap(a, b);
      if (Rational(a.floor_long() + 1) < b) return false;
    }
    return true;
  }

  bool covers_no_peg(CancelledBigon& b) const {
    auto pegs = peg::in_box(bounding_box(b.loop));
    b.pegs_checked = static_cast<long>(pegs.size());
    for (const auto& p : pegs) {
      if (winding_number(b.loop, p) != 0) return false;
    }
    return true;
  }

  const CurveDiagram& d_;
  const PairingObject& obj_;
  std::vector<Intersection> pts_;
  std::vector<bool> alive_;
};

}  // namespace

ReducedPairing cancel_bigons(std::vector<Intersection> points, const CurveDiagram& d,
                             const PairingObject& obj, std::mt19937_64* rng) {
  ReducedPairing out;
  out.raw = points;
  Canceller c(d, obj, std::move(points));
  for (;;) {
    auto cands = c.candidates(rng != nullptr);
    if (cands.empty()) break;
    std::size_t pick = 0;
    if (rng) pick = std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(*rng);
    c.remove(cands[pick]);
    out.audit.push_back(std::move(cands[pick].bigon));
  }
  out.remaining = c.remaining();
  return out;
}

ReducedPairing reduced_pairing(const CurveDiagram& d, const PairingObject& obj) {
  return cancel_bigons(raw_intersections(d, obj), d, obj);
}

PairingReport surgery_report(const CurveDiagram& d, const SlopeSpec& s) {
  PairingObject obj = surgery_lines(d, s);
  ReducedPairing r = reduced_pairing(d, obj);
  PairingReport rep;
  rep.slope = s;
  rep.mode = PairingMode::SurgeryLine;
  rep.total = static_cast<long>(r.remaining.size());
  rep.raw_total = static_cast<long>(r.raw.size());
  rep.cancelled = std::move(r.audit);
  if (s.p == 0) rep.flags.emplace_back(zero_surgery_flag());
  return rep;
}

long surgery_dim(const CurveDiagram& d, const SlopeSpec& s) { return surgery_report(d, s).total; }

std::vector<Rational> arc_heights(const CurveDiagram& d, const SlopeSpec& s) {
  Rational y0, y1;
  bool first = true;
  for (const auto& c : d.components) {
    for (long k = 0; k <= c.size(); ++k) {
      const Point v = c.vertex(k);
      if (first) {
        y0 = y1 = v.y;
        first = false;
      }
      y0 = min(y0, v.y);
      y1 = max(y1, v.y);
    }
  }
  const long p = s.vertical() ? 1 : s.p;
  const Rational half_span = Rational(p < 0 ? -p : p, 2);
  const Rational base(p - 1, 2);
  // h - half_span <= y1 and h + half_span >= y0, with h = base + k.
  const long k0 = (y0 - half_span - base).ceil_long();
  const long k1 = (y1 + half_span - base).floor_long();
  std::vector<Rational> out;
  for (long k = k0; k <= k1; ++k) out.push_back(base + Rational(k));
  return out;
}

PairingReport dual_hfk_report(const CurveDiagram& d, const SlopeSpec& s) {
  if (!s.vertical() && s.p == 0) {
    throw Error(ErrorCode::ZeroSurgery, "gradings are undefined for the 0-surgery slope");
  }
  PairingReport rep;
  rep.slope = s;
  rep.mode = PairingMode::Arc;
  for (const auto& h : arc_heights(d, s)) {
    ReducedPairing r = reduced_pairing(d, arc_family(s, h));
    rep.raw_total += static_cast<long>(r.raw.size());
    if (!r.remaining.empty()) rep.counts[h] = static_cast<long>(r.remaining.size());
    rep.total += static_cast<long>(r.remaining.size());
    for (auto& b : r.audit) rep.cancelled.push_back(std::move(b));
  }
  return rep;
}

std::map<Rational, long> dual_hfk_dims(const CurveDiagram& d, const SlopeSpec& s) {
  return dual_hfk_report(d, s).counts;
}

long genus_of(const CurveDiagram& d) {
  auto dims = dual_hfk_dims(d, SlopeSpec{1, 0});
  long g = 0;
  for (const auto& [h, n] : dims) {
    if (n > 0) g = std::max(g, h.to_long());
  }
  return g;
}

}  // namespace pegboard
