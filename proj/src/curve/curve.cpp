#include "pegboard/curve.hpp"

#include <algorithm>
#include <sstream>

#include "pegboard/errors.hpp"

namespace pegboard {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool in_window(const Rational& v, const std::optional<std::pair<Rational, Rational>>& w) {
  return !w || (w->first < v && v < w->second);
}

}  // namespace

Point Component::vertex(long k) const {
  const long n = size();
  const long q = floor_div(k, n);
  const Point& v = vertices[static_cast<std::size_t>(k - q * n)];
  if (winding == 1 && q != 0) return {v.x + Rational(q), v.y};
  return v;
}

std::size_t CurveDiagram::distinguished_index() const {
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].winding == 1) return i;
  }
  throw Error(ErrorCode::InvariantViolation, "no distinguished component");
}

long CurveDiagram::vertex_count() const {
  long n = 0;
  for (const auto& c : components) n += static_cast<long>(c.vertices.size());
  return n;
}

std::vector<LineCrossing> line_crossings(const Component& c, const Point& origin, const Point& dir,
                                         const std::optional<std::pair<Rational, Rational>>& window) {
  const long n = c.size();
  std::vector<Rational> g(static_cast<std::size_t>(n) + 2);
  auto G = [&](long k) -> const Rational& { return g[static_cast<std::size_t>(k + 1)]; };
  for (long k = -1; k <= n; ++k) g[static_cast<std::size_t>(k + 1)] = cross(dir, c.vertex(k) - origin);

  std::vector<LineCrossing> out;
  for (long k = 0; k < n; ++k) {
    const Point a = c.vertex(k), b = c.vertex(k + 1);
    if (G(k).is_zero() && G(k + 1).is_zero()) {
      Rational ua = dot(a - origin, dir), ub = dot(b - origin, dir);
      if (!window || (max(ua, ub) > window->first && min(ua, ub) < window->second)) {
        throw Error(ErrorCode::CollinearOverlap, "segment " + std::to_string(k) + " lies on the line");
      }
      continue;
    }
    if (G(k).is_zero()) {
      Rational along = dot(a - origin, dir);
      if (!in_window(along, window)) continue;
      int sp = G(k - 1).sign(), sn = G(k + 1).sign();
      if (sp == 0) continue;  // collinear predecessor is handled (and rejected) above
      if (sp == sn) {
        throw Error(ErrorCode::DegenerateIncidence, "curve touches the line at vertex " + a.str());
      }
      out.push_back({k, Rational(0), a, along});
      continue;
    }
    if (G(k + 1).is_zero()) continue;  // counted as the next segment's vertex
    if (G(k).sign() == G(k + 1).sign()) continue;
    Rational t = G(k) / (G(k) - G(k + 1));
    Point p = a + t * (b - a);
    Rational along = dot(p - origin, dir);
    if (!in_window(along, window)) continue;
    out.push_back({k, t, p, along});
  }
  return out;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    const auto& v = violations[i];
    if (i) os << "; ";
    os << v.kind;
    if (v.component >= 0) os << " [component " << v.component;
    if (v.component >= 0 && v.segment >= 0) os << ", segment " << v.segment;
    if (v.component >= 0) os << "]";
    os << ": " << v.message;
  }
  return os.str();
}

long height_of(const Rational& y) {
  const Rational shifted = y + Rational(1, 2);
  if (shifted.is_integer()) {
    throw Error(ErrorCode::AmbiguousHeight, "height " + y.str() + " lies on a peg level");
  }
  return shifted.floor_long();
}

namespace {

bool is_backtrack(const Point& a, const Point& b, const Point& c) {
  return orient(a, b, c) == 0 && dot(b - a, c - b).sign() < 0;
}

bool is_straight(const Point& a, const Point& b, const Point& c) {
  return orient(a, b, c) == 0 && dot(b - a, c - b).sign() > 0;
}

/// Seam crossings (x in 1/2 + Z) of one period.
std::vector<LineCrossing> seam_crossings(const Component& c) {
  Box b = bounding_box(c.vertices);
  std::vector<LineCrossing> all;
  const Rational half(1, 2);
  for (long k = (b.x0 - half).floor_long(); k <= (b.x1 - half).ceil_long(); ++k) {
    auto xs = line_crossings(c, Point{Rational(k) + half, 0}, Point{0, 1});
    all.insert(all.end(), xs.begin(), xs.end());
  }
  std::sort(all.begin(), all.end(), [](const LineCrossing& l, const LineCrossing& r) {
    return std::tie(l.segment, l.t) < std::tie(r.segment, r.t);
  });
  return all;
}

std::vector<Point> drop_straight_open(std::vector<Point> v) {
  bool changed = true;
  while (changed && v.size() > 2) {
    changed = false;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      if (is_straight(v[i - 1], v[i], v[i + 1])) {
        v.erase(v.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  return v;
}

std::vector<Point> drop_straight_closed(std::vector<Point> v) {
  bool changed = true;
  while (changed && v.size() > 3) {
    changed = false;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (is_straight(v[(i + n - 1) % n], v[i], v[(i + 1) % n])) {
        v.erase(v.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  return v;
}

std::vector<Point> start_at_least(std::vector<Point> v) {
  auto it = std::min_element(v.begin(), v.end());
  std::rotate(v.begin(), it, v.end());
  return v;
}

Rational window_shift(const Component& c) {
  Box b = bounding_box(c.vertices);
  // Smallest integer n with x - n < 1/2 for all x.
  return Rational((b.x1 - Rational(1, 2)).floor_long() + 1);
}

Component canonical_component(const Component& c) {
  Component out;
  out.winding = c.winding;
  if (c.winding == 1) {
    out = cut_at_seam(c);
    out.vertices = drop_straight_open(out.vertices);
    return out;
  }
  Rational sh = window_shift(c);
  for (const auto& v : c.vertices) out.vertices.push_back({v.x - sh, v.y});
  out.vertices = start_at_least(drop_straight_closed(out.vertices));
  return out;
}

/// Orientation-free key of an acyclic component.
std::vector<Point> unoriented_key(const Component& canon) {
  std::vector<Point> fwd = canon.vertices;
  std::vector<Point> rev(fwd.rbegin(), fwd.rend());
  rev = start_at_least(rev);
  return std::min(fwd, rev);
}

bool structurally_sound(const ValidationReport& r) {
  for (const auto& v : r.violations) {
    if (v.kind != "acyclic-confinement" && v.kind != "seam-height") return false;
  }
  return true;
}

}  // namespace

Component cut_at_seam(const Component& c) {
  if (c.winding != 1) throw std::invalid_argument("cut_at_seam needs the distinguished component");
  auto xs = seam_crossings(c);
  if (xs.empty()) throw Error(ErrorCode::InvariantViolation, "distinguished component misses the seam");
  const LineCrossing& x = xs.front();
  const long n = c.size();
  std::vector<Point> v{x.point};
  for (long k = x.segment + 1; k <= x.segment + n; ++k) v.push_back(c.vertex(k));
  if (!x.t.is_zero()) v.push_back(x.point + Point{1, 0});
  const Rational dx = Rational(-1, 2) - x.point.x;
  for (auto& p : v) p.x += dx;
  return Component{std::move(v), 1};
}

ValidationReport validate(const CurveDiagram& d) {
  ValidationReport rep;
  auto add = [&](std::string kind, long comp, long seg, std::string msg) {
    rep.violations.push_back({std::move(kind), comp, seg, std::move(msg)});
  };

  long distinguished = 0;
  for (std::size_t ci = 0; ci < d.components.size(); ++ci) {
    const Component& c = d.components[ci];
    const long cid = static_cast<long>(ci);
    if (c.winding != 0 && c.winding != 1) {
      add("winding-value", cid, -1, "winding must be 0 or 1");
      continue;
    }
    if (c.winding == 1) ++distinguished;
    const std::size_t need = c.winding == 1 ? 2 : 3;
    if (c.vertices.size() < need) {
      add("too-few-vertices", cid, -1, "component has " + std::to_string(c.vertices.size()) + " vertices");
      continue;
    }
    if (c.winding == 1 && c.vertices.back() != c.vertices.front() + Point{1, 0}) {
      add("closure", cid, -1, "last vertex must equal the first translated by (1,0)");
      continue;
    }
    if (c.winding == 0 && c.vertices.back() == c.vertices.front()) {
      add("closure", cid, -1, "closed components must not repeat the first vertex");
      continue;
    }
    const long n = c.size();
    bool repeated = false;
    for (long k = 0; k < n; ++k) {
      if (c.vertex(k) == c.vertex(k + 1)) {
        add("repeated-vertex", cid, k, "consecutive vertices coincide at " + c.vertex(k).str());
        repeated = true;
      }
    }
    if (repeated) continue;
    for (long k = 0; k < n; ++k) {
      const Point v = c.vertex(k);
      if (peg::is_peg(v)) add("vertex-on-peg", cid, k, "vertex " + v.str() + " is a peg");
      Segment s = c.segment(k);
      if (!peg::is_peg(s.a) && !peg::is_peg(s.b) && peg::segment_hits_peg(s)) {
        add("segment-through-peg", cid, k, "segment passes through a peg");
      }
      if (is_backtrack(c.vertex(k - 1), v, c.vertex(k + 1))) {
        add("backtrack", cid, k, "segments fold back on each other at " + v.str());
      }
    }
    if (c.winding == 1) {
      try {
        auto xs = seam_crossings(c);
        if (xs.size() != 1) {
          add("seam-crossing-count", cid, -1,
              "crosses x = 1/2 (mod 1) " + std::to_string(xs.size()) + " times per period");
        } else if (!xs[0].point.y.is_zero()) {
          add("seam-height", cid, xs[0].segment,
              "crosses x = 1/2 (mod 1) at height " + xs[0].point.y.str() + ", not 0");
        }
      } catch (const Error& e) {
        add("seam-crossing-count", cid, -1, e.what());
      }
    } else {
      Box b = bounding_box(c.vertices);
      Rational sh = window_shift(c);
      if (!(b.x0 - sh > Rational(-1, 2))) {
        add("acyclic-confinement", cid, -1, "x-extent does not fit inside (-1/2, 1/2) mod 1");
      }
    }
  }
  if (distinguished != 1) {
    add("winding-count", -1, -1,
        "expected exactly one winding-1 component, found " + std::to_string(distinguished));
  }
  if (!structurally_sound(rep)) return rep;

  CurveDiagram a = canonicalize(d);
  CurveDiagram b = canonicalize(rotate180(d));
  const Component& ga = a.components.front();
  const Component& gb = b.components.front();
  std::vector<std::vector<Point>> ka, kb;
  for (std::size_t i = 1; i < a.components.size(); ++i) ka.push_back(unoriented_key(a.components[i]));
  for (std::size_t i = 1; i < b.components.size(); ++i) kb.push_back(unoriented_key(b.components[i]));
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  if (ga.vertices != gb.vertices) {
    add("symmetry", static_cast<long>(d.distinguished_index()), -1,
        "distinguished component is not invariant under rotation by 180 degrees");
  }
  if (ka != kb) {
    add("symmetry", -1, -1, "acyclic components are not invariant under rotation by 180 degrees");
  }
  return rep;
}

void require_valid(const CurveDiagram& d) {
  ValidationReport r = validate(d);
  if (!r.ok()) throw Error(ErrorCode::InvariantViolation, r.summary());
}

CurveDiagram canonicalize(const CurveDiagram& d) {
  CurveDiagram out;
  out.source = d.source;
  std::vector<Component> rest;
  for (const auto& c : d.components) {
    if (c.winding == 1 && out.components.empty()) {
      out.components.push_back(canonical_component(c));
    } else {
      rest.push_back(canonical_component(c));
    }
  }
  std::sort(rest.begin(), rest.end(), [](const Component& l, const Component& r) {
    return std::tie(r.winding, l.vertices) < std::tie(l.winding, r.vertices);
  });
  out.components.insert(out.components.end(), rest.begin(), rest.end());
  return out;
}

CurveDiagram rotate180(const CurveDiagram& d) {
  CurveDiagram out;
  out.source = d.source;
  for (const auto& c : d.components) {
    Component r;
    r.winding = c.winding;
    for (auto it = c.vertices.rbegin(); it != c.vertices.rend(); ++it) r.vertices.push_back(-*it);
    out.components.push_back(std::move(r));
  }
  return out;
}

CurveDiagram mirror(const CurveDiagram& d) {
  CurveDiagram out;
  out.source = d.source.empty() ? d.source : "mirror(" + d.source + ")";
  for (const auto& c : d.components) {
    Component r;
    r.winding = c.winding;
    for (const auto& v : c.vertices) r.vertices.push_back({v.x, -v.y});
    out.components.push_back(std::move(r));
  }
  return out;
}

namespace {

std::vector<Extremum> component_extrema(const Component& c) {
  std::vector<Extremum> out;
  const long n = c.size();
  long start = -1;
  for (long k = 0; k < n; ++k) {
    if (c.vertex(k).y != c.vertex(k - 1).y) {
      start = k;
      break;
    }
  }
  if (start < 0) return out;  // horizontal: no extrema
  auto xs = [&](long seg) { return (c.vertex(seg + 1).x - c.vertex(seg).x).sign(); };
  long k = start;
  while (k < start + n) {
    long e = k;
    while (c.vertex(e + 1).y == c.vertex(k).y) ++e;
    const Rational& y = c.vertex(k).y;
    const Rational& yp = c.vertex(k - 1).y;
    const Rational& yn = c.vertex(e + 1).y;
    const bool is_max = yp < y && yn < y;
    const bool is_min = yp > y && yn > y;
    if (is_max || is_min) {
      bool pos = false, neg = false;
      for (long s = k - 1; s <= e; ++s) {
        int sg = xs(s);
        pos |= sg > 0;
        neg |= sg < 0;
      }
      if (pos && neg) out.push_back({is_max ? ExtremumKind::Max : ExtremumKind::Min, height_of(y)});
    }
    k = e + 1;
  }
  return out;
}

}  // namespace

ExtremaCensus extrema_census(const CurveDiagram& d) {
  ExtremaCensus census;
  for (const auto& c : d.components) {
    auto ex = component_extrema(c);
    for (const auto& e : ex) {
      if (e.kind == ExtremumKind::Max) ++census.n_plus[e.height];
      else ++census.n_minus[e.height];
    }
    census.per_component.push_back(std::move(ex));
  }
  return census;
}

TauEpsilon tau_epsilon(const CurveDiagram& d) {
  Component g = cut_at_seam(d.distinguished());
  auto xs = line_crossings(g, Point{0, 0}, Point{0, 1});
  std::sort(xs.begin(), xs.end(), [](const LineCrossing& l, const LineCrossing& r) {
    return std::tie(l.segment, l.t) < std::tie(r.segment, r.t);
  });
  if (xs.empty()) return {0, 0};
  TauEpsilon te;
  te.tau = height_of(xs[0].point.y);
  const long next = xs.size() > 1 ? height_of(xs[1].point.y) : height_of(g.vertices.back().y);
  te.epsilon = next < te.tau ? 1 : (next > te.tau ? -1 : 0);
  return te;
}

}  // namespace pegboard
