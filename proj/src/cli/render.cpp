#include "pegboard/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "pegboard/errors.hpp"

namespace pegboard {

Overlay Overlay::parse(std::string_view text) {
  Overlay o;
  const auto at = text.find('@');
  o.slope = SlopeSpec::parse(text.substr(0, at));
  if (at != std::string_view::npos) {
    const std::string h(text.substr(at + 1));
    try {
      o.arc_height = Rational::parse(h);
    } catch (const Error&) {
      throw Error(ErrorCode::BadSpec, "bad arc height '" + h + "'");
    }
    if (!ArcLift::valid_height(o.slope, *o.arc_height)) {
      throw Error(ErrorCode::BadSpec, "height " + h + " is not an arc height for slope " + o.slope.str());
    }
  }
  return o;
}

namespace {

// Fixed-precision formatting keeps the output byte-identical across runs.
std::string num(double v) {
  if (std::abs(v) < 5e-4) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

class Canvas {
 public:
  Canvas(double x0, double x1, double y0, double y1, double scale)
      : x0_(x0), y1_(y1), scale_(scale), w_((x1 - x0) * scale), h_((y1 - y0) * scale) {}

  std::string X(double x) const { return num((x - x0_) * scale_); }
  std::string Y(double y) const { return num((y1_ - y) * scale_); }
  double width() const { return w_; }
  double height() const { return h_; }

  std::string points(const std::vector<Point>& pts, double dx) const {
    std::string s;
    for (const auto& p : pts) {
      if (!s.empty()) s += ' ';
      s += X(p.x.to_double() + dx) + "," + Y(p.y.to_double());
    }
    return s;
  }

 private:
  double x0_, y1_, scale_, w_, h_;
};

std::pair<Rational, Rational> default_window(const CurveDiagram& d) {
  Rational lo = d.components.front().vertices.front().y, hi = lo;
  for (const auto& c : d.components) {
    for (const auto& v : c.vertices) {
      lo = std::min(lo, v.y);
      hi = std::max(hi, v.y);
    }
  }
  // Round out to the nearest integer level beyond the outermost peg rows.
  return {Rational(lo.floor_long() - 1), Rational(hi.ceil_long() + 1)};
}

// Clip the line p x - q y = c to [x0, x1] x [y0, y1].
std::optional<std::pair<std::pair<double, double>, std::pair<double, double>>> clip_line(
    double p, double q, double c, double x0, double x1, double y0, double y1) {
  std::vector<std::pair<double, double>> pts;
  auto add = [&](double x, double y) {
    if (x >= x0 - 1e-9 && x <= x1 + 1e-9 && y >= y0 - 1e-9 && y <= y1 + 1e-9) pts.push_back({x, y});
  };
  if (q != 0) {
    add(x0, (p * x0 - c) / q);
    add(x1, (p * x1 - c) / q);
  }
  if (p != 0) {
    add((c + q * y0) / p, y0);
    add((c + q * y1) / p, y1);
  }
  if (pts.size() < 2) return std::nullopt;
  std::sort(pts.begin(), pts.end());
  if (pts.front() == pts.back()) return std::nullopt;
  return std::pair{pts.front(), pts.back()};
}

}  // namespace

std::string render_svg(const CurveDiagram& d, const RenderSpec& spec) {
  require_valid(d);
  const auto [wlo, whi] = spec.window ? *spec.window : default_window(d);
  if (!(wlo < whi)) throw Error(ErrorCode::BadSpec, "empty vertical window");
  const double ylo = wlo.to_double(), yhi = whi.to_double();
  const double xlo = -0.5, xhi = 1.5;
  const double margin = 0.25;
  Canvas cv(xlo - margin, xhi + margin, ylo - margin, yhi + margin, spec.scale);

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(cv.width()) << "\" height=\""
     << num(cv.height()) << "\" viewBox=\"0 0 " << num(cv.width()) << " " << num(cv.height()) << "\">\n";
  os << "<title>" << (d.source.empty() ? "diagram" : d.source) << "</title>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << num(cv.width()) << "\" height=\"" << num(cv.height())
     << "\" fill=\"white\"/>\n";

  // Seams of the fundamental domain and the ghost period.
  os << "<g id=\"seams\" stroke=\"#bbbbbb\" stroke-width=\"1\">\n";
  for (double x : {-0.5, 0.5, 1.5}) {
    os << "<line x1=\"" << cv.X(x) << "\" y1=\"" << cv.Y(yhi) << "\" x2=\"" << cv.X(x) << "\" y2=\""
       << cv.Y(ylo) << "\"/>\n";
  }
  os << "</g>\n";

  const auto stroke = num(spec.stroke);
  os << "<g id=\"components\" fill=\"none\" stroke-width=\"" << stroke << "\">\n";
  CurveDiagram canon = canonicalize(d);
  for (std::size_t i = 0; i < canon.components.size(); ++i) {
    const auto& c = canon.components[i];
    std::vector<Point> pts = c.vertices;
    if (c.winding == 1) {
      // One polyline runs on through the ghost period, so the seam crossing stays visible.
      for (std::size_t k = 1; k < c.vertices.size(); ++k) pts.push_back(c.vertices[k] + Point{1, 0});
      os << "<polyline class=\"component distinguished\" data-index=\"" << i
         << "\" stroke=\"#c0392b\" points=\"" << cv.points(pts, 0.0) << "\"/>\n";
      continue;
    }
    pts.push_back(pts.front());
    os << "<polyline class=\"component\" data-index=\"" << i << "\" stroke=\"#2c3e80\" points=\""
       << cv.points(pts, 0.0) << "\"/>\n";
    os << "<polyline class=\"ghost\" data-index=\"" << i
       << "\" stroke=\"#2c3e80\" stroke-opacity=\"0.35\" points=\"" << cv.points(pts, 1.0) << "\"/>\n";
  }
  os << "</g>\n";

  if (!spec.overlays.empty()) {
    os << "<g id=\"overlays\" fill=\"none\" stroke=\"#27ae60\" stroke-width=\"" << num(spec.stroke * 0.75)
       << "\" stroke-dasharray=\"6 4\">\n";
    for (const auto& o : spec.overlays) {
      const auto& s = o.slope;
      if (o.arc_height) {
        for (long m : {0L, 1L}) {
          ArcLift arc(s, *o.arc_height);
          os << "<line class=\"arc\" data-slope=\"" << s.str() << "\" x1=\"" << cv.X(arc.start(m).x.to_double())
             << "\" y1=\"" << cv.Y(arc.start(m).y.to_double()) << "\" x2=\"" << cv.X(arc.end(m).x.to_double())
             << "\" y2=\"" << cv.Y(arc.end(m).y.to_double()) << "\"/>\n";
        }
        continue;
      }
      if (s.vertical()) throw Error(ErrorCode::BadSpec, "line overlays need a non-vertical slope");
      const PairingObject obj = surgery_lines(d, s);
      const double p = static_cast<double>(s.p), q = static_cast<double>(s.q);
      const double off = obj.offset.to_double();
      // p x - q y ranges over the window corners.
      double cmin = 1e300, cmax = -1e300;
      for (double x : {xlo, xhi}) {
        for (double y : {ylo, yhi}) {
          cmin = std::min(cmin, p * x - q * y);
          cmax = std::max(cmax, p * x - q * y);
        }
      }
      for (long k = static_cast<long>(std::floor(cmin - off)); k <= static_cast<long>(std::ceil(cmax - off)); ++k) {
        auto seg = clip_line(p, q, static_cast<double>(k) + off, xlo, xhi, ylo, yhi);
        if (!seg) continue;
        os << "<line class=\"surgery-line\" data-slope=\"" << s.str() << "\" data-k=\"" << k << "\" x1=\""
           << cv.X(seg->first.first) << "\" y1=\"" << cv.Y(seg->first.second) << "\" x2=\""
           << cv.X(seg->second.first) << "\" y2=\"" << cv.Y(seg->second.second) << "\"/>\n";
      }
    }
    os << "</g>\n";
  }

  os << "<g id=\"pegs\" fill=\"black\">\n";
  const long jlo = static_cast<long>(std::ceil(ylo - 0.5)), jhi = static_cast<long>(std::floor(yhi - 0.5));
  for (long i : {0L, 1L}) {
    for (long j = jlo; j <= jhi; ++j) {
      os << "<circle class=\"peg\" cx=\"" << cv.X(static_cast<double>(i)) << "\" cy=\""
         << cv.Y(static_cast<double>(j) + 0.5) << "\" r=\"" << num(spec.scale * 0.05) << "\"/>\n";
    }
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace pegboard
