#include "pegboard/zoo.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "pegboard/errors.hpp"

namespace pegboard {

Rational wrap_radius() { return Rational(1, 1009); }

Laurent parse_laurent(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw Error(ErrorCode::BadSpec, "empty polynomial");
  Laurent out;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::BadSpec, "polynomial '" + std::string(text) + "': " + why);
  };
  auto read_int = [&](long& v) {
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) return false;
    v = std::stol(s.substr(i, j - i));
    i = j;
    return true;
  };
  while (i < s.size()) {
    long sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!out.empty() || i != 0) {
      fail("expected + or -");
    }
    long coef = 1;
    bool have_coef = read_int(coef);
    if (i < s.size() && s[i] == '*') {
      if (!have_coef) fail("dangling '*'");
      ++i;
    }
    long exp = 0;
    if (i < s.size() && s[i] == 't') {
      ++i;
      exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        long esign = 1;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
          esign = s[i] == '-' ? -1 : 1;
          ++i;
        }
        if (!read_int(exp)) fail("missing exponent");
        exp *= esign;
      }
    } else if (!have_coef) {
      fail("expected a term");
    }
    out[exp] += sign * coef;
    if (out[exp] == 0) out.erase(exp);
  }
  return out;
}

std::string format_laurent(const Laurent& poly) {
  if (poly.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
    long c = it->second, e = it->first;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    long a = c < 0 ? -c : c;
    if (e == 0) {
      os << a;
    } else {
      if (a != 1) os << a << "*";
      os << "t";
      if (e != 1) os << "^" << e;
    }
    first = false;
  }
  return os.str();
}

CurveDiagram unknot() {
  return CurveDiagram{{Component{{Point{Rational(-1, 2), 0}, Point{Rational(1, 2), 0}}, 1}}, "unknot"};
}

namespace {

std::vector<long> staircase_exponents(const Laurent& a) {
  std::vector<long> exps;
  for (auto it = a.rbegin(); it != a.rend(); ++it) exps.push_back(it->first);
  if (exps.empty() || exps.size() % 2 == 0) {
    throw Error(ErrorCode::BadAlexander, "needs an odd number of nonzero terms");
  }
  for (std::size_t i = 0; i < exps.size(); ++i) {
    long want = i % 2 == 0 ? 1 : -1;
    if (a.at(exps[i]) != want) {
      throw Error(ErrorCode::BadAlexander, "coefficients must alternate +1, -1 from the top");
    }
    auto mirror_it = a.find(-exps[i]);
    if (mirror_it == a.end() || mirror_it->second != a.at(exps[i])) {
      throw Error(ErrorCode::BadAlexander, "polynomial is not symmetric");
    }
  }
  return exps;
}

Component staircase_component(const std::vector<long>& e) {
  const Rational r = wrap_radius();
  const Rational half(1, 2);
  const std::size_t m = e.size() / 2;
  std::vector<Point> h;
  h.push_back({-half, 0});
  const Rational top = Rational(e[0]) - half;
  h.push_back({-r, top + r / Rational(2)});
  h.push_back({Rational(2) * r, top + r});
  Point cur{r, top};
  h.push_back(cur);
  long side = 1;
  for (std::size_t i = 1; i <= m; ++i) {
    const Rational next_top = Rational(e[i]) + half;
    if (cur.y > next_top) {
      cur = Point{Rational(2 * side) * r, next_top};
      h.push_back(cur);
    }
    if (i == m) break;
    cur = Point{Rational(-side) * r, Rational(e[i]) - half};
    h.push_back(cur);
    side = -side;
  }
  std::vector<Point> full = h;
  for (auto it = h.rbegin(); it != h.rend(); ++it) full.push_back(-*it);
  return Component{std::move(full), 1};
}

}  // namespace

CurveDiagram lspace_staircase(const Laurent& alexander) {
  std::vector<long> e = staircase_exponents(alexander);
  if (e.size() == 1) {
    CurveDiagram d = unknot();
    d.source = "staircase(1)";
    return d;
  }
  return CurveDiagram{{staircase_component(e)}, "staircase(" + format_laurent(alexander) + ")"};
}

Component figure_eight_component(long c) {
  const Rational s = Rational(3, 2) * wrap_radius();
  const Rational top = Rational(c) + Rational(1, 2) + Rational(2) * s;
  const Rational bot = Rational(c) - Rational(1, 2) - Rational(2) * s;
  return Component{{Point{-s, top}, Point{s, top}, Point{-s, bot}, Point{s, bot}}, 0};
}

CurveDiagram thin(long tau, int f) {
  if (f < 0) throw Error(ErrorCode::BadSpec, "negative figure-eight count");
  CurveDiagram d;
  if (tau == 0) {
    d = unknot();
  } else {
    const long t = tau < 0 ? -tau : tau;
    std::vector<long> e;
    for (long k = t; k >= -t; --k) e.push_back(k);
    d.components.push_back(staircase_component(e));
    if (tau < 0) d = mirror(d);
  }
  int left = f;
  if (left % 2 == 1) {
    d.components.push_back(figure_eight_component(0));
    --left;
  }
  for (long c = 1; left > 0; ++c, left -= 2) {
    d.components.push_back(figure_eight_component(c));
    d.components.push_back(figure_eight_component(-c));
  }
  d.source = "thin(" + std::to_string(tau) + "," + std::to_string(f) + ")";
  return d;
}

CurveDiagram figure_eight_knot() {
  CurveDiagram d = thin(0, 1);
  d.source = "figure-eight";
  return d;
}

CurveDiagram wiggled_unknot() {
  return CurveDiagram{{Component{{Point{Rational(-1, 2), 0}, Point{Rational(1, 4), Rational(1, 8)},
                                  Point{Rational(-1, 4), Rational(-1, 8)}, Point{Rational(1, 2), 0}},
                                 1}},
                      "wiggled-unknot"};
}

const std::vector<ZooEntry>& zoo() {
  static const std::vector<ZooEntry> entries = {
      {"unknot", "horizontal line", [] { return unknot(); }},
      {"trefoil", "right-handed trefoil T(2,3), staircase of t - 1 + t^-1",
       [] {
         CurveDiagram d = lspace_staircase(parse_laurent("t - 1 + t^-1"));
         d.source = "trefoil";
         return d;
       }},
      {"mirror-trefoil", "left-handed trefoil, mirror of the staircase",
       [] {
         CurveDiagram d = mirror(lspace_staircase(parse_laurent("t - 1 + t^-1")));
         d.source = "mirror-trefoil";
         return d;
       }},
      {"figure-eight", "figure-eight knot 4_1: horizontal line plus one figure-eight component",
       [] { return figure_eight_knot(); }},
      {"torus-2-5", "T(2,5), staircase of t^2 - t + 1 - t^-1 + t^-2",
       [] {
         CurveDiagram d = lspace_staircase(parse_laurent("t^2 - t + 1 - t^-1 + t^-2"));
         d.source = "torus-2-5";
         return d;
       }},
      {"torus-3-4", "T(3,4), staircase of t^3 - t^2 + 1 - t^-2 + t^-3",
       [] {
         CurveDiagram d = lspace_staircase(parse_laurent("t^3 - t^2 + 1 - t^-2 + t^-3"));
         d.source = "torus-3-4";
         return d;
       }},
  };
  return entries;
}

CurveDiagram build_zoo(std::string_view spec) {
  for (const auto& e : zoo()) {
    if (e.name == spec) return e.build();
  }
  if (spec.rfind("staircase:", 0) == 0) return lspace_staircase(parse_laurent(spec.substr(10)));
  if (spec.rfind("thin:", 0) == 0) {
    std::string args(spec.substr(5));
    auto comma = args.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::BadSpec, "thin:<tau>,<f> expected");
    try {
      std::size_t used = 0;
      long tau = std::stol(args.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("tau");
      std::string fs = args.substr(comma + 1);
      int f = std::stoi(fs, &used);
      if (used != fs.size()) throw std::invalid_argument("f");
      return thin(tau, f);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::BadSpec, "thin:<tau>,<f> expected, got '" + std::string(spec) + "'");
    }
  }
  throw Error(ErrorCode::BadSpec, "unknown zoo entry '" + std::string(spec) + "'");
}

}  // namespace pegboard
