#include "pegboard/ledger.hpp"

#include <algorithm>
#include <sstream>

#include "pegboard/errors.hpp"

namespace pegboard::ledger {

std::string to_string(Bundle b) { return b == Bundle::Trivial ? "trivial" : "mu"; }
std::string to_string(Coefficient c) { return c == Coefficient::C ? "C" : "F2"; }

std::string to_string(Shape s) {
  switch (s) {
    case Shape::V: return "V";
    case Shape::W: return "W";
    case Shape::GeneralizedW: return "generalized-W";
  }
  return "?";
}

long LedgerSequence::at(long n) const {
  auto it = values.find(n);
  if (it == values.end()) {
    throw Error(ErrorCode::RangeTooSmall, "no value recorded at n = " + std::to_string(n));
  }
  return it->second;
}

long LedgerSequence::lo() const {
  if (values.empty()) throw Error(ErrorCode::RangeTooSmall, "empty sequence");
  return values.begin()->first;
}

long LedgerSequence::hi() const {
  if (values.empty()) throw Error(ErrorCode::RangeTooSmall, "empty sequence");
  return values.rbegin()->first;
}

void LedgerSequence::set(long n, long v, std::string prov) {
  values[n] = v;
  provenance[n] = std::move(prov);
}

LedgerSequence LedgerSequence::mirrored() const {
  LedgerSequence out;
  out.bundle = bundle;
  out.coefficient = coefficient;
  for (const auto& [n, v] : values) out.set(-n, v, provenance.count(n) ? provenance.at(n) : "input");
  return out;
}

namespace {

long iabs(long x) { return x < 0 ? -x : x; }
bool is_odd(long x) { return x % 2 != 0; }

void require(bool ok, ErrorCode code, const std::string& msg) {
  if (!ok) throw Error(code, msg);
}

}  // namespace

LedgerSequence dim_seq_C(Shape shape, long nu_sharp, long base, long lo, long hi) {
  require(base >= 1 || shape == Shape::W, ErrorCode::PreconditionViolation, "base must be >= 1");
  require(base >= 0, ErrorCode::PreconditionViolation, "base must be >= 0");
  require(lo <= hi, ErrorCode::RangeTooSmall, "empty range");
  if (shape == Shape::GeneralizedW) {
    throw Error(ErrorCode::BadShape, "dimension formula over C covers V and W shapes only");
  }
  if (shape == Shape::W && nu_sharp != 0) {
    throw Error(ErrorCode::BadShape, "a W shape over C forces nu = 0");
  }
  LedgerSequence out;
  for (long n = lo; n <= hi; ++n) {
    if (shape == Shape::V) {
      out.set(n, base + iabs(n - nu_sharp), "derived:v-shape-formula");
    } else {
      out.set(n, n == 0 ? base + 2 : base + iabs(n), "derived:w-shape-formula");
    }
  }
  return out;
}

long half_dim_C(long n, long nu_sharp, long D_n) {
  if (n == 0 && nu_sharp == 0) {
    throw Error(ErrorCode::UndefinedAtZero, "half-integral formula needs n != 0 or nu != 0");
  }
  return nu_sharp < n ? 2 * D_n - 1 : 2 * D_n + 1;
}

LedgerSequence dgamma_seq(long tau_I, long min_value, long lo, long hi) {
  require(min_value >= 1, ErrorCode::PreconditionViolation, "minimum value must be >= 1");
  require(lo <= hi, ErrorCode::RangeTooSmall, "empty range");
  LedgerSequence out;
  for (long n = lo; n <= hi; ++n) out.set(n, min_value + iabs(n - 2 * tau_I), "derived:unimodal-dual");
  return out;
}

// ---- certificates ----

namespace {

long half_integral_bound(long k_n) { return 2 * k_n - 1; }
long dual_one_bound(long D_top) { return 2 * D_top - 1; }

long genus_one_middle(long a, long tau_I) {
  return std::max(iabs(1 - 2 * a), tau_I == 0 ? 3L : 1L);
}

long genus_one_upper(long tau_I, long D_top) { return tau_I == 0 ? 4 * D_top + 2 : 4 * D_top; }

long genus_one_bound(long a, long tau_I, long D_top) {
  const long khi = 2 * D_top + genus_one_middle(a, tau_I);
  return (2 * khi - genus_one_upper(tau_I, D_top)) / 2;
}

long unknotting_one_bound(long dim_KHI) {
  return dim_KHI > 3 ? (2 * dim_KHI - (dim_KHI + 3)) / 2 : 0;
}

}  // namespace

long revalidate(const TorsionCertificate& c) {
  auto in = [&](const char* key) {
    auto it = c.inputs.find(key);
    if (it == c.inputs.end()) {
      throw Error(ErrorCode::InconsistentInputs, c.rule + " certificate lacks input " + key);
    }
    return it->second;
  };
  if (c.rule == "half-integral-gap") return half_integral_bound(in("k_n"));
  if (c.rule == "dual-one-surgery-gap") return dual_one_bound(in("D_top"));
  if (c.rule == "genus-one-gap") return genus_one_bound(in("a"), in("tau_I"), in("D_top"));
  if (c.rule == "unknotting-one-gap") return unknotting_one_bound(in("dim_KHI"));
  throw Error(ErrorCode::InconsistentInputs, "unknown rule " + c.rule);
}

TorsionCertificate torsion_bound_half(long n, long k_n) {
  require(n != 0, ErrorCode::PreconditionViolation, "n must be nonzero");
  require(k_n >= 0, ErrorCode::PreconditionViolation, "k_n must be >= 0");
  if (k_n == 0) {
    throw Error(ErrorCode::VacuousBound, "k_n = 0: the knot is dually Floer simple at n, no bound");
  }
  TorsionCertificate c;
  c.target = "S^3_{" + std::to_string(2 * n - 1) + "/2}(K)";
  c.rule = "half-integral-gap";
  c.inputs = {{"n", n}, {"k_n", k_n}};
  c.lower_bound = half_integral_bound(k_n);
  c.notes.push_back("F2 dimension >= 2 D_n + 4 k_n - 1 against C dimension <= 2 D_n + 1");
  return c;
}

DualOneBounds dual_one_bounds(long D_top, long dim_I1_C) {
  require(D_top >= 1, ErrorCode::PreconditionViolation, "D_top must be >= 1 for a nontrivial knot");
  require(dim_I1_C >= 1, ErrorCode::PreconditionViolation, "dimension of +1 surgery must be >= 1");
  DualOneBounds out;
  out.khi_lower = dim_I1_C + 2 * D_top;
  out.cert.target = "(S^3_1(K), dual knot)";
  out.cert.rule = "dual-one-surgery-gap";
  out.cert.inputs = {{"D_top", D_top}, {"dim_I1_C", dim_I1_C}};
  out.cert.lower_bound = dual_one_bound(D_top);
  out.cert.notes.push_back("F2 dimension >= 2 (dim + 2 D_top) against C dimension <= 2 dim + 2");
  return out;
}

GenusOneReport genus_one_report(long a, long tau_I, long D_top) {
  if (a == 0) throw Error(ErrorCode::TrivialAlexander, "Alexander polynomial is 1; no certificate");
  require(tau_I >= -1 && tau_I <= 1, ErrorCode::PreconditionViolation, "genus one forces |tau| <= 1");
  require(D_top >= iabs(a), ErrorCode::PreconditionViolation,
          "top grading dimension must be at least |a| (its Euler characteristic)");
  GenusOneReport r;
  const long m = genus_one_middle(a, tau_I);
  r.khi_dims = {D_top, m, D_top};
  r.isharp1_dim = tau_I == 1 ? 2 * D_top - 1 : 2 * D_top + 1;
  r.isharp_upper = genus_one_upper(tau_I, D_top);
  r.cert.target = "I(S^3, K)";
  r.cert.rule = "genus-one-gap";
  r.cert.inputs = {{"a", a}, {"tau_I", tau_I}, {"D_top", D_top}};
  r.cert.lower_bound = genus_one_bound(a, tau_I, D_top);
  if (tau_I == 0) r.cert.notes.push_back("tau = 0 with nontrivial Alexander polynomial forces middle dimension >= 3");
  return r;
}

UnknottingOneReport unknotting_one_check(long dim_KHI) {
  require(dim_KHI >= 1 && is_odd(dim_KHI), ErrorCode::PreconditionViolation,
          "knot homology dimension must be odd and positive");
  UnknottingOneReport r;
  r.isharp_upper = dim_KHI + 3;
  r.cert.target = "I(S^3, K)";
  r.cert.rule = "unknotting-one-gap";
  r.cert.inputs = {{"dim_KHI", dim_KHI}};
  r.cert.lower_bound = unknotting_one_bound(dim_KHI);
  if (dim_KHI <= 3) {
    r.cert.notes.push_back("dimension <= 3: the knot is the unknot or a trefoil, no gap is forced");
  }
  return r;
}

std::string QuasiAltGroups::unreduced() const {
  std::string s = "Z^" + std::to_string(free_rank);
  if (torsion_2 > 0) s += " + (Z/2)^" + std::to_string(torsion_2);
  return s;
}

std::string QuasiAltGroups::reduced() const { return "Z^" + std::to_string(reduced_free_rank); }

QuasiAltGroups quasi_alt(long delta) {
  require(delta >= 1, ErrorCode::PreconditionViolation, "determinant must be positive");
  if (!is_odd(delta)) throw Error(ErrorCode::EvenDeterminant, "knot determinants are odd");
  return QuasiAltGroups{delta + 1, (delta - 1) / 2, delta};
}

bool triangle_check(long a, long b, long c) {
  return iabs(a - b) <= c && iabs(b - c) <= a && iabs(c - a) <= b;
}

SlopeRegion slope_propagation(long n, bool minimal_at_n) {
  require(n >= 1, ErrorCode::PreconditionViolation, "n must be positive");
  SlopeRegion r;
  r.lower = n;
  r.certified = minimal_at_n;
  r.statement = minimal_at_n
                    ? "for all p/q >= " + std::to_string(n) + ": dim = |p| over C and F2, no 2-torsion"
                    : "empty region: surgery at " + std::to_string(n) + " is not minimal";
  return r;
}

// ---- consequences of vanishing 2-torsion ----

NoTorsionVerdict no_torsion_consequence(long n, Shape shape, long nu, long tau) {
  require(n >= 0, ErrorCode::PreconditionViolation, "n must be >= 0");
  if (!((nu == 0 && tau == 0) || nu == 2 * tau + 1 || nu == 2 * tau - 1)) {
    throw Error(ErrorCode::InconsistentInputs,
                "nu must equal 2 tau +- 1, or nu = tau = 0 (nu = " + std::to_string(nu) +
                    ", tau = " + std::to_string(tau) + ")");
  }
  if (shape == Shape::GeneralizedW) {
    throw Error(ErrorCode::BadShape, "surgery dimensions over C are V- or W-shaped");
  }
  if (shape == Shape::W && nu != 0) throw Error(ErrorCode::InconsistentInputs, "a W shape forces nu = 0");

  NoTorsionVerdict v;
  auto contradiction = [&](std::string branch, std::string reason) {
    v.consistent = false;
    v.branch = std::move(branch);
    v.reason = std::move(reason);
    return v;
  };
  if (n == 0) {
    if (shape == Shape::W) {
      v.consistent = true;
      v.branch = "zero-surgery-w-shape";
      v.reason = "0-surgery without 2-torsion is allowed for W-shaped knots";
      return v;
    }
    return contradiction("zero-surgery-v-shape",
                         "vanishing propagates to 1-surgery and then to 1/2-surgery, which always has 2-torsion");
  }
  v.consequences.push_back("dually Floer simple at n = " + std::to_string(n));
  if (shape == Shape::W) {
    return contradiction("w-shape",
                         "dual and surgery dimensions agree at n = 1, against the dual-one-surgery gap");
  }
  if (nu > n) {
    return contradiction("nu-above-n",
                         "2 tau >= n forces equality at n = 1, against the dual-one-surgery gap");
  }
  if (nu == n) {
    return contradiction("nu-equals-n",
                         "the dual sequence would drop 2 below the surgery sequence next to n");
  }
  if (2 * tau == nu - 1) {
    return contradiction("tau-below-nu",
                         "the dual sequence would sit 2 below the surgery sequence at nu - 1");
  }
  if (2 * tau != nu + 1 || nu <= 0) {
    return contradiction("tau-above-nu-nonpositive",
                         "equality would extend to n = 1, against the dual-one-surgery gap");
  }
  v.consistent = true;
  v.branch = "tau-above-nu";
  v.reason = "dual and surgery dimensions agree for all m >= 2 tau";
  v.consequences.push_back("K is fibered");
  v.consequences.push_back("K is V-shaped");
  v.consequences.push_back("0 < nu = 2 tau - 1 = " + std::to_string(nu) + " < n = " + std::to_string(n));
  return v;
}

// ---- F2 sequences ----

std::pair<long, long> nu_pair(const LedgerSequence& D) {
  const long lo = D.lo(), hi = D.hi();
  for (long n = lo; n <= hi; ++n) D.at(n);
  if (hi - lo < 2) throw Error(ErrorCode::RangeTooSmall, "range too short to read nu");
  long plus = hi;
  while (plus > lo && D.at(plus) == D.at(plus - 1) + 1) --plus;
  long minus = lo;
  while (minus < hi && D.at(minus) == D.at(minus + 1) + 1) ++minus;
  if (plus == hi || plus == lo || minus == lo || minus == hi) {
    throw Error(ErrorCode::RangeTooSmall,
                "range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                    "] does not show both eventual unit slopes with a turning point inside");
  }
  return {plus, minus};
}

namespace {

class Checker {
 public:
  Checker(const LedgerSequence& d0, const LedgerSequence& dmu) : d0_(d0), dmu_(dmu) {}

  void check(const std::string& rule, long n, bool ok, const std::string& detail) {
    checks.push_back({rule, n, ok ? "ok" : "violated", detail});
    if (!ok) {
      throw Error(ErrorCode::ConstraintViolation,
                  rule + " violated at n = " + std::to_string(n) + ": " + detail);
    }
  }

  void unconstrained(const std::string& rule, long n, const std::string& detail) {
    checks.push_back({rule, n, "unconstrained", detail});
  }

  bool in(long n) const { return d0_.has(n); }
  long D(long n) const { return d0_.at(n); }
  long M(long n) const { return dmu_.at(n); }

  std::vector<ConstraintCheck> checks;

 private:
  const LedgerSequence& d0_;
  const LedgerSequence& dmu_;
};

std::string vals(long a, long b) { return std::to_string(a) + " vs " + std::to_string(b); }

Shape shape_of_gap(long gap, const std::string& which, Checker& ck, long at) {
  ck.check("nu-order", at, gap >= 0, which + ": nu_+ must not be below nu_-");
  ck.check("nu-gap-one", at, gap != 1, which + ": nu_+ = nu_- + 1 is impossible");
  return gap == 0 ? Shape::V : gap == 2 ? Shape::W : Shape::GeneralizedW;
}

}  // namespace

ShapeReport f2_shape_classify(const LedgerSequence& D0, const LedgerSequence& Dmu) {
  const long lo = D0.lo(), hi = D0.hi();
  for (long n = lo; n <= hi; ++n) {
    if (!D0.has(n) || !Dmu.has(n)) {
      throw Error(ErrorCode::RangeTooSmall, "both sequences need every n in [" + std::to_string(lo) +
                                                ", " + std::to_string(hi) + "]");
    }
  }
  if (Dmu.lo() != lo || Dmu.hi() != hi) {
    throw Error(ErrorCode::RangeTooSmall, "sequences must share one range");
  }
  Checker ck(D0, Dmu);

  for (long n = lo; n <= hi; ++n) {
    const long d = ck.D(n), m = ck.M(n);
    if (is_odd(n)) {
      ck.check("odd-bundle-equality", n, d == m, vals(m, d));
    } else {
      ck.check("even-bundle-gap", n, m - d == -2 || m - d == 0 || m - d == 2, vals(m, d));
    }
  }
  // Pointwise rules run first so a bad entry is blamed on its own index.
  for (long n = lo; n <= hi; ++n) {
    const long d = ck.D(n), m = ck.M(n);
    if (!is_odd(n)) {
      if (m != d && ck.in(n - 1) && ck.in(n + 1)) {
        ck.check("gap-flat-neighbours", n, ck.D(n - 1) == ck.D(n + 1), vals(ck.D(n - 1), ck.D(n + 1)));
      }
    }
    if (ck.in(n + 1)) {
      ck.check("surgery-triangle", n, iabs(ck.D(n + 1) - m) <= 1 && iabs(ck.M(n + 1) - d) <= 1,
               "neighbouring surgeries differ by more than dim of S^3");
    }
    if (ck.in(n - 1) && ck.in(n + 1)) {
      const long prev = ck.D(n - 1);
      if (is_odd(n)) {
        if (d == ck.M(n + 1) + 1) ck.check("odd-mu-step", n, prev == d + 1, vals(prev, d + 1));
        if (d == ck.D(n + 1) + 1) ck.check("odd-drop-step", n, ck.M(n - 1) == d + 1, vals(ck.M(n - 1), d + 1));
      } else {
        if (m == ck.D(n + 1) + 1) ck.check("even-mu-drop-step", n, prev == d + 1, vals(prev, d + 1));
        if (d == ck.D(n + 1) + 1) ck.check("even-drop-step", n, prev == m + 1, vals(prev, m + 1));
      }
    }
  }

  ShapeReport r;
  const auto [np, nm] = nu_pair(D0);
  r.shape = {shape_of_gap(np - nm, "trivial bundle", ck, np), np, nm};
  const auto [mp, mm] = nu_pair(Dmu);
  r.mu_shape = {shape_of_gap(mp - mm, "mu bundle", ck, mp), mp, mm};
  r.w0 = r.shape.width();
  r.w_mu = r.mu_shape.width();

  // Expected bundle difference D0 - Dmu at each n, or nullopt where nothing is forced.
  auto expected = [&](long n) -> std::optional<long> {
    if (n > np || n < nm) return 0;
    switch (r.shape.kind) {
      case Shape::V:
        if (n != np) return 0;
        return std::nullopt;  // checked separately below
      case Shape::W: {
        const long mid = np - 1;
        if (!is_odd(mid)) return n == mid ? 2 : 0;
        return (n == mid - 1 || n == mid + 1) ? -2 : 0;
      }
      case Shape::GeneralizedW:
        if (is_odd(n)) return 0;
        if (n == np || n == nm) return std::nullopt;
        return is_odd(np) ? 2 : -2;
    }
    return std::nullopt;
  };
  const std::string rule = "shape-bundle-" + to_string(r.shape.kind);
  for (long n = lo; n <= hi; ++n) {
    const long diff = ck.D(n) - ck.M(n);
    if (r.shape.kind == Shape::V && n == np) {
      const bool ok = is_odd(n) ? diff == 0 : (diff == 0 || diff == -2);
      ck.check(rule, n, ok, "difference at the minimum: " + std::to_string(diff));
      continue;
    }
    if (auto e = expected(n)) {
      ck.check(rule, n, diff == *e, "D0 - Dmu = " + std::to_string(diff) + ", expected " + std::to_string(*e));
    } else {
      ck.unconstrained(rule, n, "even endpoint between the nu values; D0 - Dmu = " + std::to_string(diff));
    }
  }
  const bool both_zero = r.w0.is_zero() && r.w_mu.is_zero();
  ck.check("width-gap", np, both_zero || (r.w0 - r.w_mu).abs() == Rational(1),
           "w0 = " + r.w0.str() + ", w_mu = " + r.w_mu.str());
  r.checks = std::move(ck.checks);
  return r;
}

T2Report t2_monotone_check(const LedgerSequence& seqC, const LedgerSequence& seqF2, long nu_sharp) {
  T2Report r;
  for (const auto& [n, c] : seqC.values) {
    if (!seqF2.has(n)) throw Error(ErrorCode::RangeTooSmall, "F2 sequence lacks n = " + std::to_string(n));
    const long diff = seqF2.at(n) - c;
    if (diff < 0 || is_odd(diff)) {
      throw Error(ErrorCode::ParityViolation,
                  "F2 minus C must be even and non-negative, got " + std::to_string(diff) +
                      " at n = " + std::to_string(n));
    }
    r.t2[n] = diff / 2;
  }
  for (const auto& [n, t] : r.t2) {
    auto next = r.t2.find(n + 1);
    if (n >= nu_sharp && next != r.t2.end() && next->second > t) {
      r.ok = false;
      r.first_violation = n + 1;
      break;
    }
  }
  return r;
}

PoincareReport poincare_demo() {
  PoincareReport r;
  r.steps.push_back("S^3_5(trefoil) is a lens space: dim over F2 = 5");
  long dim = r.lens_dim;
  for (long n = 4; n >= 1; --n) {
    // Under the F2 adjunction inequality each trace cobordism map vanishes, so each
    // surgery triangle drops the dimension by exactly dim I(S^3) = 1.
    dim -= 1;
    r.steps.push_back("dim S^3_" + std::to_string(n) + " = dim S^3_" + std::to_string(n + 1) +
                      " - 1 = " + std::to_string(dim));
  }
  r.conditional_value = dim;
  r.steps.push_back("conditional value for the Poincare sphere S^3_1(trefoil): " + std::to_string(dim));
  r.steps.push_back("known lower bound over F2: " + std::to_string(r.lower_bound));
  r.contradiction = r.conditional_value < r.lower_bound;
  r.conclusion = r.contradiction ? "adjunction inequality fails over F2"
                                 : "no contradiction with the adjunction inequality";
  return r;
}

// ---- ingestion ----

std::vector<LedgerSequence> parse_sequences_csv(std::string_view text) {
  std::vector<LedgerSequence> out;
  std::istringstream in{std::string(text)};
  std::string line;
  long lineno = 0;
  bool header = false;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lineno) + ": " + msg);
  };
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(trim(cell));
    if (!header) {
      if (cols != std::vector<std::string>{"n", "value", "bundle", "coefficient"}) {
        fail("expected header n,value,bundle,coefficient");
      }
      header = true;
      continue;
    }
    if (cols.size() != 4) fail("expected 4 columns, got " + std::to_string(cols.size()));
    long n = 0, value = 0;
    try {
      std::size_t used = 0;
      n = std::stol(cols[0], &used);
      if (used != cols[0].size()) fail("bad integer '" + cols[0] + "'");
      value = std::stol(cols[1], &used);
      if (used != cols[1].size()) fail("bad integer '" + cols[1] + "'");
    } catch (const std::logic_error&) {
      fail("bad integer in '" + line + "'");
    }
    if (value < 0) fail("dimensions are non-negative");
    Bundle b;
    if (cols[2] == "trivial") b = Bundle::Trivial;
    else if (cols[2] == "mu") b = Bundle::Mu;
    else fail("bundle must be trivial or mu");
    Coefficient c;
    if (cols[3] == "C") c = Coefficient::C;
    else if (cols[3] == "F2") c = Coefficient::F2;
    else fail("coefficient must be C or F2");
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const auto& s) { return s.bundle == b && s.coefficient == c; });
    if (it == out.end()) {
      out.push_back(LedgerSequence{});
      it = out.end() - 1;
      it->bundle = b;
      it->coefficient = c;
    }
    if (it->has(n)) fail("duplicate n = " + std::to_string(n));
    it->set(n, value);
  }
  if (!header) throw Error(ErrorCode::SyntaxError, "missing header");
  return out;
}

}  // namespace pegboard::ledger
