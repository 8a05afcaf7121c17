#include <functional>

#include "doctest.h"
#include "pegboard/errors.hpp"
#include "pegboard/ledger.hpp"

using namespace pegboard;
using namespace pegboard::ledger;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvariantViolation;
}

LedgerSequence from(long lo, long hi, const std::function<long(long)>& f, Bundle b = Bundle::Trivial) {
  LedgerSequence s;
  s.bundle = b;
  s.coefficient = Coefficient::F2;
  for (long n = lo; n <= hi; ++n) s.set(n, f(n));
  return s;
}

long iabs(long x) { return x < 0 ? -x : x; }

// Unknot over F2: |n| with 2 at 0; the mu bundle drops to 0 at n = 0.
LedgerSequence unknot_D0() { return from(-6, 6, [](long n) { return n == 0 ? 2 : iabs(n); }); }
LedgerSequence unknot_Dmu() { return from(-6, 6, [](long n) { return iabs(n); }, Bundle::Mu); }

LedgerSequence v_fixture() { return from(-6, 6, [](long n) { return 1 + iabs(n - 1); }); }

}  // namespace

TEST_CASE("dim_seq_C follows the V and W formulas") {
  auto v = dim_seq_C(Shape::V, 2, 3, -5, 8);
  CHECK(v.at(5) == 6);
  CHECK(v.at(2) == 3);
  CHECK(v.provenance.at(5).rfind("derived:", 0) == 0);
  auto w = dim_seq_C(Shape::W, 0, 4, -5, 5);
  CHECK(w.at(0) == 6);
  CHECK(w.at(3) == 7);
  CHECK(w.at(-3) == 7);
  CHECK(code_of([] { dim_seq_C(Shape::W, 1, 4, -2, 2); }) == ErrorCode::BadShape);
  CHECK(code_of([] { dim_seq_C(Shape::V, 0, 0, -2, 2); }) == ErrorCode::PreconditionViolation);
  CHECK(code_of([&] { v.at(100); }) == ErrorCode::RangeTooSmall);
}

TEST_CASE("consecutive dim_seq_C entries satisfy the triangle with dim 1") {
  for (long nu = -4; nu <= 4; ++nu) {
    for (long base = 1; base <= 4; ++base) {
      auto s = dim_seq_C(Shape::V, nu, base, -10, 10);
      for (long n = -10; n < 10; ++n) CHECK(triangle_check(s.at(n), s.at(n + 1), 1));
    }
  }
  auto w = dim_seq_C(Shape::W, 0, 1, -10, 10);
  for (long n = -10; n < 10; ++n) CHECK(triangle_check(w.at(n), w.at(n + 1), 1));
}

TEST_CASE("half_dim_C branches") {
  CHECK(half_dim_C(1, 0, 1) == 1);
  CHECK(half_dim_C(1, 1, 3) == 7);
  CHECK(half_dim_C(0, 2, 3) == 7);
  CHECK(half_dim_C(0, -2, 3) == 5);
  CHECK(code_of([] { half_dim_C(0, 0, 1); }) == ErrorCode::UndefinedAtZero);
}

TEST_CASE("dgamma_seq is unimodal at 2 tau") {
  CHECK(dgamma_seq(0, 1, -3, 3).at(2) == 3);
  CHECK(dgamma_seq(1, 1, -3, 3).at(2) == 1);
  CHECK(dgamma_seq(1, 1, -3, 3).at(-1) == 4);
  CHECK(code_of([] { dgamma_seq(0, 0, -1, 1); }) == ErrorCode::PreconditionViolation);
}

// Consistent inputs: nu = 2 tau +- 1 for a V shape. The dual sequence then sits above the
// surgery sequence by an even amount once its minimum is chosen with matching parity.
TEST_CASE("dgamma minus dim_seq_C is even and non-negative for consistent inputs") {
  for (long tau = -3; tau <= 3; ++tau) {
    for (long nu : {2 * tau - 1, 2 * tau + 1}) {
      for (long base = 1; base <= 3; ++base) {
        auto d = dim_seq_C(Shape::V, nu, base, -12, 12);
        for (long extra = 0; extra <= 4; extra += 2) {
          auto g = dgamma_seq(tau, base + 1 + extra, -12, 12);
          for (long n = -12; n <= 12; ++n) {
            const long diff = g.at(n) - d.at(n);
            CHECK(diff >= 0);
            CHECK(diff % 2 == 0);
          }
        }
      }
    }
  }
}

TEST_CASE("torsion_bound_half certificate") {
  CHECK(torsion_bound_half(1, 1).lower_bound == 1);
  auto c = torsion_bound_half(2, 3);
  CHECK(c.lower_bound == 5);
  CHECK(c.rule == "half-integral-gap");
  CHECK(c.target == "S^3_{3/2}(K)");
  CHECK(code_of([] { torsion_bound_half(1, 0); }) == ErrorCode::VacuousBound);
  CHECK(code_of([] { torsion_bound_half(0, 1); }) == ErrorCode::PreconditionViolation);
}

TEST_CASE("dual_one_bounds") {
  auto a = dual_one_bounds(1, 1);
  CHECK(a.khi_lower == 3);
  CHECK(a.cert.lower_bound == 1);
  auto b = dual_one_bounds(2, 5);
  CHECK(b.khi_lower == 9);
  CHECK(b.cert.lower_bound == 3);
  CHECK(code_of([] { dual_one_bounds(0, 1); }) == ErrorCode::PreconditionViolation);
}

TEST_CASE("genus_one_report") {
  auto t = genus_one_report(1, 1, 1);
  CHECK(t.isharp1_dim == 1);
  CHECK(t.cert.lower_bound == 1);
  CHECK(t.khi_dims == std::vector<long>{1, 1, 1});
  auto f = genus_one_report(1, 0, 1);
  CHECK(f.khi_dims[1] >= 3);
  CHECK(f.cert.lower_bound == 2);
  CHECK(f.isharp1_dim == 3);
  auto m = genus_one_report(-1, -1, 1);
  CHECK(m.isharp1_dim == 3);
  CHECK(m.khi_dims[1] == 3);
  CHECK(code_of([] { genus_one_report(0, 0, 1); }) == ErrorCode::TrivialAlexander);
  CHECK(code_of([] { genus_one_report(2, 1, 1); }) == ErrorCode::PreconditionViolation);
}

TEST_CASE("genus-one middle dimension is odd and the certificate bound is positive") {
  for (long a = -4; a <= 4; ++a) {
    if (a == 0) continue;
    for (long tau = -1; tau <= 1; ++tau) {
      for (long D = iabs(a); D <= 6; ++D) {
        auto r = genus_one_report(a, tau, D);
        CHECK(r.khi_dims[1] % 2 != 0);
        CHECK(r.cert.lower_bound >= 1);
        if (tau == 0) CHECK(r.cert.lower_bound >= 2);
      }
    }
  }
}

TEST_CASE("unknotting_one_check") {
  auto a = unknotting_one_check(5);
  CHECK(a.isharp_upper == 8);
  CHECK(a.cert.lower_bound == 1);
  auto b = unknotting_one_check(3);
  CHECK(b.isharp_upper == 6);
  CHECK(b.cert.lower_bound == 0);
  CHECK_FALSE(b.cert.notes.empty());
  auto c = unknotting_one_check(11);
  CHECK(c.isharp_upper == 14);
  CHECK(c.cert.lower_bound == 4);
  CHECK(code_of([] { unknotting_one_check(4); }) == ErrorCode::PreconditionViolation);
}

TEST_CASE("certificates revalidate from their stored inputs") {
  std::vector<TorsionCertificate> certs;
  for (long k = 1; k <= 5; ++k) certs.push_back(torsion_bound_half(k, k));
  for (long D = 1; D <= 5; ++D) certs.push_back(dual_one_bounds(D, 2 * D + 1).cert);
  for (long tau = -1; tau <= 1; ++tau) certs.push_back(genus_one_report(1, tau, 2).cert);
  for (long d = 5; d <= 15; d += 2) certs.push_back(unknotting_one_check(d).cert);
  for (const auto& c : certs) {
    REQUIRE(c.lower_bound > 0);
    CHECK(revalidate(c) == c.lower_bound);
  }
  auto broken = certs.front();
  broken.inputs.clear();
  CHECK(code_of([&] { revalidate(broken); }) == ErrorCode::InconsistentInputs);
}

TEST_CASE("quasi_alt group descriptors") {
  CHECK(quasi_alt(3).unreduced() == "Z^4 + (Z/2)^1");
  CHECK(quasi_alt(3).reduced() == "Z^3");
  CHECK(quasi_alt(1).unreduced() == "Z^2");
  CHECK(quasi_alt(1).torsion_2 == 0);
  CHECK(quasi_alt(5).unreduced() == "Z^6 + (Z/2)^2");
  CHECK(code_of([] { quasi_alt(4); }) == ErrorCode::EvenDeterminant);
}

TEST_CASE("triangle_check") {
  CHECK(triangle_check(3, 4, 1));
  CHECK_FALSE(triangle_check(1, 5, 2));
  for (long n = 0; n < 50; ++n) CHECK(triangle_check(n, n + 1, 1));
}

TEST_CASE("slope_propagation") {
  auto r = slope_propagation(5, true);
  CHECK(r.certified);
  CHECK(r.lower == 5);
  CHECK(slope_propagation(1, true).certified);
  CHECK_FALSE(slope_propagation(3, false).certified);
}

TEST_CASE("no_torsion_consequence branches") {
  auto a = no_torsion_consequence(1, Shape::V, 1, 1);
  CHECK_FALSE(a.consistent);
  auto b = no_torsion_consequence(3, Shape::V, 1, 1);
  CHECK(b.consistent);
  CHECK(b.branch == "tau-above-nu");
  CHECK(std::find(b.consequences.begin(), b.consequences.end(), "K is fibered") != b.consequences.end());
  auto c = no_torsion_consequence(2, Shape::W, 0, 0);
  CHECK_FALSE(c.consistent);
  CHECK(c.branch == "w-shape");
  CHECK(no_torsion_consequence(0, Shape::W, 0, 0).consistent);
  CHECK_FALSE(no_torsion_consequence(0, Shape::V, 1, 1).consistent);
  CHECK(no_torsion_consequence(1, Shape::V, 3, 1).branch == "nu-above-n");
  CHECK(no_torsion_consequence(5, Shape::V, 3, 1).branch == "tau-below-nu");
  CHECK_FALSE(no_torsion_consequence(5, Shape::V, -1, 0).consistent);
  CHECK(code_of([] { no_torsion_consequence(2, Shape::V, 2, 1); }) == ErrorCode::InconsistentInputs);
  CHECK(code_of([] { no_torsion_consequence(-1, Shape::V, 1, 1); }) == ErrorCode::PreconditionViolation);
}

TEST_CASE("the consistent branch always has 0 < nu = 2 tau - 1 < n") {
  for (long n = 0; n <= 8; ++n) {
    for (long tau = -4; tau <= 4; ++tau) {
      for (long nu : {2 * tau - 1, 2 * tau + 1}) {
        auto v = no_torsion_consequence(n, Shape::V, nu, tau);
        if (v.consistent) {
          CHECK(nu > 0);
          CHECK(nu == 2 * tau - 1);
          CHECK(nu < n);
        }
      }
    }
  }
}

TEST_CASE("nu_pair reads the eventual slopes") {
  auto [p, m] = nu_pair(unknot_D0());
  CHECK(p == 1);
  CHECK(m == -1);
  auto [vp, vm] = nu_pair(v_fixture());
  CHECK(vp == 1);
  CHECK(vm == 1);
  CHECK(code_of([] { nu_pair(from(0, 5, [](long n) { return n + 1; })); }) == ErrorCode::RangeTooSmall);
}

TEST_CASE("unknot F2 fixture is W-shaped with width 1") {
  auto r = f2_shape_classify(unknot_D0(), unknot_Dmu());
  CHECK(r.shape.kind == Shape::W);
  CHECK(r.shape.nu_plus == 1);
  CHECK(r.shape.nu_minus == -1);
  CHECK(r.w0 == Rational(1));
  CHECK(r.w_mu == Rational(0));
  CHECK(r.mu_shape.kind == Shape::V);
  for (const auto& c : r.checks) CHECK(c.status != "violated");
}

TEST_CASE("pure V fixture") {
  auto r = f2_shape_classify(v_fixture(), v_fixture());
  CHECK(r.shape.kind == Shape::V);
  CHECK(r.shape.nu_plus == 1);
  CHECK(r.shape.nu_minus == 1);
  CHECK(r.w0 == Rational(0));
}

TEST_CASE("V fixture with the mu bundle 2 above at an even minimum") {
  auto d0 = from(-6, 6, [](long n) { return 1 + iabs(n - 2); });
  auto dmu = from(-6, 6, [](long n) { return n == 2 ? 3L : 1 + iabs(n - 2); }, Bundle::Mu);
  auto r = f2_shape_classify(d0, dmu);
  CHECK(r.shape.kind == Shape::V);
  CHECK(r.mu_shape.kind == Shape::W);
  CHECK(r.w_mu == Rational(1));
}

TEST_CASE("constraint violations name the broken rule") {
  auto dmu = v_fixture();
  dmu.set(3, dmu.at(3) + 2);
  try {
    f2_shape_classify(v_fixture(), dmu);
    FAIL("expected a violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConstraintViolation);
    CHECK(std::string(e.what()).find("odd-bundle-equality") != std::string::npos);
  }
  auto gap = v_fixture();
  gap.set(4, gap.at(4) + 4);
  CHECK(code_of([&] { f2_shape_classify(v_fixture(), gap); }) == ErrorCode::ConstraintViolation);
  auto shortmu = from(-2, 2, [](long n) { return iabs(n); });
  CHECK(code_of([&] { f2_shape_classify(v_fixture(), shortmu); }) == ErrorCode::RangeTooSmall);
}

TEST_CASE("a sequence with nu_+ = nu_- + 1 is rejected") {
  // Flat bottom of length one: 3,2,1,1,2,3.
  auto d = from(-6, 6, [](long n) { return n <= 0 ? 1 + iabs(n) : n; });
  CHECK(code_of([&] { f2_shape_classify(d, d); }) == ErrorCode::ConstraintViolation);
}

TEST_CASE("mirroring negates and swaps nu") {
  for (auto [d0, dmu] : {std::pair{unknot_D0(), unknot_Dmu()}, std::pair{v_fixture(), v_fixture()}}) {
    auto r = f2_shape_classify(d0, dmu);
    auto m = f2_shape_classify(d0.mirrored(), dmu.mirrored());
    CHECK(m.shape.kind == r.shape.kind);
    CHECK(m.shape.nu_plus == -r.shape.nu_minus);
    CHECK(m.shape.nu_minus == -r.shape.nu_plus);
    CHECK(m.w0 == r.w0);
  }
}

// Every shape-classification that succeeds on small random-walk sequences keeps nu_+ != nu_- + 1.
TEST_CASE("classification never reports a nu gap of one") {
  long accepted = 0;
  for (unsigned seed = 0; seed < 4096; ++seed) {
    // walk: slope -1 far left, slope +1 far right, bits of seed pick the middle steps
    std::vector<long> steps(8);
    for (int i = 0; i < 8; ++i) steps[i] = ((seed >> i) & 1) ? 1 : -1;
    std::map<long, long> v;
    long val = 10;
    v[-8] = val;
    for (long n = -7; n <= 8; ++n) {
      long step = n <= -4 ? -1 : n > 4 ? 1 : steps[n + 3];
      val += step;
      v[n] = val;
    }
    LedgerSequence d;
    for (auto [n, x] : v) d.set(n, x);
    try {
      auto r = f2_shape_classify(d, d);
      ++accepted;
      CHECK(r.shape.nu_plus != r.shape.nu_minus + 1);
    } catch (const Error&) {
    }
  }
  CHECK(accepted > 0);
}

TEST_CASE("t2_monotone_check") {
  auto c = dim_seq_C(Shape::V, 1, 1, -5, 5);
  auto same = t2_monotone_check(c, c, 1);
  CHECK(same.ok);
  for (auto [n, t] : same.t2) CHECK(t == 0);
  LedgerSequence plus2;
  for (auto [n, v] : c.values) plus2.set(n, v + 2);
  auto p = t2_monotone_check(c, plus2, 1);
  CHECK(p.ok);
  for (auto [n, t] : p.t2) CHECK(t == 1);
  auto bump = c;
  bump.set(2, c.at(2) + 2);
  auto b = t2_monotone_check(c, bump, 1);
  CHECK_FALSE(b.ok);
  REQUIRE(b.first_violation.has_value());
  CHECK(*b.first_violation == 2);
  auto odd = c;
  odd.set(0, c.at(0) + 1);
  CHECK(code_of([&] { t2_monotone_check(c, odd, 1); }) == ErrorCode::ParityViolation);
}

TEST_CASE("poincare demo") {
  auto r = poincare_demo();
  CHECK(r.conditional_value == 1);
  CHECK(r.lower_bound == 3);
  CHECK(r.lens_dim == 5);
  CHECK(r.contradiction);
  CHECK(r.conclusion == "adjunction inequality fails over F2");
}

TEST_CASE("sequence CSV ingestion") {
  auto seqs = parse_sequences_csv(
      "n,value,bundle,coefficient\n"
      "-1,1,trivial,F2\n0,2,trivial,F2\n1,1,trivial,F2\n"
      "0,0,mu,F2\n# comment\n\n2,3,trivial,C\n");
  REQUIRE(seqs.size() == 3);
  CHECK(seqs[0].bundle == Bundle::Trivial);
  CHECK(seqs[0].at(0) == 2);
  CHECK(seqs[0].provenance.at(0) == "input");
  CHECK(seqs[1].bundle == Bundle::Mu);
  CHECK(seqs[2].coefficient == Coefficient::C);
  CHECK(code_of([] { parse_sequences_csv("n,value\n"); }) == ErrorCode::SyntaxError);
  try {
    parse_sequences_csv("n,value,bundle,coefficient\n1,1,trivial,F2\n2,x,trivial,F2\n");
    FAIL("expected SyntaxError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK(code_of([] { parse_sequences_csv("n,value,bundle,coefficient\n1,1,odd,F2\n"); }) ==
        ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_sequences_csv("n,value,bundle,coefficient\n1,1,mu,F2\n1,2,mu,F2\n"); }) ==
        ErrorCode::SyntaxError);
}
