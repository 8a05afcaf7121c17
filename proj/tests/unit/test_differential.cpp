#include "doctest.h"
#include "pegboard/differential.hpp"
#include "pegboard/errors.hpp"
#include "pegboard/zoo.hpp"

using namespace pegboard;

namespace {

const char* const kKnots[] = {"unknot", "trefoil", "mirror-trefoil", "figure-eight", "torus-2-5",
                              "torus-3-4"};

std::vector<SlopeSpec> slopes(long pmax, long qmax, bool positive_only) {
  std::vector<SlopeSpec> out;
  for (long q = 1; q <= qmax; ++q) {
    for (long p = positive_only ? 1 : -pmax; p <= pmax; ++p) {
      if (p != 0 && std::gcd(p < 0 ? -p : p, q) == 1) out.push_back(SlopeSpec{p, q});
    }
  }
  return out;
}

long total_rank(const std::vector<DiffMatrix>& ms) {
  long r = 0;
  for (const auto& m : ms) r += m.rank;
  return r;
}

// Rank by brute force: the largest number of linearly independent rows, found by trying
// every subset of rows for a nonzero XOR. Only for tiny matrices.
long brute_rank(const F2Matrix& m) {
  const std::size_t n = m.size();
  long best = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    bool independent = true;
    for (unsigned sub = mask; sub && independent; sub = (sub - 1) & mask) {
      std::vector<std::uint8_t> acc(m.empty() ? 0 : m[0].size(), 0);
      for (std::size_t i = 0; i < n; ++i) {
        if (sub >> i & 1) {
          for (std::size_t j = 0; j < acc.size(); ++j) acc[j] ^= m[i][j];
        }
      }
      if (std::all_of(acc.begin(), acc.end(), [](auto v) { return v == 0; })) independent = false;
    }
    if (independent) best = std::max<long>(best, __builtin_popcount(mask));
  }
  return best;
}

}  // namespace

TEST_CASE("F2 rank agrees with subset enumeration") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = rng() % 6, cols = rng() % 6 + 1;
    F2Matrix m(rows, std::vector<std::uint8_t>(cols));
    for (auto& r : m) {
      for (auto& v : r) v = rng() & 1;
    }
    CHECK(rank_f2(m) == brute_rank(m));
  }
  CHECK(rank_f2({}) == 0);
}

TEST_CASE("markers sit on opposite sides of the arc line") {
  const auto d = build_zoo("trefoil");
  const SlopeSpec s{3, 2};
  const Point P{Rational(1), Rational(1, 2)};
  const auto m = place_markers(d, s, P);
  const Point dir = s.direction();
  CHECK(cross(dir, m.z - P).sign() > 0);
  CHECK(cross(dir, m.w - P).sign() < 0);
  CHECK(m.z + m.w == P + P);
}

TEST_CASE("differential matrix examples") {
  const auto u = unknot();
  for (auto kind : {DiffKind::Phi, DiffKind::Psi}) {
    const auto m = differential_matrix(u, SlopeSpec{1, 1}, Rational(0), kind);
    CHECK(m.sources.size() == 1);
    CHECK(m.targets.empty());
    CHECK(m.rank == 0);
  }
  const auto t = build_zoo("trefoil");
  const auto phi = differential_matrix(t, SlopeSpec{1, 1}, Rational(1), DiffKind::Phi);
  CHECK(phi.rank == 1);
  CHECK(phi.target_grading == Rational(0));
  for (const auto& b : phi.bigons) {
    CHECK(b.n_z == 1);
    CHECK(b.n_w == 0);
  }
  const auto top5 = differential_matrix(t, SlopeSpec{5, 1}, Rational(3), DiffKind::Phi);
  CHECK(top5.sources.size() == 1);
  CHECK(top5.rank == 0);
  CHECK_THROWS_AS(differential_matrix(t, SlopeSpec{2, 1}, Rational(0), DiffKind::Phi), Error);
  CHECK_THROWS_AS(differential_matrix(t, SlopeSpec{0, 1}, Rational(0), DiffKind::Psi), Error);
}

TEST_CASE("census bound examples") {
  const auto u = census_bounds(unknot(), SlopeSpec{1, 1});
  CHECK(u.phi.empty());
  CHECK(u.psi.empty());
  const auto t = build_zoo("trefoil");
  const auto b1 = census_bounds(t, SlopeSpec{1, 1});
  CHECK(b1.phi_at(Rational(1)) == 1);
  CHECK(b1.psi_at(Rational(-1)) == 1);
  CHECK_FALSE(b1.exception);
  const auto b7 = census_bounds(t, SlopeSpec{7, 1});
  CHECK(b7.phi.empty());
  CHECK(b7.psi.empty());
  CHECK(b7.exception);
  const auto m = census_bounds(build_zoo("mirror-trefoil"), SlopeSpec{-3, 1});
  CHECK(m.exception);
  const auto f = census_bounds(build_zoo("figure-eight"), SlopeSpec{2, 1});
  CHECK(f.phi_at(Rational(3, 2)) == 1);
  CHECK(f.psi_at(Rational(-3, 2)) == 1);
}

TEST_CASE("differential ranks dominate the census bounds") {
  for (const char* name : kKnots) {
    const auto d = build_zoo(name);
    for (const auto& s : slopes(5, 3, false)) {
      const auto bound = census_bounds(d, s);
      CAPTURE(name);
      CAPTURE(s.str());
      for (const auto& m : all_differentials(d, s, DiffKind::Phi)) {
        CHECK(m.rank >= bound.phi_at(m.source_grading));
      }
      for (const auto& m : all_differentials(d, s, DiffKind::Psi)) {
        CHECK(m.rank >= bound.psi_at(m.source_grading));
      }
    }
  }
}

TEST_CASE("top grading kernel of Phi is at most one-dimensional") {
  for (const char* name : kKnots) {
    const auto d = build_zoo(name);
    for (const auto& s : slopes(5, 3, false)) {
      const auto ms = all_differentials(d, s, DiffKind::Phi);
      REQUIRE_FALSE(ms.empty());
      CAPTURE(name);
      CAPTURE(s.str());
      CHECK(ms.back().kernel_dim() <= 1);
    }
  }
  const auto t7 = all_differentials(build_zoo("trefoil"), SlopeSpec{7, 1}, DiffKind::Phi);
  CHECK(t7.back().kernel_dim() == 1);
}

TEST_CASE("Phi and Psi have equal total rank") {
  for (const char* name : kKnots) {
    const auto d = build_zoo(name);
    for (const auto& s : slopes(5, 3, false)) {
      CHECK(total_rank(all_differentials(d, s, DiffKind::Phi)) ==
            total_rank(all_differentials(d, s, DiffKind::Psi)));
    }
  }
}

TEST_CASE("spectral inequality") {
  const auto t = spectral_check(build_zoo("trefoil"), SlopeSpec{1, 1});
  CHECK(t.dual_total == 3);
  CHECK(t.rank_psi == 1);
  CHECK(t.surgery == 1);
  CHECK(t.equality());
  CHECK(spectral_check(unknot(), SlopeSpec{1, 1}).equality());
  CHECK(spectral_check(build_zoo("figure-eight"), SlopeSpec{1, 1}).holds());
  for (const char* name : kKnots) {
    const auto d = build_zoo(name);
    for (const auto& s : slopes(5, 3, false)) {
      const auto r = spectral_check(d, s);
      CHECK(r.holds());
      if (is_lspace_slope(d, s)) CHECK(r.equality());
    }
  }
}

TEST_CASE("L-space slopes") {
  CHECK(is_lspace_slope(unknot(), SlopeSpec{3, 2}));
  CHECK(is_lspace_slope(build_zoo("trefoil"), SlopeSpec{5, 1}));
  CHECK_FALSE(is_lspace_slope(build_zoo("figure-eight"), SlopeSpec{1, 1}));
  CHECK_THROWS_AS(is_lspace_slope(unknot(), SlopeSpec{0, 1}), Error);
}

TEST_CASE("dually simple slope scan") {
  CHECK(dually_simple_scan(build_zoo("figure-eight"), 8, 4).empty());
  const auto t = dually_simple_scan(build_zoo("trefoil"), 8, 4);
  std::vector<SlopeSpec> expect;
  for (const auto& s : slopes(8, 4, true)) {
    if (s.value() > Rational(1)) expect.push_back(s);
  }
  std::sort(expect.begin(), expect.end());
  REQUIRE(t.size() == expect.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(t[i].slope == expect[i]);
    CHECK_FALSE(t[i].violation());
    CHECK(t[i].surgery == t[i].slope.p);
  }
  CHECK(dually_simple_scan(unknot(), 3, 2).size() == slopes(3, 2, false).size());
  CHECK_THROWS_AS(dually_simple_scan(unknot(), 0, 1), Error);
}
