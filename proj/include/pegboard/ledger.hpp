#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pegboard/rational.hpp"

namespace pegboard::ledger {

enum class Bundle { Trivial, Mu };
enum class Coefficient { C, F2 };

std::string to_string(Bundle b);
std::string to_string(Coefficient c);

/// Surgery dimensions indexed by the integer framing n.
struct LedgerSequence {
  std::map<long, long> values;
  Bundle bundle = Bundle::Trivial;
  Coefficient coefficient = Coefficient::C;
  std::map<long, std::string> provenance;  // "input" or "derived:<rule>"

  /// Throws RangeTooSmall when n is outside the recorded range.
  long at(long n) const;
  bool has(long n) const { return values.count(n) != 0; }
  long lo() const;
  long hi() const;
  void set(long n, long v, std::string prov = "input");
  /// n -> -n; the sequence of the mirror knot.
  LedgerSequence mirrored() const;
};

enum class Shape { V, W, GeneralizedW };
std::string to_string(Shape s);

struct ShapeClass {
  Shape kind = Shape::V;
  long nu_plus = 0;
  long nu_minus = 0;
  Rational width() const { return Rational(nu_plus - nu_minus, 2); }
};

struct TorsionCertificate {
  std::string target;
  long lower_bound = 0;
  std::string rule;
  std::map<std::string, long> inputs;
  std::vector<std::string> notes;
};

/// Recomputes the bound from the stored inputs with the named rule.
long revalidate(const TorsionCertificate& c);

// ---- dimension sequences over C ----

/// V: D(n) = base + |n - nu|. W: requires nu = 0 (BadShape); D(0) = base + 2 and
/// D(n) = base + |n| otherwise, with base the 0-surgery dimension twisted by mu.
LedgerSequence dim_seq_C(Shape shape, long nu_sharp, long base, long lo, long hi);

/// Dimension of (2n-1)/2 surgery from D_n: 2 D_n - 1 when nu < n, else 2 D_n + 1.
/// Throws UndefinedAtZero for n = 0 with nu = 0.
long half_dim_C(long n, long nu_sharp, long D_n);

/// Unimodal sequence min_value + |n - 2 tau| of dual-knot dimensions.
LedgerSequence dgamma_seq(long tau_I, long min_value, long lo, long hi);

// ---- certificates ----

/// (2n-1)/2 surgery carries at least 2 k_n - 1 copies of Z/2. VacuousBound for k_n = 0.
TorsionCertificate torsion_bound_half(long n, long k_n);

struct DualOneBounds {
  long khi_lower = 0;
  TorsionCertificate cert;
};

/// Dual knot of +1 surgery: KHI >= dim + 2 D_top, 2-torsion >= 2 D_top - 1.
DualOneBounds dual_one_bounds(long D_top, long dim_I1_C);

struct GenusOneReport {
  std::vector<long> khi_dims;  // gradings 1, 0, -1; the middle entry is a lower bound
  long isharp1_dim = 0;
  long isharp_upper = 0;
  TorsionCertificate cert;
};

/// Genus-one knot with Alexander polynomial a t + (1 - 2a) + a t^-1.
/// TrivialAlexander for a = 0.
GenusOneReport genus_one_report(long a, long tau_I, long D_top);

struct UnknottingOneReport {
  long isharp_upper = 0;
  TorsionCertificate cert;
};

UnknottingOneReport unknotting_one_check(long dim_KHI);

struct QuasiAltGroups {
  long free_rank = 0;
  long torsion_2 = 0;
  long reduced_free_rank = 0;

  std::string unreduced() const;
  std::string reduced() const;
};

/// Singular instanton homology of a quasi-alternating knot of determinant delta.
/// EvenDeterminant for even delta.
QuasiAltGroups quasi_alt(long delta);

bool triangle_check(long a, long b, long c);

struct SlopeRegion {
  bool certified = false;
  long lower = 0;  // region p/q >= lower when certified
  std::string statement;
};

SlopeRegion slope_propagation(long n, bool minimal_at_n);

// ---- consequences of vanishing 2-torsion ----

struct NoTorsionVerdict {
  bool consistent = false;
  std::string branch;  // descriptive branch id
  std::string reason;
  std::vector<std::string> consequences;
};

/// Case analysis for a knot whose n-surgery has no 2-torsion. For n > 0 the knot is then
/// dually Floer simple at n and the branches are split by shape, nu and tau.
/// InconsistentInputs when (nu, tau) is not (0, 0) or nu = 2 tau +- 1, or when a W shape
/// has nu != 0.
NoTorsionVerdict no_torsion_consequence(long n, Shape shape, long nu_sharp, long tau_I);

// ---- F2 sequences ----

struct ConstraintCheck {
  std::string rule;
  long n = 0;
  std::string status;  // "ok", "violated" or "unconstrained"
  std::string detail;
};

struct ShapeReport {
  ShapeClass shape;
  ShapeClass mu_shape;
  Rational w0;
  Rational w_mu;
  std::vector<ConstraintCheck> checks;
};

/// Classifies the F2 sequences without and with the mu bundle. Throws ConstraintViolation
/// naming the rule on the first violated constraint and RangeTooSmall when the range does
/// not show both eventual unit slopes.
ShapeReport f2_shape_classify(const LedgerSequence& D0, const LedgerSequence& Dmu);

/// nu_+ and nu_- of one sequence. RangeTooSmall when the range does not settle them.
std::pair<long, long> nu_pair(const LedgerSequence& D);

struct T2Report {
  std::map<long, long> t2;
  bool ok = true;
  std::optional<long> first_violation;
};

/// t2(n) = (F2 - C)/2 must not increase for n >= nu. ParityViolation when F2 - C is odd
/// or negative.
T2Report t2_monotone_check(const LedgerSequence& seqC, const LedgerSequence& seqF2, long nu_sharp);

// ---- Poincare sphere ----

struct PoincareReport {
  std::vector<std::string> steps;
  long lens_dim = 5;
  long conditional_value = 0;
  long lower_bound = 3;
  bool contradiction = false;
  std::string conclusion;
};

PoincareReport poincare_demo();

// ---- ingestion ----

/// CSV with header "n,value,bundle,coefficient". One sequence per (bundle, coefficient)
/// pair, in first-seen order. SyntaxError with the line number on malformed rows.
std::vector<LedgerSequence> parse_sequences_csv(std::string_view text);

}  // namespace pegboard::ledger
