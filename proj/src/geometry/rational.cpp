#include "pegboard/rational.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

#include "pegboard/errors.hpp"

namespace pegboard {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CollinearOverlap: return "CollinearOverlap";
    case ErrorCode::PointOnLoop: return "PointOnLoop";
    case ErrorCode::UnboundedQuery: return "UnboundedQuery";
    case ErrorCode::AmbiguousHeight: return "AmbiguousHeight";
    case ErrorCode::BadAlexander: return "BadAlexander";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::DegenerateIncidence: return "DegenerateIncidence";
    case ErrorCode::GradingOutOfRange: return "GradingOutOfRange";
    case ErrorCode::ZeroSurgery: return "ZeroSurgery";
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::UndefinedAtZero: return "UndefinedAtZero";
    case ErrorCode::VacuousBound: return "VacuousBound";
    case ErrorCode::InconsistentInputs: return "InconsistentInputs";
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::RangeTooSmall: return "RangeTooSmall";
    case ErrorCode::TrivialAlexander: return "TrivialAlexander";
    case ErrorCode::EvenDeterminant: return "EvenDeterminant";
    case ErrorCode::ParityViolation: return "ParityViolation";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
  }
  return "Unknown";
}

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

long checked_long(const mpz_class& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer out of range: " + z.get_str());
  return z.get_si();
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  std::string_view n = text.substr(0, slash);
  std::string_view d = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(n, true) || !valid_integer(d, false)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  std::string ns(n);
  if (!ns.empty() && ns[0] == '+') ns.erase(0, 1);
  mpz_class num(ns, 10);
  mpz_class den(std::string(d), 10);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(mpq_class(num, den));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  v_ /= o.v_;
  return *this;
}

mpz_class Rational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return r;
}

mpz_class Rational::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return r;
}

long Rational::floor_long() const { return checked_long(floor()); }
long Rational::ceil_long() const { return checked_long(ceil()); }

long Rational::to_long() const {
  if (!is_integer()) throw std::domain_error("not an integer: " + str());
  return checked_long(num());
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace pegboard
