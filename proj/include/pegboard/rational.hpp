#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace pegboard {

/// Exact fraction, always reduced with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Accepts "a", "-a", "a/b". Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  const mpq_class& value() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  Rational abs() const { return Rational(::abs(v_)); }

  mpz_class floor() const;
  mpz_class ceil() const;
  /// Throws std::overflow_error when the value does not fit.
  long floor_long() const;
  long ceil_long() const;
  long to_long() const;  // requires an integer value
  double to_double() const { return v_.get_d(); }
  std::string str() const { return v_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
mpz_class lcm(const mpz_class& a, const mpz_class& b);

}  // namespace pegboard

template <>
struct std::hash<pegboard::Rational> {
  std::size_t operator()(const pegboard::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
