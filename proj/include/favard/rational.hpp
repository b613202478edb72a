#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace favard {

/// Exact rational number in canonical form (denominator > 0, gcd = 1).
///
/// Thin value wrapper around GMP's mpq_class. Every constructor and every
/// arithmetic result is canonicalized, so structural equality is numeric
/// equality and `str()` is a unique spelling.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }
  explicit Rational(mpq_class&& v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "p/q", an integer, or a finite decimal ("0.125", "-3.5e-2").
  /// Throws MalformedInput on anything else.
  static Rational parse(std::string_view text);

  /// Exact value of a binary64 (every finite double is a dyadic rational).
  static Rational from_double(double x);

  /// Best rational approximation with denominator <= max_den
  /// (continued fractions with semiconvergents).
  static Rational best_approximation(double x, std::int64_t max_den);
  static Rational best_approximation(const Rational& x, std::int64_t max_den);

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const { return v_.get_str(); }
  double to_double() const { return v_.get_d(); }

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  /// Exact square root when both numerator and denominator are perfect
  /// squares; nullopt otherwise (or for negative values).
  std::optional<Rational> exact_sqrt() const;

  /// this^k for integer k (k < 0 requires a nonzero value).
  Rational pow(long k) const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_{0};
};

Rational abs(const Rational& x);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Least common multiple of two positive integers.
mpz_class lcm(const mpz_class& a, const mpz_class& b);

}  // namespace favard
