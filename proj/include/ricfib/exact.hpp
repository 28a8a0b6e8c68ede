#pragma once

#include <compare>
#include <concepts>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "ricfib/errors.hpp"

namespace ricfib {

using BigInt = mpz_class;

/// Arbitrary-precision fraction, always stored reduced with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;
  template <std::integral T>
  Rational(T v) : q_(static_cast<long>(v)) {}  // NOLINT: implicit by intent
  Rational(const BigInt& num);                 // NOLINT
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(mpq_class q);

  /// Accepts "n", "n/d" and plain decimals such as "-0.125".
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return q_; }
  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational abs() const;
  Rational reciprocal() const;
  Rational pow(long exponent) const;
  double to_double() const { return q_.get_d(); }

  /// Canonical "num/den" form, e.g. "-3/2", "2/1".
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& lhs, const Rational& rhs) { return cmp(lhs.q_, rhs.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    return cmp(lhs.q_, rhs.q_) <=> 0;
  }

 private:
  mpq_class q_;
};

enum class Sign { negative = -1, zero = 0, positive = 1 };

std::string to_string(Sign s);

/// Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).
///
/// A rational-valued surd (b = 0) always carries d = 1, so it compares equal
/// to its rational part and mixes freely with any radicand. Irrational surds
/// carry d >= 2 with square factors pulled out into b.
class Surd {
 public:
  Surd() = default;
  Surd(const Rational& a);  // NOLINT
  template <std::integral T>
  Surd(T v) : Surd(Rational(v)) {}  // NOLINT
  Surd(Rational a, Rational b, const BigInt& d);

  /// The square root of a nonnegative rational, exact.
  static Surd sqrt(const Rational& x);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const BigInt& radicand() const { return d_; }
  bool is_rational() const { return b_.is_zero(); }

  Surd conjugate() const;
  /// a^2 - b^2 d, the field norm.
  Rational norm() const;
  Sign sign() const;
  Surd abs() const;
  Surd reciprocal() const;
  Surd pow(long exponent) const;

  Surd operator-() const;
  Surd& operator+=(const Surd& rhs);
  Surd& operator-=(const Surd& rhs);
  Surd& operator*=(const Surd& rhs);
  Surd& operator/=(const Surd& rhs);

  friend Surd operator+(Surd lhs, const Surd& rhs) { return lhs += rhs; }
  friend Surd operator-(Surd lhs, const Surd& rhs) { return lhs -= rhs; }
  friend Surd operator*(Surd lhs, const Surd& rhs) { return lhs *= rhs; }
  friend Surd operator/(Surd lhs, const Surd& rhs) { return lhs /= rhs; }

  friend bool operator==(const Surd& lhs, const Surd& rhs);
  friend std::strong_ordering operator<=>(const Surd& lhs, const Surd& rhs);

 private:
  void canonicalize();
  // Radicand shared by both operands; throws on incompatible fields.
  static BigInt common_radicand(const Surd& lhs, const Surd& rhs);

  Rational a_;
  Rational b_;
  BigInt d_ = 1;
};

inline Sign surd_sign(const Surd& x) { return x.sign(); }

/// Splits n > 0 as f^2 * d. Trial division runs up to 10^6; any leftover
/// cofactor that is a perfect square is absorbed into f as well.
std::pair<BigInt, BigInt> square_free_split(const BigInt& n);

/// Roots of x^2 - p x - q = 0 as (larger, smaller). Perfect-square
/// discriminants give rational-valued surds.
std::pair<Surd, Surd> quadratic_roots(const Rational& p, const Rational& q);

/// Decimal rendering rounded half away from zero to `digits` places.
std::string to_decimal(const Rational& x, int digits);
/// Same for a surd; guard digits double until the enclosure rounds uniquely.
std::string to_decimal(const Surd& x, int digits);

/// |x| < bound, decided exactly.
bool abs_less(const Surd& x, const Rational& bound);

}  // namespace ricfib
