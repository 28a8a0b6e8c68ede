#include "ricfib/exact.hpp"

#include <cctype>

namespace ricfib {

namespace {

constexpr unsigned long kTrialDivisionLimit = 1000000;

BigInt pow10(unsigned long e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, e);
  return out;
}

BigInt isqrt(const BigInt& n) {
  BigInt out;
  mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
  return out;
}

BigInt floor_of(const Rational& x) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), x.raw().get_num_mpz_t(), x.raw().get_den_mpz_t());
  return out;
}

BigInt round_half_away(const Rational& x) {
  const Rational half(1, 2);
  if (x.sign() < 0) return -floor_of(-x + half);
  return floor_of(x + half);
}

std::string format_scaled(const BigInt& scaled, int digits) {
  std::string body = BigInt(abs(scaled)).get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  return (scaled < 0 ? "-" : "") + body;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  if (!all_digits(body)) throw ParseError("malformed rational: '" + std::string(whole) + "'");
  std::string s(text.front() == '+' ? text.substr(1) : text);
  return BigInt(s, 10);
}

}  // namespace

// --- Rational ---------------------------------------------------------------

Rational::Rational(const BigInt& num) : q_(num) {}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) {
  if (q_.get_den() == 0) throw DomainError("rational with zero denominator");
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational");
  const std::string_view whole = text;

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), whole);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw ParseError("malformed rational: '" + std::string(whole) + "'");
    BigInt den(std::string(den_text), 10);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(whole) + "'");
    return Rational(num, den);
  }

  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    const Rational mantissa = parse(text.substr(0, e));
    std::string_view exp_text = text.substr(e + 1);
    if (exp_text.empty() || exp_text.front() == ' ') throw ParseError("malformed exponent: '" + std::string(whole) + "'");
    const BigInt exponent = parse_integer(exp_text, whole);
    if (::abs(exponent) > 100000) throw ParseError("exponent out of range: '" + std::string(whole) + "'");
    const long shift = exponent.get_si();
    return shift >= 0 ? mantissa * Rational(pow10(static_cast<std::size_t>(shift)))
                      : mantissa / Rational(pow10(static_cast<std::size_t>(-shift)));
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = false;
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      negative = int_part.front() == '-';
      int_part.remove_prefix(1);
    }
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw ParseError("malformed decimal: '" + std::string(whole) + "'");
    }
    std::string digits = std::string(int_part) + std::string(frac_part);
    BigInt num(digits.empty() ? "0" : digits, 10);
    Rational out(num, pow10(frac_part.size()));
    return negative ? -out : out;
  }

  return Rational(parse_integer(text, whole));
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::reciprocal() const {
  if (is_zero()) throw DomainError("reciprocal of zero");
  return Rational(mpq_class(q_.get_den(), q_.get_num()));
}

Rational Rational::pow(long exponent) const {
  if (exponent < 0) return reciprocal().pow(-exponent);
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Rational out;
  out.q_ = mpq_class(num, den);  // already coprime
  return out;
}

std::string Rational::str() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }

Rational Rational::operator-() const {
  Rational out;
  out.q_ = -q_;
  return out;
}

Rational& Rational::operator+=(const Rational& rhs) {
  q_ += rhs.q_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  q_ -= rhs.q_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  q_ *= rhs.q_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  q_ /= rhs.q_;
  return *this;
}

std::string to_string(Sign s) {
  switch (s) {
    case Sign::negative: return "negative";
    case Sign::zero: return "zero";
    case Sign::positive: return "positive";
  }
  return "zero";
}

// --- square-free splitting ----------------------------------------------------

std::pair<BigInt, BigInt> square_free_split(const BigInt& n) {
  if (n <= 0) throw DomainError("square-free split of a non-positive integer");
  BigInt rest = n;
  BigInt square_part = 1;
  BigInt free_part = 1;
  auto strip = [&](unsigned long prime) {
    unsigned count = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), prime)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), prime);
      ++count;
    }
    for (unsigned i = 0; i + 1 < count; i += 2) square_part *= prime;
    if (count % 2 == 1) free_part *= prime;
  };
  strip(2);
  for (unsigned long f = 3; f <= kTrialDivisionLimit; f += 2) {
    if (BigInt(f) * f > rest) break;
    strip(f);
  }
  if (rest > 1) {
    if (mpz_perfect_square_p(rest.get_mpz_t())) {
      square_part *= isqrt(rest);
    } else {
      free_part *= rest;
    }
  }
  return {square_part, free_part};
}

// --- Surd ---------------------------------------------------------------------

Surd::Surd(const Rational& a) : a_(a) {}

Surd::Surd(Rational a, Rational b, const BigInt& d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (d_ <= 0) throw DomainError("surd radicand must be positive");
  canonicalize();
}

void Surd::canonicalize() {
  if (b_.is_zero()) {
    d_ = 1;
    return;
  }
  auto [square, free] = square_free_split(d_);
  b_ *= Rational(square);
  d_ = free;
  if (d_ == 1) {
    a_ += b_;
    b_ = Rational();
  }
}

Surd Surd::sqrt(const Rational& x) {
  if (x.sign() < 0) throw DomainError("square root of a negative rational");
  if (x.is_zero()) return Surd();
  // sqrt(n/m) = sqrt(n*m)/m
  BigInt den = x.denominator();
  auto [square, free] = square_free_split(x.numerator() * den);
  if (free == 1) return Surd(Rational(square, den));
  Surd out;
  out.b_ = Rational(square, den);
  out.d_ = free;
  return out;
}

BigInt Surd::common_radicand(const Surd& lhs, const Surd& rhs) {
  if (lhs.is_rational()) return rhs.d_;
  if (rhs.is_rational()) return lhs.d_;
  if (lhs.d_ != rhs.d_) {
    throw DomainError("incompatible radicands " + lhs.d_.get_str() + " and " + rhs.d_.get_str());
  }
  return lhs.d_;
}

Surd Surd::conjugate() const {
  Surd out = *this;
  out.b_ = -out.b_;
  return out;
}

Rational Surd::norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }

Sign Surd::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return static_cast<Sign>(sa);
  if (sa == 0 || sa == sb) return static_cast<Sign>(sb);
  // Opposite signs: the term with the larger square dominates.
  const Rational a2 = a_ * a_;
  const Rational b2d = b_ * b_ * Rational(d_);
  if (a2 > b2d) return static_cast<Sign>(sa);
  if (a2 < b2d) return static_cast<Sign>(sb);
  return Sign::zero;  // unreachable for square-free d >= 2
}

Surd Surd::abs() const { return sign() == Sign::negative ? -*this : *this; }

Surd Surd::reciprocal() const {
  if (sign() == Sign::zero) throw DomainError("division by zero surd");
  const Rational n = norm();
  Surd out = conjugate();
  out.a_ /= n;
  out.b_ /= n;
  return out;
}

Surd Surd::pow(long exponent) const {
  if (exponent < 0) return reciprocal().pow(-exponent);
  Surd result(1);
  Surd base = *this;
  auto e = static_cast<unsigned long>(exponent);
  while (e > 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

Surd Surd::operator-() const {
  Surd out = *this;
  out.a_ = -out.a_;
  out.b_ = -out.b_;
  return out;
}

Surd& Surd::operator+=(const Surd& rhs) {
  d_ = common_radicand(*this, rhs);
  a_ += rhs.a_;
  b_ += rhs.b_;
  if (b_.is_zero()) d_ = 1;
  return *this;
}

Surd& Surd::operator-=(const Surd& rhs) { return *this += -rhs; }

Surd& Surd::operator*=(const Surd& rhs) {
  const BigInt d = common_radicand(*this, rhs);
  const Rational a = a_ * rhs.a_ + b_ * rhs.b_ * Rational(d);
  const Rational b = a_ * rhs.b_ + b_ * rhs.a_;
  a_ = a;
  b_ = b;
  d_ = b_.is_zero() ? BigInt(1) : d;
  return *this;
}

Surd& Surd::operator/=(const Surd& rhs) {
  common_radicand(*this, rhs);
  return *this *= rhs.reciprocal();
}

bool operator==(const Surd& lhs, const Surd& rhs) {
  if (lhs.a_ != rhs.a_ || lhs.b_ != rhs.b_) return false;
  return lhs.is_rational() || lhs.d_ == rhs.d_;
}

std::strong_ordering operator<=>(const Surd& lhs, const Surd& rhs) {
  return static_cast<int>((lhs - rhs).sign()) <=> 0;
}

// --- free functions -----------------------------------------------------------

std::pair<Surd, Surd> quadratic_roots(const Rational& p, const Rational& q) {
  const Rational disc = p * p + Rational(4) * q;
  if (disc.sign() <= 0) {
    throw DomainError("discriminant p^2 + 4q = " + disc.str() + " is not positive");
  }
  const Surd root = Surd::sqrt(disc);
  const Rational half(1, 2);
  return {(Surd(p) + root) * Surd(half), (Surd(p) - root) * Surd(half)};
}

std::string to_decimal(const Rational& x, int digits) {
  if (digits < 0) throw DomainError("negative digit count");
  const BigInt scaled = round_half_away(x * Rational(pow10(static_cast<unsigned long>(digits))));
  return format_scaled(scaled, digits);
}

std::string to_decimal(const Surd& x, int digits) {
  if (x.is_rational()) return to_decimal(x.a(), digits);
  if (digits < 0) throw DomainError("negative digit count");
  for (unsigned long guard = 4;; guard *= 2) {
    const BigInt fine = pow10(static_cast<unsigned long>(digits) + guard);
    // |b sqrt(d)| * fine lies in [m, m + 1).
    const Rational b_scaled = x.b() * Rational(fine);
    const BigInt m = isqrt(floor_of(b_scaled * b_scaled * Rational(x.radicand())));
    const Rational a_scaled = x.a() * Rational(fine);
    Rational lo, hi;
    if (x.b().sign() > 0) {
      lo = a_scaled + Rational(m);
      hi = a_scaled + Rational(BigInt(m + 1));
    } else {
      lo = a_scaled - Rational(BigInt(m + 1));
      hi = a_scaled - Rational(m);
    }
    const Rational coarse = Rational(pow10(guard));
    const BigInt r_lo = round_half_away(lo / coarse);
    const BigInt r_hi = round_half_away(hi / coarse);
    if (r_lo == r_hi) return format_scaled(r_lo, digits);
  }
}

bool abs_less(const Surd& x, const Rational& bound) {
  return (Surd(bound) - x).sign() == Sign::positive && (Surd(bound) + x).sign() == Sign::positive;
}

}  // namespace ricfib
