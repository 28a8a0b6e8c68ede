#include "ricfib/golden_limits.hpp"

#include "ricfib/horadam.hpp"

namespace ricfib {

std::string to_string(Parity p) { return p == Parity::standard ? "standard" : "odd"; }
std::string to_string(Direction d) { return d == Direction::forward ? "forward" : "backward"; }

Parity parse_parity(std::string_view text) {
  if (text == "standard") return Parity::standard;
  if (text == "odd") return Parity::odd;
  throw ParseError("unknown parity '" + std::string(text) + "' (expected standard|odd)");
}

Direction parse_direction(std::string_view text) {
  if (text == "forward") return Direction::forward;
  if (text == "backward") return Direction::backward;
  throw ParseError("unknown direction '" + std::string(text) + "' (expected forward|backward)");
}

RatioParams::RatioParams(Rational r, Rational s, Parity parity)
    : r_(std::move(r)), s_(std::move(s)), parity_(parity) {
  if (r_.sign() <= 0 || s_.sign() <= 0) throw DomainError("ratio dynamics need r > 0 and s > 0");
}

RiccatiParams RatioParams::as_riccati() const {
  return {r_ / s_, s_.reciprocal(), parity_ == Parity::standard ? Branch::plus : Branch::minus};
}

RatioOrbit ratio_orbit(const RatioParams& params, const Rational& g0, long n) {
  if (n < 0) throw DomainError("orbit length must be nonnegative");
  RatioOrbit orbit;
  orbit.values.reserve(static_cast<std::size_t>(n) + 1);
  orbit.values.push_back(g0);
  const Rational shift = params.signed_r();
  for (long m = 1; m <= n; ++m) {
    const Rational den = shift + params.s() * orbit.values.back();
    if (den.is_zero()) {
      orbit.pole_step = m;
      break;
    }
    orbit.values.push_back(den.reciprocal());
  }
  return orbit;
}

Rational closed_form_ratio(const Rational& g0, long n) {
  return closed_form_term(RiccatiParams(1, 1, Branch::plus), g0, n);
}

Rational closed_form_ratio(const RatioParams& params, const Rational& g0, long n) {
  return closed_form_term(params.as_riccati(), g0, n);
}

Rational ConvergenceCertificate::omega(long n) const { return c / (Rational(1) + M).pow(n - 2); }

ConvergenceCertificate certificate(const Rational& f_xi, const Rational& f_xi_k, const Rational& epsilon) {
  if (f_xi_k.sign() <= 0) throw DomainError("certificate needs f(xi+k) > 0");
  if (f_xi.sign() < 0) throw DomainError("certificate needs f(xi) >= 0");
  if (epsilon.sign() <= 0) throw DomainError("certificate needs epsilon > 0");
  ConvergenceCertificate cert;
  cert.epsilon = epsilon;
  const Rational sum = f_xi_k + f_xi;
  cert.M = f_xi_k / sum;
  cert.c = (f_xi * f_xi + f_xi * f_xi_k - f_xi_k * f_xi_k).abs() / ((Rational(2) * f_xi_k + f_xi) * sum);
  // Omega is strictly decreasing, so the first hit is minimal.
  const Rational ratio = (Rational(1) + cert.M).reciprocal();
  Rational omega = cert.c;
  cert.N = 2;
  while (omega >= epsilon) {
    omega *= ratio;
    ++cert.N;
  }
  return cert;
}

std::vector<bool> difference_identity_check(std::span<const Rational> orbit) {
  std::vector<bool> out;
  if (orbit.size() < 3) return out;
  out.reserve(orbit.size() - 2);
  const Rational one(1);
  for (std::size_t n = 1; n + 1 < orbit.size(); ++n) {
    const Rational& prev = orbit[n - 1];
    const Rational& cur = orbit[n];
    const Rational& next = orbit[n + 1];
    const Rational den = (one + cur) * (one + prev);
    out.push_back(!den.is_zero() && next - cur == -(cur - prev) / den);
  }
  return out;
}

Surd rho(const Rational& r, const Rational& s) {
  if (r.sign() <= 0 || s.sign() <= 0) throw DomainError("rho needs r > 0 and s > 0");
  return quadratic_roots(r, s).first;
}

LimitEstimate limit_estimate(const RatioParams& params, const Rational& w0, const Rational& w1,
                             Direction direction, long n) {
  if (n < 1) throw DomainError("limit estimate needs at least one step");
  const Rational sr = params.signed_r();
  const Rational& s = params.s();
  Rational lo = w0, hi = w1;
  for (long i = 0; i < n; ++i) {
    if (direction == Direction::forward) {
      Rational next = sr * hi + s * lo;
      if (next.is_zero()) throw DomainError("vanishing term at index " + std::to_string(i + 2));
      lo = std::move(hi);
      hi = std::move(next);
    } else {
      Rational prev = (hi - sr * lo) / s;
      if (prev.is_zero()) throw DomainError("vanishing term at index " + std::to_string(-(i + 1)));
      hi = std::move(lo);
      lo = std::move(prev);
    }
  }
  if (lo.is_zero()) throw DomainError("vanishing term in the final ratio");

  LimitEstimate est;
  est.ratio = hi / lo;
  est.steps = n;
  const Surd root = rho(params.r(), params.s());
  const Surd signed_root = params.parity() == Parity::standard ? root : -root;
  if (direction == Direction::forward) {
    est.predicted = signed_root;
    est.claimed = signed_root;
  } else {
    // The other root of x^2 - sigma r x - s = 0.
    est.predicted = Surd(sr) - signed_root;
    est.claimed = -signed_root;
  }
  return est;
}

Rational cf_convergent(long m) {
  if (m < 1) throw DomainError("convergent index must be positive");
  Rational value(1);
  for (long i = 1; i < m; ++i) value = (Rational(1) + value).reciprocal();
  return value;
}

bool NestingReport::all_pass() const {
  for (const auto& entry : checks) {
    if (!entry.equals_convergent || !entry.brackets_limit) return false;
  }
  return true;
}

NestingReport nesting_check(long n_max) {
  if (n_max < 1) throw DomainError("nesting check needs n_max >= 1");
  NestingReport report;
  const RatioOrbit orbit = ratio_orbit(RatioParams::fibonacci(), 0, n_max);
  report.g_values = orbit.values;
  const SequenceWindow fib = horadam_window(RecurrenceParams::fibonacci(), 0, static_cast<std::size_t>(n_max) + 2);
  const Surd limit = golden_ratio() - Surd(1);
  for (long n = 1; n <= n_max; ++n) {
    const Rational& prev = orbit.values[static_cast<std::size_t>(n - 1)];
    const Rational& cur = orbit.values[static_cast<std::size_t>(n)];
    NestingEntry entry;
    entry.n = n;
    entry.g = cur;
    entry.equals_convergent = cur == fib.at(n) / fib.at(n + 1);
    const Sign below = (limit - Surd(prev)).sign();
    const Sign above = (Surd(cur) - limit).sign();
    entry.brackets_limit = below != Sign::zero && below == above;
    report.checks.push_back(std::move(entry));
  }
  return report;
}

}  // namespace ricfib
