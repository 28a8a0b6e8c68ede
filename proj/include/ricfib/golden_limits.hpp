#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ricfib/exact.hpp"
#include "ricfib/riccati.hpp"

namespace ricfib {

enum class Parity { standard, odd };
enum class Direction { forward, backward };

std::string to_string(Parity p);
std::string to_string(Direction d);
Parity parse_parity(std::string_view text);
Direction parse_direction(std::string_view text);

/// Coefficients of w(x+2k) = sigma r w(x+k) + s w(x), sigma = +1 (standard)
/// or -1 (odd). The ratio h = w(x)/w(x+k) then evolves by
/// h -> 1 / (sigma r + s h).
class RatioParams {
 public:
  RatioParams(Rational r, Rational s, Parity parity = Parity::standard);

  static RatioParams fibonacci() { return {1, 1, Parity::standard}; }

  const Rational& r() const { return r_; }
  const Rational& s() const { return s_; }
  Parity parity() const { return parity_; }
  int sigma() const { return parity_ == Parity::standard ? 1 : -1; }
  Rational signed_r() const { return parity_ == Parity::standard ? r_ : -r_; }

  /// The same map written as q / (sigma p + h) with p = r/s, q = 1/s.
  RiccatiParams as_riccati() const;

 private:
  Rational r_, s_;
  Parity parity_;
};

struct RatioOrbit {
  std::vector<Rational> values;     // g_0 .. g_n, truncated before a pole
  std::optional<long> pole_step;    // g_m undefined
};

RatioOrbit ratio_orbit(const RatioParams& params, const Rational& g0, long n);

/// g_n = (F_n + F_{n-1} g0) / (F_{n+1} + F_n g0) for g -> 1/(1+g).
Rational closed_form_ratio(const Rational& g0, long n);
/// General r, s through the equivalent Riccati map.
Rational closed_form_ratio(const RatioParams& params, const Rational& g0, long n);

/// Cauchy certificate for the ratio orbit seeded by f(xi) >= 0, f(xi+k) > 0:
///   M = f(xi+k) / (f(xi+k) + f(xi)),
///   c = |f(xi)^2 + f(xi) f(xi+k) - f(xi+k)^2| / ((2 f(xi+k) + f(xi)) (f(xi+k) + f(xi))),
///   Omega(n) = c / (1+M)^(n-2),
/// with N the least n >= 2 such that Omega(n) < epsilon.
struct ConvergenceCertificate {
  Rational M;
  Rational c;
  Rational epsilon;
  long N = 2;

  Rational omega(long n) const;
};

ConvergenceCertificate certificate(const Rational& f_xi, const Rational& f_xi_k, const Rational& epsilon);

/// Checks g_{n+1} - g_n = -(g_n - g_{n-1}) / ((1+g_n)(1+g_{n-1})) at every
/// interior index n = 1 .. size-2.
std::vector<bool> difference_identity_check(std::span<const Rational> orbit);

/// Positive root of x^2 - r x - s = 0.
Surd rho(const Rational& r, const Rational& s);
inline Surd golden_ratio() { return rho(1, 1); }

struct LimitEstimate {
  Rational ratio;   // w(x+k)/w(x) at the last step
  Surd predicted;   // dominant root in the chosen direction
  Surd claimed;     // the +-rho usually quoted for this direction
  long steps = 0;

  bool agrees() const { return predicted == claimed; }
};

/// Iterates the linear recurrence from seed (w_0, w_1) for n steps, forward
/// (ratio w_{n+1}/w_n) or backward (ratio w_{1-n}/w_{-n}). Forward targets
/// are rho (standard) and -rho (odd); backward targets are the root of
/// smallest modulus, r - rho (standard) and rho - r (odd).
LimitEstimate limit_estimate(const RatioParams& params, const Rational& w0, const Rational& w1,
                             Direction direction, long n);

/// m-term truncation of [0; 1, 1, 1, ...].
Rational cf_convergent(long m);

struct NestingEntry {
  long n = 0;
  Rational g;
  bool equals_convergent = false;  // g_n == F_n / F_{n+1}
  bool brackets_limit = false;     // phi - 1 strictly between g_{n-1} and g_n
};

struct NestingReport {
  std::vector<Rational> g_values;  // g_0 .. g_{n_max}
  std::vector<NestingEntry> checks;  // n = 1 .. n_max
  bool all_pass() const;
};

/// Canonical orbit g_0 = 0 of g -> 1/(1+g) against the Fibonacci convergents.
NestingReport nesting_check(long n_max);

}  // namespace ricfib
