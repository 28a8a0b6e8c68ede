#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ricfib/exact.hpp"

namespace ricfib {

enum class Branch { plus, minus };

std::string to_string(Branch b);
Branch parse_branch(std::string_view text);

/// The map x -> q / (sigma p + x) with p, q > 0 and sigma = +1 (plus) or -1
/// (minus).
class RiccatiParams {
 public:
  RiccatiParams(Rational p, Rational q, Branch branch);

  const Rational& p() const { return p_; }
  const Rational& q() const { return q_; }
  Branch branch() const { return branch_; }
  int sigma() const { return branch_ == Branch::plus ? 1 : -1; }

  /// The signed shift sigma p.
  Rational shift() const { return branch_ == Branch::plus ? p_ : -p_; }
  /// The single point where the map is undefined, -sigma p.
  Rational pole() const { return -shift(); }

  /// One step of the map; throws DomainError at the pole.
  Rational apply(const Rational& x) const;
  Surd apply(const Surd& x) const;

 private:
  Rational p_, q_;
  Branch branch_;
};

struct Classification {
  enum class Kind { regular, forbidden, fixed_point };
  Kind kind = Kind::regular;
  long depth = 0;  // forbidden: x0 hits the pole after `depth` steps; regular: depth tested

  static Classification regular(long tested) { return {Kind::regular, tested}; }
  static Classification forbidden(long m) { return {Kind::forbidden, m}; }
  static Classification fixed_point() { return {Kind::fixed_point, 0}; }

  /// "regular", "forbidden_depth(m)" or "fixed_point".
  std::string str() const;
  friend bool operator==(const Classification&, const Classification&) = default;
};

struct OrbitReport {
  std::vector<Rational> trajectory;  // x_0 .. x_n, or x_0 .. x_{m-1} on a pole
  std::optional<long> pole_step;     // m: x_m is undefined because sigma p + x_{m-1} = 0
  Classification classification;

  bool completed() const { return !pole_step.has_value(); }
};

OrbitReport iterate_orbit(const RiccatiParams& params, const Rational& x0, long n);

/// x_n from the Lucas closed form. The plus branch uses
///   q (u_n + u_{n-1} x0) / (u_{n+1} + u_n x0),
/// the minus branch the negative-index form
///   (q u_{-n} + u_{-(n-1)} x0) / (q u_{-(n+1)} + u_{-n} x0),
/// with u_{k+2} = p u_{k+1} + q u_k, u_0 = 0, u_1 = 1 and u_{-1} = 1/q, so
/// both give x0 at n = 0. A vanishing denominator throws DomainError.
Rational closed_form_term(const RiccatiParams& params, const Rational& x0, long n);

/// closed_form_term for every index 0..n, sharing one Lucas table.
std::vector<Rational> closed_form_orbit(const RiccatiParams& params, const Rational& x0, long n);

/// Denominator of the closed form at index n (zero iff the orbit has a pole
/// at step n).
Rational closed_form_denominator(const RiccatiParams& params, const Rational& x0, long n);

/// Both roots of x^2 + sigma p x - q = 0, larger first.
std::pair<Surd, Surd> fixed_points(const RiccatiParams& params);

struct ForbiddenSet {
  std::vector<Rational> elements;  // elements[m-1] reaches the pole after m steps
  bool truncated = false;          // a zero element has no finite preimage
};

/// Backward orbit of the pole: e_1 = -sigma p, e_{m+1} = q / e_m - sigma p.
ForbiddenSet forbidden_set(const RiccatiParams& params, long depth);

/// Membership in the fixed points or the depth-bounded forbidden set.
Classification classify_initial(const RiccatiParams& params, const Surd& x0, long depth);

struct SubstitutionStep {
  long n = 0;
  Rational x;             // t_n / t_{n+1}
  bool matches_orbit = false;
  bool matches_closed_form = false;  // t_n against q^{-(n-1)} (t1 u_n + t0 u_{n-1})
};

struct SubstitutionReport {
  std::vector<Rational> t_values;  // t_0 .. t_{n+1} (truncated at a zero)
  std::vector<SubstitutionStep> steps;
  std::optional<long> pole_step;

  bool all_pass() const;
};

/// Runs the linearisation x_n = t_n / t_{n+1} with
/// t_{n+1} = (sigma p t_n + t_{n-1}) / q against the orbit of x0 = t0/t1.
SubstitutionReport substitution_check(const RiccatiParams& params, const Rational& t0, const Rational& t1,
                                      long n);

}  // namespace ricfib
