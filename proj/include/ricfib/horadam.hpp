#pragma once

#include <vector>

#include "ricfib/exact.hpp"

namespace ricfib {

/// Seeds and coefficients of w_{n+2} = p w_{n+1} - q w_n. q is nonzero so the
/// sequence extends to negative indices.
class RecurrenceParams {
 public:
  RecurrenceParams(Rational w0, Rational w1, Rational p, Rational q);

  static RecurrenceParams fibonacci() { return {0, 1, 1, -1}; }
  /// The fundamental Lucas sequence u_n, seeds (0, 1).
  static RecurrenceParams fundamental(Rational p, Rational q) { return {0, 1, std::move(p), std::move(q)}; }

  const Rational& w0() const { return w0_; }
  const Rational& w1() const { return w1_; }
  const Rational& p() const { return p_; }
  const Rational& q() const { return q_; }

 private:
  Rational w0_, w1_, p_, q_;
};

struct SequenceWindow {
  long start_index = 0;
  std::vector<Rational> values;

  const Rational& at(long n) const { return values.at(static_cast<std::size_t>(n - start_index)); }
  long end_index() const { return start_index + static_cast<long>(values.size()); }
};

/// Term by direct stepping, forward for n >= 0 and through
/// w_n = (p w_{n+1} - w_{n+2}) / q for n < 0.
Rational horadam_term(const RecurrenceParams& params, long n);

/// Consecutive terms w_start .. w_{start+count-1}.
SequenceWindow horadam_window(const RecurrenceParams& params, long start, std::size_t count);

/// u_n of u_{n+2} = A u_{n+1} + B u_n with u_0 = 0, u_1 = 1: the "+" form,
/// equal to w_n(0, 1; A, -B). B = 0 is rejected.
Rational fundamental_lucas(const Rational& A, const Rational& B, long n);

/// Same value as horadam_term, in O(log |n|) multiplications by powering the
/// companion matrix.
Rational fast_term(const RecurrenceParams& params, long n);

struct SymmetryReport {
  long n_max = 0;
  std::vector<long> failing;
  bool holds() const { return failing.empty(); }
};

/// Indices 1..n_max where w_{-n} = (-1)^{n+1} w_n fails.
SymmetryReport negative_symmetry_check(const RecurrenceParams& params, long n_max);

}  // namespace ricfib
