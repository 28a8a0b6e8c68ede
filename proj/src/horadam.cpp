#include "ricfib/horadam.hpp"

#include <array>
#include <cstdlib>

namespace ricfib {

namespace {

struct Mat2 {
  std::array<Rational, 4> m;  // row-major

  static Mat2 identity() { return {{1, 0, 0, 1}}; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {{x.m[0] * y.m[0] + x.m[1] * y.m[2], x.m[0] * y.m[1] + x.m[1] * y.m[3],
             x.m[2] * y.m[0] + x.m[3] * y.m[2], x.m[2] * y.m[1] + x.m[3] * y.m[3]}};
  }
};

Mat2 power(Mat2 base, unsigned long e) {
  Mat2 result = Mat2::identity();
  while (e > 0) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

}  // namespace

RecurrenceParams::RecurrenceParams(Rational w0, Rational w1, Rational p, Rational q)
    : w0_(std::move(w0)), w1_(std::move(w1)), p_(std::move(p)), q_(std::move(q)) {
  if (q_.is_zero()) throw DomainError("Horadam recurrence needs q != 0");
}

Rational horadam_term(const RecurrenceParams& params, long n) {
  if (n == 0) return params.w0();
  if (n == 1) return params.w1();
  Rational lo = params.w0();
  Rational hi = params.w1();
  if (n > 1) {
    for (long i = 1; i < n; ++i) {
      Rational next = params.p() * hi - params.q() * lo;
      lo = std::move(hi);
      hi = std::move(next);
    }
    return hi;
  }
  // (lo, hi) = (w_i, w_{i+1}) walking down.
  for (long i = 0; i > n; --i) {
    Rational prev = (params.p() * lo - hi) / params.q();
    hi = std::move(lo);
    lo = std::move(prev);
  }
  return lo;
}

SequenceWindow horadam_window(const RecurrenceParams& params, long start, std::size_t count) {
  SequenceWindow window{start, {}};
  if (count == 0) return window;
  window.values.reserve(count);
  Rational a = horadam_term(params, start);
  Rational b = horadam_term(params, start + 1);
  window.values.push_back(a);
  for (std::size_t i = 1; i < count; ++i) {
    window.values.push_back(b);
    Rational next = params.p() * b - params.q() * a;
    a = std::move(b);
    b = std::move(next);
  }
  return window;
}

Rational fundamental_lucas(const Rational& A, const Rational& B, long n) {
  if (B.is_zero()) throw DomainError("degenerate Lucas recurrence: B = 0");
  return horadam_term(RecurrenceParams::fundamental(A, -B), n);
}

Rational fast_term(const RecurrenceParams& params, long n) {
  if (n == 0) return params.w0();
  // [w_{i+1}, w_i]^T = C^i [w_1, w_0]^T
  Mat2 step = n > 0 ? Mat2{{params.p(), -params.q(), 1, 0}}
                    : Mat2{{0, 1, -params.q().reciprocal(), params.p() / params.q()}};
  const Mat2 m = power(step, static_cast<unsigned long>(std::labs(n)));
  return m.m[2] * params.w1() + m.m[3] * params.w0();
}

SymmetryReport negative_symmetry_check(const RecurrenceParams& params, long n_max) {
  SymmetryReport report{n_max, {}};
  if (n_max <= 0) return report;
  const SequenceWindow window = horadam_window(params, -n_max, static_cast<std::size_t>(2 * n_max + 1));
  for (long n = 1; n <= n_max; ++n) {
    const Rational expected = (n % 2 == 1) ? window.at(n) : -window.at(n);
    if (window.at(-n) != expected) report.failing.push_back(n);
  }
  return report;
}

}  // namespace ricfib
