#include "ricfib/riccati.hpp"

#include "ricfib/horadam.hpp"

namespace ricfib {

namespace {

// u_k for lo <= k <= hi of u_{k+2} = A u_{k+1} + B u_k, u_0 = 0, u_1 = 1.
class LucasTable {
 public:
  LucasTable(const Rational& A, const Rational& B, long lo, long hi) : lo_(lo) {
    const SequenceWindow w = horadam_window(RecurrenceParams::fundamental(A, -B), lo,
                                            static_cast<std::size_t>(hi - lo + 1));
    values_ = w.values;
  }
  const Rational& operator[](long k) const { return values_.at(static_cast<std::size_t>(k - lo_)); }

 private:
  long lo_;
  std::vector<Rational> values_;
};

LucasTable table_for(const RiccatiParams& params, long n) {
  if (params.branch() == Branch::plus) return LucasTable(params.p(), params.q(), -1, n + 1);
  return LucasTable(params.p(), params.q(), -(n + 1), 1);
}

std::pair<Rational, Rational> closed_form_parts(const RiccatiParams& params, const LucasTable& u,
                                                const Rational& x0, long n) {
  const Rational& q = params.q();
  if (params.branch() == Branch::plus) {
    return {q * (u[n] + u[n - 1] * x0), u[n + 1] + u[n] * x0};
  }
  return {q * u[-n] + u[-(n - 1)] * x0, q * u[-(n + 1)] + u[-n] * x0};
}

Rational closed_form_from(const RiccatiParams& params, const LucasTable& u, const Rational& x0, long n) {
  auto [num, den] = closed_form_parts(params, u, x0, n);
  if (den.is_zero()) {
    throw DomainError("initial value " + x0.str() + " is forbidden at depth " + std::to_string(n));
  }
  return num / den;
}

}  // namespace

std::string to_string(Branch b) { return b == Branch::plus ? "plus" : "minus"; }

Branch parse_branch(std::string_view text) {
  if (text == "plus" || text == "+") return Branch::plus;
  if (text == "minus" || text == "-") return Branch::minus;
  throw ParseError("unknown branch '" + std::string(text) + "' (expected plus|minus)");
}

RiccatiParams::RiccatiParams(Rational p, Rational q, Branch branch)
    : p_(std::move(p)), q_(std::move(q)), branch_(branch) {
  if (p_.sign() <= 0 || q_.sign() <= 0) throw DomainError("Riccati map needs p > 0 and q > 0");
}

Rational RiccatiParams::apply(const Rational& x) const {
  const Rational den = shift() + x;
  if (den.is_zero()) throw DomainError("pole: " + shift().str() + " + x = 0");
  return q_ / den;
}

Surd RiccatiParams::apply(const Surd& x) const {
  const Surd den = Surd(shift()) + x;
  if (den.sign() == Sign::zero) throw DomainError("pole: " + shift().str() + " + x = 0");
  return Surd(q_) / den;
}

std::string Classification::str() const {
  switch (kind) {
    case Kind::regular: return "regular";
    case Kind::forbidden: return "forbidden_depth(" + std::to_string(depth) + ")";
    case Kind::fixed_point: return "fixed_point";
  }
  return "regular";
}

OrbitReport iterate_orbit(const RiccatiParams& params, const Rational& x0, long n) {
  if (n < 0) throw DomainError("orbit length must be nonnegative");
  OrbitReport report;
  report.trajectory.reserve(static_cast<std::size_t>(n) + 1);
  report.trajectory.push_back(x0);
  for (long m = 1; m <= n; ++m) {
    const Rational& prev = report.trajectory.back();
    if ((params.shift() + prev).is_zero()) {
      report.pole_step = m;
      break;
    }
    report.trajectory.push_back(params.q() / (params.shift() + prev));
  }
  report.classification = classify_initial(params, Surd(x0), std::max(n, 1L));
  return report;
}

Rational closed_form_term(const RiccatiParams& params, const Rational& x0, long n) {
  if (n < 0) throw DomainError("closed form index must be nonnegative");
  return closed_form_from(params, table_for(params, n), x0, n);
}

std::vector<Rational> closed_form_orbit(const RiccatiParams& params, const Rational& x0, long n) {
  if (n < 0) throw DomainError("closed form index must be nonnegative");
  const LucasTable u = table_for(params, n);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) out.push_back(closed_form_from(params, u, x0, k));
  return out;
}

Rational closed_form_denominator(const RiccatiParams& params, const Rational& x0, long n) {
  if (n < 0) throw DomainError("closed form index must be nonnegative");
  return closed_form_parts(params, table_for(params, n), x0, n).second;
}

std::pair<Surd, Surd> fixed_points(const RiccatiParams& params) {
  // x = q / (sigma p + x)  <=>  x^2 - (-sigma p) x - q = 0
  return quadratic_roots(-params.shift(), params.q());
}

ForbiddenSet forbidden_set(const RiccatiParams& params, long depth) {
  if (depth < 1) throw DomainError("forbidden-set depth must be positive");
  ForbiddenSet out;
  out.elements.reserve(static_cast<std::size_t>(depth));
  out.elements.push_back(params.pole());
  while (static_cast<long>(out.elements.size()) < depth) {
    const Rational& last = out.elements.back();
    if (last.is_zero()) {
      out.truncated = true;
      break;
    }
    out.elements.push_back(params.q() / last - params.shift());
  }
  return out;
}

Classification classify_initial(const RiccatiParams& params, const Surd& x0, long depth) {
  const auto [hi, lo] = fixed_points(params);
  if (x0 == hi || x0 == lo) return Classification::fixed_point();
  if (!x0.is_rational()) return Classification::regular(depth);
  const ForbiddenSet set = forbidden_set(params, depth);
  for (std::size_t i = 0; i < set.elements.size(); ++i) {
    if (set.elements[i] == x0.a()) return Classification::forbidden(static_cast<long>(i) + 1);
  }
  return Classification::regular(depth);
}

bool SubstitutionReport::all_pass() const {
  for (const auto& step : steps) {
    if (!step.matches_orbit || !step.matches_closed_form) return false;
  }
  return true;
}

SubstitutionReport substitution_check(const RiccatiParams& params, const Rational& t0, const Rational& t1,
                                      long n) {
  if (t1.is_zero()) throw DomainError("substitution needs t1 != 0");
  if (n < 0) throw DomainError("step count must be nonnegative");
  SubstitutionReport report;
  report.t_values = {t0, t1};
  for (long k = 1; k <= n; ++k) {
    const Rational& prev = report.t_values[static_cast<std::size_t>(k - 1)];
    const Rational& cur = report.t_values[static_cast<std::size_t>(k)];
    report.t_values.push_back((params.shift() * cur + prev) / params.q());
  }

  const OrbitReport orbit = iterate_orbit(params, t0 / t1, n);
  // Positive-index Lucas numbers of the linear recurrence itself: A = sigma p.
  const LucasTable u(params.shift(), params.q(), -1, n + 1);

  for (long k = 0; k <= n; ++k) {
    const Rational& next = report.t_values[static_cast<std::size_t>(k + 1)];
    if (next.is_zero()) {
      report.pole_step = k;
      report.t_values.resize(static_cast<std::size_t>(k) + 2);
      // A zero t_{k+1} must coincide with the orbit's pole.
      if (orbit.pole_step != k) report.steps.push_back({k, Rational(), false, false});
      break;
    }
    SubstitutionStep step;
    step.n = k;
    step.x = report.t_values[static_cast<std::size_t>(k)] / next;
    step.matches_orbit =
        k < static_cast<long>(orbit.trajectory.size()) && orbit.trajectory[static_cast<std::size_t>(k)] == step.x;
    const Rational predicted = params.q().pow(-(k - 1)) * (t1 * u[k] + t0 * u[k - 1]);
    step.matches_closed_form = predicted == report.t_values[static_cast<std::size_t>(k)];
    report.steps.push_back(std::move(step));
  }
  return report;
}

}  // namespace ricfib
