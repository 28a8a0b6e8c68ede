#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ricfib/exact.hpp"
#include "ricfib/golden_limits.hpp"

namespace ricfib {

struct SeedPair {
  Rational f_xi;    // f(xi)
  Rational f_xi_k;  // f(xi + k)
};

/// A function with period k sampled on the lattices xi_j + n k. Each lattice
/// is an independent two-term recurrence seeded by the pair at n = 0, 1.
class PeriodicSeed {
 public:
  PeriodicSeed(Rational k, RatioParams kind, std::vector<Rational> offsets, std::vector<SeedPair> pairs);

  /// Line format: a header "k=<q> kind=<standard|odd> r=<q> s=<q>" followed
  /// by one "xi f_xi f_xi_k" line per offset. '#' starts a comment.
  static PeriodicSeed parse(std::istream& in);
  static PeriodicSeed parse_file(const std::string& path);
  std::string serialize() const;

  const Rational& k() const { return k_; }
  const RatioParams& kind() const { return kind_; }
  const std::vector<Rational>& offsets() const { return offsets_; }
  const std::vector<SeedPair>& pairs() const { return pairs_; }
  std::size_t size() const { return offsets_.size(); }

 private:
  Rational k_;
  RatioParams kind_;
  std::vector<Rational> offsets_;
  std::vector<SeedPair> pairs_;
};

struct LatticeTrace {
  Rational offset;
  long n_min = 0;
  std::vector<Rational> values;                // f(xi + n k), n = n_min .. n_max
  std::vector<std::optional<Rational>> ratios;  // f(xi + n k) / f(xi + (n+1) k), n = n_min .. n_max-1

  long n_max() const { return n_min + static_cast<long>(values.size()) - 1; }
  const Rational& value(long n) const { return values.at(static_cast<std::size_t>(n - n_min)); }
  const std::optional<Rational>& ratio(long n) const { return ratios.at(static_cast<std::size_t>(n - n_min)); }
};

/// Values on every lattice for n in [n_min, n_max] (n_min <= 0, n_max >= 1).
std::vector<LatticeTrace> extend(const PeriodicSeed& seed, long n_min, long n_max);

/// One lattice with every ratio defined; a zero denominator throws
/// DomainError naming the index.
LatticeTrace ratio_trace(const PeriodicSeed& seed, std::size_t offset_index, long n_min, long n_max);

struct OffsetVerdict {
  Rational offset;
  Surd target;                 // rho (standard) or -rho (odd)
  bool converged = false;
  long step = -1;              // first n with |f(xi+(n+1)k)/f(xi+nk) - target| < eps
  Rational ratio;              // the ratio at `step` (or at the horizon)
  Surd distance;               // |ratio - target|
  std::optional<long> certified_N;  // Fibonacci seeds of one sign only
};

/// Per-offset convergence of f(x+k)/f(x), iterating at most `horizon` steps.
/// Offsets are processed concurrently; results keep the offset order.
std::vector<OffsetVerdict> verify_conjecture(const PeriodicSeed& seed, const Rational& epsilon,
                                             long horizon = 5000);

struct WitnessTrace {
  long n_min = 0;
  Surd base;                 // rho or -rho
  std::vector<Surd> values;  // base^n, n = n_min .. n_max
  std::vector<Surd> ratios;  // values[n+1] / values[n]
};

/// The exponential solution f(xi + n k) = base^n of the period-k equation,
/// evaluated exactly in Q(sqrt(d)).
WitnessTrace exponential_witness(const RatioParams& kind, long n_min, long n_max);

}  // namespace ricfib
