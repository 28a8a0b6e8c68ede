#include "ricfib/fibfunc.hpp"

#include <fstream>
#include <future>
#include <sstream>

namespace ricfib {

namespace {

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

Rational next_value(const RatioParams& kind, const Rational& lo, const Rational& hi) {
  return kind.signed_r() * hi + kind.s() * lo;
}

Rational prev_value(const RatioParams& kind, const Rational& lo, const Rational& hi) {
  return (hi - kind.signed_r() * lo) / kind.s();
}

LatticeTrace build_trace(const PeriodicSeed& seed, std::size_t index, long n_min, long n_max) {
  if (n_min > 0 || n_max < 1) throw DomainError("lattice range must contain n = 0 and n = 1");
  const RatioParams& kind = seed.kind();
  const SeedPair& pair = seed.pairs()[index];
  const auto count = static_cast<std::size_t>(n_max - n_min + 1);
  std::vector<Rational> values(count);
  const auto at = [&](long n) -> Rational& { return values[static_cast<std::size_t>(n - n_min)]; };
  at(0) = pair.f_xi;
  at(1) = pair.f_xi_k;
  for (long n = 2; n <= n_max; ++n) at(n) = next_value(kind, at(n - 2), at(n - 1));
  for (long n = -1; n >= n_min; --n) at(n) = prev_value(kind, at(n + 1), at(n + 2));

  LatticeTrace trace;
  trace.offset = seed.offsets()[index];
  trace.n_min = n_min;
  trace.ratios.reserve(count - 1);
  for (std::size_t i = 0; i + 1 < count; ++i) {
    if (values[i + 1].is_zero()) {
      trace.ratios.emplace_back(std::nullopt);
    } else {
      trace.ratios.emplace_back(values[i] / values[i + 1]);
    }
  }
  trace.values = std::move(values);
  return trace;
}

OffsetVerdict verify_offset(const RatioParams& kind, const Rational& offset, const SeedPair& pair,
                            const Rational& epsilon, long horizon) {
  if (pair.f_xi.is_zero() && pair.f_xi_k.is_zero()) {
    throw DomainError("degenerate lattice at offset " + offset.str() + ": both seeds are zero");
  }
  OffsetVerdict verdict;
  verdict.offset = offset;
  const Surd root = rho(kind.r(), kind.s());
  verdict.target = kind.parity() == Parity::standard ? root : -root;

  const bool fibonacci = kind.parity() == Parity::standard && kind.r() == 1 && kind.s() == 1;
  if (fibonacci && pair.f_xi.sign() >= 0 && pair.f_xi_k.sign() > 0) {
    verdict.certified_N = certificate(pair.f_xi, pair.f_xi_k, epsilon).N;
  } else if (fibonacci && pair.f_xi.sign() <= 0 && pair.f_xi_k.sign() < 0) {
    verdict.certified_N = certificate(-pair.f_xi, -pair.f_xi_k, epsilon).N;
  }

  Rational lo = pair.f_xi, hi = pair.f_xi_k;
  for (long n = 0; n <= horizon; ++n) {
    if (!lo.is_zero()) {
      verdict.ratio = hi / lo;
      verdict.distance = (Surd(verdict.ratio) - verdict.target).abs();
      if (abs_less(verdict.distance, epsilon)) {
        verdict.converged = true;
        verdict.step = n;
        return verdict;
      }
    }
    Rational next = next_value(kind, lo, hi);
    lo = std::move(hi);
    hi = std::move(next);
  }
  return verdict;
}

}  // namespace

PeriodicSeed::PeriodicSeed(Rational k, RatioParams kind, std::vector<Rational> offsets, std::vector<SeedPair> pairs)
    : k_(std::move(k)), kind_(std::move(kind)), offsets_(std::move(offsets)), pairs_(std::move(pairs)) {
  if (k_.sign() <= 0) throw DomainError("period k must be positive");
  if (offsets_.size() != pairs_.size()) throw DomainError("one seed pair per offset is required");
  if (offsets_.empty()) throw DomainError("a periodic seed needs at least one offset");
  for (std::size_t i = 0; i < offsets_.size(); ++i) {
    if (offsets_[i].sign() < 0 || offsets_[i] >= k_) {
      throw DomainError("offset " + offsets_[i].str() + " outside [0, k)");
    }
    if (i > 0 && offsets_[i] <= offsets_[i - 1]) throw DomainError("offsets must be strictly increasing");
  }
}

PeriodicSeed PeriodicSeed::parse(std::istream& in) {
  std::string line;
  std::optional<Rational> k;
  std::optional<Parity> parity;
  Rational r(1), s(1);
  bool have_header = false;
  std::vector<Rational> offsets;
  std::vector<SeedPair> pairs;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(strip_comment(line));
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    const std::string where = "seed file line " + std::to_string(line_no) + ": ";
    if (!have_header) {
      for (const auto& tok : tokens) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw ParseError(where + "expected key=value, got '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        const std::string value = tok.substr(eq + 1);
        if (key == "k") {
          k = Rational::parse(value);
        } else if (key == "kind") {
          parity = parse_parity(value);
        } else if (key == "r") {
          r = Rational::parse(value);
        } else if (key == "s") {
          s = Rational::parse(value);
        } else {
          throw ParseError(where + "unknown header key '" + key + "'");
        }
      }
      if (!k || !parity) throw ParseError(where + "header needs k= and kind=");
      have_header = true;
      continue;
    }
    if (tokens.size() != 3) throw ParseError(where + "expected 'xi f_xi f_xi_k'");
    offsets.push_back(Rational::parse(tokens[0]));
    pairs.push_back({Rational::parse(tokens[1]), Rational::parse(tokens[2])});
  }
  if (!have_header) throw ParseError("seed file has no header line");
  return PeriodicSeed(*k, RatioParams(r, s, *parity), std::move(offsets), std::move(pairs));
}

PeriodicSeed PeriodicSeed::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open seed file '" + path + "'");
  return parse(in);
}

std::string PeriodicSeed::serialize() const {
  std::ostringstream out;
  out << "k=" << k_.str() << " kind=" << to_string(kind_.parity()) << " r=" << kind_.r().str()
      << " s=" << kind_.s().str() << '\n';
  for (std::size_t i = 0; i < offsets_.size(); ++i) {
    out << offsets_[i].str() << ' ' << pairs_[i].f_xi.str() << ' ' << pairs_[i].f_xi_k.str() << '\n';
  }
  return out.str();
}

std::vector<LatticeTrace> extend(const PeriodicSeed& seed, long n_min, long n_max) {
  std::vector<LatticeTrace> out;
  out.reserve(seed.size());
  for (std::size_t i = 0; i < seed.size(); ++i) out.push_back(build_trace(seed, i, n_min, n_max));
  return out;
}

LatticeTrace ratio_trace(const PeriodicSeed& seed, std::size_t offset_index, long n_min, long n_max) {
  if (offset_index >= seed.size()) throw DomainError("offset index out of range");
  LatticeTrace trace = build_trace(seed, offset_index, n_min, n_max);
  for (long n = n_min; n < trace.n_max(); ++n) {
    if (!trace.ratio(n)) {
      throw DomainError("ratio undefined at n = " + std::to_string(n) + ": f(xi + (n+1)k) = 0");
    }
  }
  return trace;
}

std::vector<OffsetVerdict> verify_conjecture(const PeriodicSeed& seed, const Rational& epsilon, long horizon) {
  if (epsilon.sign() <= 0) throw DomainError("epsilon must be positive");
  std::vector<std::future<OffsetVerdict>> jobs;
  jobs.reserve(seed.size());
  for (std::size_t i = 0; i < seed.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, verify_offset, std::cref(seed.kind()), std::cref(seed.offsets()[i]),
                              std::cref(seed.pairs()[i]), std::cref(epsilon), horizon));
  }
  std::vector<OffsetVerdict> out;
  out.reserve(jobs.size());
  for (auto& job : jobs) out.push_back(job.get());
  return out;
}

WitnessTrace exponential_witness(const RatioParams& kind, long n_min, long n_max) {
  if (n_min > n_max) throw DomainError("empty witness range");
  WitnessTrace trace;
  trace.n_min = n_min;
  const Surd root = rho(kind.r(), kind.s());
  trace.base = kind.parity() == Parity::standard ? root : -root;
  Surd value = trace.base.pow(n_min);
  for (long n = n_min; n <= n_max; ++n) {
    trace.values.push_back(value);
    value *= trace.base;
  }
  for (std::size_t i = 0; i + 1 < trace.values.size(); ++i) {
    trace.ratios.push_back(trace.values[i + 1] / trace.values[i]);
  }
  return trace;
}

}  // namespace ricfib
