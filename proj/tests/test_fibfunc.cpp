#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "ricfib/fibfunc.hpp"

using namespace ricfib;

namespace {

const Surd kPhi(Rational(1, 2), Rational(1, 2), 5);

PeriodicSeed seed_from(const std::string& text) {
  std::istringstream in(text);
  return PeriodicSeed::parse(in);
}

const char* const kThreeOffsets =
    "k=1 kind=standard\n"
    "0 1 1\n"
    "1/3 2 7\n"
    "1/2 5 3\n";

}  // namespace

TEST_CASE("extend a single lattice both ways") {
  const PeriodicSeed seed(1, RatioParams::fibonacci(), {0}, {{1, 1}});
  const auto traces = extend(seed, -3, 5);
  REQUIRE(traces.size() == 1);
  const LatticeTrace& t = traces[0];
  CHECK(t.n_min == -3);
  CHECK(t.n_max() == 5);
  CHECK(t.value(-1) == Rational(0));
  CHECK(t.value(-2) == Rational(1));
  CHECK(t.value(-3) == Rational(-1));
  const long forward[] = {1, 1, 2, 3, 5, 8};
  for (long n = 0; n <= 5; ++n) CHECK(t.value(n) == Rational(forward[n]));
  CHECK_FALSE(t.ratio(-2).has_value());  // f(-1) = 0
  CHECK(t.ratio(0) == Rational(1));
}

TEST_CASE("offsets evolve independently") {
  const PeriodicSeed seed(Rational(1, 2), RatioParams::fibonacci(), {0, Rational(1, 4)}, {{1, 1}, {2, -1}});
  const auto traces = extend(seed, 0, 4);
  CHECK(traces[0].values == std::vector<Rational>{1, 1, 2, 3, 5});
  CHECK(traces[1].values == std::vector<Rational>{2, -1, 1, 0, 1});
  CHECK(traces[1].offset == Rational(1, 4));
}

TEST_CASE("odd kind alternates") {
  const PeriodicSeed seed(1, RatioParams(1, 1, Parity::odd), {0}, {{0, 1}});
  CHECK(extend(seed, 0, 5)[0].values == std::vector<Rational>{0, 1, -1, 2, -3, 5});
}

TEST_CASE("extended values satisfy the period-k equation and round-trip") {
  oracle::RationalGen gen(51);
  for (int trial = 0; trial < 30; ++trial) {
    const RatioParams kind(gen.positive(7, 3), gen.positive(7, 3), gen.coin() ? Parity::standard : Parity::odd);
    const PeriodicSeed seed(1, kind, {0}, {{gen.any(20, 3), gen.any(20, 3)}});
    const LatticeTrace t = extend(seed, -25, 25)[0];
    for (long n = -25; n + 2 <= 25; ++n) {
      CHECK(t.value(n + 2) == kind.signed_r() * t.value(n + 1) + kind.s() * t.value(n));
    }
    // Reseeding far out and stepping back recovers the original pair.
    const PeriodicSeed far(1, kind, {0}, {{t.value(-25), t.value(-24)}});
    const LatticeTrace back = extend(far, 0, 26)[0];
    CHECK(back.value(25) == t.value(0));
    CHECK(back.value(26) == t.value(1));
  }
}

TEST_CASE("ratio trace") {
  const PeriodicSeed seed(1, RatioParams::fibonacci(), {0}, {{1, 1}});
  const LatticeTrace t = ratio_trace(seed, 0, 0, 3);
  CHECK(*t.ratio(0) == Rational(1));
  CHECK(*t.ratio(1) == Rational(1, 2));
  CHECK(*t.ratio(2) == Rational(2, 3));

  const PeriodicSeed zero(1, RatioParams::fibonacci(), {0}, {{0, 0}});
  try {
    ratio_trace(zero, 0, 0, 3);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("n = 0") != std::string::npos);
  }
  CHECK_THROWS_AS(ratio_trace(seed, 1, 0, 3), DomainError);
}

TEST_CASE("ratio trace agrees with the ratio map") {
  oracle::RationalGen gen(52);
  for (int trial = 0; trial < 30; ++trial) {
    const RatioParams kind(gen.positive(5, 2), gen.positive(5, 2), gen.coin() ? Parity::standard : Parity::odd);
    const Rational a = gen.positive(30, 1), b = gen.positive(30, 1);
    const PeriodicSeed seed(1, kind, {0}, {{a, b}});
    const LatticeTrace t = extend(seed, 0, 20)[0];
    // h_n = f_n / f_{n+1} and h_{n+1} = 1 / (sigma r + s h_n).
    bool defined = true;
    for (long n = 0; n < 20; ++n) defined = defined && t.ratio(n).has_value();
    if (!defined) continue;
    const RatioOrbit orbit = ratio_orbit(kind, *t.ratio(0), 19);
    REQUIRE_FALSE(orbit.pole_step.has_value());
    for (long j = 0; j <= 19; ++j) CHECK(orbit.values[static_cast<std::size_t>(j)] == *t.ratio(j));
  }
}

TEST_CASE("seed file parsing") {
  const PeriodicSeed seed = seed_from(
      "# three lattices\n"
      "k=1 kind=standard\n"
      "\n"
      "0 1 1   # Fibonacci\n"
      "1/3 2 7\n"
      "1/2 5 3\n");
  CHECK(seed.size() == 3);
  CHECK(seed.k() == Rational(1));
  CHECK(seed.kind().r() == Rational(1));
  CHECK(seed.offsets()[1] == Rational(1, 3));
  CHECK(seed.pairs()[2].f_xi_k == Rational(3));

  const PeriodicSeed general = seed_from("k=3/2 kind=odd r=2 s=1/3\n0 1 2\n");
  CHECK(general.kind().parity() == Parity::odd);
  CHECK(general.kind().s() == Rational(1, 3));
  CHECK(seed_from(general.serialize()).serialize() == general.serialize());
  CHECK(seed_from(seed.serialize()).offsets() == seed.offsets());

  CHECK_THROWS_AS(seed_from(""), ParseError);
  CHECK_THROWS_AS(seed_from("kind=standard\n0 1 1\n"), ParseError);
  CHECK_THROWS_AS(seed_from("k=1 kind=weird\n0 1 1\n"), ParseError);
  CHECK_THROWS_AS(seed_from("k=1 kind=standard colour=red\n"), ParseError);
  CHECK_THROWS_AS(seed_from("k=1 kind=standard\n0 1\n"), ParseError);
  CHECK_THROWS_AS(seed_from("k=1 kind=standard\n"), DomainError);
  CHECK_THROWS_AS(seed_from("k=1 kind=standard\n1 1 1\n"), DomainError);
  CHECK_THROWS_AS(seed_from("k=1 kind=standard\n1/2 1 1\n0 1 1\n"), DomainError);
  CHECK_THROWS_AS(seed_from("k=0 kind=standard\n0 1 1\n"), DomainError);
  CHECK_THROWS_AS(PeriodicSeed::parse_file("/nonexistent/seed.txt"), ParseError);
}

TEST_CASE("verify conjecture on three offsets") {
  const PeriodicSeed seed = seed_from(kThreeOffsets);
  const Rational eps(1, 1000000000);
  const auto verdicts = verify_conjecture(seed, eps);
  REQUIRE(verdicts.size() == 3);
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const OffsetVerdict& v = verdicts[i];
    CHECK(v.offset == seed.offsets()[i]);
    CHECK(v.converged);
    CHECK(v.step <= 60);
    CHECK(v.target == kPhi);
    CHECK(abs_less(v.distance, eps));
    REQUIRE(v.certified_N.has_value());
    CHECK(v.step <= *v.certified_N);
  }
  // Independent check of the first hit on the Fibonacci lattice.
  const OffsetVerdict& fib = verdicts[0];
  const Rational tail(BigInt(oracle::fibonacci(fib.step + 2)), BigInt(oracle::fibonacci(fib.step + 1)));
  CHECK(fib.ratio == tail);
  const Rational before(BigInt(oracle::fibonacci(fib.step + 1)), BigInt(oracle::fibonacci(fib.step)));
  CHECK_FALSE(abs_less(Surd(before) - kPhi, eps));
}

TEST_CASE("verify conjecture, odd kind and edge cases") {
  const PeriodicSeed odd(1, RatioParams(1, 1, Parity::odd), {0}, {{0, 1}});
  const auto v = verify_conjecture(odd, Rational(1, 1000000));
  CHECK(v[0].converged);
  CHECK(v[0].target == -kPhi);
  CHECK_FALSE(v[0].certified_N.has_value());

  const PeriodicSeed negative(1, RatioParams::fibonacci(), {0}, {{-2, -3}});
  const auto n = verify_conjecture(negative, Rational(1, 1000000));
  CHECK(n[0].converged);
  REQUIRE(n[0].certified_N.has_value());
  CHECK(*n[0].certified_N == certificate(2, 3, Rational(1, 1000000)).N);

  const PeriodicSeed mixed(1, RatioParams::fibonacci(), {0}, {{5, -3}});
  CHECK(verify_conjecture(mixed, Rational(1, 1000000))[0].converged);
  CHECK_FALSE(verify_conjecture(mixed, Rational(1, 1000000))[0].certified_N.has_value());

  const PeriodicSeed short_horizon(1, RatioParams::fibonacci(), {0}, {{1, 1}});
  const auto h = verify_conjecture(short_horizon, Rational(1, 1000000000), 3);
  CHECK_FALSE(h[0].converged);
  CHECK(h[0].step == -1);

  const PeriodicSeed zero(1, RatioParams::fibonacci(), {0}, {{0, 0}});
  CHECK_THROWS_AS(verify_conjecture(zero, Rational(1, 10)), DomainError);
  CHECK_THROWS_AS(verify_conjecture(short_horizon, 0), DomainError);
}

TEST_CASE("first-hit step never exceeds the certified N for non-negative Fibonacci seeds") {
  oracle::RationalGen gen(53);
  for (int trial = 0; trial < 100; ++trial) {
    const Rational eps(1, gen.integer(1000, 1000000000000LL));
    const PeriodicSeed seed(1, RatioParams::fibonacci(), {0}, {{gen.nonnegative(100, 7), gen.positive(100, 7)}});
    const OffsetVerdict v = verify_conjecture(seed, eps)[0];
    REQUIRE(v.certified_N.has_value());
    CHECK(v.converged);
    CHECK(v.step <= *v.certified_N);
  }
}

TEST_CASE("exponential witness") {
  const WitnessTrace w = exponential_witness(RatioParams::fibonacci(), -5, 10);
  CHECK(w.base == kPhi);
  CHECK(w.values.size() == 16);
  for (const Surd& r : w.ratios) CHECK(r == kPhi);
  CHECK(w.values[5] == Surd(1));
  const WitnessTrace odd = exponential_witness(RatioParams(1, 1, Parity::odd), 0, 8);
  for (const Surd& r : odd.ratios) CHECK(r == -kPhi);
  // base^n satisfies the recurrence exactly.
  const WitnessTrace general = exponential_witness(RatioParams(3, 2), -4, 6);
  for (std::size_t i = 0; i + 2 < general.values.size(); ++i) {
    CHECK(general.values[i + 2] == Surd(3) * general.values[i + 1] + Surd(2) * general.values[i]);
  }
}
