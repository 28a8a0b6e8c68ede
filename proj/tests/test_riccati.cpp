#include <doctest.h>

#include "oracles.hpp"
#include "ricfib/horadam.hpp"
#include "ricfib/riccati.hpp"

using namespace ricfib;

namespace {

std::vector<Rational> as_rationals(const std::vector<mpq_class>& xs) {
  std::vector<Rational> out;
  for (const auto& x : xs) out.emplace_back(x);
  return out;
}

const RiccatiParams kGoldenPlus(1, 1, Branch::plus);
const RiccatiParams kGoldenMinus(1, 1, Branch::minus);

}  // namespace

TEST_CASE("iterate_orbit examples") {
  SUBCASE("plus, p = q = 1, x0 = 1: Fibonacci ratios") {
    const OrbitReport rep = iterate_orbit(kGoldenPlus, 1, 4);
    CHECK(rep.completed());
    CHECK(rep.trajectory == std::vector<Rational>{1, Rational(1, 2), Rational(2, 3), Rational(3, 5), Rational(5, 8)});
    CHECK(rep.classification.kind == Classification::Kind::regular);
  }
  SUBCASE("plus, x0 = -2 hits the pole at step 2") {
    const OrbitReport rep = iterate_orbit(kGoldenPlus, -2, 5);
    REQUIRE(rep.pole_step.has_value());
    CHECK(*rep.pole_step == 2);
    CHECK(rep.trajectory == std::vector<Rational>{-2, -1});
    CHECK(rep.classification == Classification::forbidden(2));
  }
  SUBCASE("minus, x0 = 3") {
    const OrbitReport rep = iterate_orbit(kGoldenMinus, 3, 3);
    CHECK(rep.trajectory == std::vector<Rational>{3, Rational(1, 2), -2, Rational(-1, 3)});
  }
  SUBCASE("n = 0") {
    const OrbitReport rep = iterate_orbit(kGoldenPlus, Rational(7, 2), 0);
    CHECK(rep.trajectory == std::vector<Rational>{Rational(7, 2)});
  }
}

TEST_CASE("parameters must be positive") {
  CHECK_THROWS_AS(RiccatiParams(0, 1, Branch::plus), DomainError);
  CHECK_THROWS_AS(RiccatiParams(1, -1, Branch::minus), DomainError);
  CHECK_THROWS_AS(kGoldenPlus.apply(Rational(-1)), DomainError);
}

TEST_CASE("closed_form_term examples") {
  CHECK(closed_form_term(kGoldenPlus, 1, 3) == Rational(3, 5));
  CHECK(closed_form_term(kGoldenMinus, 3, 1) == Rational(1, 2));
  const RiccatiParams odd(Rational(3, 2), Rational(5, 7), Branch::minus);
  const RiccatiParams even(Rational(3, 2), Rational(5, 7), Branch::plus);
  for (const Rational& x0 : {Rational(0), Rational(9, 4), Rational(-11, 3)}) {
    CHECK(closed_form_term(odd, x0, 0) == x0);
    CHECK(closed_form_term(even, x0, 0) == x0);
  }
  CHECK_THROWS_AS(closed_form_term(kGoldenPlus, -2, 2), DomainError);
}

TEST_CASE("minus branch with q != 1 follows the orbit") {
  // y -> 2 / (-1 + y) from 5: 5, 1/2, -4.
  const RiccatiParams params(1, 2, Branch::minus);
  CHECK(closed_form_term(params, 5, 1) == Rational(1, 2));
  CHECK(closed_form_term(params, 5, 2) == Rational(-4));
}

TEST_CASE("closed form equals direct iteration on random cases") {
  oracle::RationalGen gen(31);
  int tested = 0;
  while (tested < 60) {
    const RiccatiParams params(gen.positive(10, 3), gen.positive(10, 3), gen.coin() ? Branch::plus : Branch::minus);
    const Rational x0 = gen.any(10, 4);
    const long n = 60;
    const auto direct = oracle::riccati_orbit(params.p().raw(), params.q().raw(), params.sigma(), x0.raw(), n);
    if (static_cast<long>(direct.size()) != n + 1) continue;
    CHECK(closed_form_orbit(params, x0, n) == as_rationals(direct));
    CHECK(closed_form_term(params, x0, n) == Rational(direct.back()));
    ++tested;
  }
}

TEST_CASE("pole iff closed-form denominator vanishes") {
  oracle::RationalGen gen(32);
  for (int trial = 0; trial < 40; ++trial) {
    const RiccatiParams params(gen.positive(6, 2), gen.positive(6, 2), gen.coin() ? Branch::plus : Branch::minus);
    const ForbiddenSet set = forbidden_set(params, 6);
    // Forbidden seeds and a few random ones.
    std::vector<Rational> seeds = set.elements;
    for (int i = 0; i < 4; ++i) seeds.push_back(gen.any(10, 3));
    for (const Rational& x0 : seeds) {
      const OrbitReport rep = iterate_orbit(params, x0, 8);
      for (long m = 1; m <= 8; ++m) {
        const bool pole_here = rep.pole_step == m;
        if (rep.pole_step && m > *rep.pole_step) break;
        CHECK(pole_here == closed_form_denominator(params, x0, m).is_zero());
      }
    }
  }
}

TEST_CASE("fixed points") {
  SUBCASE("plus, p = q = 1") {
    const auto [a, b] = fixed_points(kGoldenPlus);
    CHECK(a == Surd(Rational(-1, 2), Rational(1, 2), 5));
    CHECK(b == Surd(Rational(-1, 2), Rational(-1, 2), 5));
    const Surd phi = Surd(Rational(1, 2), Rational(1, 2), 5);
    CHECK(a == phi.reciprocal());
    CHECK(b == (Surd(1) - phi).reciprocal());
  }
  SUBCASE("minus, p = q = 1") {
    const auto [a, b] = fixed_points(kGoldenMinus);
    CHECK(a == Surd(Rational(1, 2), Rational(1, 2), 5));
    CHECK(b == Surd(Rational(1, 2), Rational(-1, 2), 5));
  }
  SUBCASE("plus, p = 1, q = 2: rational") {
    const auto [a, b] = fixed_points(RiccatiParams(1, 2, Branch::plus));
    CHECK(a == Surd(1));
    CHECK(b == Surd(-2));
  }
  SUBCASE("absorption for random parameters") {
    oracle::RationalGen gen(33);
    for (int trial = 0; trial < 50; ++trial) {
      const RiccatiParams params(gen.positive(20, 5), gen.positive(20, 5), gen.coin() ? Branch::plus : Branch::minus);
      const auto [a, b] = fixed_points(params);
      CHECK(params.apply(a) == a);
      CHECK(params.apply(b) == b);
    }
  }
}

TEST_CASE("forbidden set examples") {
  CHECK(forbidden_set(kGoldenPlus, 4).elements ==
        std::vector<Rational>{-1, -2, Rational(-3, 2), Rational(-5, 3)});
  CHECK(forbidden_set(kGoldenMinus, 3).elements == std::vector<Rational>{1, 2, Rational(3, 2)});
  CHECK(forbidden_set(RiccatiParams(1, 2, Branch::plus), 2).elements == std::vector<Rational>{-1, -3});
  // And the orbit from -3 hits the pole after two steps.
  CHECK(iterate_orbit(RiccatiParams(1, 2, Branch::plus), -3, 4).pole_step == 2);
  CHECK_THROWS_AS(forbidden_set(kGoldenPlus, 0), DomainError);
}

TEST_CASE("forbidden set never reaches zero for positive p, q") {
  // plus: every element is below -p; minus: every element is above p.
  for (long p = 1; p <= 4; ++p) {
    for (long q = 1; q <= 4; ++q) {
      for (Branch b : {Branch::plus, Branch::minus}) {
        const ForbiddenSet set = forbidden_set(RiccatiParams(p, q, b), 30);
        CHECK_FALSE(set.truncated);
        CHECK(set.elements.size() == 30);
      }
    }
  }
}

TEST_CASE("forbidden set recursion and Lucas form") {
  oracle::RationalGen gen(34);
  for (int trial = 0; trial < 20; ++trial) {
    const RiccatiParams params(gen.positive(10, 4), gen.positive(10, 4), gen.coin() ? Branch::plus : Branch::minus);
    const ForbiddenSet set = forbidden_set(params, 20);
    CHECK(set.elements.front() == params.pole());
    for (std::size_t m = 0; m + 1 < set.elements.size(); ++m) {
      CHECK(params.apply(set.elements[m + 1]) == set.elements[m]);
    }
    if (params.branch() == Branch::plus) {
      for (long m = 1; m <= 20; ++m) {
        const Rational expected =
            -fundamental_lucas(params.p(), params.q(), m + 1) / fundamental_lucas(params.p(), params.q(), m);
        CHECK(set.elements[static_cast<std::size_t>(m - 1)] == expected);
      }
    }
  }
  // Fibonacci instance against the independent oracle, m <= 50.
  const ForbiddenSet golden = forbidden_set(kGoldenPlus, 50);
  for (long m = 1; m <= 50; ++m) {
    CHECK(golden.elements[static_cast<std::size_t>(m - 1)] ==
          Rational(BigInt(-oracle::fibonacci(m + 1)), BigInt(oracle::fibonacci(m))));
  }
}

TEST_CASE("classify_initial") {
  CHECK(classify_initial(kGoldenPlus, Surd(Rational(-5, 3)), 10) == Classification::forbidden(4));
  CHECK(classify_initial(kGoldenPlus, Surd(Rational(-1, 2), Rational(1, 2), 5), 10) == Classification::fixed_point());
  CHECK(classify_initial(kGoldenPlus, Surd(7), 10).kind == Classification::Kind::regular);
  CHECK(classify_initial(kGoldenPlus, Surd(Rational(-5, 3)), 3).kind == Classification::Kind::regular);
  CHECK(classify_initial(RiccatiParams(1, 2, Branch::plus), Surd(1), 5) == Classification::fixed_point());
  CHECK(classify_initial(kGoldenPlus, Surd(0, 1, 2), 5).kind == Classification::Kind::regular);
  CHECK(Classification::forbidden(4).str() == "forbidden_depth(4)");
}

TEST_CASE("substitution check") {
  SUBCASE("p = q = 1, (0, 1)") {
    const SubstitutionReport rep = substitution_check(kGoldenPlus, 0, 1, 6);
    CHECK(rep.all_pass());
    CHECK(rep.steps.size() == 7);
    const std::vector<Rational> fib{0, 1, 1, 2, 3, 5, 8};
    CHECK(std::vector<Rational>(rep.t_values.begin(), rep.t_values.begin() + 7) == fib);
  }
  SUBCASE("p = 1, q = 2, (0, 1): t_n = 2^{-(n-1)} u_n") {
    const SubstitutionReport rep = substitution_check(RiccatiParams(1, 2, Branch::plus), 0, 1, 5);
    CHECK(rep.all_pass());
    for (long n = 0; n <= 5; ++n) {
      CHECK(rep.t_values[static_cast<std::size_t>(n)] == Rational(2).pow(-(n - 1)) * fundamental_lucas(1, 2, n));
    }
  }
  SUBCASE("base case") {
    const SubstitutionReport rep = substitution_check(kGoldenPlus, 1, 1, 0);
    CHECK(rep.all_pass());
    REQUIRE(rep.steps.size() == 1);
    CHECK(rep.steps[0].x == Rational(1));
  }
  SUBCASE("pole maps to a zero t") {
    // x0 = t0/t1 = -2 reaches the pole at step 2: t_3 = 0.
    const SubstitutionReport rep = substitution_check(kGoldenPlus, -2, 1, 6);
    REQUIRE(rep.pole_step.has_value());
    CHECK(*rep.pole_step == 2);
    CHECK(rep.all_pass());
    CHECK(rep.t_values.back() == Rational(0));
  }
  SUBCASE("t1 = 0 rejected") { CHECK_THROWS_AS(substitution_check(kGoldenPlus, 1, 0, 3), DomainError); }
  SUBCASE("minus branch too") {
    CHECK(substitution_check(RiccatiParams(Rational(3, 2), 2, Branch::minus), 1, 3, 20).all_pass());
  }
}
