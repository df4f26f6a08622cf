#include <catch2/catch_amalgamated.hpp>

#include "eqk/transforms.hpp"
#include "eqk/urn.hpp"
#include "helpers.hpp"

using namespace eqk;

TEST_CASE("urn pmf small oracles") {
  CHECK(urn_pmf(1, 1, 1, 0) == FiniteDist::delta(1));
  CHECK(urn_pmf(1, 1, 1, 1) == make_dist({{1, Rat(1, 2)}, {2, Rat(1, 2)}}));
  // totals 2, 4: hand-rolled second step
  CHECK(urn_pmf(1, 1, 1, 2) ==
        make_dist({{1, Rat(3, 8)}, {2, Rat(3, 8)}, {3, Rat(1, 4)}}));
}

TEST_CASE("urn mass is exactly one") {
  for (long long n : {1, 5, 20}) {
    UrnSpec spec = UrnSpec::periodic(1, 2, 2, n);
    UrnRecurrence rec(spec);
    while (rec.can_step()) rec.step();
    Int total = 0;
    for (const Int& v : rec.nums()) total += v;
    CHECK(total == rec.denom());
  }
}

TEST_CASE("Polya urn with unit weights is uniform") {
  for (long long n : {1, 2, 7}) {
    FiniteDist d = polya_pmf(1, n);
    CHECK(d.min_support() == 1);
    CHECK(d.max_support() == n + 1);
    for (const auto& a : d.atoms()) CHECK(a.weight == Rat(1, n + 1));
  }
}

TEST_CASE("urn mean closed form") {
  for (long long w : {1, 2, 3})
    for (long long l : {1, 2})
      for (long long n : {1, 4, 9}) {
        UrnSpec spec = UrnSpec::periodic(1, w, l, n);
        CHECK(urn_mean(spec) == mean(urn_pmf(spec)));
      }
}

TEST_CASE("rising factorial moments, closed form vs pmf") {
  for (long long n : {1, 5, 12}) {
    FiniteDist d = urn_pmf(1, 2, 1, n);  // schedule 3, 5, 7, ...
    for (unsigned m : {1u, 2u, 3u}) {
      Rat direct = 0;
      for (const auto& a : d.atoms())
        direct += rising_factorial(Rat(a.point), 2 * m) * a.weight;
      CHECK(direct == rf_moment_closed_form(n, m));
    }
    CHECK(urn_second_moment_12(n) == moment(d, 2u));
  }
}

TEST_CASE("moment tail bound is a usable tail estimate") {
  auto [m, bound] = moment_tail_bound(100, Real(3), 10);
  CHECK(m >= 1);
  CHECK(bound > 0);
  CHECK(bound < 1);
  // monotone: a larger threshold gives a smaller optimized bound
  auto [m2, bound2] = moment_tail_bound(100, Real(4), 10);
  CHECK(bound2 < bound);
}

TEST_CASE("bridge schedule identity") {
  for (long long n : {1, 2, 3, 4, 5, 6})
    CHECK(urn_pmf(0, 1, 1, n) == urn_pmf(1, 2, 1, n - 1));
}

TEST_CASE("factorial bias shifts the white seed") {
  for (long long b : {0, 1, 2})
    for (long long w : {1, 2})
      for (long long l : {1, 2})
        for (unsigned r : {1u, 2u})
          for (long long n : {1, 2, 4}) {
            FiniteDist lhs =
                shift(rising_factorial_bias(urn_pmf(b, w, l, n), r),
                      static_cast<long long>(r));
            CHECK(lhs == urn_pmf(b, w + r, l, n));
          }
}

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS(UrnSpec::with_schedule(1, 1, {2, 2}), BadScheduleError);
  CHECK_THROWS_AS(UrnSpec::with_schedule(1, 1, {3}), BadScheduleError);
  CHECK_THROWS_AS(UrnSpec::periodic(1, 0, 1, 3), BadScheduleError);
  FiniteDist custom = urn_pmf(UrnSpec::with_schedule(1, 1, {2, 4}));
  CHECK(custom == urn_pmf(1, 1, 1, 2));
}

TEST_CASE("urn lemma grids on a small corner") {
  CHECK(verify_urn_lemmas("lc", {0, 1}, {1, 2}, {1, 2}, 8).holds);
  CHECK(verify_urn_lemmas("tech", {0, 1}, {1, 2}, {1, 2}, 8).holds);
  CHECK(verify_urn_lemmas("variant", {0, 1}, {1, 2}, {1, 2}, 8).holds);
  CHECK(verify_urn_lemmas("unfac", {1}, {1, 2}, {1, 2}, 8).holds);
  CHECK(verify_urn_lemmas("ineq", {1}, {1, 2}, {1, 2}, 8).holds);
  CHECK_THROWS_AS(verify_urn_lemmas("nope", {1}, {1}, {1}, 2),
                  BadParamsError);
}
