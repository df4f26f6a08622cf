#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "eqk/generators.hpp"
#include "eqk/gw.hpp"
#include "helpers.hpp"

using namespace eqk;

namespace {
const FiniteDist half2 = make_dist({{0, Rat(1, 2)}, {2, Rat(1, 2)}});
}

TEST_CASE("generation law small oracle") {
  SubDist z1 = gw_generation(half2, 1);
  CHECK(z1.truncated_mass == 0);
  CHECK(z1.to_dist() == half2);
  SubDist z2 = gw_generation(half2, 2);
  CHECK(z2.to_dist() ==
        make_dist({{0, Rat(5, 8)}, {2, Rat(1, 4)}, {4, Rat(1, 8)}}));
  CHECK(gw_generation(half2, 0).to_dist() == FiniteDist::delta(1));
}

TEST_CASE("generation mean is multiplicative") {
  FiniteDist child =
      make_dist({{0, Rat(1, 4)}, {1, Rat(1, 4)}, {2, Rat(1, 2)}});
  Rat mu = mean(child);
  for (long long n : {1, 2, 3, 4})
    CHECK(mean(gw_generation(child, n).to_dist()) == pow_rat(mu, n));
}

TEST_CASE("extinction probability is nondecreasing in n") {
  FiniteDist child =
      make_dist({{0, Rat(1, 3)}, {1, Rat(1, 3)}, {2, Rat(1, 3)}});
  Rat prev = 0;
  for (long long n = 1; n <= 5; ++n) {
    Rat q = gw_generation(child, n).to_dist().pmf(0);
    CHECK(q >= prev);
    prev = q;
  }
}

TEST_CASE("capped generation tracks lost mass exactly") {
  SubDist z = gw_generation(half2, 3, 2);
  Rat total = z.truncated_mass;
  for (const auto& a : z.atoms) {
    CHECK(a.point <= 2);
    total += a.weight;
  }
  CHECK(total == 1);
  CHECK(z.truncated_mass > 0);
  CHECK_THROWS_AS(gw_generation(half2, 3, 1), BadParamsError);
}

TEST_CASE("default cap refuses oversized supports") {
  FiniteDist wide = make_dist({{0, Rat(1, 2)}, {10, Rat(1, 2)}});
  CHECK_THROWS_AS(gw_generation(wide, 7), BudgetExceededError);
}

TEST_CASE("conditional mean") {
  CHECK(conditional_mean(half2) == 2);
  CHECK(conditional_mean(FiniteDist::delta(3)) == 3);
  CHECK_THROWS_AS(conditional_mean(FiniteDist::delta(0)),
                  AllMassAtZeroError);
}

TEST_CASE("gw1 hypothesis gates") {
  CHECK_THROWS_AS(verify_gw1(half2, 2), HypothesisFailedError);
  FiniteDist not_nbue = make_dist({{1, Rat(9, 10)}, {10, Rat(1, 10)}});
  CHECK_THROWS_AS(verify_gw1(not_nbue, 2), HypothesisFailedError);
  FiniteDist ok = make_dist({{1, Rat(1, 2)}, {2, Rat(1, 2)}});
  CHECK(verify_gw1(ok, 3).holds);
}

TEST_CASE("gw1 exact mode refuses silent truncation") {
  FiniteDist ok = make_dist({{1, Rat(1, 2)}, {2, Rat(1, 2)}});
  CHECK_THROWS_AS(verify_gw1(ok, 4, 8), BudgetExceededError);
  // cap 14 trims only the top sliver of Z_4 (support up to 16); the
  // pessimistic tails still clear the bounds
  CHECK(verify_gw1(ok, 4, 14, default_gw_t_grid(), /*allow_truncation=*/true)
            .holds);
}

TEST_CASE("gw2 on a conditionally D-IFR law") {
  FiniteDist child =
      make_dist({{0, Rat(1, 4)}, {1, Rat(1, 4)}, {2, Rat(1, 2)}});
  CHECK(verify_gw2(child, 3).holds);
  FiniteDist bad = make_dist({{1, Rat(1, 2)}, {3, Rat(1, 2)}});
  CHECK_THROWS_AS(verify_gw2(bad, 2), HypothesisFailedError);
}

TEST_CASE("random sums of NBUEZT laws") {
  FiniteDist count = make_dist({{1, Rat(1, 2)}, {2, Rat(1, 2)}});
  FiniteDist summand =
      make_dist({{0, Rat(1, 4)}, {1, Rat(1, 4)}, {2, Rat(1, 2)}});
  CHECK(verify_randsum(count, summand).holds);
  CHECK_THROWS_AS(verify_randsum(count, FiniteDist::delta(0)),
                  HypothesisFailedError);
}

TEST_CASE("random sum thinning representation") {
  std::mt19937_64 rng(67);
  for (int i = 0; i < 25; ++i) {
    FiniteDist count = gen::random_dist(rng);
    FiniteDist summand = gen::random_dist(rng);
    CHECK(randsum_representation_holds(count, summand));
  }
}

TEST_CASE("closure counterexamples hold") {
  CHECK(verify_counterexamples().holds);
}

TEST_CASE("closure dispatcher") {
  FiniteDist child =
      make_dist({{0, Rat(1, 4)}, {1, Rat(1, 4)}, {2, Rat(1, 2)}});
  CHECK(verify_gw_closures("gw2", child, 2).holds);
  CHECK_THROWS_AS(verify_gw_closures("nope", child, 2), BadParamsError);
}
