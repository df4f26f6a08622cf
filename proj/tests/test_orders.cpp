#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "eqk/generators.hpp"
#include "eqk/orders.hpp"
#include "helpers.hpp"

using namespace eqk;

namespace {
const FiniteDist coin = make_dist({{1, Rat(1, 2)}, {2, Rat(1, 2)}});
}

TEST_CASE("dominates basics") {
  CHECK(dominates(coin, coin).holds);
  CHECK(dominates(coin, shift(coin, 1)).holds);
  CHECK_FALSE(dominates(shift(coin, 1), coin).holds);
  OrderReport r = dominates(FiniteDist::delta(2), FiniteDist::delta(1));
  CHECK_FALSE(r.holds);
  CHECK(r.witness_t == 1);
}

TEST_CASE("utail p_max oracle") {
  FiniteDist pb = power_bias(coin, 2);               // {1:1/5, 2:4/5}
  FiniteDist fb = rising_factorial_bias(coin, 2);    // {1:1/4, 2:3/4}
  OrderReport r = utail_pmax(pb, fb);
  CHECK(r.p_max == Rat(15, 16));
  CHECK(r.raw_inf == Rat(15, 16));
  CHECK(r.witness_t == 1);
  CHECK(r.constrained);
}

TEST_CASE("ltail p_max oracle") {
  OrderReport r = ltail_pmax(FiniteDist::delta(2), FiniteDist::delta(1));
  CHECK(r.p_max == 0);
  CHECK_FALSE(r.holds);
  CHECK(ltail_pmax(coin, shift(coin, 1)).p_max == 1);
  OrderReport s = ltail_pmax(shift(coin, 1), coin);  // F_x(1)=0, F_y(1)=1/2
  CHECK(s.p_max == 0);
}

TEST_CASE("orders are monotone in p below p_max") {
  // at p = p_max / 2 every threshold inequality holds with slack
  std::mt19937_64 rng(43);
  for (int i = 0; i < 20; ++i) {
    FiniteDist x = gen::random_dist(rng), y = gen::random_dist(rng);
    OrderReport r = utail_pmax(x, y);
    if (!r.constrained || r.p_max == 0) continue;
    Rat p = r.p_max / 2;
    long long hi = std::max(x.max_support(), y.max_support());
    for (long long t = -1; t < hi; ++t)
      CHECK(p * survival(x, Rat(t)) <= survival(y, Rat(t)));
  }
}

TEST_CASE("integer grid matches a fine rational grid") {
  // the infimum over real thresholds is attained on the integer grid; a
  // 1/20-step rational grid over the support must agree exactly
  std::mt19937_64 rng(47);
  for (int i = 0; i < 10; ++i) {
    FiniteDist x = gen::random_positive_dist(rng);
    FiniteDist y = gen::random_positive_dist(rng);
    GenEquilibrium g = gen_equilibrium(x, Rat(gen::pick(rng, 1, 3)),
                                       static_cast<unsigned>(
                                           gen::pick(rng, 1, 2)));
    OrderReport r = utail_pmax(g, y);
    if (!r.constrained) continue;
    Rat fine_inf = 0;
    bool seen = false;
    long long hi = std::max(x.max_support(), y.max_support());
    for (long long k = -20; k < hi * 20; ++k) {
      Rat t(k, 20);
      Rat sx = gen_equib_survival(g, t);
      if (sx == 0) continue;
      Rat ratio = survival(y, t, /*strict=*/true) / sx;
      if (!seen || ratio < fine_inf) {
        fine_inf = ratio;
        seen = true;
      }
    }
    REQUIRE(seen);
    CHECK(fine_inf == r.raw_inf);
  }
}

TEST_CASE("monotone coupling is exact") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 20; ++i) {
    FiniteDist x = gen::random_dist(rng);
    FiniteDist y = convolve(x, gen::random_dist(rng));  // adds >= 0
    REQUIRE(dominates(x, y).holds);
    auto cells = monotone_coupling(x, y);
    std::map<long long, Rat> mx, my;
    for (const auto& c : cells) {
      CHECK(c.x <= c.y);
      CHECK(c.mass > 0);
      mx[c.x] += c.mass;
      my[c.y] += c.mass;
    }
    for (const auto& a : x.atoms()) CHECK(mx[a.point] == a.weight);
    for (const auto& a : y.atoms()) CHECK(my[a.point] == a.weight);
  }
  CHECK_THROWS_AS(
      monotone_coupling(FiniteDist::delta(2), FiniteDist::delta(1)),
      NotDominatedError);
}
