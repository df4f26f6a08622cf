#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "eqk/generators.hpp"
#include "eqk/transforms.hpp"
#include "helpers.hpp"

using namespace eqk;

namespace {
const FiniteDist coin = make_dist({{1, Rat(1, 2)}, {2, Rat(1, 2)}});
}

TEST_CASE("power bias") {
  CHECK(power_bias(coin, 2) == make_dist({{1, Rat(1, 5)}, {2, Rat(4, 5)}}));
  CHECK_THROWS_AS(power_bias(FiniteDist::delta(0), 1), ZeroMassError);
}

TEST_CASE("power bias composes additively") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 15; ++i) {
    FiniteDist d = gen::random_positive_dist(rng);
    unsigned a = static_cast<unsigned>(gen::pick(rng, 1, 3));
    unsigned b = static_cast<unsigned>(gen::pick(rng, 1, 3));
    CHECK(power_bias(power_bias(d, a), b) == power_bias(d, a + b));
  }
}

TEST_CASE("rising factorial bias") {
  CHECK(rising_factorial_bias(coin, 2) ==
        make_dist({{1, Rat(1, 4)}, {2, Rat(3, 4)}}));
  std::mt19937_64 rng(29);
  for (int i = 0; i < 15; ++i) {
    FiniteDist d = gen::random_positive_dist(rng);
    CHECK(rising_factorial_bias(d, 1) == power_bias(d, 1));
  }
}

TEST_CASE("discrete equilibrium") {
  FiniteDist e = discrete_equilibrium(coin);
  CHECK(e == make_dist({{1, Rat(2, 3)}, {2, Rat(1, 3)}}));
  std::mt19937_64 rng(31);
  for (int i = 0; i < 15; ++i) {
    FiniteDist d = gen::random_positive_dist(rng);
    FiniteDist de = discrete_equilibrium(d);
    Rat prev = 2;  // pmf is proportional to a survival, hence nonincreasing
    for (const auto& a : de.atoms()) {
      CHECK(a.weight <= prev);
      prev = a.weight;
    }
  }
}

TEST_CASE("generalized equilibrium survival") {
  GenEquilibrium g = gen_equilibrium(coin, Rat(1), 1);
  CHECK(gen_equib_survival(g, Rat(-1)) == 1);
  CHECK(gen_equib_survival(g, Rat(0)) == 1);
  CHECK(gen_equib_survival(g, Rat(1, 2)) == Rat(2, 3));
  CHECK(gen_equib_survival(g, Rat(2)) == 0);
  CHECK_THROWS_AS(gen_equilibrium(coin, Rat(0), 1), BadParamsError);
  GenEquilibrium h = gen_equilibrium(coin, Rat(1, 2), 1);
  CHECK_THROWS_AS(gen_equib_survival(h, Rat(1)), BadParamsError);
  // real-exponent evaluator agrees with the exact one for integer alpha
  Real diff = abs(gen_equib_survival_real(coin, Real(1), Real(1),
                                          Real(0.5)) -
                  to_real(Rat(2, 3)));
  CHECK(diff < Real("1e-40"));
}

TEST_CASE("record transform survival") {
  CHECK(record_survival(coin, Rat(2)) == Rat(3, 4));
  CHECK(record_survival(coin, Rat(0)) == 1);
  CHECK(record_survival(coin, Rat(3)) == 0);
}

TEST_CASE("scaling identity on a grid") {
  std::vector<Rat> grid = {Rat(1, 2), Rat(1), Rat(3, 2), Rat(2)};
  CHECK(check_scaling_identity(coin, Real(1), Real(1), 2, grid).holds);
  CHECK(check_scaling_identity(coin, Real("1.5"), Real(2), 3, grid).holds);
}

TEST_CASE("equilibrium of sums and mixtures") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 10; ++i) {
    FiniteDist d = gen::random_positive_dist(rng);
    unsigned n = static_cast<unsigned>(gen::pick(rng, 1, 4));
    CHECK(check_equilibrium_of_sum(d, n).holds);
    std::vector<std::pair<Rat, FiniteDist>> parts = {
        {Rat(1, 3), d}, {Rat(2, 3), gen::random_positive_dist(rng)}};
    CHECK(check_equilibrium_of_mixture(parts).holds);
  }
  CHECK_THROWS_AS(check_equilibrium_of_sum(coin, 0), BadParamsError);
}

TEST_CASE("power to factorial domination") {
  CheckReport rep = check_power_to_factorial(coin, 1);
  CHECK(rep.holds);
  CHECK(rep.params["p"] == "5/8");
  CHECK(rep.params["p_max"] == "15/16");
  std::mt19937_64 rng(41);
  for (int i = 0; i < 10; ++i)
    CHECK(check_power_to_factorial(gen::random_positive_dist(rng),
                                   static_cast<unsigned>(gen::pick(rng, 1, 3)))
              .holds);
}
