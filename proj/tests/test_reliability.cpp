#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "eqk/generators.hpp"
#include "eqk/reliability.hpp"
#include "helpers.hpp"

using namespace eqk;

TEST_CASE("log concavity verdicts") {
  CHECK(is_log_concave(
            make_dist({{1, Rat(1, 4)}, {2, Rat(1, 2)}, {3, Rat(1, 4)}}))
            .verdict);
  ClassReport bad = is_log_concave(
      make_dist({{1, Rat(1, 2)}, {2, Rat(1, 4)}, {3, Rat(1, 4)}}));
  CHECK_FALSE(bad.verdict);
  CHECK(bad.witness == 2);
  ClassReport gap = is_log_concave(make_dist({{1, Rat(1, 2)}, {3, Rat(1, 2)}}));
  CHECK_FALSE(gap.verdict);
  CHECK(gap.witness == 2);  // internal zero
  CHECK(is_log_concave(FiniteDist::delta(4)).verdict);
}

TEST_CASE("increasing failure rate verdicts") {
  CHECK(is_difr(FiniteDist::delta(1)).verdict);
  ClassReport r = is_difr(make_dist({{1, Rat(1, 2)}, {2, Rat(1, 2)}}));
  CHECK(r.verdict);
  REQUIRE(r.hazard.size() == 2);
  CHECK(r.hazard[0] == Rat(1, 2));
  CHECK(r.hazard[1] == 1);
  ClassReport bad = is_difr(make_dist({{1, Rat(1, 2)}, {3, Rat(1, 2)}}));
  CHECK_FALSE(bad.verdict);
  CHECK(bad.witness == 2);
  CHECK_THROWS_AS(is_difr(make_dist({{0, Rat(1, 2)}, {1, Rat(1, 2)}})),
                  SupportAtZeroError);
}

TEST_CASE("NBUE verdicts") {
  CHECK(is_nbue(make_dist({{1, Rat(1, 2)}, {2, Rat(1, 2)}})).verdict);
  ClassReport bad =
      is_nbue(make_dist({{1, Rat(9, 10)}, {10, Rat(1, 10)}}));
  CHECK_FALSE(bad.verdict);
  CHECK(bad.witness == 1);
  CHECK_THROWS_AS(is_nbue(make_dist({{0, Rat(1, 2)}, {1, Rat(1, 2)}})),
                  SupportAtZeroError);
  // the zero-truncated variant accepts mass at zero
  CHECK(is_nbuezt(make_dist({{0, Rat(1, 2)}, {1, Rat(1, 2)}})).verdict);
  CHECK_FALSE(is_nbuezt(make_dist({{0, Rat(1, 2)}, {1, Rat(9, 20)},
                                   {10, Rat(1, 20)}}))
                  .verdict);
}

TEST_CASE("class hierarchy on random members") {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 40; ++i) {
    FiniteDist lc = gen::random_log_concave(rng);
    REQUIRE(is_log_concave(lc).verdict);
    CHECK(is_difr(lc).verdict);
    CHECK(is_nbue(lc).verdict);
    FiniteDist difr = gen::random_difr(rng);
    REQUIRE(is_difr(difr).verdict);
    CHECK(is_nbue(difr).verdict);
    CHECK(is_nbuezt(difr).verdict);
  }
}

TEST_CASE("thinning preserves zero-truncated D-IFR") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 20; ++i) {
    FiniteDist d = gen::random_difr(rng);
    for (long long num : {1, 2, 3})
      CHECK(is_difr(zero_truncate(thin(d, Rat(num, 4)))).verdict);
  }
}
