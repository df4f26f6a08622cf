#include <catch2/catch_amalgamated.hpp>

#include "eqk/sims.hpp"
#include "eqk/urn.hpp"
#include "helpers.hpp"

using namespace eqk;

TEST_CASE("simulation is deterministic in the seed") {
  SimConfig cfg;
  cfg.model = "walk_local_time";
  cfg.steps = 6;
  cfg.samples = 500;
  cfg.master_seed = 42;
  EmpiricalDist a = simulate(cfg);
  EmpiricalDist b = simulate(cfg);
  CHECK(a.counts == b.counts);
  cfg.workers = 4;  // worker count must not change the stream
  EmpiricalDist c = simulate(cfg);
  CHECK(a.counts == c.counts);
  cfg.master_seed = 43;
  CHECK(simulate(cfg).counts != a.counts);
}

TEST_CASE("local time is always at least one") {
  SimConfig cfg;
  cfg.model = "walk_local_time";
  cfg.steps = 10;
  cfg.samples = 300;
  cfg.master_seed = 7;
  for (const auto& [k, c] : simulate(cfg).counts) CHECK(k >= 1);
}

TEST_CASE("TV distance") {
  FiniteDist coin = make_dist({{1, Rat(1, 2)}, {2, Rat(1, 2)}});
  CHECK(tv_distance_exact(coin, coin) == 0);
  CHECK(tv_distance_exact(coin, FiniteDist::delta(1)) == Rat(1, 2));
  EmpiricalDist e;
  e.counts = {{1, 1}, {2, 1}};
  e.samples = 2;
  CHECK(tv_distance(e, coin) == 0);
  CHECK(tv_distance(e, FiniteDist::delta(1)) == Rat(1, 2));
}

TEST_CASE("walk enumeration matches the urn law") {
  CHECK(enumerate_walk_local_time(2) ==
        make_dist({{1, Rat(1, 2)}, {2, Rat(1, 2)}}));
  for (long long n : {1, 2, 3, 4})
    CHECK(enumerate_walk_local_time(2 * n) == urn_pmf(1, 1, 1, n));
}

TEST_CASE("preferential attachment enumeration matches the urn law") {
  for (long long w : {1, 2})
    for (long long l : {1, 2})
      for (long long n : {1, 2, 3})
        CHECK(enumerate_pref_attach(w, l, n) == urn_pmf(1, w, l, n));
}

TEST_CASE("exact model laws") {
  SimConfig cfg;
  cfg.model = "pref_attach";
  cfg.w = 2;
  cfg.l = 1;
  cfg.n = 4;
  CHECK(exact_model_law(cfg) == urn_pmf(1, 2, 1, 4));
  cfg.model = "walk_bridge_local_time";
  cfg.steps = 6;
  CHECK(exact_model_law(cfg) == urn_pmf(0, 1, 1, 3));
  cfg.model = "binary_tree_subtree";
  cfg.n_leaves = 6;
  cfg.k = 2;
  CHECK(exact_model_law(cfg) == urn_pmf(1, 4, 1, 3));
}

TEST_CASE("crossvalidation at modest sample sizes") {
  SimConfig cfg;
  cfg.master_seed = 0xABCDEF;
  cfg.samples = 4000;
  cfg.model = "walk_local_time";
  cfg.steps = 8;
  CHECK(crossvalidate(cfg, Rat(1, 15)).holds);
  cfg.model = "binary_tree_subtree";
  cfg.n_leaves = 8;
  cfg.k = 3;
  CHECK(crossvalidate(cfg, Rat(1, 15)).holds);
  cfg.model = "gw";
  cfg.child = make_dist({{0, Rat(1, 4)}, {1, Rat(1, 4)}, {2, Rat(1, 2)}});
  cfg.generations = 3;
  CHECK(crossvalidate(cfg, Rat(1, 15)).holds);
}

TEST_CASE("simulation rejects bad configs") {
  SimConfig cfg;
  cfg.model = "walk_local_time";
  cfg.steps = 6;
  cfg.samples = 0;
  cfg.master_seed = 1;
  CHECK_THROWS_AS(simulate(cfg), BadConfigError);
  cfg.samples = 10;
  cfg.model = "nope";
  CHECK_THROWS_AS(simulate(cfg), BadConfigError);
}
