#include <catch2/catch_amalgamated.hpp>

#include "eqk/bounds.hpp"
#include "eqk/urn.hpp"
#include "helpers.hpp"

using namespace eqk;

namespace {
bool close(const Real& a, const Real& b, const Real& tol = Real("1e-40")) {
  return abs(a - b) <= tol;
}
}

TEST_CASE("upper bound values") {
  CHECK(close(upper_tail_bound(Real(1), Real(1), Real(1), Real(2)),
              exp(Real(-1))));
  CHECK(close(upper_tail_bound(Real(2), Real(2), Real("0.5"), Real(2)),
              exp(Real(-1))));
  // alpha != beta at t = 1: t^alpha e^{2 - p}
  CHECK(close(upper_tail_bound(Real(1), Real(2), Real(1), Real(1)),
              exp(Real(1))));
  CHECK(upper_tail_bound(Real(1), Real(2), Real(1), Real(1)) >= 1);
}

TEST_CASE("lower bound values") {
  CHECK(close(lower_tail_bound(Real(1), Real(1), Real(1), Real("0.1")),
              Real("0.1")));
  CHECK(close(lower_tail_bound(Real(2), Real(1), Real(1), Real(1)),
              Real("0.5")));
  // alpha=1, beta=2, t=1/2: sqrt(1/2) * (1/2) / (1/2 - 1/4) = sqrt(2)
  CHECK(close(lower_tail_bound(Real(1), Real(2), Real(1), Real("0.5")),
              sqrt(Real(2))));
}

TEST_CASE("bound domain gates") {
  CHECK_THROWS_AS(upper_tail_bound(Real(1), Real(2), Real(1), Real("0.5")),
                  DomainError);
  CHECK(upper_tail_bound(Real(1), Real(2), Real(1), Real("0.5"),
                         /*unsafe_extrapolate=*/true) > 0);
  // lower bound needs t^beta < p alpha / beta
  CHECK_THROWS_AS(lower_tail_bound(Real(1), Real(2), Real(1), Real(1)),
                  DomainError);
  CHECK_THROWS_AS(upper_tail_bound(Real(1), Real(1), Real(1), Real(0)),
                  DomainError);
  CHECK_THROWS_AS(upper_tail_bound(Real(1), Real(1), Real(2), Real(1)),
                  BadParamsError);
  CHECK_THROWS_AS(upper_tail_bound(Real(0), Real(1), Real(1), Real(1)),
                  BadParamsError);
}

TEST_CASE("upper bound is monotone in p") {
  Real prev = upper_tail_bound(Real(1), Real(1), Real("0.1"), Real(2));
  for (int i = 2; i <= 10; ++i) {
    Real cur = upper_tail_bound(Real(1), Real(1), Real(i) / 10, Real(2));
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("order certification for the equilibrium") {
  FiniteDist d = make_dist({{1, Rat(1, 2)}, {2, Rat(1, 2)}});
  BoundCertification cert = certify_orders(d, Rat(1), 1);
  CHECK(cert.upper.holds);
  CHECK(cert.lower.holds);
  CHECK(cert.upper.p_max > 0);
  CHECK(cert.lower.p_max > 0);
}

TEST_CASE("bounds against an exact NBUE law") {
  FiniteDist d = capped_geometric(10, 2);
  std::vector<Rat> grid = {Rat(1, 2), Rat(1), Rat(3, 2), Rat(2)};
  CHECK(check_bounds_against(d, Rat(1), 1, Rat(1, 2), grid).holds);
  // a non-certifiable p is refused rather than silently checked
  CHECK_THROWS_AS(check_bounds_against(make_dist({{1, Rat(9, 10)},
                                                  {10, Rat(1, 10)}}),
                                       Rat(1), 1, Rat(1), grid),
                  HypothesisFailedError);
}

TEST_CASE("capped geometric fixture") {
  FiniteDist d = capped_geometric(10, 2);
  CHECK(d.min_support() == 1);
  CHECK(d.max_support() == 20);
  CHECK(d.pmf(20) == pow_rat(Rat(9, 10), 10));
  CheckReport rep = check_capped_geometric(10, 2);
  CHECK(rep.holds);
  CHECK(check_capped_geometric(1000, 3).holds);
}

TEST_CASE("exponential mixture fixture") {
  CHECK(check_exp_mixture(Real(2), Real("0.5")).holds);
}

TEST_CASE("supporting tail lemmas on small laws") {
  FiniteDist coin = make_dist({{1, Rat(1, 2)}, {2, Rat(1, 2)}});
  std::vector<Rat> grid = {Rat(1, 2), Rat(1), Rat(3, 2), Rat(2)};
  CHECK(verify_tail_lemmas("recexp", coin, Rat(1), 1, Rat(1, 2), grid)
            .holds);
  CHECK(verify_tail_lemmas("recbnd", coin, Rat(1), 1, Rat(1, 2), grid)
            .holds);
  // urn with w = l certifies the (w, l+1) order at p = 1, beta - alpha = 1
  FiniteDist d = urn_pmf(1, 2, 2, 12);
  CHECK(verify_tail_lemmas("int", d, Rat(2), 3, Rat(1), grid).holds);
  CHECK(verify_tail_lemmas("mrl", d, Rat(2), 3, Rat(1), grid).holds);
  CHECK_THROWS_AS(verify_tail_lemmas("nope", coin, Rat(1), 1, Rat(1), grid),
                  BadParamsError);
}
