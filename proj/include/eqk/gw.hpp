#ifndef EQK_GW_HPP
#define EQK_GW_HPP

#include <optional>
#include <string>
#include <vector>

#include "eqk/bounds.hpp"
#include "eqk/dist.hpp"
#include "eqk/reliability.hpp"
#include "eqk/report.hpp"

namespace eqk {

/// Branching process setup: offspring law, number of generations, truncation
/// cap, and the truncated-mass budget tolerated before checks abort.
struct GWSpec {
  FiniteDist child;
  long long generations = 0;
  std::optional<long long> cap;
  Rat truncated_mass_budget = 0;
};

namespace detail {

// compound(count, summand) where the summand is a sub-probability law; any
// mass already lost by the summand, or pushed above the cap, accumulates.
inline SubDist compound_sub(const FiniteDist& count, const SubDist& summand,
                            long long cap) {
  std::map<long long, Rat> power;  // summand^{*j}, truncated
  power[0] = 1;
  Rat power_trunc = 0;
  std::map<long long, Rat> result;
  Rat result_trunc = 0;
  long long j = 0;
  for (const auto& c : count.atoms()) {
    while (j < c.point) {
      std::map<long long, Rat> next;
      Rat next_trunc = power_trunc;
      for (const auto& [k, w] : power) {
        for (const auto& a : summand.atoms) {
          long long s = k + a.point;
          Rat m = w * a.weight;
          if (s > cap)
            next_trunc += m;
          else
            next[s] += m;
        }
        next_trunc += w * summand.truncated_mass;
      }
      power = std::move(next);
      power_trunc = next_trunc;
      ++j;
    }
    for (const auto& [k, w] : power) result[k] += c.weight * w;
    result_trunc += c.weight * power_trunc;
  }
  std::vector<FiniteDist::Atom> atoms;
  for (auto& [k, w] : result)
    if (w != 0) atoms.push_back({k, w});
  return SubDist{std::move(atoms), result_trunc};
}

inline long long default_gw_cap(const FiniteDist& child, long long n) {
  Int c = pow_int(Int(child.max_support()), static_cast<unsigned>(n));
  Int limit = 1000000;  // dense maps beyond this are hopeless anyway
  if (c > limit)
    throw BudgetExceededError("exact support too large; pass an explicit cap");
  return static_cast<long long>(c);
}

}  // namespace detail

/// Law of the n-th generation started from a single individual:
/// Z_0 = 1, Z_{n+1} = sum of L i.i.d. copies of Z_n. Exact whenever the cap
/// covers max(child)^n; otherwise the overflow mass is tracked exactly.
inline SubDist gw_generation(const GWSpec& spec) {
  if (spec.generations < 0) throw BadParamsError("generations must be >= 0");
  long long cap = spec.cap ? *spec.cap
                           : detail::default_gw_cap(spec.child,
                                                    spec.generations);
  if (spec.generations > 0 && cap < spec.child.max_support())
    throw BadParamsError("cap must be >= max(child)");
  SubDist z{{{1, Rat(1)}}, Rat(0)};
  for (long long g = 0; g < spec.generations; ++g)
    z = detail::compound_sub(spec.child, z, cap);
  return z;
}

inline SubDist gw_generation(const FiniteDist& child, long long n,
                             std::optional<long long> cap = std::nullopt) {
  return gw_generation(GWSpec{child, n, cap, Rat(0)});
}

/// E[Z | Z > 0], exact.
inline Rat conditional_mean(const FiniteDist& z) {
  Rat pos = survival(z, Rat(0), /*strict=*/true);
  if (pos == 0) throw AllMassAtZeroError("P[Z > 0] = 0");
  return mean(z) / pos;
}

namespace detail {

inline FiniteDist exact_generation(const FiniteDist& child, long long n,
                                   std::optional<long long> cap) {
  SubDist z = gw_generation(child, n, cap);
  if (z.truncated_mass != 0)
    throw BudgetExceededError("generation " + std::to_string(n) +
                              " lost mass to the cap; exact mode needs a "
                              "larger cap");
  return z.to_dist();
}

}  // namespace detail

/// Default rational t-grid for the generation tail bounds: {1/10, ..., 5}.
inline std::vector<Rat> default_gw_t_grid() {
  std::vector<Rat> g;
  for (int i = 1; i <= 50; ++i) g.emplace_back(i, 10);
  return g;
}

/// (gw1) NBUE closure: an NBUE offspring law with P[L=0] = 0 gives NBUE
/// generations, with tails P[Z_n >= t mu^n] <= e^{1-t} and
/// P[Z_n <= t mu^n] <= t. The zero-mass hypothesis is a hard gate.
inline CheckReport verify_gw1(const FiniteDist& child, long long n_max,
                              std::optional<long long> cap = std::nullopt,
                              std::vector<Rat> t_grid = default_gw_t_grid(),
                              bool allow_truncation = false) {
  if (child.pmf(0) > 0)
    throw HypothesisFailedError("gw1 requires P[L=0] = 0");
  if (!is_nbue(child).verdict)
    throw HypothesisFailedError("gw1 requires an NBUE offspring law");
  CheckReport rep;
  rep.name = "gw.gw1";
  rep.params = {{"n_max", n_max}};
  Rat mu = mean(child);
  Rat mu_n = 1;
  SubDist z{{{1, Rat(1)}}, Rat(0)};
  long long eff_cap =
      cap ? *cap : detail::default_gw_cap(child, n_max);
  for (long long n = 1; n <= n_max; ++n) {
    z = detail::compound_sub(child, z, eff_cap);
    mu_n *= mu;
    bool exact = (z.truncated_mass == 0);
    if (!exact && !allow_truncation)
      throw BudgetExceededError("generation lost mass to the cap; pass "
                                "allow_truncation for pessimistic tails");
    nlohmann::json row = {{"n", n},
                          {"truncated_mass", rat_str(z.truncated_mass)}};
    if (exact) {
      FiniteDist zn = FiniteDist(z.atoms);
      if (!is_nbue(zn).verdict) rep.fail({{"n", n}, {"reason", "not NBUE"}});
    } else {
      row["nbue"] = "skipped (truncated)";
    }
    // tails: truncated mass is charged to the upper tail and forgiven in the
    // lower tail, so both comparisons stay valid sub-probability statements
    for (const Rat& t : t_grid) {
      Rat thresh = t * mu_n;
      Rat upper = z.truncated_mass;
      Rat lower = 0;
      for (const auto& a : z.atoms) {
        if (Rat(a.point) >= thresh) upper += a.weight;
        if (Rat(a.point) <= thresh) lower += a.weight;
      }
      Real ub = exp(1 - to_real(t));
      if (to_real(upper) > ub + Real("1e-30"))
        rep.fail({{"n", n}, {"t", rat_str(t)}, {"side", "upper"},
                  {"tail", rat_str(upper)}, {"bound", real_str(ub)}});
      if (lower > t)
        rep.fail({{"n", n}, {"t", rat_str(t)}, {"side", "lower"},
                  {"cdf", rat_str(lower)}, {"bound", rat_str(t)}});
    }
    rep.add_margin(row);
  }
  return rep;
}

/// (gw2) conditional closure: if [L | L>0] is D-IFR then each generation is
/// NBUEZT, with tails P[Z_n >= t m(n) | Z_n>0] <= e^{1-t} and
/// P[Z_n <= t m(n) | Z_n>0] <= t, where m(n) = E[Z_n | Z_n>0].
inline CheckReport verify_gw2(const FiniteDist& child, long long n_max,
                              std::optional<long long> cap = std::nullopt,
                              std::vector<Rat> t_grid = default_gw_t_grid()) {
  if (survival(child, Rat(0), /*strict=*/true) == 0)
    throw HypothesisFailedError("gw2 requires P[L>0] > 0");
  if (!is_difr(zero_truncate(child)).verdict)
    throw HypothesisFailedError("gw2 requires [L | L>0] to be D-IFR");
  CheckReport rep;
  rep.name = "gw.gw2";
  rep.params = {{"n_max", n_max}};
  for (long long n = 1; n <= n_max; ++n) {
    FiniteDist zn = detail::exact_generation(child, n, cap);
    if (survival(zn, Rat(0), /*strict=*/true) == 0) {
      rep.add_margin({{"n", n}, {"note", "extinct"}});
      continue;
    }
    if (!is_nbuezt(zn).verdict)
      rep.fail({{"n", n}, {"reason", "not NBUEZT"}});
    FiniteDist zt = zero_truncate(zn);
    Rat mn = mean(zt);
    for (const Rat& t : t_grid) {
      Rat thresh = t * mn;
      Rat upper = survival(zt, thresh, /*strict=*/false);
      Rat lower = 1 - survival(zt, thresh, /*strict=*/true);
      Real ub = exp(1 - to_real(t));
      if (to_real(upper) > ub + Real("1e-30"))
        rep.fail({{"n", n}, {"t", rat_str(t)}, {"side", "upper"},
                  {"tail", rat_str(upper)}, {"bound", real_str(ub)}});
      if (lower > t)
        rep.fail({{"n", n}, {"t", rat_str(t)}, {"side", "lower"},
                  {"cdf", rat_str(lower)}, {"bound", rat_str(t)}});
    }
    rep.add_margin({{"n", n}, {"m_n", rat_str(mn)}});
  }
  return rep;
}

/// (randsum) NBUEZT random sums: if the summand is NBUEZT and the count
/// thinned by P[summand >= 1] is NBUEZT, then the random sum is NBUEZT.
inline CheckReport verify_randsum(const FiniteDist& count,
                                  const FiniteDist& summand) {
  Rat pp = survival(summand, Rat(0), /*strict=*/true);
  if (pp == 0) throw HypothesisFailedError("summand has no positive mass");
  if (!is_nbuezt(summand).verdict)
    throw HypothesisFailedError("summand is not NBUEZT");
  FiniteDist thinned = thin(count, pp);
  if (survival(thinned, Rat(0), /*strict=*/true) == 0 ||
      !is_nbuezt(thinned).verdict)
    throw HypothesisFailedError("thinned count is not NBUEZT");
  CheckReport rep;
  rep.name = "gw.randsum";
  FiniteDist s = compound(count, summand).to_dist();
  if (survival(s, Rat(0), /*strict=*/true) == 0)
    rep.fail({{"reason", "random sum is identically 0"}});
  else if (!is_nbuezt(s).verdict)
    rep.fail({{"reason", "random sum is not NBUEZT"}});
  return rep;
}

/// The representation behind the random-sum lemma:
/// compound(L, X) = compound(Bin(L, p'), [X | X>0]) with p' = P[X >= 1].
inline bool randsum_representation_holds(const FiniteDist& count,
                                         const FiniteDist& summand) {
  Rat pp = survival(summand, Rat(0), /*strict=*/true);
  if (pp == 0) return compound(count, summand).to_dist() == FiniteDist::delta(0);
  FiniteDist lhs = compound(count, summand).to_dist();
  FiniteDist rhs = compound(thin(count, pp), zero_truncate(summand)).to_dist();
  return lhs == rhs;
}

/// The three closure counterexamples.
///   c1: a log-concave, D-IFR offspring law whose second generation is
///       neither log-concave nor D-IFR
///   c2: a five-point NBUE law all of whose thinnings fail NBUEZT
///   c3: the capped geometric is NBUE with tail approaching e^{1-t}
inline CheckReport verify_counterexamples() {
  CheckReport rep;
  rep.name = "gw.counterexamples";

  // c1
  FiniteDist c1({{1, Rat(1, 8)}, {2, Rat(49, 64)}, {3, Rat(7, 64)}});
  if (!is_log_concave(c1).verdict)
    rep.fail({{"case", "c1"}, {"reason", "child not log-concave"}});
  if (!is_difr(c1).verdict)
    rep.fail({{"case", "c1"}, {"reason", "child not D-IFR"}});
  FiniteDist z2 = detail::exact_generation(c1, 2, std::nullopt);
  if (is_log_concave(z2).verdict)
    rep.fail({{"case", "c1"}, {"reason", "Z_2 unexpectedly log-concave"}});
  if (is_difr(z2).verdict)
    rep.fail({{"case", "c1"}, {"reason", "Z_2 unexpectedly D-IFR"}});
  rep.params["c1_z2_pmf_2"] = rat_str(z2.pmf(2));

  // c2
  FiniteDist c2({{1, Rat(89, 100)},
                 {2, Rat(109, 1000)},
                 {3, Rat(9, 10000)},
                 {4, Rat(1, 11250)},
                 {5, Rat(1, 90000)}});
  if (!is_nbue(c2).verdict)
    rep.fail({{"case", "c2"}, {"reason", "L not NBUE"}});
  for (int i = 1; i <= 99; ++i) {
    if (is_nbuezt(thin(c2, Rat(i, 100))).verdict)
      rep.fail({{"case", "c2"}, {"p", rat_str(Rat(i, 100))},
                {"reason", "thinning unexpectedly NBUEZT"}});
  }

  // c3
  CheckReport capped = check_capped_geometric(1000, 3);
  if (!capped.holds) rep.fail({{"case", "c3"}});
  Real ratio(capped.params["tail_over_e1mt"].get<std::string>());
  rep.params["c3_tail_over_e1mt"] = capped.params["tail_over_e1mt"];
  if (abs(ratio - 1) > Real("0.002"))
    rep.fail({{"case", "c3"}, {"reason", "tail not close to e^{1-t}"}});
  return rep;
}

/// Dispatcher used by the CLI.
inline CheckReport verify_gw_closures(const std::string& kind,
                                      const FiniteDist& child,
                                      long long n_max,
                                      std::optional<long long> cap =
                                          std::nullopt) {
  if (kind == "gw1") return verify_gw1(child, n_max, cap);
  if (kind == "gw2") return verify_gw2(child, n_max, cap);
  throw BadParamsError("unknown gw closure kind: " + kind);
}

}  // namespace eqk

#endif  // EQK_GW_HPP
