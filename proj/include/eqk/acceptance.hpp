#ifndef EQK_ACCEPTANCE_HPP
#define EQK_ACCEPTANCE_HPP

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "eqk/bounds.hpp"
#include "eqk/generators.hpp"
#include "eqk/gw.hpp"
#include "eqk/orders.hpp"
#include "eqk/reliability.hpp"
#include "eqk/sims.hpp"
#include "eqk/transforms.hpp"
#include "eqk/urn.hpp"

namespace eqk {

/// The full verification suite behind `verify all`. Each criterion returns a
/// CheckReport; `small` shrinks grids and sample counts for quick runs, `full`
/// uses the sizes the project is judged against.
enum class Budget { small, full };

namespace acceptance {

inline std::vector<long long> range(long long lo, long long hi) {
  std::vector<long long> v;
  for (long long i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

// 1. Urn recurrence: the n=2 hand value, and exact unit mass for every
// schedule on the (b, w, l) grid up to n_max.
inline CheckReport criterion_1(Budget budget) {
  CheckReport rep;
  rep.name = "1.urn_recurrence_exact";
  long long n_max = (budget == Budget::full) ? 200 : 50;
  rep.params = {{"n_max", n_max}};
  FiniteDist expected(
      {{1, Rat(3, 8)}, {2, Rat(3, 8)}, {3, Rat(1, 4)}});
  if (!(urn_pmf(1, 1, 1, 2) == expected))
    rep.fail({{"case", "urn_pmf(1,1,1,2)"}});
  for (long long b = 0; b <= 3; ++b)
    for (long long w = 1; w <= 4; ++w)
      for (long long l = 1; l <= 3; ++l) {
        UrnRecurrence rec(UrnSpec::periodic(b, w, l, n_max));
        for (;;) {
          Int total = 0;
          for (const Int& v : rec.nums()) total += v;
          if (total != rec.denom())
            rep.fail({{"b", b}, {"w", w}, {"l", l}, {"n", rec.n()}});
          if (!rec.can_step()) break;
          rec.step();
        }
      }
  return rep;
}

// 2. Appendix-style urn lemmas, exact on the periodic grid and (for the
// technical variant) on seed-pinned random non-periodic schedules.
inline CheckReport criterion_2(Budget budget) {
  CheckReport rep;
  rep.name = "2.urn_lemmas_exact";
  long long n_max = (budget == Budget::full) ? 50 : 20;
  int schedules = (budget == Budget::full) ? 100 : 20;
  rep.params = {{"n_max", n_max}, {"random_schedules", schedules}};
  auto b_set = range(0, 3), w_set = range(1, 4), l_set = range(1, 3);
  for (const char* kind : {"lc", "tech", "variant"}) {
    CheckReport sub = verify_urn_lemmas(kind, b_set, w_set, l_set, n_max);
    if (!sub.holds) rep.fail({{"kind", kind}, {"witnesses", sub.witnesses}});
  }
  std::mt19937_64 rng(0x5EED0002ULL);
  for (int s = 0; s < schedules; ++s) {
    long long b = gen::pick(rng, 0, 3), w = gen::pick(rng, 1, 4);
    long long len = gen::pick(rng, 5, (budget == Budget::full) ? 30 : 15);
    std::vector<long long> totals{b + w};
    for (long long i = 1; i < len; ++i)
      totals.push_back(totals.back() + gen::pick(rng, 1, 3));
    UrnSpec spec = UrnSpec::with_schedule(b, w, std::move(totals));
    CheckReport sub;
    check_urn_tech(spec, sub);
    if (!sub.holds)
      rep.fail({{"kind", "tech.random"}, {"schedule_index", s},
                {"witnesses", sub.witnesses}});
  }
  return rep;
}

// 3. Equilibrium domination and the unfactorialization lemma on the grid.
inline CheckReport criterion_3(Budget budget) {
  CheckReport rep;
  rep.name = "3.urn_domination_exact";
  long long n_max = (budget == Budget::full) ? 50 : 15;
  rep.params = {{"n_max", n_max}};
  for (long long w = 1; w <= 4; ++w)
    for (long long l = 1; l <= 3; ++l) {
      for (long long n = 1; n <= n_max; ++n) check_urn_ineq(w, l, n, rep);
      for (long long n = l; n <= n_max; ++n)
        check_urn_unfac(1, w, l, n, rep);
    }
  return rep;
}

// 4. Concentration bounds against exact urn laws.
inline CheckReport criterion_4(Budget) {
  CheckReport rep;
  rep.name = "4.bound_checks";
  std::vector<Rat> upper_grid, lower_grid;
  for (int i = 10; i <= 30; i += 2) upper_grid.emplace_back(i, 10);
  for (int i = 1; i <= 10; ++i) lower_grid.emplace_back(i, 20);
  FiniteDist d22 = urn_pmf(1, 2, 1, 100);
  CheckReport a = check_bounds_against(d22, Rat(2), 2, Rat(1), upper_grid);
  if (!a.holds) rep.fail({{"case", "(2,2) upper grid"}, {"w", a.witnesses}});
  CheckReport b = check_bounds_against(d22, Rat(2), 2, Rat(1), lower_grid);
  if (!b.holds) rep.fail({{"case", "(2,2) lower grid"}, {"w", b.witnesses}});
  FiniteDist d12 = urn_pmf(1, 1, 1, 100);
  CheckReport c = check_bounds_against(d12, Rat(1), 2, Rat(1), upper_grid);
  if (!c.holds) rep.fail({{"case", "(1,2) upper grid"}, {"w", c.witnesses}});
  return rep;
}

// 5. Closed-form rising factorial moments vs pmf moments, and the moment
// bound vs the concentration bound at n = 10^4.
inline CheckReport criterion_5(Budget budget) {
  CheckReport rep;
  rep.name = "5.moment_bound_comparison";
  long long n_max = (budget == Budget::full) ? 100 : 30;
  rep.params = {{"n_max", n_max}};
  UrnRecurrence rec(UrnSpec::periodic(1, 2, 1, n_max));
  for (;;) {
    for (unsigned m = 1; m <= 5; ++m) {
      Rat from_pmf = 0;
      for (long long i = 0; i <= rec.n(); ++i)
        from_pmf += rising_factorial(Rat(2 + i), 2 * m) *
                    Rat(rec.nums()[static_cast<size_t>(i)]) /
                    Rat(rec.denom());
      if (from_pmf != rf_moment_closed_form(rec.n(), m))
        rep.fail({{"n", rec.n()}, {"m", m}});
    }
    if (!rec.can_step()) break;
    rec.step();
  }
  auto [m3, bound3] = moment_tail_bound(10000, Real(3), 20);
  auto [m4, bound4] = moment_tail_bound(10000, Real(4), 20);
  Real conc3 = exp(Real(1 - 9)), conc4 = exp(Real(1 - 16));
  rep.params["bound_t3"] = real_str(bound3);
  rep.params["bound_t3_m"] = m3;
  rep.params["bound_t4_over_conc"] = real_str(bound4 / conc4);
  if (bound3 <= conc3)
    rep.fail({{"reason", "moment bound at t=3 not above e^{-8}"}});
  if (bound4 < conc4)
    rep.fail({{"reason", "moment bound at t=4 below e^{1-16}"}});
  return rep;
}

// 6. Closure counterexamples, exactly.
inline CheckReport criterion_6(Budget) {
  CheckReport rep;
  rep.name = "6.counterexamples_exact";
  CheckReport sub = verify_counterexamples();
  if (!sub.holds) rep.fail({{"witnesses", sub.witnesses}});
  FiniteDist c1({{1, Rat(1, 8)}, {2, Rat(49, 64)}, {3, Rat(7, 64)}});
  FiniteDist z2 = gw_generation(c1, 2).to_dist();
  if (z2.min_support() != 1 || z2.max_support() != 9)
    rep.fail({{"reason", "Z_2 support"}});
  if (z2.pmf(2) != Rat(441, 4096))
    rep.fail({{"reason", "P[Z_2=2]"}, {"value", rat_str(z2.pmf(2))}});
  return rep;
}

inline FiniteDist truncated_geometric_half(long long cap) {
  std::vector<FiniteDist::Atom> atoms;
  Rat w(1, 2), tail = 1;
  for (long long k = 1; k < cap; ++k) {
    atoms.push_back({k, w});
    tail -= w;
    w /= 2;
  }
  atoms.push_back({cap, tail});
  return FiniteDist(std::move(atoms));
}

// 7. Galton-Watson closures: geometric fixture for gw1, small D-IFR child
// for gw2.
inline CheckReport criterion_7(Budget budget) {
  CheckReport rep;
  rep.name = "7.gw_closures";
  long long gw_cap = (budget == Budget::full) ? 400 : 320;
  FiniteDist child = truncated_geometric_half(60);
  CheckReport g1 = verify_gw1(child, 3, gw_cap, default_gw_t_grid(),
                              /*allow_truncation=*/true);
  if (!g1.holds) rep.fail({{"case", "gw1"}, {"witnesses", g1.witnesses}});
  Rat tol = pow_rat(Rat(1, 2), 50);
  SubDist z{{{1, Rat(1)}}, Rat(0)};
  for (long long n = 1; n <= 3; ++n) {
    z = detail::compound_sub(child, z, gw_cap);
    if (z.truncated_mass > tol)
      rep.fail({{"case", "gw1"}, {"n", n}, {"reason", "truncated mass"}});
    Rat q = pow_rat(Rat(1, 2), n);
    for (const auto& a : z.atoms) {
      Rat geom = pow_rat(1 - q, a.point - 1) * q;
      Rat diff = a.weight - geom;
      if (diff < 0) diff = -diff;
      if (diff > tol)
        rep.fail({{"case", "gw1"}, {"n", n}, {"k", a.point},
                  {"reason", "pointwise geometric mismatch"}});
    }
  }
  FiniteDist child2({{0, Rat(1, 4)}, {1, Rat(1, 4)}, {2, Rat(1, 2)}});
  CheckReport g2 = verify_gw2(child2, 4);
  if (!g2.holds) rep.fail({{"case", "gw2"}, {"witnesses", g2.witnesses}});
  return rep;
}

// 8. Sharpness fixtures.
inline CheckReport criterion_8(Budget) {
  CheckReport rep;
  rep.name = "8.sharpness_fixtures";
  CheckReport capped = check_capped_geometric(1000, 3);
  if (!capped.holds)
    rep.fail({{"case", "capped"}, {"witnesses", capped.witnesses}});
  Real ratio(capped.params["tail_over_e1mt"].get<std::string>());
  rep.params["capped_ratio"] = capped.params["tail_over_e1mt"];
  if (abs(ratio - 1) > Real("0.002"))
    rep.fail({{"case", "capped"}, {"reason", "ratio to e^{-2}"}});
  CheckReport mix = check_exp_mixture(Real(2), Real(1) / 2);
  rep.params["ltail_inf"] = mix.params["ltail_inf"];
  rep.params["small_t_ratio"] = mix.params["small_t_ratio"];
  if (!mix.holds)
    rep.fail({{"case", "mixture"}, {"witnesses", mix.witnesses}});
  return rep;
}

// 9. Transform identities on seed-pinned random instances.
inline CheckReport criterion_9(Budget budget) {
  CheckReport rep;
  rep.name = "9.transform_identities";
  int trials = (budget == Budget::full) ? 1000 : 100;
  rep.params = {{"trials", trials}};
  std::mt19937_64 rng(0x5EED0009ULL);
  for (int i = 0; i < trials; ++i) {
    FiniteDist d = gen::random_positive_dist(rng);
    unsigned n = static_cast<unsigned>(gen::pick(rng, 1, 3));
    if (!check_equilibrium_of_sum(d, n).holds)
      rep.fail({{"identity", "sum"}, {"trial", i}});

    int parts_n = static_cast<int>(gen::pick(rng, 2, 3));
    std::vector<std::pair<Rat, FiniteDist>> parts;
    Rat left = 1;
    for (int j = 0; j < parts_n; ++j) {
      Rat h = (j + 1 == parts_n) ? left : left / 2;
      left -= h;
      parts.emplace_back(h, gen::random_positive_dist(rng));
    }
    if (!check_equilibrium_of_mixture(parts).holds)
      rep.fail({{"identity", "mixture"}, {"trial", i}});

    unsigned l = static_cast<unsigned>(gen::pick(rng, 1, 3));
    if (!check_power_to_factorial(d, l).holds)
      rep.fail({{"identity", "power_to_factorial"}, {"trial", i}});

    Rat p(gen::pick(rng, 0, 8), 8), q(gen::pick(rng, 0, 8), 8);
    if (!(thin(thin(d, p), q) == thin(d, p * q)))
      rep.fail({{"identity", "thinning_semigroup"}, {"trial", i}});

    unsigned a = static_cast<unsigned>(gen::pick(rng, 0, 2));
    unsigned b = static_cast<unsigned>(gen::pick(rng, 0, 2));
    if (!(power_bias(power_bias(d, a), b) == power_bias(d, a + b)))
      rep.fail({{"identity", "power_bias_composition"}, {"trial", i}});
  }
  return rep;
}

// 10. Reliability hierarchy and D-IFR thinning closure.
inline CheckReport criterion_10(Budget budget) {
  CheckReport rep;
  rep.name = "10.reliability_hierarchy";
  int hier_trials = (budget == Budget::full) ? 10000 : 1000;
  int thin_trials = (budget == Budget::full) ? 1000 : 100;
  rep.params = {{"hierarchy_trials", hier_trials},
                {"thinning_trials", thin_trials}};
  std::mt19937_64 rng(0x5EED0010ULL);
  for (int i = 0; i < hier_trials; ++i) {
    FiniteDist lc = gen::random_log_concave(rng);
    if (!is_log_concave(lc).verdict)
      rep.fail({{"trial", i}, {"reason", "generator not log-concave"}});
    if (!is_difr(lc).verdict)
      rep.fail({{"trial", i}, {"reason", "log-concave but not D-IFR"}});
    if (!is_nbue(lc).verdict)
      rep.fail({{"trial", i}, {"reason", "log-concave but not NBUE"}});
    FiniteDist di = gen::random_difr(rng);
    if (!is_difr(di).verdict)
      rep.fail({{"trial", i}, {"reason", "generator not D-IFR"}});
    if (!is_nbue(di).verdict)
      rep.fail({{"trial", i}, {"reason", "D-IFR but not NBUE"}});
  }
  for (int i = 0; i < thin_trials; ++i) {
    FiniteDist di = gen::random_difr(rng);
    for (int num = 1; num <= 9; ++num) {
      FiniteDist t = thin(di, Rat(num, 10));
      if (survival(t, Rat(0), true) == 0) continue;
      if (!is_difr(zero_truncate(t)).verdict)
        rep.fail({{"trial", i}, {"p", rat_str(Rat(num, 10))},
                  {"reason", "thinning broke D-IFR"}});
    }
  }
  return rep;
}

// 11. Monte Carlo cross-validation plus exhaustive small cases.
inline CheckReport criterion_11(Budget budget) {
  CheckReport rep;
  rep.name = "11.monte_carlo_crossvalidation";
  unsigned long long samples = (budget == Budget::full) ? 100000 : 10000;
  Rat threshold = (budget == Budget::full) ? Rat(1, 50) : Rat(1, 20);
  rep.params = {{"samples", samples}, {"threshold", rat_str(threshold)}};

  SimConfig pa;
  pa.model = "pref_attach";
  pa.w = 1; pa.l = 1; pa.n = 30;
  pa.samples = samples; pa.master_seed = 0xC0FFEE11ULL;
  SimConfig wk;
  wk.model = "walk_local_time";
  wk.steps = 40;
  wk.samples = samples; wk.master_seed = 0xC0FFEE12ULL;
  SimConfig br;
  br.model = "walk_bridge_local_time";
  br.steps = 40;
  br.samples = samples; br.master_seed = 0xC0FFEE13ULL;
  SimConfig tr;
  tr.model = "binary_tree_subtree";
  tr.n_leaves = 20; tr.k = 2;
  tr.samples = samples; tr.master_seed = 0xC0FFEE14ULL;
  for (const SimConfig& cfg : {pa, wk, br, tr}) {
    CheckReport sub = crossvalidate(cfg, threshold);
    rep.params[cfg.model + "_tv"] = sub.params["tv_decimal"];
    if (!sub.holds) rep.fail({{"model", cfg.model},
                              {"tv", sub.params["tv"]}});
  }

  // exhaustive small cases, TV exactly 0
  for (long long n : {1LL, 2LL}) {
    FiniteDist walk = enumerate_walk_local_time(2 * n);
    if (tv_distance_exact(walk, urn_pmf(1, 1, 1, n)) != 0)
      rep.fail({{"case", "walk_enumeration"}, {"n", n}});
  }
  for (long long w : {1LL, 2LL})
    for (long long l : {1LL, 2LL})
      for (long long n = 1; n <= 3; ++n) {
        FiniteDist pae = enumerate_pref_attach(w, l, n);
        if (tv_distance_exact(pae, urn_pmf(1, w, l, n)) != 0)
          rep.fail({{"case", "pref_attach_enumeration"},
                    {"w", w}, {"l", l}, {"n", n}});
      }
  return rep;
}

// 12. Tail lemma checks.
inline CheckReport criterion_12(Budget budget) {
  CheckReport rep;
  rep.name = "12.tail_lemmas";
  int trials = (budget == Budget::full) ? 1000 : 200;
  rep.params = {{"trials", trials}};
  std::mt19937_64 rng(0x5EED0012ULL);
  for (int i = 0; i < trials; ++i) {
    FiniteDist d = gen::random_positive_dist(rng);
    std::vector<Rat> t_grid;
    for (const auto& a : d.atoms()) t_grid.emplace_back(a.point);
    t_grid.emplace_back(d.max_support() + 1);
    CheckReport re = verify_tail_lemmas("recexp", d, Rat(1), 1, Rat(1), t_grid);
    if (!re.holds) rep.fail({{"kind", "recexp"}, {"trial", i},
                             {"witnesses", re.witnesses}});
    CheckReport rb = verify_tail_lemmas("recbnd", d, Rat(1), 1, Rat(1), t_grid);
    if (!rb.holds) rep.fail({{"kind", "recbnd"}, {"trial", i},
                             {"witnesses", rb.witnesses}});
  }
  long long n_urn = (budget == Budget::full) ? 50 : 20;
  std::vector<Rat> t_grid{Rat(1, 2), Rat(1), Rat(3, 2), Rat(2), Rat(3)};
  // beta - alpha = +1: w = l; beta - alpha = -1: w = l + 2
  std::vector<std::pair<long long, long long>> configs{
      {1, 1}, {2, 2}, {3, 3}, {3, 1}, {4, 2}};
  for (auto [w, l] : configs) {
    FiniteDist d = urn_pmf(1, w, l, n_urn);
    Rat alpha(w);
    unsigned beta = static_cast<unsigned>(l) + 1;
    CheckReport ci = verify_tail_lemmas("int", d, alpha, beta, Rat(1), t_grid);
    if (!ci.holds) rep.fail({{"kind", "int"}, {"w", w}, {"l", l},
                             {"witnesses", ci.witnesses}});
    CheckReport cm = verify_tail_lemmas("mrl", d, alpha, beta, Rat(1), t_grid);
    if (!cm.holds) rep.fail({{"kind", "mrl"}, {"w", w}, {"l", l},
                             {"witnesses", cm.witnesses}});
  }
  return rep;
}

inline std::vector<CheckReport> run_all(Budget budget) {
  std::vector<std::function<CheckReport(Budget)>> criteria{
      criterion_1, criterion_2, criterion_3, criterion_4,
      criterion_5, criterion_6, criterion_7, criterion_8,
      criterion_9, criterion_10, criterion_11, criterion_12};
  std::vector<CheckReport> out;
  for (auto& c : criteria) out.push_back(c(budget));
  return out;
}

}  // namespace acceptance

}  // namespace eqk

#endif  // EQK_ACCEPTANCE_HPP
