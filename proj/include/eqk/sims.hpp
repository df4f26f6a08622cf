#ifndef EQK_SIMS_HPP
#define EQK_SIMS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "eqk/dist.hpp"
#include "eqk/gw.hpp"
#include "eqk/report.hpp"
#include "eqk/urn.hpp"

namespace eqk {

/// Monte Carlo configuration. The resulting empirical law depends only on
/// (model parameters, samples, master_seed) -- never on workers.
struct SimConfig {
  std::string model;  // pref_attach | walk_local_time |
                      // walk_bridge_local_time | binary_tree_subtree | gw
  long long w = 1;                    // pref_attach seed weight
  long long l = 1;                    // pref_attach edges per node
  long long n = 0;                    // pref_attach edge count
  long long steps = 0;                // walk models: number of steps (2n)
  long long n_leaves = 0;             // binary tree leaf count
  long long k = 0;                    // binary tree chosen leaves
  std::optional<FiniteDist> child;    // gw offspring law
  long long generations = 0;          // gw generation index
  unsigned long long samples = 0;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
};

struct EmpiricalDist {
  std::map<long long, unsigned long long> counts;
  unsigned long long samples = 0;
};

namespace detail {

// Counter-based per-sample seed derivation: sample i gets the same stream
// no matter how samples are scheduled across workers.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 sample_rng(std::uint64_t master_seed,
                                  unsigned long long index) {
  return std::mt19937_64(splitmix64(master_seed + splitmix64(index)));
}

inline long long uniform_below(std::mt19937_64& rng, long long n) {
  return std::uniform_int_distribution<long long>(0, n - 1)(rng);
}

// One preferential attachment run; returns the seed weight after n edges.
// weights[0] is the seed; a new node (initial weight 1) arrives before every
// l-th edge and may receive its own edges, gaining weight immediately.
inline long long sample_pref_attach(std::mt19937_64& rng, long long w,
                                    long long l, long long n) {
  std::vector<long long> weights{w};
  long long total = w;
  for (long long m = 0; m < n; ++m) {
    if (m % l == 0) {
      weights.push_back(1);
      total += 1;
    }
    long long r = uniform_below(rng, total);  // total == B_m here
    for (size_t j = 0; j < weights.size(); ++j) {
      if (r < weights[j]) {
        weights[j] += 1;
        break;
      }
      r -= weights[j];
    }
    total += 1;
  }
  return weights[0];
}

inline long long sample_walk_local_time(std::mt19937_64& rng,
                                        long long steps) {
  long long pos = 0, visits = 1;  // origin counts at time 0
  for (long long i = 0; i < steps; ++i) {
    pos += (rng() & 1) ? 1 : -1;
    if (pos == 0) ++visits;
  }
  return visits;
}

inline long long sample_bridge_local_time(std::mt19937_64& rng,
                                          long long steps) {
  if (steps % 2 != 0) throw BadConfigError("bridge needs an even step count");
  std::vector<int> incr(static_cast<size_t>(steps));
  for (long long i = 0; i < steps; ++i) incr[static_cast<size_t>(i)] =
      (i < steps / 2) ? 1 : -1;
  std::shuffle(incr.begin(), incr.end(), rng);
  long long pos = 0, visits = 1;
  for (int s : incr) {
    pos += s;
    if (pos == 0) ++visits;
  }
  return visits;
}

// Uniform binary rooted plane tree by leaf insertion: at each growth step
// pick a uniform vertex and a uniform side, splice a new internal node above
// it with a fresh leaf on the chosen side. Returns the number of vertices in
// the minimal subtree spanned by the root and k uniformly chosen distinct
// leaves.
inline long long sample_tree_spanned(std::mt19937_64& rng, long long n_leaves,
                                     long long k) {
  if (n_leaves < 1 || k < 1 || k > n_leaves)
    throw BadConfigError("need 1 <= k <= n_leaves");
  std::vector<long long> parent{-1};
  std::vector<bool> is_leaf{true};
  for (long long j = 1; j < n_leaves; ++j) {
    long long v = uniform_below(rng, 2 * j - 1);
    bool leaf_first = (rng() & 1) != 0;
    (void)leaf_first;  // plane order does not affect the spanned count
    long long internal = static_cast<long long>(parent.size());
    parent.push_back(parent[static_cast<size_t>(v)]);
    is_leaf.push_back(false);
    long long leaf = internal + 1;
    parent.push_back(internal);
    is_leaf.push_back(true);
    parent[static_cast<size_t>(v)] = internal;
  }
  std::vector<long long> leaves;
  for (size_t v = 0; v < parent.size(); ++v)
    if (is_leaf[v]) leaves.push_back(static_cast<long long>(v));
  // k distinct leaves by partial Fisher-Yates
  for (long long i = 0; i < k; ++i) {
    long long j = i + uniform_below(rng, static_cast<long long>(leaves.size()) - i);
    std::swap(leaves[static_cast<size_t>(i)], leaves[static_cast<size_t>(j)]);
  }
  std::vector<bool> marked(parent.size(), false);
  long long root = 0;
  while (parent[static_cast<size_t>(root)] != -1)
    root = parent[static_cast<size_t>(root)];
  marked[static_cast<size_t>(root)] = true;
  long long count = 1;
  for (long long i = 0; i < k; ++i) {
    long long v = leaves[static_cast<size_t>(i)];
    while (!marked[static_cast<size_t>(v)]) {
      marked[static_cast<size_t>(v)] = true;
      ++count;
      v = parent[static_cast<size_t>(v)];
    }
  }
  return count;
}

inline long long sample_from_dist(std::mt19937_64& rng, const FiniteDist& d,
                                  const std::vector<double>& cdf_cache) {
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  for (size_t i = 0; i < cdf_cache.size(); ++i)
    if (u < cdf_cache[i]) return d.atoms()[i].point;
  return d.atoms().back().point;
}

inline long long sample_gw(std::mt19937_64& rng, const FiniteDist& child,
                           const std::vector<double>& cdf_cache,
                           long long generations) {
  long long z = 1;
  for (long long g = 0; g < generations && z > 0; ++g) {
    long long next = 0;
    for (long long i = 0; i < z; ++i)
      next += sample_from_dist(rng, child, cdf_cache);
    z = next;
  }
  return z;
}

}  // namespace detail

inline EmpiricalDist simulate(const SimConfig& cfg) {
  if (cfg.samples == 0) throw BadConfigError("samples must be positive");
  std::vector<double> cdf_cache;
  if (cfg.model == "gw") {
    if (!cfg.child) throw BadConfigError("gw model needs a child law");
    double acc = 0;
    for (const auto& a : cfg.child->atoms()) {
      acc += static_cast<double>(to_real(a.weight));
      cdf_cache.push_back(acc);
    }
  }
  EmpiricalDist emp;
  emp.samples = cfg.samples;
  for (unsigned long long i = 0; i < cfg.samples; ++i) {
    std::mt19937_64 rng = detail::sample_rng(cfg.master_seed, i);
    long long value;
    if (cfg.model == "pref_attach") {
      value = detail::sample_pref_attach(rng, cfg.w, cfg.l, cfg.n);
    } else if (cfg.model == "walk_local_time") {
      value = detail::sample_walk_local_time(rng, cfg.steps);
    } else if (cfg.model == "walk_bridge_local_time") {
      value = detail::sample_bridge_local_time(rng, cfg.steps);
    } else if (cfg.model == "binary_tree_subtree") {
      value = detail::sample_tree_spanned(rng, cfg.n_leaves, cfg.k);
    } else if (cfg.model == "gw") {
      value = detail::sample_gw(rng, *cfg.child, cdf_cache, cfg.generations);
    } else {
      throw BadConfigError("unknown model: " + cfg.model);
    }
    emp.counts[value] += 1;
  }
  return emp;
}

/// Exact total variation distance between an empirical law and a target pmf.
inline Rat tv_distance(const EmpiricalDist& e, const FiniteDist& d) {
  if (e.samples == 0) throw BadConfigError("empty empirical distribution");
  Rat total = 0;
  std::map<long long, Rat> diff;
  for (const auto& [k, c] : e.counts)
    diff[k] += Rat(static_cast<long long>(c), static_cast<long long>(e.samples));
  for (const auto& a : d.atoms()) diff[a.point] -= a.weight;
  for (const auto& [k, v] : diff) total += (v < 0) ? -v : v;
  return total / 2;
}

/// Exact total variation distance between two exact pmfs.
inline Rat tv_distance_exact(const FiniteDist& a, const FiniteDist& b) {
  std::map<long long, Rat> diff;
  for (const auto& x : a.atoms()) diff[x.point] += x.weight;
  for (const auto& y : b.atoms()) diff[y.point] -= y.weight;
  Rat total = 0;
  for (const auto& [k, v] : diff) total += (v < 0) ? -v : v;
  return total / 2;
}

// ---------------------------------------------------------------------------
// Exhaustive small-case enumerations
// ---------------------------------------------------------------------------

/// All 2^steps equally likely walk paths.
inline FiniteDist enumerate_walk_local_time(long long steps) {
  if (steps < 0 || steps > 24) throw BadConfigError("enumeration needs steps <= 24");
  std::map<long long, Rat> acc;
  unsigned long long paths = 1ULL << steps;
  Rat unit(1, static_cast<long long>(paths));
  for (unsigned long long mask = 0; mask < paths; ++mask) {
    long long pos = 0, visits = 1;
    for (long long i = 0; i < steps; ++i) {
      pos += ((mask >> i) & 1) ? 1 : -1;
      if (pos == 0) ++visits;
    }
    acc[visits] += unit;
  }
  std::vector<FiniteDist::Atom> atoms;
  for (auto& [k, w] : acc) atoms.push_back({k, w});
  return FiniteDist(std::move(atoms));
}

namespace detail {

inline void enumerate_pa(std::vector<long long>& weights, long long total,
                         long long m, long long l, long long n, const Rat& prob,
                         std::map<long long, Rat>& acc) {
  if (m == n) {
    acc[weights[0]] += prob;
    return;
  }
  if (m % l == 0) {
    weights.push_back(1);
    total += 1;
  }
  for (size_t j = 0; j < weights.size(); ++j) {
    Rat pj = prob * Rat(weights[j], total);
    weights[j] += 1;
    enumerate_pa(weights, total + 1, m + 1, l, n, pj, acc);
    weights[j] -= 1;
  }
  if (m % l == 0) weights.pop_back();
}

}  // namespace detail

/// Exact law of the seed weight by enumerating every attachment sequence.
inline FiniteDist enumerate_pref_attach(long long w, long long l,
                                        long long n) {
  if (n > 6) throw BadConfigError("enumeration needs n <= 6");
  std::map<long long, Rat> acc;
  std::vector<long long> weights{w};
  detail::enumerate_pa(weights, w, 0, l, n, Rat(1), acc);
  std::vector<FiniteDist::Atom> atoms;
  for (auto& [k, v] : acc) atoms.push_back({k, v});
  return FiniteDist(std::move(atoms));
}

// ---------------------------------------------------------------------------
// Cross-validation against the exact laws
// ---------------------------------------------------------------------------

/// The exact target law for each simulator:
///   seed weight of pref_attach(w,l) after n edges   ~ urn(1, w, l, n)
///   walk local time at time 2n                      ~ urn(1, 1, 1, n)
///   bridge local time at time 2n                    ~ urn(0, 1, 1, n)
///   spanned-subtree size, n leaves, k chosen        ~ urn(1, 2k, 1, n-k-1)
///   gw generation n                                 ~ exact compounding
inline FiniteDist exact_model_law(const SimConfig& cfg) {
  if (cfg.model == "pref_attach") return urn_pmf(1, cfg.w, cfg.l, cfg.n);
  if (cfg.model == "walk_local_time") {
    if (cfg.steps % 2 != 0) throw BadConfigError("walk map needs even steps");
    return urn_pmf(1, 1, 1, cfg.steps / 2);
  }
  if (cfg.model == "walk_bridge_local_time") {
    if (cfg.steps % 2 != 0) throw BadConfigError("bridge needs even steps");
    return urn_pmf(0, 1, 1, cfg.steps / 2);
  }
  if (cfg.model == "binary_tree_subtree") {
    if (cfg.n_leaves - cfg.k - 1 < 0) throw BadConfigError("need k <= n-1");
    return urn_pmf(1, 2 * cfg.k, 1, cfg.n_leaves - cfg.k - 1);
  }
  if (cfg.model == "gw") {
    if (!cfg.child) throw BadConfigError("gw model needs a child law");
    return detail::exact_generation(*cfg.child, cfg.generations, std::nullopt);
  }
  throw BadConfigError("unknown model: " + cfg.model);
}

inline CheckReport crossvalidate(const SimConfig& cfg,
                                 const Rat& tv_threshold = Rat(1, 50)) {
  CheckReport rep;
  rep.name = "sims.crossvalidate." + cfg.model;
  rep.exact = false;
  rep.params = {{"samples", cfg.samples},
                {"master_seed", cfg.master_seed},
                {"tv_threshold", rat_str(tv_threshold)}};
  FiniteDist target = exact_model_law(cfg);
  EmpiricalDist emp = simulate(cfg);
  Rat tv = tv_distance(emp, target);
  rep.params["tv"] = rat_str(tv);
  rep.params["tv_decimal"] = real_str(to_real(tv), 6);
  if (tv >= tv_threshold)
    rep.fail({{"tv", rat_str(tv)}, {"threshold", rat_str(tv_threshold)}});
  return rep;
}

}  // namespace eqk

#endif  // EQK_SIMS_HPP
