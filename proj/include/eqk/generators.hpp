#ifndef EQK_GENERATORS_HPP
#define EQK_GENERATORS_HPP

#include <random>
#include <vector>

#include "eqk/dist.hpp"

namespace eqk {

/// Seed-pinned generators for property suites. All exact: weights are built
/// as rationals and normalized exactly, never through floats.

namespace gen {

inline long long pick(std::mt19937_64& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(rng() % static_cast<unsigned long long>(
                                         hi - lo + 1));
}

/// Random distribution with support inside [min_point, min_point + span).
inline FiniteDist random_dist(std::mt19937_64& rng, long long min_point = 0,
                              long long span = 6, int max_atoms = 4) {
  int n = static_cast<int>(pick(rng, 1, max_atoms));
  std::vector<FiniteDist::Atom> raw;
  for (int i = 0; i < n; ++i) {
    long long point = pick(rng, min_point, min_point + span - 1);
    raw.push_back({point, Rat(pick(rng, 1, 12))});
  }
  return FiniteDist::from_weights(raw, /*normalize=*/true);
}

/// Random log-concave distribution on a contiguous window of {1,2,...}:
/// weights 2^{c_k} for an integer concave sequence c_k, so the inequality
/// p_k^2 >= p_{k-1} p_{k+1} becomes 2 c_k >= c_{k-1} + c_{k+1}, exact.
inline FiniteDist random_log_concave(std::mt19937_64& rng) {
  long long start = pick(rng, 1, 3);
  int len = static_cast<int>(pick(rng, 1, 7));
  long long c = pick(rng, 0, 3);
  long long d = pick(rng, -3, 3);  // first difference, then nonincreasing
  std::vector<FiniteDist::Atom> raw;
  for (int i = 0; i < len; ++i) {
    raw.push_back({start + i, pow_rat(Rat(2), c)});
    c += d;
    d -= pick(rng, 0, 2);
  }
  return FiniteDist::from_weights(raw, /*normalize=*/true);
}

/// Random D-IFR distribution on {1..len}: built from a nondecreasing hazard
/// sequence h_1 <= ... <= h_len = 1 via p_k = h_k prod_{j<k} (1 - h_j).
inline FiniteDist random_difr(std::mt19937_64& rng) {
  int len = static_cast<int>(pick(rng, 1, 7));
  const long long den = 24;
  std::vector<Rat> hazard;
  long long num = pick(rng, 1, den);
  for (int i = 0; i < len - 1; ++i) {
    hazard.emplace_back(num, den);
    num = pick(rng, num, den);
  }
  hazard.emplace_back(1);
  std::vector<FiniteDist::Atom> raw;
  Rat alive = 1;
  for (int k = 0; k < len; ++k) {
    Rat w = alive * hazard[static_cast<size_t>(k)];
    if (w != 0) raw.push_back({k + 1, w});
    alive *= 1 - hazard[static_cast<size_t>(k)];
  }
  return FiniteDist::from_weights(raw, /*normalize=*/false);
}

/// Random NBUE-hypothesis-friendly distribution: support in {1..}.
inline FiniteDist random_positive_dist(std::mt19937_64& rng,
                                       long long span = 6,
                                       int max_atoms = 4) {
  return random_dist(rng, 1, span, max_atoms);
}

}  // namespace gen

}  // namespace eqk

#endif  // EQK_GENERATORS_HPP
