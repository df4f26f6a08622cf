#ifndef EQK_RELIABILITY_HPP
#define EQK_RELIABILITY_HPP

#include <optional>
#include <vector>

#include "eqk/dist.hpp"
#include "eqk/orders.hpp"
#include "eqk/transforms.hpp"

namespace eqk {

/// Verdict for a reliability-class membership test. When the verdict is
/// false, witness holds the index/threshold where the defining inequality
/// first fails. hazard carries P[X=k | X>=k] for k = 1..max when computed.
struct ClassReport {
  bool verdict = true;
  std::optional<long long> witness;
  std::vector<Rat> hazard;  // hazard[k-1] = P[X=k | X>=k]
};

/// Log-concavity of the pmf read on the full range 0..max: no internal
/// zeroes, and p_k^2 >= p_{k-1} p_{k+1} for every k.
inline ClassReport is_log_concave(const FiniteDist& d) {
  ClassReport rep;
  long long lo = d.min_support(), hi = d.max_support();
  for (long long k = lo; k <= hi; ++k) {
    if (d.pmf(k) == 0) {
      rep.verdict = false;
      rep.witness = k;  // internal zero
      return rep;
    }
  }
  for (long long k = 1; k < hi; ++k) {
    if (d.pmf(k) * d.pmf(k) < d.pmf(k - 1) * d.pmf(k + 1)) {
      rep.verdict = false;
      rep.witness = k;
      return rep;
    }
  }
  return rep;
}

/// Discrete increasing failure rate: P[X=k | X>=k] nondecreasing for k >= 1.
/// Requires support in {1,2,...}.
inline ClassReport is_difr(const FiniteDist& d) {
  if (d.pmf(0) != 0) throw SupportAtZeroError("is_difr: P[X=0] > 0");
  ClassReport rep;
  Rat tail = 1;  // P[X >= k]
  Rat prev = 0;
  for (long long k = 1; k <= d.max_support(); ++k) {
    Rat h = d.pmf(k) / tail;
    rep.hazard.push_back(h);
    if (h < prev) {
      rep.verdict = false;
      if (!rep.witness) rep.witness = k;
    }
    prev = h;
    tail -= d.pmf(k);
  }
  return rep;
}

/// New better than used in expectation. Computed both ways -- the
/// mean-residual-life characterization E[X-k | X>k] <= E X for k >= 1, and
/// stochastic domination of the discrete equilibrium transform -- and the two
/// routes are required to agree.
inline ClassReport is_nbue(const FiniteDist& d) {
  if (d.pmf(0) != 0) throw SupportAtZeroError("is_nbue: P[X=0] > 0");
  ClassReport rep;
  Rat m = mean(d);
  // mrl(d, k) = (tail_sum - k tail_mass) / tail_mass via suffix accumulation
  Rat tail_mass = 0, tail_sum = 0;
  auto it = d.atoms().rbegin();
  for (long long k = d.max_support() - 1; k >= 1; --k) {
    while (it != d.atoms().rend() && it->point > k) {
      tail_mass += it->weight;
      tail_sum += it->point * it->weight;
      ++it;
    }
    if (tail_mass != 0 && tail_sum - k * tail_mass > m * tail_mass) {
      rep.verdict = false;
      rep.witness = k;  // smallest failing k wins
    }
  }
  bool via_equilibrium = dominates(discrete_equilibrium(d), d).holds;
  if (via_equilibrium != rep.verdict)
    throw Error("is_nbue: the mrl and equilibrium routes disagree");
  return rep;
}

/// NBUEZT: the zero-truncated law [X | X>0] is NBUE.
inline ClassReport is_nbuezt(const FiniteDist& d) {
  return is_nbue(zero_truncate(d));
}

}  // namespace eqk

#endif  // EQK_RELIABILITY_HPP
