#ifndef EQK_DIST_HPP
#define EQK_DIST_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "eqk/errors.hpp"
#include "eqk/real.hpp"

namespace eqk {

/// A finitely supported probability distribution on the nonnegative integers
/// with exact rational weights. Immutable after construction; atoms are kept
/// sorted by point, weights are strictly positive and sum to exactly 1.
class FiniteDist {
 public:
  struct Atom {
    long long point;
    Rat weight;
    bool operator==(const Atom& o) const {
      return point == o.point && weight == o.weight;
    }
  };

  explicit FiniteDist(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.point < b.point; });
    Rat total = 0;
    long long prev = -1;
    for (const Atom& a : atoms_) {
      if (a.point < 0) throw BadWeightsError("negative support point");
      if (a.point == prev) throw BadWeightsError("duplicate support point");
      if (a.weight <= 0) throw BadWeightsError("non-positive weight");
      prev = a.point;
      total += a.weight;
    }
    if (total != 1) throw BadWeightsError("weights do not sum to 1");
  }

  static FiniteDist delta(long long c) { return FiniteDist({{c, Rat(1)}}); }

  // Drops zero weights, merges duplicates, optionally renormalizes.
  static FiniteDist from_weights(const std::vector<Atom>& raw,
                                 bool normalize = false) {
    std::map<long long, Rat> acc;
    Rat total = 0;
    for (const Atom& a : raw) {
      if (a.weight < 0) throw BadWeightsError("negative weight");
      if (a.weight == 0) continue;
      acc[a.point] += a.weight;
      total += a.weight;
    }
    if (total == 0) throw ZeroMassError("no mass");
    std::vector<Atom> atoms;
    atoms.reserve(acc.size());
    for (auto& [k, w] : acc)
      atoms.push_back({k, normalize ? Rat(w / total) : w});
    return FiniteDist(std::move(atoms));
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  long long min_support() const { return atoms_.front().point; }
  long long max_support() const { return atoms_.back().point; }

  Rat pmf(long long k) const {
    auto it = std::lower_bound(
        atoms_.begin(), atoms_.end(), k,
        [](const Atom& a, long long v) { return a.point < v; });
    if (it != atoms_.end() && it->point == k) return it->weight;
    return Rat(0);
  }

  bool operator==(const FiniteDist& o) const { return atoms_ == o.atoms_; }

 private:
  std::vector<Atom> atoms_;
};

/// P[X>t] (strict) or P[X>=t] (weak), exact.
inline Rat survival(const FiniteDist& d, const Rat& t, bool strict = true) {
  Rat s = 0;
  for (const auto& a : d.atoms()) {
    if (strict ? (a.point > t) : (a.point >= t)) s += a.weight;
  }
  return s;
}

/// Survival against a real threshold. The weights stay exact; only the
/// point-vs-threshold comparison happens in real arithmetic.
inline Rat survival(const FiniteDist& d, const Real& t, bool strict = true) {
  Rat s = 0;
  for (const auto& a : d.atoms()) {
    Real p(a.point);
    if (strict ? (p > t) : (p >= t)) s += a.weight;
  }
  return s;
}

inline Rat cdf(const FiniteDist& d, const Rat& t) {
  return 1 - survival(d, t, /*strict=*/true);
}

inline Rat cdf(const FiniteDist& d, const Real& t) {
  return 1 - survival(d, t, /*strict=*/true);
}

/// E[X^beta], exact for integer beta.
inline Rat moment(const FiniteDist& d, unsigned beta) {
  Rat m = 0;
  for (const auto& a : d.atoms())
    m += pow_rat(Rat(a.point), beta) * a.weight;
  return m;
}

inline Real moment(const FiniteDist& d, const Real& beta) {
  Real m = 0;
  for (const auto& a : d.atoms()) {
    if (a.point == 0) continue;
    m += pow(Real(a.point), beta) * to_real(a.weight);
  }
  return m;
}

inline Rat mean(const FiniteDist& d) { return moment(d, 1u); }

/// mu^beta = (beta/alpha) E[X^beta], exact for integer beta and rational
/// alpha. The rescaling factor itself is mu = (mu^beta)^(1/beta).
inline Rat mu_pow_beta(const FiniteDist& d, const Rat& alpha, unsigned beta) {
  if (alpha <= 0 || beta == 0) throw BadParamsError("alpha, beta must be > 0");
  Rat m = moment(d, beta);
  if (m == 0) throw ZeroMassError("E[X^beta] = 0");
  return Rat(beta) / alpha * m;
}

inline Real mu_factor(const FiniteDist& d, const Real& alpha,
                      const Real& beta) {
  if (alpha <= 0 || beta <= 0) throw BadParamsError("alpha, beta must be > 0");
  Real m = moment(d, beta);
  if (m == 0) throw ZeroMassError("E[X^beta] = 0");
  return pow(beta / alpha * m, 1 / beta);
}

/// Weak/strict survival where the threshold is given as thresh = (mu*t)^beta:
/// compares k^beta against thresh, which is exact whenever thresh is rational.
inline Rat survival_power_threshold(const FiniteDist& d, const Rat& thresh,
                                    unsigned beta, bool strict) {
  Rat s = 0;
  for (const auto& a : d.atoms()) {
    Rat kp = pow_rat(Rat(a.point), beta);
    if (strict ? (kp > thresh) : (kp >= thresh)) s += a.weight;
  }
  return s;
}

inline FiniteDist convolve(const FiniteDist& a, const FiniteDist& b) {
  std::map<long long, Rat> acc;
  for (const auto& x : a.atoms())
    for (const auto& y : b.atoms()) acc[x.point + y.point] += x.weight * y.weight;
  std::vector<FiniteDist::Atom> atoms;
  for (auto& [k, w] : acc) atoms.push_back({k, w});
  return FiniteDist(std::move(atoms));
}

inline FiniteDist convolve_power(const FiniteDist& d, unsigned n) {
  FiniteDist r = FiniteDist::delta(0);
  for (unsigned i = 0; i < n; ++i) r = convolve(r, d);
  return r;
}

inline FiniteDist mixture(
    const std::vector<std::pair<Rat, FiniteDist>>& parts) {
  Rat total = 0;
  for (const auto& [w, _] : parts) {
    if (w <= 0) throw BadWeightsError("mixture weight must be positive");
    total += w;
  }
  if (total != 1) throw BadWeightsError("mixture weights must sum to 1");
  std::map<long long, Rat> acc;
  for (const auto& [w, d] : parts)
    for (const auto& a : d.atoms()) acc[a.point] += w * a.weight;
  std::vector<FiniteDist::Atom> atoms;
  for (auto& [k, v] : acc) atoms.push_back({k, v});
  return FiniteDist(std::move(atoms));
}

/// Binomial thinning Bin(X, p), exact.
inline FiniteDist thin(const FiniteDist& d, const Rat& p) {
  if (p < 0 || p > 1) throw BadParamsError("thinning p must lie in [0,1]");
  if (p == 1) return d;
  std::map<long long, Rat> acc;
  const Rat q = 1 - p;  // q > 0 since p < 1 here
  for (const auto& a : d.atoms()) {
    long long k = a.point;
    // P[Bin(k,p)=j] = C(k,j) p^j (1-p)^(k-j), built up iteratively
    Rat term = pow_rat(q, k);
    for (long long j = 0; j <= k; ++j) {
      if (term != 0) acc[j] += a.weight * term;
      if (j < k) term = term * p / q * Rat(k - j) / Rat(j + 1);
    }
  }
  std::vector<FiniteDist::Atom> atoms;
  for (auto& [k, w] : acc)
    if (w != 0) atoms.push_back({k, w});
  return FiniteDist(std::move(atoms));
}

/// [X | X > 0], exact renormalization.
inline FiniteDist zero_truncate(const FiniteDist& d) {
  Rat pos = survival(d, Rat(0), /*strict=*/true);
  if (pos == 0) throw AllMassAtZeroError("P[X>0] = 0");
  std::vector<FiniteDist::Atom> atoms;
  for (const auto& a : d.atoms())
    if (a.point > 0) atoms.push_back({a.point, a.weight / pos});
  return FiniteDist(std::move(atoms));
}

/// Sub-probability mass function: exact atom weights plus the exact mass that
/// fell above the truncation cap.
struct SubDist {
  std::vector<FiniteDist::Atom> atoms;
  Rat truncated_mass;

  FiniteDist to_dist() const {
    if (truncated_mass != 0)
      throw BudgetExceededError("truncated mass is nonzero");
    return FiniteDist(atoms);
  }
};

namespace detail {

inline void truncated_convolve(std::map<long long, Rat>& acc, Rat& trunc,
                               const FiniteDist& d, long long cap) {
  std::map<long long, Rat> next;
  Rat next_trunc = trunc;  // already-lost mass stays lost
  for (const auto& [k, w] : acc) {
    for (const auto& a : d.atoms()) {
      long long s = k + a.point;
      Rat m = w * a.weight;
      if (s > cap)
        next_trunc += m;
      else
        next[s] += m;
    }
  }
  acc = std::move(next);
  trunc = next_trunc;
}

}  // namespace detail

/// Distribution of sum_{k=1}^{L} X_k with L ~ count, X_k ~ summand i.i.d.
/// Mass at points above cap is aggregated into truncated_mass; the returned
/// atom weights are exact sub-probability values.
inline SubDist compound(const FiniteDist& count, const FiniteDist& summand,
                        std::optional<long long> cap = std::nullopt) {
  long long effective_cap =
      cap.value_or(count.max_support() * summand.max_support());
  std::map<long long, Rat> result;
  Rat result_trunc = 0;

  std::map<long long, Rat> power;  // law of X_1 + ... + X_j, truncated
  power[0] = 1;
  Rat power_trunc = 0;
  long long j = 0;
  for (const auto& c : count.atoms()) {
    while (j < c.point) {
      detail::truncated_convolve(power, power_trunc, summand, effective_cap);
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

/// Mean residual life E[X-t | X>t]; 0 when P[X>t] = 0.
inline Rat mrl(const FiniteDist& d, const Rat& t) {
  Rat g = 0, acc = 0;
  for (const auto& a : d.atoms()) {
    if (a.point > t) {
      g += a.weight;
      acc += (a.point - t) * a.weight;
    }
  }
  if (g == 0) return Rat(0);
  return acc / g;
}

inline FiniteDist shift(const FiniteDist& d, long long r) {
  std::vector<FiniteDist::Atom> atoms;
  for (const auto& a : d.atoms()) atoms.push_back({a.point + r, a.weight});
  return FiniteDist(std::move(atoms));
}

/// Law of X^gamma for a positive integer gamma.
inline FiniteDist pow_dist(const FiniteDist& d, unsigned gamma) {
  if (gamma == 0) throw BadParamsError("gamma must be positive");
  std::vector<FiniteDist::Atom> atoms;
  for (const auto& a : d.atoms()) {
    Int p = pow_int(Int(a.point), gamma);
    atoms.push_back({static_cast<long long>(p), a.weight});
  }
  return FiniteDist(std::move(atoms));
}

}  // namespace eqk

#endif  // EQK_DIST_HPP
