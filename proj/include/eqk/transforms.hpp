#ifndef EQK_TRANSFORMS_HPP
#define EQK_TRANSFORMS_HPP

#include <utility>
#include <vector>

#include "eqk/dist.hpp"
#include "eqk/report.hpp"

namespace eqk {

/// beta-power bias: weights proportional to k^beta * p_k. Exact for integer
/// beta (the only case the exact engine needs; real beta goes through
/// gen_equib_survival_real).
inline FiniteDist power_bias(const FiniteDist& d, unsigned beta) {
  Rat norm = moment(d, beta);
  if (norm == 0) throw ZeroMassError("E[X^beta] = 0");
  std::vector<FiniteDist::Atom> atoms;
  for (const auto& a : d.atoms()) {
    Rat w = pow_rat(Rat(a.point), beta) * a.weight / norm;
    if (w != 0) atoms.push_back({a.point, w});
  }
  return FiniteDist(std::move(atoms));
}

/// Rising-factorial bias: weights proportional to k(k+1)...(k+r-1) * p_k.
inline FiniteDist rising_factorial_bias(const FiniteDist& d, unsigned r) {
  Rat norm = 0;
  for (const auto& a : d.atoms())
    norm += rising_factorial(Rat(a.point), r) * a.weight;
  if (norm == 0) throw ZeroMassError("rising-factorial mean is 0");
  std::vector<FiniteDist::Atom> atoms;
  for (const auto& a : d.atoms()) {
    Rat w = rising_factorial(Rat(a.point), r) * a.weight / norm;
    if (w != 0) atoms.push_back({a.point, w});
  }
  return FiniteDist(std::move(atoms));
}

/// Discrete equilibrium transform: P[X^e = n] = P[X >= n] / E X for n >= 1.
inline FiniteDist discrete_equilibrium(const FiniteDist& d) {
  Rat m = mean(d);
  if (m == 0) throw ZeroMassError("E X = 0");
  std::vector<FiniteDist::Atom> atoms;
  Rat tail = 1 - d.pmf(0);  // P[X >= 1]
  for (long long n = 1; n <= d.max_support(); ++n) {
    if (tail != 0) atoms.push_back({n, tail / m});
    tail -= d.pmf(n);
  }
  return FiniteDist(std::move(atoms));
}

/// Lazily evaluated law of X* = V_alpha * X^(beta), where V_alpha has density
/// alpha x^(alpha-1) on [0,1]. Survival is closed-form:
///   P[X* > t] = sum_k q_k (1 - min(t/k, 1)^alpha)
/// with q the beta-power-biased weights.
struct GenEquilibrium {
  FiniteDist base;
  Rat alpha;
  unsigned beta;
  FiniteDist biased;  // beta-power bias of base, cached
};

inline GenEquilibrium gen_equilibrium(const FiniteDist& d, const Rat& alpha,
                                      unsigned beta) {
  if (alpha <= 0 || beta == 0) throw BadParamsError("alpha, beta must be > 0");
  return GenEquilibrium{d, alpha, beta, power_bias(d, beta)};
}

/// Exact survival of X*; requires integer alpha. X* has no atoms, so the
/// strict and weak variants agree.
inline Rat gen_equib_survival(const GenEquilibrium& g, const Rat& t) {
  if (!is_integer(g.alpha))
    throw BadParamsError("exact survival needs integer alpha");
  if (t < 0) return Rat(1);
  long long a = static_cast<long long>(numerator(g.alpha));
  Rat s = 0;
  for (const auto& atom : g.biased.atoms()) {
    if (Rat(atom.point) <= t) continue;  // min(t/k,1) = 1, contributes 0
    s += atom.weight * (1 - pow_rat(t / atom.point, a));
  }
  return s;
}

/// Real-exponent survival of the (alpha,beta)-generalized equilibrium of d.
inline Real gen_equib_survival_real(const FiniteDist& d, const Real& alpha,
                                    const Real& beta, const Real& t) {
  if (alpha <= 0 || beta <= 0) throw BadParamsError("alpha, beta must be > 0");
  if (t < 0) return Real(1);
  Real norm = 0, s = 0;
  for (const auto& a : d.atoms()) {
    if (a.point == 0) continue;
    Real q = pow(Real(a.point), beta) * to_real(a.weight);
    norm += q;
    if (Real(a.point) > t) s += q * (1 - pow(t / a.point, alpha));
  }
  if (norm == 0) throw ZeroMassError("E[X^beta] = 0");
  return s / norm;
}

/// Survival of the record transform Z(X) in the alpha=beta case:
///   P[Z(X) >= t] = G(t) (1 + E[1{X<t}/G(X)])  with  G(x) = P[X >= x].
inline Rat record_survival(const FiniteDist& d, const Rat& t) {
  Rat gt = survival(d, t, /*strict=*/false);
  if (gt == 0) return Rat(0);
  Rat acc = 0;
  for (const auto& a : d.atoms()) {
    if (Rat(a.point) < t)
      acc += a.weight / survival(d, Rat(a.point), /*strict=*/false);
  }
  return gt * (1 + acc);
}

// ---------------------------------------------------------------------------
// Transform identity checks
// ---------------------------------------------------------------------------

/// (a) Scaling: the gamma-th power of the (alpha,beta)-equilibrium of X is
/// the (alpha/gamma, beta/gamma)-equilibrium of X^gamma. Asserted at the
/// survival level on a t-grid, in high-precision reals.
inline CheckReport check_scaling_identity(const FiniteDist& d,
                                          const Real& alpha, const Real& beta,
                                          unsigned gamma,
                                          const std::vector<Rat>& t_grid,
                                          const Real& tol = Real("1e-40")) {
  CheckReport rep;
  rep.name = "transform.scaling";
  rep.exact = false;
  FiniteDist dg = pow_dist(d, gamma);
  for (const Rat& t : t_grid) {
    Real tr = to_real(t);
    Real lhs = gen_equib_survival_real(d, alpha, beta, tr);
    Real rhs = gen_equib_survival_real(dg, alpha / gamma, beta / gamma,
                                       pow(tr, static_cast<int>(gamma)));
    Real diff = abs(lhs - rhs);
    rep.add_margin({{"t", rat_str(t)}, {"abs_diff", real_str(diff)}});
    if (diff > tol) rep.fail({{"t", rat_str(t)}, {"abs_diff", real_str(diff)}});
  }
  return rep;
}

/// (b) Equilibrium of a sum: (X_1+...+X_n)^e equals the uniform mixture over
/// i of X_1+...+X_{i-1} + X_i^e, exactly.
inline CheckReport check_equilibrium_of_sum(const FiniteDist& d, unsigned n) {
  if (n == 0) throw BadParamsError("n must be positive");
  CheckReport rep;
  rep.name = "transform.equilibrium_of_sum";
  FiniteDist lhs = discrete_equilibrium(convolve_power(d, n));
  FiniteDist de = discrete_equilibrium(d);
  std::vector<std::pair<Rat, FiniteDist>> parts;
  FiniteDist prefix = FiniteDist::delta(0);
  for (unsigned i = 1; i <= n; ++i) {
    parts.emplace_back(Rat(1, n), convolve(prefix, de));
    if (i < n) prefix = convolve(prefix, d);
  }
  FiniteDist rhs = mixture(parts);
  if (!(lhs == rhs)) rep.fail({{"n", n}});
  return rep;
}

/// (c) Equilibrium of a mixture: the equilibrium of a mixture is the mixture
/// of the per-part equilibria, governed by the mean-reweighted governor.
/// Parts with zero mean drop out of the governor.
inline CheckReport check_equilibrium_of_mixture(
    const std::vector<std::pair<Rat, FiniteDist>>& parts) {
  CheckReport rep;
  rep.name = "transform.equilibrium_of_mixture";
  FiniteDist mixed = mixture(parts);
  FiniteDist lhs = discrete_equilibrium(mixed);
  Rat total_mean = mean(mixed);
  std::vector<std::pair<Rat, FiniteDist>> eq_parts;
  for (const auto& [h, part] : parts) {
    Rat m = mean(part);
    if (m == 0) continue;
    eq_parts.emplace_back(h * m / total_mean, discrete_equilibrium(part));
  }
  FiniteDist rhs = mixture(eq_parts);
  if (!(lhs == rhs)) rep.fail({{"parts", parts.size()}});
  return rep;
}

/// (d) Power-to-factorial relaxed domination: X^(l+1) is utail-p dominated by
/// X^[l+1] with p = E X^{l+1} / E[X(X+1)...(X+l)]. Checked at every integer
/// threshold; the measured maximal p is reported alongside.
inline CheckReport check_power_to_factorial(const FiniteDist& d, unsigned l) {
  CheckReport rep;
  rep.name = "transform.power_to_factorial";
  FiniteDist pb = power_bias(d, l + 1);
  FiniteDist fb = rising_factorial_bias(d, l + 1);
  Rat rf_mean = 0;
  for (const auto& a : d.atoms())
    rf_mean += rising_factorial(Rat(a.point), l + 1) * a.weight;
  Rat p = moment(d, l + 1) / rf_mean;
  rep.params["p"] = rat_str(p);

  bool p_max_set = false;
  Rat p_max = 1;
  long long hi = std::max(pb.max_support(), fb.max_support());
  for (long long t = 0; t < hi; ++t) {
    Rat sx = survival(pb, Rat(t), /*strict=*/true);
    Rat sy = survival(fb, Rat(t), /*strict=*/true);
    if (sx == 0) continue;
    Rat ratio = sy / sx;
    if (!p_max_set || ratio < p_max) {
      p_max = ratio;
      p_max_set = true;
    }
    if (sx > sy / p) rep.fail({{"t", t}, {"ratio", rat_str(ratio)}});
  }
  if (p_max > 1) p_max = 1;
  rep.params["p_max"] = rat_str(p_max_set ? p_max : Rat(1));
  return rep;
}

}  // namespace eqk

#endif  // EQK_TRANSFORMS_HPP
