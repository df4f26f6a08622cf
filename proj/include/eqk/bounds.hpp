#ifndef EQK_BOUNDS_HPP
#define EQK_BOUNDS_HPP

#include <string>
#include <vector>

#include "eqk/dist.hpp"
#include "eqk/orders.hpp"
#include "eqk/reliability.hpp"
#include "eqk/report.hpp"
#include "eqk/transforms.hpp"

namespace eqk {

// ---------------------------------------------------------------------------
// Bound evaluators
// ---------------------------------------------------------------------------

namespace detail {

inline void validate_bound_params(const Real& alpha, const Real& beta,
                                  const Real& p) {
  if (alpha <= 0 || beta <= 0) throw BadParamsError("alpha, beta must be > 0");
  if (p <= 0 || p > 1) throw BadParamsError("p must lie in (0,1]");
}

}  // namespace detail

/// Upper tail bound on P[X >= mu t] for the rescaled variable.
/// alpha == beta: e^{1 - p t^beta}, valid for all t > 0.
/// alpha != beta: t^alpha e^{2 - p t^beta}, valid for t >= 1 only; below 1
/// the bound is undefined and we refuse unless unsafe_extrapolate is set.
inline Real upper_tail_bound(const Real& alpha, const Real& beta, const Real& p,
                             const Real& t, bool unsafe_extrapolate = false) {
  detail::validate_bound_params(alpha, beta, p);
  if (t <= 0) throw DomainError("t must be positive");
  if (alpha == beta) return exp(1 - p * pow(t, beta));
  if (t < 1 && !unsafe_extrapolate)
    throw DomainError("upper bound with alpha != beta needs t >= 1");
  return pow(t, alpha) * exp(2 - p * pow(t, beta));
}

/// Lower tail bound on P[X <= mu t].
/// alpha == beta: t^alpha / p, valid for all t > 0.
/// otherwise: (alpha/beta)^{1-alpha/beta} t^alpha / (alpha p / beta - t^beta),
/// valid only where t^beta < p alpha / beta.
inline Real lower_tail_bound(const Real& alpha, const Real& beta, const Real& p,
                             const Real& t, bool unsafe_extrapolate = false) {
  detail::validate_bound_params(alpha, beta, p);
  if (t <= 0) throw DomainError("t must be positive");
  if (alpha == beta) return pow(t, alpha) / p;
  if (pow(t, beta) >= p * alpha / beta && !unsafe_extrapolate)
    throw DomainError("lower bound needs t^beta < p alpha / beta");
  return pow(alpha / beta, 1 - alpha / beta) * pow(t, alpha) /
         (alpha * p / beta - pow(t, beta));
}

// ---------------------------------------------------------------------------
// Hypothesis certification
// ---------------------------------------------------------------------------

/// Exact certification of the tail-order hypotheses X* vs X for the given
/// (alpha, beta). Needs integer alpha (the exact survival of X*).
struct BoundCertification {
  OrderReport upper;  // P[X* > t] <= P[X > t] / p
  OrderReport lower;  // P[X* <= t] >= p P[X <= t]
};

inline BoundCertification certify_orders(const FiniteDist& d, const Rat& alpha,
                                         unsigned beta) {
  GenEquilibrium g = gen_equilibrium(d, alpha, beta);
  return {utail_pmax(g, d), ltail_pmax(g, d)};
}

// ---------------------------------------------------------------------------
// Bound checks against exact distributions
// ---------------------------------------------------------------------------

/// For each t on the grid, compare the exact (weak) survival P[X >= mu t]
/// against the upper bound, and the exact cdf P[X <= mu t] against the lower
/// bound, where mu^beta = (beta/alpha) E X^beta. The comparison with the
/// irrational threshold mu t is exact: k >= mu t iff k^beta >= mu^beta t^beta.
/// Refuses to run unless both order hypotheses certify at level p.
inline CheckReport check_bounds_against(const FiniteDist& d, const Rat& alpha,
                                        unsigned beta, const Rat& p,
                                        const std::vector<Rat>& t_grid,
                                        const Real& tol = Real("1e-12")) {
  if (p <= 0 || p > 1) throw BadParamsError("p must lie in (0,1]");
  CheckReport rep;
  rep.name = "bounds.check";
  rep.exact = false;
  BoundCertification cert = certify_orders(d, alpha, beta);
  if (cert.upper.p_max < p)
    throw HypothesisFailedError("upper-tail order fails at p = " + rat_str(p) +
                                " (p_max = " + rat_str(cert.upper.p_max) + ")");
  if (cert.lower.p_max < p)
    throw HypothesisFailedError("lower-tail order fails at p = " + rat_str(p) +
                                " (p_max = " + rat_str(cert.lower.p_max) + ")");
  rep.params = {{"alpha", rat_str(alpha)},
                {"beta", beta},
                {"p", rat_str(p)},
                {"utail_p_max", rat_str(cert.upper.p_max)},
                {"ltail_p_max", rat_str(cert.lower.p_max)}};

  bool eq_case = (alpha == Rat(beta));
  Rat mu_b = mu_pow_beta(d, alpha, beta);
  Real alpha_r = to_real(alpha), beta_r = Real(beta), p_r = to_real(p);
  for (const Rat& t : t_grid) {
    if (t <= 0) throw DomainError("t must be positive");
    Rat thresh = mu_b * pow_rat(t, static_cast<long long>(beta));
    bool atom_at_threshold = false;
    for (const auto& a : d.atoms())
      if (pow_rat(Rat(a.point), beta) == thresh) atom_at_threshold = true;

    nlohmann::json row = {{"t", rat_str(t)},
                          {"atom_at_threshold", atom_at_threshold}};
    Real t_r = to_real(t);
    if (eq_case || t >= 1) {
      Rat surv = survival_power_threshold(d, thresh, beta, /*strict=*/false);
      Real bound = upper_tail_bound(alpha_r, beta_r, p_r, t_r);
      Real margin = bound - to_real(surv);
      row["upper_tail"] = rat_str(surv);
      row["upper_bound"] = real_str(bound);
      row["upper_margin"] = real_str(margin);
      if (margin < -tol) rep.fail(row);
    }
    bool lower_in_domain =
        eq_case || pow_rat(t, static_cast<long long>(beta)) < p * alpha / beta;
    if (lower_in_domain) {
      Rat cdf_v = 1 - survival_power_threshold(d, thresh, beta, /*strict=*/true);
      Real bound = lower_tail_bound(alpha_r, beta_r, p_r, t_r);
      Real margin = bound - to_real(cdf_v);
      row["lower_cdf"] = rat_str(cdf_v);
      row["lower_bound"] = real_str(bound);
      row["lower_margin"] = real_str(margin);
      if (margin < -tol) rep.fail(row);
    }
    rep.add_margin(row);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Tail lemma checks
// ---------------------------------------------------------------------------

namespace detail {

// integral of u^{a-b-1} over [lo, 1]; the exponent is alpha - beta - 1 so the
// antiderivative is u^{alpha-beta}/(alpha-beta), or log when alpha == beta.
inline Real power_integral(const Real& alpha, const Real& beta,
                           const Real& lo) {
  if (alpha == beta) return -log(lo);
  Real c = alpha - beta;
  return (1 - pow(lo, c)) / c;
}

}  // namespace detail

/// The four supporting tail lemmas, checked at the mu-rescaled thresholds
/// (evaluate at mu t, keep the integer support intact).
///   int:    integral_0^1 u^{alpha-beta-1} G(t/u) du <= G(t) / (p beta t^beta)
///           for the rescaled variable; G step-shaped, integral in closed form
///   mrl:    E[X-t | X>t] <= 1/(p beta t^alpha) when beta - alpha = 1, and
///           E[1/X - 1/t | X>t] >= -1/(p beta t^alpha) when beta - alpha = -1
///   recexp: sum_{x<t} P[X=x]/P[X>=x] <= -log P[X>=t]   (unconditional)
///   recbnd: record survival <= P[X>=t] (1 - log P[X>=t])  (unconditional)
inline CheckReport verify_tail_lemmas(const std::string& kind,
                                      const FiniteDist& d, const Rat& alpha,
                                      unsigned beta, const Rat& p,
                                      const std::vector<Rat>& t_grid,
                                      const Real& tol = Real("1e-12")) {
  CheckReport rep;
  rep.name = "bounds." + kind;
  rep.exact = (kind == "recexp");
  rep.params = {{"alpha", rat_str(alpha)}, {"beta", beta}, {"p", rat_str(p)}};

  if (kind == "int" || kind == "mrl") {
    BoundCertification cert = certify_orders(d, alpha, beta);
    if (cert.upper.p_max < p)
      throw HypothesisFailedError("upper-tail order fails at p = " +
                                  rat_str(p));
  }
  Rat mu_b = (kind == "int" || kind == "mrl") ? mu_pow_beta(d, alpha, beta)
                                              : Rat(0);
  Real alpha_r = to_real(alpha), beta_r = Real(beta), p_r = to_real(p);
  Real mu_r = (mu_b != 0) ? pow(to_real(mu_b), 1 / beta_r) : Real(0);

  for (const Rat& t : t_grid) {
    if (t <= 0) throw DomainError("t must be positive");
    Real t_r = to_real(t);
    nlohmann::json row = {{"t", rat_str(t)}};
    if (kind == "int") {
      // LHS = sum_x p_x * integral over u in (mu t / x, 1], x ranging over
      // atoms with x > mu t contributing a full or partial power integral.
      Rat thresh = mu_b * pow_rat(t, static_cast<long long>(beta));
      Real lhs = 0;
      for (const auto& a : d.atoms()) {
        if (a.point == 0) continue;
        // u must satisfy x/mu > t/u, i.e. u > mu t / x
        Real lo = mu_r * t_r / a.point;
        if (lo >= 1) continue;  // empty integration range
        lhs += to_real(a.weight) * detail::power_integral(alpha_r, beta_r, lo);
      }
      Rat gt = survival_power_threshold(d, thresh, beta, /*strict=*/true);
      Real rhs = to_real(gt) / (p_r * beta_r * pow(t_r, beta_r));
      Real margin = rhs - lhs;
      row["lhs"] = real_str(lhs);
      row["rhs"] = real_str(rhs);
      row["margin"] = real_str(margin);
      if (margin < -tol) rep.fail(row);
    } else if (kind == "mrl") {
      Rat diff = Rat(beta) - alpha;
      if (diff != 1 && diff != -1)
        throw BadParamsError("mrl lemma needs beta - alpha = +-1");
      Rat thresh = mu_b * pow_rat(t, static_cast<long long>(beta));
      Rat g = survival_power_threshold(d, thresh, beta, /*strict=*/true);
      if (g == 0) {
        row["skipped"] = "P[X > mu t] = 0";
        rep.add_margin(row);
        continue;
      }
      Real bound = 1 / (p_r * beta_r * pow(t_r, alpha_r));
      Real lhs = 0;
      for (const auto& a : d.atoms()) {
        if (pow_rat(Rat(a.point), beta) <= thresh) continue;
        Real x_resc = Real(a.point) / mu_r;
        if (diff == 1)
          lhs += to_real(a.weight) * (x_resc - t_r);
        else
          lhs += to_real(a.weight) * (1 / x_resc - 1 / t_r);
      }
      lhs /= to_real(g);
      Real margin = (diff == 1) ? Real(bound - lhs) : Real(lhs + bound);
      row["conditional_expectation"] = real_str(lhs);
      row["bound"] = real_str(bound);
      row["margin"] = real_str(margin);
      if (margin < -tol) rep.fail(row);
    } else if (kind == "recexp") {
      Rat lhs = 0;
      for (const auto& a : d.atoms()) {
        if (Rat(a.point) >= t) break;
        lhs += a.weight / survival(d, Rat(a.point), /*strict=*/false);
      }
      Rat gt = survival(d, t, /*strict=*/false);
      row["lhs"] = rat_str(lhs);
      if (gt == 0) {
        row["rhs"] = "inf";
        rep.add_margin(row);
        continue;
      }
      Real rhs = -log(to_real(gt));
      Real margin = rhs - to_real(lhs);
      row["rhs"] = real_str(rhs);
      row["margin"] = real_str(margin);
      if (margin < -tol) rep.fail(row);
    } else if (kind == "recbnd") {
      Rat rs = record_survival(d, t);
      Rat gt = survival(d, t, /*strict=*/false);
      row["record_survival"] = rat_str(rs);
      if (gt == 0) {
        // both sides vanish
        if (rs != 0) rep.fail(row);
        rep.add_margin(row);
        continue;
      }
      Real bound = to_real(gt) * (1 - log(to_real(gt)));
      Real margin = bound - to_real(rs);
      row["bound"] = real_str(bound);
      row["margin"] = real_str(margin);
      if (margin < -tol) rep.fail(row);
    } else {
      throw BadParamsError("unknown tail lemma kind: " + kind);
    }
    rep.add_margin(row);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Analytic fixtures
// ---------------------------------------------------------------------------

/// Capped geometric: P[X=k] = (1-1/mu)^{k-1}/mu for 1 <= k <= (t-1)mu, with
/// the remaining mass (1-1/mu)^{(t-1)mu} placed at t mu. Its upper tail at
/// threshold mu t equals exactly (1-1/mu)^{(t-1)mu}, approaching e^{1-t}.
inline FiniteDist capped_geometric(long long mu, long long t) {
  if (mu < 2 || t < 2) throw BadParamsError("need integer mu >= 2, t >= 2");
  long long n = (t - 1) * mu;
  Rat p(1, mu), q(mu - 1, mu);
  std::vector<FiniteDist::Atom> atoms;
  Rat w = p;  // (1-p)^{k-1} p
  Rat tail = 1;
  for (long long k = 1; k <= n; ++k) {
    atoms.push_back({k, w});
    tail -= w;
    w *= q;
  }
  atoms.push_back({n + mu, tail});
  return FiniteDist(std::move(atoms));
}

/// Exponential-mixture fixture (parameters b < 1 < a):
///   X  ~ Exp(a) w.p. a(1-b)/(a-b),  Exp(b) w.p. (a-1)b/(a-b)
///   X* ~ Exp(a) w.p.   (1-b)/(a-b),  Exp(b) w.p. (a-1)/(a-b)
/// Lives entirely in real arithmetic; the exact engine never sees it.
struct ExpMixture {
  Real a, b;

  ExpMixture(const Real& a_, const Real& b_) : a(a_), b(b_) {
    if (!(b < 1 && 1 < a)) throw BadParamsError("mixture needs b < 1 < a");
  }

  Real cdf_x(const Real& t) const {
    Real c1 = a * (1 - b) / (a - b), c2 = (a - 1) * b / (a - b);
    return c1 * (1 - exp(-a * t)) + c2 * (1 - exp(-b * t));
  }
  Real cdf_xstar(const Real& t) const {
    Real c1 = (1 - b) / (a - b), c2 = (a - 1) / (a - b);
    return c1 * (1 - exp(-a * t)) + c2 * (1 - exp(-b * t));
  }
  Real p_target() const { return 1 / (a + b - a * b); }
};

/// Fixture checks.
///   capped:  exact upper tail value, NBUE membership, proximity to e^{1-t}
///   mixture: lower-tail ratio infimum on a log-spaced grid vs 1/(a+b-ab),
///            and the small-t expansion P[X <= t] = (a+b-ab) t + O(t^2)
inline CheckReport check_capped_geometric(long long mu, long long t) {
  CheckReport rep;
  rep.name = "fixture.capped_geometric";
  rep.params = {{"mu", mu}, {"t", t}};
  FiniteDist d = capped_geometric(mu, t);
  Rat tail = survival(d, Rat(mu * t), /*strict=*/false);
  Rat closed = pow_rat(Rat(mu - 1, mu), (t - 1) * mu);
  if (tail != closed) rep.fail({{"expected", rat_str(closed)},
                                {"actual", rat_str(tail)}});
  Real target = exp(Real(1 - t));
  Real ratio = to_real(tail) / target;
  rep.params["tail"] = rat_str(tail);
  rep.params["tail_over_e1mt"] = real_str(ratio);
  if (to_real(tail) > target)
    rep.fail({{"reason", "tail exceeds e^{1-t}"}, {"tail", rat_str(tail)}});
  if (!is_nbue(d).verdict) rep.fail({{"reason", "not NBUE"}});
  return rep;
}

inline CheckReport check_exp_mixture(const Real& a, const Real& b,
                                     unsigned grid_points = 400) {
  CheckReport rep;
  rep.name = "fixture.exp_mixture";
  rep.exact = false;
  ExpMixture mix(a, b);
  Real p = mix.p_target();
  rep.params["p_target"] = real_str(p);

  // infimum of F_{X*}(t)/F_X(t) over a log-spaced grid from 1e-8 to 1e3
  Real lo = Real("1e-8"), hi = Real("1e3");
  Real log_lo = log(lo), log_hi = log(hi);
  Real inf_ratio;
  bool first = true;
  for (unsigned i = 0; i <= grid_points; ++i) {
    Real t = exp(log_lo + (log_hi - log_lo) * i / grid_points);
    Real ratio = mix.cdf_xstar(t) / mix.cdf_x(t);
    if (first || ratio < inf_ratio) inf_ratio = ratio;
    first = false;
    if (ratio < p - Real("1e-12"))
      rep.fail({{"t", real_str(t)}, {"ratio", real_str(ratio)}});
  }
  rep.params["ltail_inf"] = real_str(inf_ratio);
  if (abs(inf_ratio - p) > Real("1e-6"))
    rep.fail({{"ltail_inf", real_str(inf_ratio)},
              {"p_target", real_str(p)}});

  // small-t expansion: F_X(t) / ((a+b-ab) t) -> 1
  Real t_small = Real("1e-4");
  Real expansion_ratio = mix.cdf_x(t_small) / ((a + b - a * b) * t_small);
  rep.params["small_t_ratio"] = real_str(expansion_ratio);
  if (abs(expansion_ratio - 1) > Real("0.01"))
    rep.fail({{"small_t_ratio", real_str(expansion_ratio)}});
  return rep;
}

}  // namespace eqk

#endif  // EQK_BOUNDS_HPP
