#ifndef EQK_URN_HPP
#define EQK_URN_HPP

#include <vector>

#include "eqk/dist.hpp"
#include "eqk/orders.hpp"
#include "eqk/report.hpp"
#include "eqk/transforms.hpp"

namespace eqk {

/// Urn initial state plus the deterministic total-ball schedule. The
/// generalized model (arbitrary strictly increasing totals) is the primitive;
/// the periodic model (one extra black ball after every l-th draw) is a
/// schedule constructor.
struct UrnSpec {
  long long b = 0;               // initial black balls
  long long w = 1;               // initial white balls
  long long draws = 0;           // n
  std::vector<long long> totals; // B_0 .. B_{draws-1} (B_m used at draw m+1)

  static UrnSpec periodic(long long b, long long w, long long l,
                          long long n) {
    if (w < 1 || b < 0 || l < 1 || n < 0)
      throw BadScheduleError("need w >= 1, b >= 0, l >= 1, n >= 0");
    UrnSpec s{b, w, n, {}};
    s.totals.reserve(n);
    for (long long m = 0; m < n; ++m) s.totals.push_back(b + w + m + m / l);
    s.validate();
    return s;
  }

  static UrnSpec with_schedule(long long b, long long w,
                               std::vector<long long> totals) {
    UrnSpec s{b, w, static_cast<long long>(totals.size()), std::move(totals)};
    s.validate();
    return s;
  }

  void validate() const {
    if (w < 1 || b < 0) throw BadScheduleError("need w >= 1, b >= 0");
    long long prev = b + w - 1;
    for (size_t m = 0; m < totals.size(); ++m) {
      if (m == 0 && totals[0] != b + w)
        throw BadScheduleError("B_0 must equal b + w");
      if (totals[m] <= prev || totals[m] < 1)
        throw BadScheduleError("totals must be strictly increasing");
      prev = totals[m];
    }
  }
};

/// Exact row-by-row evaluation of the urn recurrence
///   q_{n+1}(k) = ((k-1)/B_n) q_n(k-1) + (1 - k/B_n) q_n(k)
/// over integer numerators with common denominator prod B_m.
class UrnRecurrence {
 public:
  explicit UrnRecurrence(UrnSpec spec)
      : spec_(std::move(spec)), nums_{Int(1)}, denom_(1), n_(0) {}

  long long n() const { return n_; }
  long long w() const { return spec_.w; }
  long long total_at(long long m) const { return spec_.totals.at(m); }

  // q_n(w + i) = nums()[i] / denom(), i = 0..n
  const std::vector<Int>& nums() const { return nums_; }
  const Int& denom() const { return denom_; }

  Int num_at(long long k) const {
    long long i = k - spec_.w;
    if (i < 0 || i > n_) return Int(0);
    return nums_[static_cast<size_t>(i)];
  }

  bool can_step() const { return n_ < spec_.draws; }

  void step() {
    if (!can_step()) throw BadScheduleError("schedule exhausted");
    long long B = spec_.totals[static_cast<size_t>(n_)];
    std::vector<Int> next(static_cast<size_t>(n_) + 2, Int(0));
    for (long long i = 0; i <= n_; ++i) {
      long long k = spec_.w + i;
      const Int& q = nums_[static_cast<size_t>(i)];
      if (q == 0) continue;
      // q_{n+1}(k) = ((k-1)/B) q_n(k-1) + ((B-k)/B) q_n(k)
      next[static_cast<size_t>(i)] += (B - k) * q;
      next[static_cast<size_t>(i) + 1] += k * q;
    }
    nums_ = std::move(next);
    denom_ *= B;
    ++n_;
  }

  FiniteDist dist() const {
    std::vector<FiniteDist::Atom> atoms;
    for (long long i = 0; i <= n_; ++i) {
      const Int& q = nums_[static_cast<size_t>(i)];
      if (q != 0) atoms.push_back({spec_.w + i, Rat(q) / Rat(denom_)});
    }
    return FiniteDist(std::move(atoms));
  }

 private:
  UrnSpec spec_;
  std::vector<Int> nums_;
  Int denom_;
  long long n_;
};

/// Exact pmf of the white-ball count after all draws of the spec.
inline FiniteDist urn_pmf(const UrnSpec& spec) {
  UrnRecurrence rec(spec);
  while (rec.can_step()) rec.step();
  return rec.dist();
}

inline FiniteDist urn_pmf(long long b, long long w, long long l, long long n) {
  return urn_pmf(UrnSpec::periodic(b, w, l, n));
}

/// Regular Polya urn (1 black, w white, no extra black additions).
inline FiniteDist polya_pmf(long long w, long long n) {
  std::vector<long long> totals;
  for (long long m = 0; m < n; ++m) totals.push_back(1 + w + m);
  return urn_pmf(UrnSpec::with_schedule(1, w, std::move(totals)));
}

/// E N_n for any spec via the product formula E N_{m+1} = E N_m (1 + 1/B_m).
inline Rat urn_mean(const UrnSpec& spec) {
  Rat m = spec.w;
  for (long long i = 0; i < spec.draws; ++i)
    m *= Rat(spec.totals[static_cast<size_t>(i)] + 1,
             spec.totals[static_cast<size_t>(i)]);
  return m;
}

/// Closed-form rising factorial moment for the l=1, w=2 urn:
///   E (N_n(1,2))^[2m] = 2^[2m] prod_{i=0}^{m-1} (2n+2i+3)/(2i+3).
inline Rat rf_moment_closed_form(long long n, unsigned m) {
  Rat val = rising_factorial(Rat(2), 2 * m);
  for (unsigned i = 0; i < m; ++i)
    val *= Rat(2 * n + 2 * static_cast<long long>(i) + 3, 2 * i + 3);
  return val;
}

/// Exact E N_n(1,2)^2 from the closed forms (no pmf needed).
inline Rat urn_second_moment_12(long long n) {
  return rf_moment_closed_form(n, 1) -
         urn_mean(UrnSpec::periodic(1, 2, 1, n));
}

/// Markov bound from rising factorial moments, minimized over even order 2m:
///   min_m E N^[2m] / (gamma_n t)^[2m]  with  gamma_n^2 = E N_n(1,2)^2.
/// Returns (best m, bound value).
inline std::pair<unsigned, Real> moment_tail_bound(long long n, const Real& t,
                                                   unsigned m_max) {
  Real gamma_n = sqrt(to_real(urn_second_moment_12(n)));
  Real x = gamma_n * t;
  unsigned best_m = 1;
  Real best;
  for (unsigned m = 1; m <= m_max; ++m) {
    Real denom = 1;
    for (unsigned i = 0; i < 2 * m; ++i) denom *= x + i;
    Real bound = to_real(rf_moment_closed_form(n, m)) / denom;
    if (m == 1 || bound < best) {
      best = bound;
      best_m = m;
    }
  }
  return {best_m, best};
}

// ---------------------------------------------------------------------------
// Exact lemma checks (all in integer arithmetic over the common denominator)
// ---------------------------------------------------------------------------

namespace detail {

inline nlohmann::json urn_witness(long long b, long long w, long long n,
                                  long long k) {
  return {{"b", b}, {"w", w}, {"n", n}, {"k", k}};
}

}  // namespace detail

/// Log-concavity of each row: q_n(k)^2 >= q_n(k-1) q_n(k+1).
inline void check_urn_log_concave(const UrnSpec& spec, CheckReport& rep) {
  UrnRecurrence rec(spec);
  for (;;) {
    for (long long k = spec.w; k <= spec.w + rec.n(); ++k) {
      if (rec.num_at(k) * rec.num_at(k) <
          rec.num_at(k - 1) * rec.num_at(k + 1))
        rep.fail(detail::urn_witness(spec.b, spec.w, rec.n(), k));
    }
    if (!rec.can_step()) break;
    rec.step();
  }
}

/// Technical variant:
///   (B_n - k) q_k^2 - (B_n - k - 1) q_{k-1} q_{k+1} - q_{k-1} q_k >= 0.
inline void check_urn_tech(const UrnSpec& spec, CheckReport& rep) {
  UrnRecurrence rec(spec);
  while (rec.can_step()) {
    long long B = spec.totals[static_cast<size_t>(rec.n())];
    for (long long k = spec.w; k <= spec.w + rec.n() + 1; ++k) {
      Int lhs = (B - k) * rec.num_at(k) * rec.num_at(k) -
                (B - k - 1) * rec.num_at(k - 1) * rec.num_at(k + 1) -
                rec.num_at(k - 1) * rec.num_at(k);
      if (lhs < 0) rep.fail(detail::urn_witness(spec.b, spec.w, rec.n(), k));
    }
    rec.step();
  }
}

/// Mixed-index variant: q_n(k-1) q_{n+1}(k+1) <= q_n(k) q_{n+1}(k).
inline void check_urn_variant(const UrnSpec& spec, CheckReport& rep) {
  UrnRecurrence rec(spec);
  while (rec.can_step()) {
    UrnRecurrence prev = rec;  // row n
    rec.step();                // row n+1
    for (long long k = spec.w; k <= spec.w + rec.n(); ++k) {
      if (prev.num_at(k - 1) * rec.num_at(k + 1) >
          prev.num_at(k) * rec.num_at(k))
        rep.fail(detail::urn_witness(spec.b, spec.w, prev.n(), k));
    }
  }
}

/// Domination lemma: N^[l+1]_{n-l}(b,w) + l dominates N^(l+1)_n(b,w),
/// checked both via likelihood-ratio monotonicity and via dominates().
inline void check_urn_unfac(long long b, long long w, long long l,
                            long long n, CheckReport& rep) {
  if (l < 1 || l > n) throw BadParamsError("unfac needs 1 <= l <= n");
  FiniteDist lhs = shift(
      rising_factorial_bias(urn_pmf(b, w, l, n - l), static_cast<unsigned>(l) + 1), l);
  FiniteDist rhs = power_bias(urn_pmf(b, w, l, n), static_cast<unsigned>(l) + 1);
  // likelihood ratio lhs/rhs increasing in k on the union support window
  for (long long k = w; k < w + n; ++k) {
    if (lhs.pmf(k) * rhs.pmf(k + 1) > lhs.pmf(k + 1) * rhs.pmf(k))
      rep.fail({{"b", b}, {"w", w}, {"l", l}, {"n", n}, {"k", k},
                {"kind", "likelihood_ratio"}});
  }
  if (!dominates(rhs, lhs).holds)
    rep.fail({{"b", b}, {"w", w}, {"l", l}, {"n", n}, {"kind", "dominates"}});
}

/// Main urn proposition: the (w, l+1)-generalized equilibrium of N_n(1,w) is
/// dominated by N_n(1,w). Exact since alpha = w is an integer.
inline void check_urn_ineq(long long w, long long l, long long n,
                           CheckReport& rep) {
  FiniteDist d = urn_pmf(1, w, l, n);
  GenEquilibrium g = gen_equilibrium(d, Rat(w), static_cast<unsigned>(l) + 1);
  if (!dominates(g, d).holds)
    rep.fail({{"w", w}, {"l", l}, {"n", n}, {"kind", "gen_equilibrium"}});
}

/// Grid driver over the periodic-schedule model.
inline CheckReport verify_urn_lemmas(const std::string& kind,
                                     const std::vector<long long>& b_set,
                                     const std::vector<long long>& w_set,
                                     const std::vector<long long>& l_set,
                                     long long n_max) {
  CheckReport rep;
  rep.name = "urn." + kind;
  rep.params = {{"n_max", n_max}};
  for (long long b : b_set) {
    for (long long w : w_set) {
      for (long long l : l_set) {
        if (kind == "lc") {
          check_urn_log_concave(UrnSpec::periodic(b, w, l, n_max), rep);
        } else if (kind == "tech") {
          check_urn_tech(UrnSpec::periodic(b, w, l, n_max), rep);
        } else if (kind == "variant") {
          check_urn_variant(UrnSpec::periodic(b, w, l, n_max), rep);
        } else if (kind == "unfac") {
          for (long long n = l; n <= n_max; ++n)
            check_urn_unfac(b, w, l, n, rep);
        } else if (kind == "ineq") {
          if (b != 1) continue;  // proposition is stated for b = 1
          for (long long n = 1; n <= n_max; ++n) check_urn_ineq(w, l, n, rep);
        } else {
          throw BadParamsError("unknown urn lemma kind: " + kind);
        }
      }
    }
  }
  return rep;
}

}  // namespace eqk

#endif  // EQK_URN_HPP
