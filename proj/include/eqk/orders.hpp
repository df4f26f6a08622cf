#ifndef EQK_ORDERS_HPP
#define EQK_ORDERS_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "eqk/dist.hpp"
#include "eqk/transforms.hpp"

namespace eqk {

/// Verdict for a stochastic-order query. p_max is the supremum of valid p,
/// clamped to [0,1] (the orders are monotone in p); raw_inf keeps the
/// unclamped infimum for diagnostics. witness_t is the smallest threshold
/// achieving the extremal ratio.
struct OrderReport {
  bool holds = true;
  Rat p_max = 1;
  Rat raw_inf = 1;
  bool constrained = false;  // false: every ratio position was vacuous
  long long witness_t = 0;
  Rat margin = 1;
};

namespace detail {

// table[t + 1] = P[X > t] for integer t in [-1, hi], built in one pass.
inline std::vector<Rat> strict_survival_table(const FiniteDist& d,
                                              long long hi) {
  std::vector<Rat> tab(static_cast<size_t>(hi) + 2, Rat(0));
  Rat acc = 0;
  auto it = d.atoms().rbegin();
  for (long long t = hi; t >= -1; --t) {
    while (it != d.atoms().rend() && it->point > t) {
      acc += it->weight;
      ++it;
    }
    tab[static_cast<size_t>(t) + 1] = acc;
  }
  return tab;
}

inline std::vector<Rat> survival_table(const FiniteDist& d, long long hi) {
  return strict_survival_table(d, hi);
}
inline std::vector<Rat> survival_table(const GenEquilibrium& g,
                                       long long hi) {
  std::vector<Rat> tab(static_cast<size_t>(hi) + 2);
  for (long long t = -1; t <= hi; ++t)
    tab[static_cast<size_t>(t) + 1] = gen_equib_survival(g, Rat(t));
  return tab;
}
inline long long order_max_support(const FiniteDist& d) {
  return d.max_support();
}
inline long long order_max_support(const GenEquilibrium& g) {
  return g.base.max_support();
}

// The infimum over real t reduces to the integer grid: both survivals are
// constant-or-decreasing between consecutive integers, with the extremal
// ratio at the left endpoint. (Property-tested against a fine grid.)
template <typename X>
OrderReport utail_scan(const X& x, const FiniteDist& y) {
  OrderReport rep;
  long long hi = std::max(order_max_support(x), y.max_support());
  std::vector<Rat> sx_tab = survival_table(x, hi);
  std::vector<Rat> sy_tab = strict_survival_table(y, hi);
  for (long long t = -1; t < hi; ++t) {
    const Rat& sx = sx_tab[static_cast<size_t>(t) + 1];
    if (sx == 0) continue;  // vacuous constraint
    Rat ratio = sy_tab[static_cast<size_t>(t) + 1] / sx;
    if (!rep.constrained || ratio < rep.raw_inf) {
      rep.raw_inf = ratio;
      rep.witness_t = t;
      rep.margin = ratio;
      rep.constrained = true;
    }
  }
  rep.p_max = rep.constrained ? std::min(rep.raw_inf, Rat(1)) : Rat(1);
  if (rep.p_max < 0) rep.p_max = 0;
  rep.holds = rep.p_max > 0;
  return rep;
}

template <typename X>
OrderReport ltail_scan(const X& x, const FiniteDist& y) {
  OrderReport rep;
  long long hi = std::max(order_max_support(x), y.max_support());
  std::vector<Rat> sx_tab = survival_table(x, hi);
  std::vector<Rat> sy_tab = strict_survival_table(y, hi);
  for (long long t = 0; t <= hi; ++t) {
    Rat fy = 1 - sy_tab[static_cast<size_t>(t) + 1];
    if (fy == 0) continue;
    Rat fx = 1 - sx_tab[static_cast<size_t>(t) + 1];
    Rat ratio = fx / fy;
    if (!rep.constrained || ratio < rep.raw_inf) {
      rep.raw_inf = ratio;
      rep.witness_t = t;
      rep.margin = ratio;
      rep.constrained = true;
    }
  }
  rep.p_max = rep.constrained ? std::min(rep.raw_inf, Rat(1)) : Rat(1);
  if (rep.p_max < 0) rep.p_max = 0;
  rep.holds = rep.p_max > 0;
  return rep;
}

}  // namespace detail

/// Maximal p for the upper-tail relaxation P[X>t] <= P[Y>t]/p.
inline OrderReport utail_pmax(const FiniteDist& x, const FiniteDist& y) {
  return detail::utail_scan(x, y);
}
inline OrderReport utail_pmax(const GenEquilibrium& x, const FiniteDist& y) {
  return detail::utail_scan(x, y);
}

/// Maximal p for the lower-tail relaxation P[X<=t] >= p P[Y<=t].
inline OrderReport ltail_pmax(const FiniteDist& x, const FiniteDist& y) {
  return detail::ltail_scan(x, y);
}
inline OrderReport ltail_pmax(const GenEquilibrium& x, const FiniteDist& y) {
  return detail::ltail_scan(x, y);
}

/// Usual stochastic order: X dominated by Y. Equivalent to utail p_max = 1.
template <typename X>
inline OrderReport dominates(const X& x, const FiniteDist& y) {
  OrderReport rep = detail::utail_scan(x, y);
  rep.holds = !rep.constrained || rep.raw_inf >= 1;
  return rep;
}

/// One cell of an exact joint pmf.
struct CouplingCell {
  long long x;
  long long y;
  Rat mass;
};

/// Comonotone (inverse-transform) coupling of X and Y when X is dominated by
/// Y: exact joint pmf with the given marginals and zero mass on {x > y}.
inline std::vector<CouplingCell> monotone_coupling(const FiniteDist& x,
                                                   const FiniteDist& y) {
  if (!dominates(x, y).holds)
    throw NotDominatedError("monotone_coupling: x is not dominated by y");
  std::vector<CouplingCell> cells;
  size_t i = 0, j = 0;
  Rat rem_x = x.atoms()[0].weight;
  Rat rem_y = y.atoms()[0].weight;
  while (i < x.atoms().size() && j < y.atoms().size()) {
    Rat m = std::min(rem_x, rem_y);
    if (m > 0)
      cells.push_back({x.atoms()[i].point, y.atoms()[j].point, m});
    rem_x -= m;
    rem_y -= m;
    if (rem_x == 0 && ++i < x.atoms().size()) rem_x = x.atoms()[i].weight;
    if (rem_y == 0 && ++j < y.atoms().size()) rem_y = y.atoms()[j].weight;
  }
  return cells;
}

}  // namespace eqk

#endif  // EQK_ORDERS_HPP
