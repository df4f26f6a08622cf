// eqk: command-line front end for the exact distribution toolkit.
//
// Exit codes: 0 all requested checks hold, 1 some check failed,
// 2 usage or domain error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eqk/acceptance.hpp"
#include "eqk/bounds.hpp"
#include "eqk/gw.hpp"
#include "eqk/json_io.hpp"
#include "eqk/orders.hpp"
#include "eqk/reliability.hpp"
#include "eqk/sims.hpp"
#include "eqk/transforms.hpp"
#include "eqk/urn.hpp"

namespace {

using nlohmann::json;

bool g_csv = false;

eqk::FiniteDist load_dist(const std::string& path, bool normalize = false) {
  std::ifstream in(path);
  if (!in) throw eqk::BadConfigError("cannot open " + path);
  json j;
  in >> j;
  return eqk::dist_from_json(j, normalize);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// CSV projection for reports whose margins are flat objects: the union of
// keys becomes the header, rows follow margin order.
void emit_report(const eqk::CheckReport& rep) {
  if (!g_csv) {
    emit(rep.to_json());
    return;
  }
  std::vector<std::string> cols;
  for (const auto& m : rep.margins)
    for (auto it = m.begin(); it != m.end(); ++it)
      if (std::find(cols.begin(), cols.end(), it.key()) == cols.end())
        cols.push_back(it.key());
  for (size_t i = 0; i < cols.size(); ++i)
    std::cout << cols[i] << (i + 1 < cols.size() ? "," : "\n");
  for (const auto& m : rep.margins) {
    for (size_t i = 0; i < cols.size(); ++i) {
      if (m.contains(cols[i])) {
        const auto& v = m.at(cols[i]);
        std::cout << (v.is_string() ? v.get<std::string>() : v.dump());
      }
      std::cout << (i + 1 < cols.size() ? "," : "\n");
    }
  }
}

std::vector<eqk::Rat> parse_grid(const std::string& spec) {
  // "a:b:step" inclusive rational grid, or comma-separated values
  std::vector<eqk::Rat> grid;
  if (spec.find(':') != std::string::npos) {
    std::istringstream ss(spec);
    std::string a, b, step;
    std::getline(ss, a, ':');
    std::getline(ss, b, ':');
    std::getline(ss, step, ':');
    eqk::Rat lo = eqk::parse_rat(a), hi = eqk::parse_rat(b),
             st = eqk::parse_rat(step);
    if (st <= 0) throw eqk::BadParamsError("grid step must be positive");
    for (eqk::Rat t = lo; t <= hi; t += st) grid.push_back(t);
  } else {
    std::istringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) grid.push_back(eqk::parse_rat(tok));
  }
  return grid;
}

std::vector<long long> parse_list(const std::string& spec) {
  std::vector<long long> out;
  std::istringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"exact distribution transforms, orders, urns, and bounds"};
  app.require_subcommand(1);
  app.fallthrough();  // allow global flags after the subcommand name
  app.add_flag("--csv", g_csv, "emit CSV margins instead of JSON");
  unsigned workers = 1;
  app.add_option("--workers", workers,
                 "worker hint (results never depend on it)");

  bool any_failed = false;

  // dist -----------------------------------------------------------------
  auto* dist = app.add_subcommand("dist", "distribution utilities");
  dist->require_subcommand(1);
  std::string dist_path, dist_path2;
  bool normalize = false;
  eqk::Rat thin_p = 1;
  std::string thin_p_s = "1", mrl_t_s = "0";
  long long cap_opt = -1;

  auto* d_info = dist->add_subcommand("info", "echo a dist with summary");
  d_info->add_option("--dist", dist_path)->required();
  d_info->add_flag("--normalize", normalize);
  d_info->callback([&] {
    eqk::FiniteDist d = load_dist(dist_path, normalize);
    json j = eqk::dist_to_json(d);
    j["mean"] = eqk::rat_str(eqk::mean(d));
    j["second_moment"] = eqk::rat_str(eqk::moment(d, 2u));
    emit(j);
  });

  auto* d_thin = dist->add_subcommand("thin", "binomial thinning");
  d_thin->add_option("--dist", dist_path)->required();
  d_thin->add_option("--p", thin_p_s)->required();
  d_thin->callback([&] {
    emit(eqk::dist_to_json(
        eqk::thin(load_dist(dist_path), eqk::parse_rat(thin_p_s))));
  });

  auto* d_zt = dist->add_subcommand("zero-truncate", "[X | X>0]");
  d_zt->add_option("--dist", dist_path)->required();
  d_zt->callback([&] {
    emit(eqk::dist_to_json(eqk::zero_truncate(load_dist(dist_path))));
  });

  auto* d_conv = dist->add_subcommand("convolve", "sum of independents");
  d_conv->add_option("--x", dist_path)->required();
  d_conv->add_option("--y", dist_path2)->required();
  d_conv->callback([&] {
    emit(eqk::dist_to_json(
        eqk::convolve(load_dist(dist_path), load_dist(dist_path2))));
  });

  auto* d_comp = dist->add_subcommand("compound", "random sum");
  d_comp->add_option("--count", dist_path)->required();
  d_comp->add_option("--summand", dist_path2)->required();
  d_comp->add_option("--cap", cap_opt);
  d_comp->callback([&] {
    std::optional<long long> cap;
    if (cap_opt >= 0) cap = cap_opt;
    eqk::SubDist s =
        eqk::compound(load_dist(dist_path), load_dist(dist_path2), cap);
    json j;
    json sup = json::array(), wts = json::array();
    for (const auto& a : s.atoms) {
      sup.push_back(a.point);
      wts.push_back(eqk::rat_str(a.weight));
    }
    j["support"] = sup;
    j["weights"] = wts;
    j["truncated_mass"] = eqk::rat_str(s.truncated_mass);
    emit(j);
  });

  auto* d_mrl = dist->add_subcommand("mrl", "mean residual life");
  d_mrl->add_option("--dist", dist_path)->required();
  d_mrl->add_option("--t", mrl_t_s)->required();
  d_mrl->callback([&] {
    emit({{"mrl", eqk::rat_str(
                      eqk::mrl(load_dist(dist_path),
                               eqk::parse_rat(mrl_t_s)))}});
  });

  // transform --------------------------------------------------------------
  auto* tr = app.add_subcommand("transform", "distributional transforms");
  std::string tr_kind, tr_alpha = "1", tr_t = "0", tr_grid;
  unsigned tr_beta = 1, tr_r = 1, tr_n = 2, tr_gamma = 2, tr_l = 1;
  tr->add_option("--kind", tr_kind,
                 "power|rf|equilibrium|gen-survival|record-survival|"
                 "verify-scaling|verify-sum|verify-p2f")
      ->required();
  tr->add_option("--dist", dist_path)->required();
  tr->add_option("--alpha", tr_alpha);
  tr->add_option("--beta", tr_beta);
  tr->add_option("--r", tr_r);
  tr->add_option("--n", tr_n);
  tr->add_option("--gamma", tr_gamma);
  tr->add_option("--l", tr_l);
  tr->add_option("--t", tr_t);
  tr->add_option("--t-grid", tr_grid, "a:b:step or comma list");
  tr->callback([&] {
    eqk::FiniteDist d = load_dist(dist_path);
    if (tr_kind == "power") {
      emit(eqk::dist_to_json(eqk::power_bias(d, tr_beta)));
    } else if (tr_kind == "rf") {
      emit(eqk::dist_to_json(eqk::rising_factorial_bias(d, tr_r)));
    } else if (tr_kind == "equilibrium") {
      emit(eqk::dist_to_json(eqk::discrete_equilibrium(d)));
    } else if (tr_kind == "gen-survival") {
      auto g = eqk::gen_equilibrium(d, eqk::parse_rat(tr_alpha), tr_beta);
      emit({{"survival", eqk::rat_str(eqk::gen_equib_survival(
                             g, eqk::parse_rat(tr_t)))}});
    } else if (tr_kind == "record-survival") {
      emit({{"survival", eqk::rat_str(eqk::record_survival(
                             d, eqk::parse_rat(tr_t)))}});
    } else if (tr_kind == "verify-scaling") {
      std::vector<eqk::Rat> grid =
          tr_grid.empty() ? std::vector<eqk::Rat>{eqk::Rat(1, 2), eqk::Rat(1),
                                                  eqk::Rat(2)}
                          : parse_grid(tr_grid);
      auto rep = eqk::check_scaling_identity(
          d, eqk::to_real(eqk::parse_rat(tr_alpha)), eqk::Real(tr_beta),
          tr_gamma, grid);
      any_failed |= !rep.holds;
      emit_report(rep);
    } else if (tr_kind == "verify-sum") {
      auto rep = eqk::check_equilibrium_of_sum(d, tr_n);
      any_failed |= !rep.holds;
      emit_report(rep);
    } else if (tr_kind == "verify-p2f") {
      auto rep = eqk::check_power_to_factorial(d, tr_l);
      any_failed |= !rep.holds;
      emit_report(rep);
    } else {
      throw eqk::BadParamsError("unknown transform kind: " + tr_kind);
    }
  });

  // order -------------------------------------------------------------------
  auto* ord = app.add_subcommand("order", "stochastic order queries");
  ord->require_subcommand(1);
  static std::string ord_x, ord_y, ord_alpha;
  static unsigned ord_beta = 1;
  auto run_order = [&](const std::string& kind) {
    eqk::FiniteDist x = load_dist(ord_x), y = load_dist(ord_y);
    eqk::OrderReport rep;
    if (!ord_alpha.empty()) {
      auto g = eqk::gen_equilibrium(x, eqk::parse_rat(ord_alpha), ord_beta);
      rep = (kind == "ltail") ? eqk::ltail_pmax(g, y)
                              : (kind == "utail") ? eqk::utail_pmax(g, y)
                                                  : eqk::dominates(g, y);
    } else {
      rep = (kind == "ltail") ? eqk::ltail_pmax(x, y)
                              : (kind == "utail") ? eqk::utail_pmax(x, y)
                                                  : eqk::dominates(x, y);
    }
    any_failed |= !rep.holds;
    emit({{"kind", kind},
          {"holds", rep.holds},
          {"p_max", eqk::rat_str(rep.p_max)},
          {"raw_inf", eqk::rat_str(rep.raw_inf)},
          {"constrained", rep.constrained},
          {"witness_t", rep.witness_t}});
  };
  for (const std::string kind : {"dominates", "utail", "ltail"}) {
    auto* sub = ord->add_subcommand(
        kind, kind == std::string("dominates")
                  ? "usual stochastic order"
                  : "maximal p for the " + kind + " relaxation");
    sub->add_option("--x", ord_x)->required();
    sub->add_option("--y", ord_y)->required();
    sub->add_option("--alpha", ord_alpha,
                    "apply the (alpha,beta)-equilibrium to x first");
    sub->add_option("--beta", ord_beta);
    sub->callback([&run_order, kind] { run_order(kind); });
  }

  // classify ------------------------------------------------------------
  auto* cls = app.add_subcommand("classify", "reliability class verdicts");
  cls->add_option("--dist", dist_path)->required();
  cls->callback([&] {
    eqk::FiniteDist d = load_dist(dist_path);
    json j;
    j["log_concave"] = eqk::is_log_concave(d).verdict;
    bool positive_support = d.pmf(0) == 0;
    if (positive_support) {
      eqk::ClassReport difr = eqk::is_difr(d);
      j["difr"] = difr.verdict;
      json hz = json::array();
      for (const auto& h : difr.hazard) hz.push_back(eqk::rat_str(h));
      j["hazard"] = hz;
      j["nbue"] = eqk::is_nbue(d).verdict;
    } else {
      j["difr"] = nullptr;
      j["nbue"] = nullptr;
    }
    j["nbuezt"] = eqk::is_nbuezt(d).verdict;
    emit(j);
  });

  // urn ------------------------------------------------------------------
  auto* urn = app.add_subcommand("urn", "urn pmfs and lemma grids");
  urn->require_subcommand(1);
  long long u_b = 1, u_w = 1, u_l = 1, u_n = 0, u_nmax = 20;
  std::string u_sched, u_kind, u_blist = "0,1,2,3", u_wlist = "1,2,3,4",
              u_llist = "1,2,3";

  auto* u_pmf = urn->add_subcommand("pmf", "exact white-ball pmf");
  u_pmf->add_option("--b", u_b);
  u_pmf->add_option("--w", u_w);
  u_pmf->add_option("--l", u_l);
  u_pmf->add_option("--n", u_n)->required();
  u_pmf->add_option("--schedule", u_sched, "file with one total per line");
  u_pmf->callback([&] {
    if (!u_sched.empty()) {
      std::ifstream in(u_sched);
      if (!in) throw eqk::BadConfigError("cannot open " + u_sched);
      std::vector<long long> totals;
      long long v;
      while (in >> v) totals.push_back(v);
      emit(eqk::dist_to_json(
          eqk::urn_pmf(eqk::UrnSpec::with_schedule(u_b, u_w,
                                                   std::move(totals)))));
    } else {
      emit(eqk::dist_to_json(eqk::urn_pmf(u_b, u_w, u_l, u_n)));
    }
  });

  auto* u_ver = urn->add_subcommand("verify", "lemma grid checks");
  u_ver->add_option("--kind", u_kind, "lc|tech|variant|unfac|ineq")
      ->required();
  u_ver->add_option("--b-list", u_blist);
  u_ver->add_option("--w-list", u_wlist);
  u_ver->add_option("--l-list", u_llist);
  u_ver->add_option("--n-max", u_nmax);
  u_ver->callback([&] {
    auto rep = eqk::verify_urn_lemmas(u_kind, parse_list(u_blist),
                                      parse_list(u_wlist),
                                      parse_list(u_llist), u_nmax);
    any_failed |= !rep.holds;
    emit_report(rep);
  });

  // gw ---------------------------------------------------------------------
  auto* gw = app.add_subcommand("gw", "branching process tools");
  gw->require_subcommand(1);
  std::string g_child, g_kind, g_count, g_summand;
  long long g_n = 1, g_cap = -1, g_nmax = 3;

  auto* g_gen = gw->add_subcommand("generation", "exact generation law");
  g_gen->add_option("--child", g_child)->required();
  g_gen->add_option("--n", g_n)->required();
  g_gen->add_option("--cap", g_cap);
  g_gen->callback([&] {
    std::optional<long long> cap;
    if (g_cap >= 0) cap = g_cap;
    eqk::SubDist z = eqk::gw_generation(load_dist(g_child), g_n, cap);
    json sup = json::array(), wts = json::array();
    for (const auto& a : z.atoms) {
      sup.push_back(a.point);
      wts.push_back(eqk::rat_str(a.weight));
    }
    emit({{"support", sup},
          {"weights", wts},
          {"truncated_mass", eqk::rat_str(z.truncated_mass)}});
  });

  auto* g_ver = gw->add_subcommand("verify", "closure theorems");
  g_ver->add_option("--kind", g_kind, "gw1|gw2|randsum|counterexamples")
      ->required();
  g_ver->add_option("--child", g_child);
  g_ver->add_option("--count", g_count);
  g_ver->add_option("--summand", g_summand);
  g_ver->add_option("--n-max", g_nmax);
  g_ver->add_option("--cap", g_cap);
  g_ver->callback([&] {
    eqk::CheckReport rep;
    std::optional<long long> cap;
    if (g_cap >= 0) cap = g_cap;
    if (g_kind == "counterexamples") {
      rep = eqk::verify_counterexamples();
    } else if (g_kind == "randsum") {
      if (g_count.empty() || g_summand.empty())
        throw eqk::BadParamsError("randsum needs --count and --summand");
      rep = eqk::verify_randsum(load_dist(g_count), load_dist(g_summand));
    } else {
      if (g_child.empty()) throw eqk::BadParamsError("need --child");
      rep = eqk::verify_gw_closures(g_kind, load_dist(g_child), g_nmax, cap);
    }
    any_failed |= !rep.holds;
    emit_report(rep);
  });

  // bounds -----------------------------------------------------------------
  auto* bd = app.add_subcommand("bounds", "tail bound evaluation and checks");
  bd->require_subcommand(1);
  std::string b_alpha = "1", b_beta = "1", b_p = "1", b_t = "1", b_grid,
              b_name, b_kind;
  bool b_lower = false, b_unsafe = false;
  long long b_mu = 1000, b_tc = 3;
  std::string b_a = "2", b_b = "0.5";

  auto* b_eval = bd->add_subcommand("eval", "evaluate a bound");
  b_eval->add_option("--alpha", b_alpha)->required();
  b_eval->add_option("--beta", b_beta)->required();
  b_eval->add_option("--p", b_p);
  b_eval->add_option("--t", b_t)->required();
  b_eval->add_flag("--lower", b_lower);
  b_eval->add_flag("--unsafe-extrapolate", b_unsafe);
  b_eval->callback([&] {
    eqk::Real alpha(b_alpha), beta(b_beta), p(b_p), t(b_t);
    eqk::Real v = b_lower
                      ? eqk::lower_tail_bound(alpha, beta, p, t, b_unsafe)
                      : eqk::upper_tail_bound(alpha, beta, p, t, b_unsafe);
    emit({{"bound", eqk::real_str(v)},
          {"side", b_lower ? "lower" : "upper"},
          {"certified", !b_unsafe}});
  });

  auto* b_check = bd->add_subcommand("check", "bounds vs an exact law");
  b_check->add_option("--dist", dist_path)->required();
  b_check->add_option("--alpha", b_alpha)->required();
  b_check->add_option("--beta", b_beta)->required();
  b_check->add_option("--p", b_p);
  b_check->add_option("--t-grid", b_grid, "a:b:step or comma list")
      ->required();
  b_check->callback([&] {
    eqk::Rat alpha = eqk::parse_rat(b_alpha);
    unsigned beta = static_cast<unsigned>(std::stoul(b_beta));
    auto rep = eqk::check_bounds_against(load_dist(dist_path), alpha, beta,
                                         eqk::parse_rat(b_p),
                                         parse_grid(b_grid));
    any_failed |= !rep.holds;
    if (g_csv) {
      std::cout << "t,exact_tail,bound,margin\n";
      for (const auto& m : rep.margins) {
        if (m.contains("upper_tail"))
          std::cout << m.at("t").get<std::string>() << ","
                    << m.at("upper_tail").get<std::string>() << ","
                    << m.at("upper_bound").get<std::string>() << ","
                    << m.at("upper_margin").get<std::string>() << "\n";
        if (m.contains("lower_cdf"))
          std::cout << m.at("t").get<std::string>() << ","
                    << m.at("lower_cdf").get<std::string>() << ","
                    << m.at("lower_bound").get<std::string>() << ","
                    << m.at("lower_margin").get<std::string>() << "\n";
      }
    } else {
      emit_report(rep);
    }
  });

  auto* b_lem = bd->add_subcommand("lemma", "supporting tail lemmas");
  b_lem->add_option("--kind", b_kind, "int|mrl|recexp|recbnd")->required();
  b_lem->add_option("--dist", dist_path)->required();
  b_lem->add_option("--alpha", b_alpha);
  b_lem->add_option("--beta", b_beta);
  b_lem->add_option("--p", b_p);
  b_lem->add_option("--t-grid", b_grid)->required();
  b_lem->callback([&] {
    auto rep = eqk::verify_tail_lemmas(
        b_kind, load_dist(dist_path), eqk::parse_rat(b_alpha),
        static_cast<unsigned>(std::stoul(b_beta)), eqk::parse_rat(b_p),
        parse_grid(b_grid));
    any_failed |= !rep.holds;
    emit_report(rep);
  });

  auto* b_fix = bd->add_subcommand("fixture", "sharpness fixtures");
  b_fix->add_option("--name", b_name, "capped|mixture")->required();
  b_fix->add_option("--mu", b_mu);
  b_fix->add_option("--t", b_tc);
  b_fix->add_option("--a", b_a);
  b_fix->add_option("--b", b_b);
  b_fix->callback([&] {
    eqk::CheckReport rep;
    if (b_name == "capped")
      rep = eqk::check_capped_geometric(b_mu, b_tc);
    else if (b_name == "mixture")
      rep = eqk::check_exp_mixture(eqk::Real(b_a), eqk::Real(b_b));
    else
      throw eqk::BadParamsError("unknown fixture: " + b_name);
    any_failed |= !rep.holds;
    emit_report(rep);
  });

  // simulate / crossvalidate -------------------------------------------
  auto add_model_opts = [&](CLI::App* cmd, eqk::SimConfig& cfg,
                            std::string& child_path) {
    cmd->add_option("--model", cfg.model,
                    "pref_attach|walk_local_time|walk_bridge_local_time|"
                    "binary_tree_subtree|gw")
        ->required();
    cmd->add_option("--w", cfg.w);
    cmd->add_option("--l", cfg.l);
    cmd->add_option("--n", cfg.n);
    cmd->add_option("--steps", cfg.steps);
    cmd->add_option("--n-leaves", cfg.n_leaves);
    cmd->add_option("--k", cfg.k);
    cmd->add_option("--child", child_path);
    cmd->add_option("--generations", cfg.generations);
    cmd->add_option("--samples", cfg.samples)->required();
    cmd->add_option("--seed", cfg.master_seed)->required();
    cmd->add_option("--workers", cfg.workers);
  };

  auto* sim = app.add_subcommand("simulate", "seeded Monte Carlo");
  static eqk::SimConfig sim_cfg;
  std::string sim_child, sim_out;
  add_model_opts(sim, sim_cfg, sim_child);
  sim->add_option("--out", sim_out, "write empirical JSON to file");
  sim->callback([&] {
    if (!sim_child.empty()) sim_cfg.child = load_dist(sim_child);
    eqk::EmpiricalDist e = eqk::simulate(sim_cfg);
    json values = json::object();
    for (const auto& [k, c] : e.counts) values[std::to_string(k)] = c;
    json j{{"samples", e.samples}, {"counts", values}};
    if (!sim_out.empty()) {
      std::ofstream out(sim_out);
      out << j.dump(2) << "\n";
    }
    emit(j);
  });

  auto* cv = app.add_subcommand("crossvalidate",
                                "TV distance to the exact law");
  static eqk::SimConfig cv_cfg;
  std::string cv_child, cv_threshold = "1/50";
  add_model_opts(cv, cv_cfg, cv_child);
  cv->add_option("--tv-threshold", cv_threshold);
  cv->callback([&] {
    if (!cv_child.empty()) cv_cfg.child = load_dist(cv_child);
    auto rep = eqk::crossvalidate(cv_cfg, eqk::parse_rat(cv_threshold));
    any_failed |= !rep.holds;
    emit_report(rep);
  });

  // verify all ----------------------------------------------------------
  auto* ver = app.add_subcommand("verify", "umbrella verification suite");
  std::string ver_what = "all", ver_budget = "small";
  ver->add_option("what", ver_what)->check(CLI::IsMember({"all"}));
  ver->add_option("--budget", ver_budget)
      ->check(CLI::IsMember({"small", "full"}));
  ver->callback([&] {
    eqk::Budget budget = (ver_budget == "full") ? eqk::Budget::full
                                                : eqk::Budget::small;
    json out = json::array();
    for (const auto& rep : eqk::acceptance::run_all(budget)) {
      any_failed |= !rep.holds;
      out.push_back(rep.to_json());
      std::cerr << (rep.holds ? "PASS " : "FAIL ") << rep.name << "\n";
    }
    emit(out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  return any_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const eqk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
