// cli.hpp - Command-line front end: bounds, plan, evaluate and sweep
// subcommands. Kept header-only and stream-based so the whole surface,
// exit codes included, is exercisable in-process.

#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relalloc/bounds.hpp"
#include "relalloc/planner.hpp"
#include "relalloc/reliability.hpp"
#include "relalloc/sweep.hpp"

namespace relalloc::cli {

namespace detail {

// 6 significant digits, the precision used for all human-facing numbers.
inline std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Loads file: one nonnegative integer per line, '#' comment lines and blank
// lines ignored, trailing newline optional.
inline std::vector<std::int64_t> parse_allocation_file(std::istream& in, const std::string& name) {
  std::vector<std::int64_t> loads;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(first, last - first + 1);
    if (tok[0] == '#') continue;
    std::int64_t v = 0;
    std::size_t used = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || v < 0)
      throw std::invalid_argument(name + ":" + std::to_string(lineno) +
                                  ": expected a nonnegative integer, got '" + tok + "'");
    loads.push_back(v);
  }
  return loads;
}

// "count x load" groups, heaviest first, e.g. "6x7 4x6" (multiplication sign).
inline std::string loads_summary(const Allocation& alloc) {
  std::map<std::int64_t, int, std::greater<>> groups;
  for (auto a : alloc.loads)
    if (a > 0) ++groups[a];
  if (groups.empty()) return "empty";
  std::string s;
  for (const auto& [load, count] : groups) {
    if (!s.empty()) s += ' ';
    s += std::to_string(count) + "×" + std::to_string(load);
  }
  return s;
}

inline void print_plan(std::ostream& out, const PlanResult& r, const Platform& pf) {
  out << "policy=" << policy_name(r.policy) << "\n";
  out << "m=" << pf.m << "\n";
  out << "k=" << r.k << "\n";
  if (r.allocation) {
    out << "loads=" << loads_summary(*r.allocation) << "\n";
    out << "total_instances=" << r.allocation->total() << "\n";
  }
  if (r.success_prob) {
    out << "success_prob=" << fmt6(*r.success_prob) << "\n";
    out << "failure_prob=" << fmt6(1.0 - *r.success_prob) << "\n";
  }
  out << "energy_static=" << fmt6(r.energy_static) << "\n";
  out << "energy_dynamic=" << fmt6(r.energy_dynamic) << "\n";
  out << "energy_total=" << fmt6(r.energy_total) << "\n";
}

struct BoundsArgs {
  std::int64_t dem = 0;
  double fail = 0.0, rel = 0.5, alpha = 2.0;
  int machines = 1;
};

struct PlanArgs {
  Policy policy = Policy::BestHomo;
  std::int64_t dem = 0;
  double fail = 0.0, rel = 0.5, alpha = 2.0, estat = 0.0, ecoeff = 1.0;
  int machines = 1;
  bool shutdown = false;
  bool scan_k = false;
};

struct EvalArgs {
  std::string alloc_file;
  double fail = 0.0;
  std::int64_t dem = 0;
  RelMethod method = RelMethod::DP;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
};

struct SweepArgs {
  SweepConfig cfg;
  std::string out_file;
};

inline void run_bounds(const BoundsArgs& a, std::ostream& out) {
  Platform{a.machines, a.fail, 0.0, 1.0, a.alpha}.validate();
  Sla{a.dem, a.rel}.validate();
  const double dem = static_cast<double>(a.dem);
  const double lo_rep = min_rep(dem, a.fail, a.rel);
  const double lo_energy = min_energy_frac(dem, a.fail, a.rel, a.machines, a.alpha);
  out << "MinRep=" << fmt6(lo_rep) << "\n";
  out << "MinEnergy=" << fmt6(lo_energy) << "\n";
  // the Chernoff side may be unusable at this machine count
  const double hi_rep = max_rep(dem, a.fail, a.rel, a.machines);
  const double hi_energy = max_energy_frac(dem, a.fail, a.rel, a.machines, a.alpha);
  out << "MaxRep=" << fmt6(hi_rep) << "\n";
  out << "MaxEnergy=" << fmt6(hi_energy) << "\n";
  out << "DispersionBound=" << fmt6(dispersion_bound(dem, a.fail, a.rel, a.machines, a.alpha))
      << "\n";
  out << "RepRatio=" << fmt6(hi_rep / lo_rep) << "\n";
  out << "EnergyRatio=" << fmt6(hi_energy / lo_energy) << "\n";
}

inline void run_plan(const PlanArgs& a, std::ostream& out) {
  const Platform pf{a.machines, a.fail, a.estat, a.ecoeff, a.alpha};
  const Sla sla{a.dem, a.rel};
  const PlanResult r = plan(a.policy, pf, sla, a.shutdown, a.scan_k);
  if (r.allocation && !(reliability_dp(*r.allocation, pf.fail, sla.dem) >= 1.0 - sla.rel))
    throw std::logic_error("plan failed its reliability re-check before output");
  print_plan(out, r, pf);
}

inline void run_evaluate(const EvalArgs& a, std::ostream& out) {
  std::ifstream in(a.alloc_file);
  if (!in) throw std::invalid_argument("cannot open allocation file '" + a.alloc_file + "'");
  const std::vector<std::int64_t> loads = parse_allocation_file(in, a.alloc_file);
  if (!(a.fail >= 0.0 && a.fail < 1.0))
    throw std::invalid_argument("evaluate: fail must lie in [0,1)");
  if (a.dem < 0) throw std::invalid_argument("evaluate: demand must be >= 0");

  ReliabilityEstimate est;
  switch (a.method) {
    case RelMethod::DP:
      est.value = reliability_dp(std::span<const std::int64_t>(loads), a.fail, a.dem);
      est.method = RelMethod::DP;
      break;
    case RelMethod::BruteForce:
      est.value = reliability_bruteforce(std::span<const std::int64_t>(loads), a.fail, a.dem);
      est.method = RelMethod::BruteForce;
      break;
    case RelMethod::MonteCarlo:
      est = reliability_montecarlo(std::span<const std::int64_t>(loads), a.fail, a.dem, a.trials,
                                   a.seed);
      break;
  }
  out << "value=" << fmt6(est.value) << "\n";
  out << "method="
      << (est.method == RelMethod::DP ? "dp"
                                      : est.method == RelMethod::BruteForce ? "bruteforce"
                                                                            : "montecarlo")
      << "\n";
  if (est.trials) out << "trials=" << *est.trials << "\n";
  if (est.seed) out << "seed=" << *est.seed << "\n";
  if (est.standard_error) out << "stderr=" << fmt6(*est.standard_error) << "\n";
}

inline void run_sweep_cmd(const SweepArgs& a) {
  const auto rows = run_sweep(a.cfg);
  std::ofstream out(a.out_file, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file '" + a.out_file + "'");
  write_sweep_csv(out, rows);
}

}  // namespace detail

// Returns the process exit status: 0 on success, 1 on usage or parse errors,
// 2 when the instance is infeasible.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SLA-constrained replica placement with energy minimization"};
  app.name("relalloc");
  app.require_subcommand(1);

  detail::BoundsArgs ba;
  auto* bounds_cmd = app.add_subcommand(
      "bounds", "Print replica/energy bounds and their ratios for one instance");
  bounds_cmd->add_option("--dem", ba.dem, "Required alive instances")->required();
  bounds_cmd->add_option("--fail", ba.fail, "Per-machine failure probability")->required();
  bounds_cmd->add_option("--rel", ba.rel, "Maximum SLA violation probability")->required();
  bounds_cmd->add_option("--machines", ba.machines, "Machine count")->required();
  bounds_cmd->add_option("--alpha", ba.alpha, "Dynamic-energy exponent")->required();

  detail::PlanArgs pa;
  auto* plan_cmd = app.add_subcommand("plan", "Compute an SLA-valid allocation");
  plan_cmd
      ->add_option("--policy", pa.policy, "Allocation policy")
      ->required()
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Policy>{{"theo-homo", Policy::TheoHomo},
                                        {"best-homo", Policy::BestHomo},
                                        {"best-step", Policy::BestStep}},
          CLI::ignore_case));
  plan_cmd->add_option("--dem", pa.dem, "Required alive instances")->required();
  plan_cmd->add_option("--fail", pa.fail, "Per-machine failure probability")->required();
  plan_cmd->add_option("--rel", pa.rel, "Maximum SLA violation probability")->required();
  plan_cmd->add_option("--machines", pa.machines, "Machine count")->required();
  plan_cmd->add_option("--alpha", pa.alpha, "Dynamic-energy exponent")->required();
  plan_cmd->add_option("--estat", pa.estat, "Static energy per switched-on machine");
  plan_cmd->add_option("--ecoeff", pa.ecoeff, "Dynamic-energy coefficient");
  plan_cmd->add_flag("--shutdown", pa.shutdown,
                     "Choose the number of machines to switch on (off machines cost nothing)");
  plan_cmd
      ->add_flag("--scan-k", pa.scan_k,
                 "Exhaustive machine-count scan instead of the mean rule (slow)")
      ->needs("--shutdown");

  detail::EvalArgs ea;
  auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate the reliability of an allocation file");
  eval_cmd->add_option("--alloc", ea.alloc_file, "Allocation file, one load per line")->required();
  eval_cmd->add_option("--fail", ea.fail, "Per-machine failure probability")->required();
  eval_cmd->add_option("--dem", ea.dem, "Required alive instances")->required();
  eval_cmd->add_option("--method", ea.method, "Evaluation method")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, RelMethod>{{"dp", RelMethod::DP},
                                           {"bruteforce", RelMethod::BruteForce},
                                           {"montecarlo", RelMethod::MonteCarlo}},
          CLI::ignore_case));
  eval_cmd->add_option("--trials", ea.trials, "Monte Carlo trial count");
  eval_cmd->add_option("--seed", ea.seed, "Monte Carlo seed");

  detail::SweepArgs sa;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Write per-machine-count policy energies as CSV");
  sweep_cmd->add_option("--m-min", sa.cfg.m_min, "Smallest machine count")->required();
  sweep_cmd->add_option("--m-max", sa.cfg.m_max, "Largest machine count")->required();
  sweep_cmd->add_option("--dem", sa.cfg.dem, "Required alive instances")->required();
  sweep_cmd->add_option("--fail", sa.cfg.fail, "Per-machine failure probability")->required();
  sweep_cmd->add_option("--rel", sa.cfg.rel, "Maximum SLA violation probability")->required();
  sweep_cmd->add_option("--alpha", sa.cfg.alpha, "Dynamic-energy exponent")->required();
  sweep_cmd->add_option("--estat", sa.cfg.estat, "Static energy per switched-on machine");
  sweep_cmd->add_option("--out", sa.out_file, "Output CSV path")->required();

  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (bounds_cmd->parsed()) detail::run_bounds(ba, out);
    if (plan_cmd->parsed()) detail::run_plan(pa, out);
    if (eval_cmd->parsed()) detail::run_evaluate(ea, out);
    if (sweep_cmd->parsed()) detail::run_sweep_cmd(sa);
  } catch (const infeasible_error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 0;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(std::move(args), out, err);
}

}  // namespace relalloc::cli
