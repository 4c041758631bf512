#include "gmdkp/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "gmdkp/bench.hpp"
#include "gmdkp/error.hpp"
#include "gmdkp/instance.hpp"
#include "gmdkp/mpgs.hpp"
#include "gmdkp/oracle.hpp"
#include "gmdkp/replica.hpp"

namespace gmdkp::cli {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string counts_text(const Selection& s) {
  std::string out;
  for (std::size_t i = 0; i < s.counts.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(s.counts[i]);
  }
  return out;
}

// Ensemble flags shared by gen, solve and exact.
struct EnsembleFlags {
  std::size_t n = 50;
  double alpha = 1.0;
  std::optional<std::size_t> k;
  double w = 0.5;
  double sigma2 = 1.0 / 12.0;
  double c = 0.25;
  int x_max = 1;
  std::uint64_t seed = 1;

  void attach(CLI::App& app) {
    app.add_option("--n", n, "number of items N")->check(CLI::PositiveNumber);
    app.add_option("--alpha", alpha, "constraint density K/N")->check(CLI::PositiveNumber);
    app.add_option("--k", k, "number of constraints (overrides --alpha)");
    app.add_option("--w", w, "mean weight")->check(CLI::PositiveNumber);
    app.add_option("--sigma2", sigma2, "weight variance")->check(CLI::PositiveNumber);
    app.add_option("--c", c, "capacity per item")->check(CLI::PositiveNumber);
    app.add_option("--xmax", x_max, "per-item count cap")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "generator seed");
  }

  EnsembleParams params() const {
    EnsembleParams p;
    p.n_items = n;
    p.alpha = alpha;
    p.n_constraints = k;
    p.mean_weight = w;
    p.weight_variance = sigma2;
    p.capacity_ratio = c;
    p.x_max = x_max;
    p.seed = seed;
    p.validate();
    return p;
  }
};

// An instance from a file when a path is given, otherwise from the generator.
struct Source {
  std::string path;
  EnsembleFlags ensemble;

  Instance load() const { return path.empty() ? generate_instance(ensemble.params()) : read_instance_file(path); }

  double scaled(double profit, std::size_t n) const {
    return scaled_profit(profit, n, ensemble.c, ensemble.w);
  }
};

int cmd_gen(const EnsembleFlags& flags, const std::string& out_path, std::ostream& out) {
  const Instance instance = generate_instance(flags.params());
  if (out_path.empty()) {
    out << save_instance(instance);
  } else {
    write_instance_file(instance, out_path);
    out << "wrote=" << out_path << "\nn_items=" << instance.n_items()
        << "\nn_constraints=" << instance.n_constraints() << "\n";
  }
  return 0;
}

struct SolveFlags {
  std::string engine = "bp";
  bool warm_start = true;
  double tol = 1e-8;
  std::optional<double> damping;
  int max_sweeps = 1000;
  bool diagnostics = false;
};

int cmd_solve(const Source& source, const SolveFlags& flags, std::ostream& out) {
  const Instance instance = source.load();
  mpgs::MpgsTrace trace;
  if (flags.engine == "greedy") {
    trace = mpgs::density_greedy_solve(instance);
  } else {
    cavity::IterOpts opts;
    opts.tol = flags.tol;
    opts.damping = flags.damping;
    opts.max_sweeps = flags.max_sweeps;
    trace = mpgs::mpgs_solve(instance, mpgs::parse_engine(flags.engine), opts, flags.warm_start);
  }
  const auto& eval = trace.final_evaluation;
  out << "engine=" << flags.engine << "\n"
      << "n_items=" << instance.n_items() << "\n"
      << "n_constraints=" << instance.n_constraints() << "\n"
      << "profit=" << num(eval.profit) << "\n"
      << "scaled_m=" << num(source.scaled(eval.profit, instance.n_items())) << "\n"
      << "feasible=" << (eval.feasible ? 1 : 0) << "\n"
      << "picks=" << trace.picks.size() << "\n"
      << "sweeps_total=" << trace.sweeps_total() << "\n"
      << "selection=" << counts_text(trace.final_selection) << "\n";
  if (flags.diagnostics) {
    out << "pick,item,p_nonzero,demoted,converged,sweeps,residual,clamps\n";
    for (std::size_t j = 0; j < trace.diagnostics.size(); ++j) {
      const auto& d = trace.diagnostics[j];
      out << j << "," << d.item << "," << num(d.p_nonzero) << "," << d.demoted << "," << (d.run.converged ? 1 : 0)
          << "," << d.run.sweeps << "," << num(d.run.residual) << "," << d.run.clamp_count << "\n";
    }
  }
  return 0;
}

int cmd_exact(const Source& source, std::uint64_t budget, std::ostream& out) {
  const Instance instance = source.load();
  oracle::OracleOptions opts;
  opts.node_budget = budget;
  const auto result = oracle::exact_optimum(instance, opts);
  out << "n_items=" << instance.n_items() << "\n"
      << "n_constraints=" << instance.n_constraints() << "\n"
      << "profit=" << num(result.best_profit) << "\n"
      << "scaled_m=" << num(source.scaled(result.best_profit, instance.n_items())) << "\n"
      << "n_feasible=" << result.n_feasible << "\n"
      << "log_n_feasible=" << num(result.log_n_feasible) << "\n"
      << "selection=" << counts_text(result.best_selection) << "\n";
  return 0;
}

struct TheoryFlags {
  double alpha = 1.0;
  int x_max = 1;
  double c = 0.25;
  double w = 0.5;
  double sigma2 = 1.0 / 12.0;
  std::size_t nodes = 120;
  double from = 0.0;
  double step = 0.05;
  std::string curve;
};

int cmd_theory(const TheoryFlags& flags, std::ostream& out) {
  EnsembleParams p;
  p.mean_weight = flags.w;
  p.weight_variance = flags.sigma2;
  p.capacity_ratio = flags.c;
  p.x_max = flags.x_max;
  replica::ScanOptions scan;
  scan.saddle.nodes = flags.nodes;
  scan.start = flags.from;
  scan.step = flags.step;
  const auto result = replica::find_m_opt(flags.alpha, p, scan);
  if (!flags.curve.empty()) {
    std::ofstream csv(flags.curve);
    if (!csv) throw std::runtime_error("cannot write '" + flags.curve + "'");
    csv << "M,S,Q,q,Q_hat,q_hat,M_hat,residual\n";
    for (const auto& pt : result.curve) {
      const auto& o = pt.order;
      csv << num(pt.m) << "," << num(pt.entropy) << "," << num(o.Q) << "," << num(o.q) << "," << num(o.Q_hat) << ","
          << num(o.q_hat) << "," << num(o.M_hat) << "," << num(pt.residual) << "\n";
    }
  }
  out << "alpha=" << num(flags.alpha) << "\n"
      << "x_max=" << flags.x_max << "\n"
      << "curve_points=" << result.curve.size() << "\n"
      << "m_opt=" << num(result.m_opt) << "\n";
  return 0;
}

int cmd_bench(const std::string& config_path, const std::optional<std::string>& output_dir, bool deterministic,
              std::ostream& out) {
  auto config = bench::read_config_file(config_path);
  if (output_dir) config.output_dir = *output_dir;
  if (deterministic) config.deterministic = true;
  for (const auto& path : bench::run_and_write(config)) out << "wrote=" << path << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized multidimensional knapsack: instances, message-passing solvers and replica theory",
               "gmdkp"};
  app.require_subcommand(1);

  EnsembleFlags gen_flags;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen_flags.attach(*gen);
  gen->add_option("--out", gen_out, "output path (default: stdout)");

  Source solve_src;
  SolveFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "run MPGS (bp, gamp) or density greedy");
  solve->add_option("instance", solve_src.path, "instance file (default: generate)");
  solve_src.ensemble.attach(*solve);
  solve->add_option("--engine", solve_flags.engine, "bp, gamp or greedy")
      ->check(CLI::IsMember({"bp", "gamp", "greedy"}));
  solve->add_flag("--warm-start,!--no-warm-start", solve_flags.warm_start, "reuse messages between picks");
  solve->add_option("--tol", solve_flags.tol, "convergence tolerance")->check(CLI::PositiveNumber);
  solve->add_option("--damping", solve_flags.damping, "message damping in [0, 1)");
  solve->add_option("--max-sweeps", solve_flags.max_sweeps, "sweep limit per pick")->check(CLI::PositiveNumber);
  solve->add_flag("--diagnostics", solve_flags.diagnostics, "print per-pick CSV");

  Source exact_src;
  std::uint64_t budget = 100'000'000;
  auto* exact = app.add_subcommand("exact", "exhaustive optimum for small instances");
  exact->add_option("instance", exact_src.path, "instance file (default: generate)");
  exact_src.ensemble.attach(*exact);
  exact->add_option("--budget", budget, "largest joint state space to enumerate");

  TheoryFlags theory_flags;
  auto* theory = app.add_subcommand("theory", "replica-symmetric M_opt and entropy curve");
  theory->add_option("--alpha", theory_flags.alpha, "constraint density K/N")->check(CLI::PositiveNumber);
  theory->add_option("--xmax", theory_flags.x_max, "per-item count cap")->check(CLI::PositiveNumber);
  theory->add_option("--c", theory_flags.c, "capacity per item")->check(CLI::PositiveNumber);
  theory->add_option("--w", theory_flags.w, "mean weight")->check(CLI::PositiveNumber);
  theory->add_option("--sigma2", theory_flags.sigma2, "weight variance")->check(CLI::PositiveNumber);
  theory->add_option("--nodes", theory_flags.nodes, "quadrature nodes")->check(CLI::PositiveNumber);
  theory->add_option("--from", theory_flags.from, "first M of the scan");
  theory->add_option("--step", theory_flags.step, "scan step in M")->check(CLI::PositiveNumber);
  theory->add_option("--curve", theory_flags.curve, "write the sampled S(M) curve as CSV");

  std::string config_path;
  std::optional<std::string> bench_dir;
  bool deterministic = false;
  auto* bench_cmd = app.add_subcommand("bench", "run an ensemble experiment from a config file");
  bench_cmd->add_option("config", config_path, "config file")->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("--output-dir", bench_dir, "override output_dir");
  bench_cmd->add_flag("--deterministic", deterministic, "no timestamps, zero wall times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help and version requests exit 0 and go to stdout
    return app.exit(e, e.get_exit_code() == 0 ? out : err, err) == 0 ? 0 : 2;
  }

  try {
    if (*gen) return cmd_gen(gen_flags, gen_out, out);
    if (*solve) return cmd_solve(solve_src, solve_flags, out);
    if (*exact) return cmd_exact(exact_src, budget, out);
    if (*theory) return cmd_theory(theory_flags, out);
    if (*bench_cmd) return cmd_bench(config_path, bench_dir, deterministic, out);
  } catch (const BudgetExceeded& e) {
    err << "error: budget exceeded: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    err << "error: parse: " << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    err << "error: numeric: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace gmdkp::cli
