#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmdkp/cavity.hpp"
#include "gmdkp/instance.hpp"

namespace gmdkp::bench {

enum class Solver { bp, gamp, greedy, exact };

Solver parse_solver(std::string_view name);
std::string_view solver_name(Solver solver);

struct BenchConfig {
  std::vector<std::size_t> n_items{50};
  std::vector<double> alphas{0.1, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  /// When set, K is held at this value for every N and alpha = K / N.
  std::optional<std::size_t> fixed_k;
  std::vector<int> x_maxes{1};
  std::size_t n_trials = 100;
  std::vector<Solver> engines{Solver::bp, Solver::greedy};
  std::uint64_t seed_base = 1;
  std::string output_dir = "bench_out";

  double mean_weight = 0.5;
  double weight_variance = 1.0 / 12.0;
  double capacity_ratio = 0.25;

  cavity::IterOpts iter;
  bool warm_start = true;
  std::uint64_t exact_budget = 100'000'000;

  /// Overlay the replica M_opt on M-vs-alpha and M-vs-N plots.
  bool theory = true;
  /// Suppress the timestamp line and write wall_time_ms as 0.
  bool deterministic = false;
  /// Worker threads; 0 means GMDKP_THREADS or the hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

/// `key = value` lines, `#` comments, comma-separated lists. Unknown keys
/// and malformed values throw ParseError.
BenchConfig parse_config(const std::string& text);
BenchConfig read_config_file(const std::string& path);

struct BenchRecord {
  std::size_t n_items = 0;
  std::size_t n_constraints = 0;
  double alpha = 0.0;
  int x_max = 1;
  Solver engine = Solver::bp;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double profit = 0.0;
  double scaled_m = 0.0;
  long sweeps_total = 0;
  double wall_time_ms = 0.0;
  bool feasible = true;
  /// Empty on success; otherwise a short tag such as "budget" or "numeric: ...".
  std::string error;
};

struct CellSummary {
  std::size_t n_items = 0;
  std::size_t n_constraints = 0;
  double alpha = 0.0;
  int x_max = 1;
  Solver engine = Solver::bp;
  std::size_t n_ok = 0;
  std::size_t n_errors = 0;
  double mean_profit = 0.0, se_profit = 0.0;
  double mean_m = 0.0, se_m = 0.0;
  double mean_time_ms = 0.0, se_time_ms = 0.0;
  double mean_sweeps = 0.0;
};

struct TheoryPoint {
  double alpha = 0.0;
  int x_max = 1;
  /// NaN when the replica solver failed.
  double m_opt = 0.0;
};

/// Per-instance seed: mix_seed({seed_base, N, K, x_max, trial}). Shared by
/// all engines so that engines are compared on identical instances.
std::uint64_t cell_seed(std::uint64_t seed_base, std::size_t n, std::size_t k, int x_max, std::size_t trial);

/// Ensemble parameters of one (N, alpha, x_max, trial) cell.
EnsembleParams cell_params(const BenchConfig& config, std::size_t n, double alpha, int x_max, std::size_t trial);

BenchRecord run_trial(const BenchConfig& config, std::size_t n, double alpha, int x_max, Solver engine,
                      std::size_t trial);

/// All trials of all cells on a worker pool; rows sorted by
/// (N, K, x_max, engine, trial) so the order does not depend on scheduling.
std::vector<BenchRecord> run_bench(const BenchConfig& config);

/// Mean and standard error (sample stddev / sqrt(n)) over successful rows.
std::vector<CellSummary> summarize(const std::vector<BenchRecord>& records);

std::vector<TheoryPoint> theory_points(const BenchConfig& config);

std::string records_csv(const std::vector<BenchRecord>& records, bool with_timestamp);
std::string summary_csv(const std::vector<CellSummary>& summaries, bool with_timestamp);
std::string theory_csv(const std::vector<TheoryPoint>& points);

/// Least-squares slope of log(y) against log(x); points with x or y <= 0 are skipped.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Run the whole pipeline and write records.csv, summary.csv, theory.csv
/// and the SVG plots into config.output_dir. Returns the written paths.
std::vector<std::string> run_and_write(const BenchConfig& config);

}  // namespace gmdkp::bench
