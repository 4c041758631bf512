#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gmdkp {

/// A concrete GMDKP problem:
///
///   maximize   sum_i v_i x_i
///   subject to sum_i w_{mu i} x_i <= C_mu   (mu = 0..K-1)
///              x_i in {0, ..., x_i^max}
///
/// Weights are stored row-major (K rows of N) and shared between copies, so
/// residual instances built during greedy search do not copy the matrix.
class Instance {
 public:
  Instance(std::vector<double> profits, std::vector<double> weights, std::vector<double> capacities,
           std::vector<int> max_counts);

  std::size_t n_items() const noexcept { return profits_.size(); }
  std::size_t n_constraints() const noexcept { return capacities_.size(); }

  std::span<const double> profits() const noexcept { return profits_; }
  std::span<const double> weights() const noexcept { return *weights_; }
  std::span<const double> capacities() const noexcept { return capacities_; }
  std::span<const int> max_counts() const noexcept { return max_counts_; }

  double weight(std::size_t mu, std::size_t i) const noexcept { return (*weights_)[mu * n_items() + i]; }
  std::span<const double> row(std::size_t mu) const noexcept {
    return std::span<const double>(*weights_).subspan(mu * n_items(), n_items());
  }

  /// Same weights and profits with new capacities and caps.
  Instance residual(std::vector<double> capacities, std::vector<int> max_counts) const;

  /// Number of joint assignments, prod_i (x_i^max + 1), saturating at UINT64_MAX.
  std::uint64_t state_space_size() const noexcept;

  friend bool operator==(const Instance& a, const Instance& b);

 private:
  Instance(std::vector<double> profits, std::shared_ptr<const std::vector<double>> weights,
           std::vector<double> capacities, std::vector<int> max_counts);
  void validate() const;

  std::vector<double> profits_;
  std::shared_ptr<const std::vector<double>> weights_;
  std::vector<double> capacities_;
  std::vector<int> max_counts_;
};

/// Parameters of the random ensemble: v_i = 1, C_mu = C N, x_i^max = x_max,
/// w_{mu i} ~ N(w, sigma^2) i.i.d.
struct EnsembleParams {
  std::size_t n_items = 50;
  double alpha = 1.0;
  double mean_weight = 0.5;
  double weight_variance = 1.0 / 12.0;
  double capacity_ratio = 0.25;
  int x_max = 1;
  std::uint64_t seed = 1;
  /// Explicit K; when set it overrides round(alpha * N).
  std::optional<std::size_t> n_constraints;

  /// K = round-half-up(alpha * N), or the explicit override.
  std::size_t constraints() const;
  void validate() const;
};

struct Selection {
  std::vector<int> counts;

  friend bool operator==(const Selection&, const Selection&) = default;
  friend auto operator<=>(const Selection&, const Selection&) = default;
};

struct Evaluation {
  double profit = 0.0;
  std::vector<double> loads;
  std::vector<double> slacks;
  bool feasible = true;
  /// (U - (C/w) N) / sqrt(N); present only when ensemble parameters were supplied.
  std::optional<double> scaled_m;
};

Instance generate_instance(const EnsembleParams& params);

/// Load of constraint mu, summed over items in ascending index order. Every
/// feasibility decision in the library goes through this one routine.
double row_load(const Instance& instance, std::span<const int> counts, std::size_t mu);

/// True when counts with one extra unit of `item` satisfies every constraint.
bool fits_one_more(const Instance& instance, std::span<const int> counts, std::size_t item);

Evaluation evaluate(const Instance& instance, const Selection& selection,
                    const std::optional<EnsembleParams>& params = std::nullopt);

/// (profit - (C/w) N) / sqrt(N).
double scaled_profit(double profit, std::size_t n_items, double capacity_ratio, double mean_weight);

std::string save_instance(const Instance& instance);
Instance load_instance(const std::string& text);

Instance read_instance_file(const std::string& path);
void write_instance_file(const Instance& instance, const std::string& path);

}  // namespace gmdkp
