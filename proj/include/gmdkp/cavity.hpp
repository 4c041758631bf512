#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gmdkp/instance.hpp"
#include "gmdkp/marginals.hpp"

namespace gmdkp::cavity {

/// Which marginal estimator.
enum class Engine { bp, gamp };

struct IterOpts {
  int max_sweeps = 1000;
  /// Stop when the largest absolute change of the marginal-defining
  /// quantities in one sweep drops below this.
  double tol = 1e-8;
  /// new = (1 - damping) * proposed + damping * old. Unset means the
  /// engine default: 0.5 for BP, 0.9 for GAMP.
  std::optional<double> damping;
  /// Lower clamp for cavity variances V.
  double v_floor = 1e-12;
  /// Lower clamp for factor-to-variable message entries.
  double h_floor = 1e-300;

  void validate() const;
  double damping_for(Engine engine) const;
};

struct RunInfo {
  bool converged = false;
  int sweeps = 0;
  double residual = 0.0;
  /// Number of variance evaluations clamped at v_floor over the whole run.
  std::size_t clamp_count = 0;

  /// "converged=1 sweeps=12 residual=3.1e-09 clamps=0"
  std::string to_key_value() const;
};

/// Edge messages of the Gaussian-reduced BP on the factor graph of the
/// uniform feasible measure. Tables for edge (mu, i) live at
/// [mu * total_levels + offsets[i], ... + x_i^max]; each is normalized.
struct BPState {
  std::size_t n_items = 0;
  std::size_t n_constraints = 0;
  std::vector<std::size_t> offsets;     // size N + 1; offsets[N] == total_levels
  std::vector<double> var_to_factor;    // M_{i -> mu}(x)
  std::vector<double> factor_to_var;    // M_{mu -> i}(x)
  std::vector<double> edge_mean;        // m_{i -> mu},   [mu * N + i]
  std::vector<double> edge_var;         // chi_{i -> mu}
  std::vector<double> cavity_mean;      // Delta_{mu -> i}
  std::vector<double> cavity_var;       // V_{mu -> i}

  std::size_t total_levels() const noexcept { return offsets.empty() ? 0 : offsets.back(); }
  std::size_t levels(std::size_t i) const noexcept { return offsets[i + 1] - offsets[i]; }

  /// Uniform tables 1 / (x_i^max + 1) on every edge.
  static BPState uniform(const Instance& instance);

  /// True when dimensions and per-item level counts agree with the instance.
  bool matches(const Instance& instance) const;

  /// Remove the highest level of `item` from every table touching it and
  /// renormalize. Used to warm-start after that item's cap drops by one.
  void drop_top_level(std::size_t item);
};

/// Node variables of GAMP.
struct GAMPState {
  std::vector<int> max_counts;
  std::vector<double> mean;       // m_i
  std::vector<double> var;        // chi_i
  std::vector<double> curvature;  // a_i
  std::vector<double> field;      // b_i
  std::vector<double> V;          // V_mu
  std::vector<double> B;          // B_mu
  std::vector<double> A;          // A_mu

  /// m_i, chi_i of the uniform distribution; A = B = 0; V = sum_i w^2 chi_i.
  static GAMPState initial(const Instance& instance, double v_floor = 1e-12);

  bool matches(const Instance& instance) const;

  /// Lower the cap of `item` by one, clipping its mean into the new range.
  void drop_top_level(std::size_t item);
};

struct BPResult {
  Marginals marginals;
  BPState state;
  RunInfo info;
};

struct GAMPResult {
  Marginals marginals;
  GAMPState state;
  RunInfo info;
};

/// Gaussian-reduced belief propagation. A sweep visits the factors in order;
/// for each one it forms the variable-to-factor tables from the current
/// beliefs, takes their cavity means/variances, and replaces
/// M_{mu->i}(x) ~ H((w x + Delta_{mu->i} - C) / sqrt(V_{mu->i})) (damped),
/// updating the beliefs before moving to the next factor.
/// Throws NumericError on NaN/inf; non-convergence is reported in info.
BPResult bp_run(const Instance& instance, const IterOpts& opts = {}, std::optional<BPState> init = std::nullopt);

/// Node-variable approximate message passing (O(NK) per sweep).
GAMPResult gamp_run(const Instance& instance, const IterOpts& opts = {},
                    std::optional<GAMPState> init = std::nullopt);

}  // namespace gmdkp::cavity
