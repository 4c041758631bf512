#pragma once

#include <cstdint>

#include "gmdkp/instance.hpp"
#include "gmdkp/marginals.hpp"

namespace gmdkp::oracle {

struct OracleOptions {
  /// Refuse instances whose joint state space prod_i (x_i^max + 1) exceeds this.
  /// Capped at 2^63 so feasible counts always fit a uint64.
  std::uint64_t node_budget = 100'000'000;
};

struct ExactResult {
  Selection best_selection;
  double best_profit = 0.0;
  /// Number of feasible assignments (exact).
  std::uint64_t n_feasible = 0;
  double log_n_feasible = 0.0;
};

/// Globally optimal selection by depth-first enumeration. Among optimal
/// selections the lexicographically smallest count vector is returned.
/// Throws BudgetExceeded or NoFeasibleAssignment.
ExactResult exact_optimum(const Instance& instance, const OracleOptions& options = {});

/// Marginals of the uniform distribution over feasible assignments, from
/// exact integer counts. Throws BudgetExceeded or NoFeasibleAssignment.
Marginals exact_marginals(const Instance& instance, const OracleOptions& options = {});

}  // namespace gmdkp::oracle
