#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "gmdkp/cavity.hpp"
#include "gmdkp/instance.hpp"

namespace gmdkp::mpgs {

using cavity::Engine;

Engine parse_engine(std::string_view name);
std::string_view engine_name(Engine engine);

struct PickDiagnostics {
  std::size_t item = 0;
  double p_nonzero = 0.0;
  /// Candidates ahead of `item` in the ranking that did not fit.
  std::size_t demoted = 0;
  cavity::RunInfo run;
};

struct MpgsTrace {
  std::vector<std::size_t> picks;
  std::vector<int> sweeps_per_pick;
  Selection final_selection;
  Evaluation final_evaluation;
  std::vector<PickDiagnostics> diagnostics;

  int sweeps_total() const;
};

/// Marginal-probability-based greedy strategy. Each round estimates the
/// marginals of the residual instance (capacities minus committed loads, caps
/// minus committed counts), ranks items by p_i(x != 0) (ties: smaller index),
/// and commits one unit of the best-ranked item that still fits. Stops when
/// no remaining item fits or all caps are used up.
MpgsTrace mpgs_solve(const Instance& instance, Engine engine, const cavity::IterOpts& opts = {},
                     bool warm_start = true);

/// Baseline: repeatedly add one unit of the fitting item with the largest
/// v_i / sum_mu (w_{mu i} / remaining C_mu); rows with no remaining capacity
/// are skipped and a non-positive denominator ranks first.
MpgsTrace density_greedy_solve(const Instance& instance);

}  // namespace gmdkp::mpgs
