#include "gmdkp/mpgs.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "gmdkp/error.hpp"

namespace gmdkp::mpgs {

Engine parse_engine(std::string_view name) {
  if (name == "bp") return Engine::bp;
  if (name == "gamp") return Engine::gamp;
  throw std::invalid_argument("unknown engine '" + std::string(name) + "'");
}

std::string_view engine_name(Engine engine) { return engine == Engine::bp ? "bp" : "gamp"; }

int MpgsTrace::sweeps_total() const { return std::accumulate(sweeps_per_pick.begin(), sweeps_per_pick.end(), 0); }

namespace {

std::vector<double> remaining_capacities(const Instance& instance, const std::vector<int>& counts) {
  std::vector<double> caps(instance.n_constraints());
  for (std::size_t mu = 0; mu < caps.size(); ++mu) caps[mu] = instance.capacities()[mu] - row_load(instance, counts, mu);
  return caps;
}

// Candidates with remaining cap, best score first, ties by index.
std::vector<std::size_t> ranking(const std::vector<double>& score, const std::vector<int>& remaining) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < score.size(); ++i)
    if (remaining[i] > 0) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  return order;
}

MpgsTrace finish(const Instance& instance, MpgsTrace trace, std::vector<int> counts) {
  trace.final_selection.counts = std::move(counts);
  trace.final_evaluation = evaluate(instance, trace.final_selection);
  return trace;
}

}  // namespace

MpgsTrace mpgs_solve(const Instance& instance, Engine engine, const cavity::IterOpts& opts, bool warm_start) {
  opts.validate();
  const std::size_t n = instance.n_items();
  std::vector<int> counts(n, 0);
  std::vector<int> remaining(instance.max_counts().begin(), instance.max_counts().end());
  std::optional<cavity::BPState> bp_state;
  std::optional<cavity::GAMPState> gamp_state;
  MpgsTrace trace;
  std::vector<double> score(n);

  while (std::any_of(remaining.begin(), remaining.end(), [](int r) { return r > 0; })) {
    const Instance residual = instance.residual(remaining_capacities(instance, counts), remaining);
    cavity::RunInfo run;
    try {
      if (engine == Engine::bp) {
        auto r = cavity::bp_run(residual, opts, warm_start ? std::move(bp_state) : std::nullopt);
        for (std::size_t i = 0; i < n; ++i) score[i] = r.marginals.nonzero(i);
        run = r.info;
        bp_state = std::move(r.state);
      } else {
        auto r = cavity::gamp_run(residual, opts, warm_start ? std::move(gamp_state) : std::nullopt);
        for (std::size_t i = 0; i < n; ++i) score[i] = r.marginals.nonzero(i);
        run = r.info;
        gamp_state = std::move(r.state);
      }
    } catch (const NumericError& e) {
      throw NumericError(e.sweep(), "pick " + std::to_string(trace.picks.size()) + ": " + e.what());
    }

    const auto order = ranking(score, remaining);
    std::optional<std::size_t> chosen;
    std::size_t demoted = 0;
    for (std::size_t c : order) {
      if (fits_one_more(instance, counts, c)) {
        chosen = c;
        break;
      }
      ++demoted;
    }
    if (!chosen) break;

    const std::size_t item = *chosen;
    ++counts[item];
    --remaining[item];
    if (bp_state) bp_state->drop_top_level(item);
    if (gamp_state) gamp_state->drop_top_level(item);
    trace.picks.push_back(item);
    trace.sweeps_per_pick.push_back(run.sweeps);
    trace.diagnostics.push_back({item, score[item], demoted, run});
  }
  return finish(instance, std::move(trace), std::move(counts));
}

MpgsTrace density_greedy_solve(const Instance& instance) {
  const std::size_t n = instance.n_items();
  const std::size_t k = instance.n_constraints();
  std::vector<int> counts(n, 0);
  std::vector<int> remaining(instance.max_counts().begin(), instance.max_counts().end());
  MpgsTrace trace;
  std::vector<double> score(n);

  while (std::any_of(remaining.begin(), remaining.end(), [](int r) { return r > 0; })) {
    const auto caps = remaining_capacities(instance, counts);
    std::fill(score.begin(), score.end(), 0.0);
    std::vector<double> denom(n, 0.0);
    for (std::size_t mu = 0; mu < k; ++mu) {
      if (!(caps[mu] > 0.0)) continue;
      const auto row = instance.row(mu);
      for (std::size_t i = 0; i < n; ++i) denom[i] += row[i] / caps[mu];
    }
    for (std::size_t i = 0; i < n; ++i)
      score[i] = denom[i] > 0.0 ? instance.profits()[i] / denom[i] : std::numeric_limits<double>::infinity();

    const auto order = ranking(score, remaining);
    std::optional<std::size_t> chosen;
    std::size_t demoted = 0;
    for (std::size_t c : order) {
      if (fits_one_more(instance, counts, c)) {
        chosen = c;
        break;
      }
      ++demoted;
    }
    if (!chosen) break;
    ++counts[*chosen];
    --remaining[*chosen];
    trace.picks.push_back(*chosen);
    trace.sweeps_per_pick.push_back(0);
    trace.diagnostics.push_back({*chosen, 0.0, demoted, {}});
  }
  return finish(instance, std::move(trace), std::move(counts));
}

}  // namespace gmdkp::mpgs
