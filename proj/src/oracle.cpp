#include "gmdkp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmdkp/error.hpp"

namespace gmdkp {

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) s += std::fabs(p[x] - q[x]);
  return 0.5 * s;
}

double mean_total_variation(const Marginals& a, const Marginals& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += total_variation(a.tables[i], b.tables[i]);
  return s / static_cast<double>(a.size());
}

double max_abs_difference(const Marginals& a, const Marginals& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t x = 0; x < a.tables[i].size(); ++x) m = std::max(m, std::fabs(a.tables[i][x] - b.tables[i][x]));
  return m;
}

namespace oracle {

namespace {

// Depth-first enumeration over items in index order, levels ascending, so
// leaves are visited in lexicographic order of the count vector.
//
// Two subtree shortcuts, both conservative by a small margin so that rounding
// never changes a feasibility verdict (the margin zone is resolved at leaves,
// where loads are bit-identical to row_load):
//   - dead: some row cannot come back under capacity even using every
//     negative weight left;
//   - free: every row stays under capacity even using every positive weight
//     left, so all completions are feasible and are counted in closed form.
class Enumerator {
 public:
  Enumerator(const Instance& instance, bool want_tallies)
      : inst_(instance), n_(instance.n_items()), k_(instance.n_constraints()), want_tallies_(want_tallies) {
    const auto caps = inst_.max_counts();
    offsets_.resize(n_ + 1, 0);
    for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] = offsets_[i] + static_cast<std::size_t>(caps[i]) + 1;
    if (want_tallies_) tallies_.assign(offsets_[n_], 0);

    neg_suffix_.assign((n_ + 1) * k_, 0.0);
    pos_suffix_.assign((n_ + 1) * k_, 0.0);
    states_suffix_.assign(n_ + 1, 1);
    profit_suffix_.assign(n_ + 1, 0.0);
    for (std::size_t d = n_; d-- > 0;) {
      for (std::size_t mu = 0; mu < k_; ++mu) {
        const double w = inst_.weight(mu, d) * caps[d];
        neg_suffix_[d * k_ + mu] = neg_suffix_[(d + 1) * k_ + mu] + std::min(0.0, w);
        pos_suffix_[d * k_ + mu] = pos_suffix_[(d + 1) * k_ + mu] + std::max(0.0, w);
      }
      states_suffix_[d] = states_suffix_[d + 1] * (static_cast<std::uint64_t>(caps[d]) + 1);
      if (inst_.profits()[d] > 0.0) profit_suffix_[d] = profit_suffix_[d + 1] + inst_.profits()[d] * caps[d];
      else profit_suffix_[d] = profit_suffix_[d + 1];
    }
    margin_.resize(k_);
    for (std::size_t mu = 0; mu < k_; ++mu) {
      double scale = std::fabs(inst_.capacities()[mu]);
      for (std::size_t i = 0; i < n_; ++i) scale += std::fabs(inst_.weight(mu, i)) * caps[i];
      margin_[mu] = 1e-12 * (1.0 + scale);
    }
    loads_.assign((n_ + 1) * k_, 0.0);
    counts_.assign(n_, 0);
    best_counts_.assign(n_, 0);
  }

  void run() { total_ = visit(0, 0.0); }

  std::uint64_t total() const { return total_; }
  bool found() const { return found_; }
  double best_profit() const { return best_profit_; }
  const std::vector<int>& best_counts() const { return best_counts_; }

  Marginals marginals() const {
    Marginals m;
    m.tables.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      auto& t = m.tables[i];
      for (std::size_t x = offsets_[i]; x < offsets_[i + 1]; ++x)
        t.push_back(static_cast<double>(tallies_[x]) / static_cast<double>(total_));
    }
    return m;
  }

 private:
  std::uint64_t visit(std::size_t depth, double profit) {
    const double* load = &loads_[depth * k_];
    const auto caps = inst_.capacities();

    bool all_free = true;
    for (std::size_t mu = 0; mu < k_; ++mu) {
      if (load[mu] + neg_suffix_[depth * k_ + mu] > caps[mu] + margin_[mu]) return 0;
      if (load[mu] + pos_suffix_[depth * k_ + mu] > caps[mu] - margin_[mu]) all_free = false;
    }

    if (depth == n_) {
      for (std::size_t mu = 0; mu < k_; ++mu)
        if (load[mu] > caps[mu]) return 0;
      offer(depth, profit);
      return 1;
    }

    if (all_free) {
      const std::uint64_t count = states_suffix_[depth];
      if (want_tallies_) {
        for (std::size_t j = depth; j < n_; ++j) {
          const std::uint64_t per_level = count / (offsets_[j + 1] - offsets_[j]);
          for (std::size_t x = offsets_[j]; x < offsets_[j + 1]; ++x) tallies_[x] += per_level;
        }
      }
      offer(depth, profit + profit_suffix_[depth]);
      return count;
    }

    const int cap = inst_.max_counts()[depth];
    const double v = inst_.profits()[depth];
    std::uint64_t subtotal = 0;
    for (int x = 0; x <= cap; ++x) {
      double* next = &loads_[(depth + 1) * k_];
      for (std::size_t mu = 0; mu < k_; ++mu) {
        // Same accumulation as row_load: only non-zero counts contribute.
        next[mu] = x != 0 ? load[mu] + inst_.weight(mu, depth) * x : load[mu];
      }
      counts_[depth] = x;
      const std::uint64_t c = visit(depth + 1, profit + v * x);
      if (want_tallies_) tallies_[offsets_[depth] + static_cast<std::size_t>(x)] += c;
      subtotal += c;
    }
    counts_[depth] = 0;
    return subtotal;
  }

  // Record the lexicographically smallest best completion of the current prefix.
  void offer(std::size_t depth, double profit) {
    if (found_ && !(profit > best_profit_)) return;
    found_ = true;
    best_profit_ = profit;
    for (std::size_t i = 0; i < depth; ++i) best_counts_[i] = counts_[i];
    for (std::size_t j = depth; j < n_; ++j) best_counts_[j] = inst_.profits()[j] > 0.0 ? inst_.max_counts()[j] : 0;
  }

  const Instance& inst_;
  std::size_t n_, k_;
  bool want_tallies_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint64_t> tallies_;
  std::vector<double> neg_suffix_, pos_suffix_, margin_;
  std::vector<std::uint64_t> states_suffix_;
  std::vector<double> profit_suffix_;
  std::vector<double> loads_;
  std::vector<int> counts_, best_counts_;
  std::uint64_t total_ = 0;
  bool found_ = false;
  double best_profit_ = 0.0;
};

void check_budget(const Instance& instance, const OracleOptions& options) {
  constexpr std::uint64_t kHardCap = std::uint64_t{1} << 63;
  const auto budget = std::min(options.node_budget, kHardCap);
  const auto states = instance.state_space_size();
  if (states > budget)
    throw BudgetExceeded("exhaustive search refused: state space " +
                         (states == UINT64_MAX ? std::string("> 2^64") : std::to_string(states)) +
                         " exceeds node budget " + std::to_string(budget));
}

}  // namespace

ExactResult exact_optimum(const Instance& instance, const OracleOptions& options) {
  check_budget(instance, options);
  Enumerator e(instance, false);
  e.run();
  if (!e.found()) throw NoFeasibleAssignment("no assignment satisfies every constraint");
  ExactResult r;
  r.best_selection.counts = e.best_counts();
  r.best_profit = e.best_profit();
  r.n_feasible = e.total();
  r.log_n_feasible = std::log(static_cast<double>(e.total()));
  return r;
}

Marginals exact_marginals(const Instance& instance, const OracleOptions& options) {
  check_budget(instance, options);
  Enumerator e(instance, true);
  e.run();
  if (e.total() == 0) throw NoFeasibleAssignment("no assignment satisfies every constraint");
  return e.marginals();
}

}  // namespace oracle
}  // namespace gmdkp
