#pragma once

#include <cstddef>
#include <vector>

namespace gmdkp {

/// Per-item probability tables p_i(x), x = 0..x_i^max.
struct Marginals {
  std::vector<std::vector<double>> tables;

  std::size_t size() const noexcept { return tables.size(); }

  /// p_i(x != 0), summed over the non-zero levels.
  double nonzero(std::size_t i) const {
    double s = 0.0;
    for (std::size_t x = 1; x < tables[i].size(); ++x) s += tables[i][x];
    return s;
  }

  double mean(std::size_t i) const {
    double s = 0.0;
    for (std::size_t x = 1; x < tables[i].size(); ++x) s += tables[i][x] * static_cast<double>(x);
    return s;
  }
};

/// Total-variation distance between two tables of equal length.
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

/// Mean over items of the per-item total-variation distance.
double mean_total_variation(const Marginals& a, const Marginals& b);

/// max_i max_x |a_i(x) - b_i(x)|.
double max_abs_difference(const Marginals& a, const Marginals& b);

}  // namespace gmdkp
