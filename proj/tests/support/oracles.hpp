#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's numerical routines.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "gmdkp/instance.hpp"

namespace gmdkp::testing {

/// Adaptive Simpson quadrature on [a, b].
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                               int depth = 50) {
  struct Rec {
    const std::function<double(double)>& f;
    double step(double a, double fa, double b, double fb, double m, double fm, double whole, double tol,
                int depth) const {
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double delta = left + right - whole;
      if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
      return step(a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
             step(m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
    }
  } rec{f};
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  return rec.step(a, fa, b, fb, m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

/// Gaussian tail by direct integration of the density over [x, x + 40].
inline double tail_by_quadrature(double x) {
  const double inv_sqrt_2pi = 0.3989422804014327;
  return adaptive_simpson([&](double z) { return inv_sqrt_2pi * std::exp(-0.5 * z * z); }, x, x + 40.0, 1e-15);
}

/// ln H(x) = ln(erfc(x / sqrt 2) / 2) in 50-digit arithmetic.
inline double log_tail_multiprecision(double x) {
  using big = boost::multiprecision::cpp_bin_float_50;
  const big arg = big(x) / boost::multiprecision::sqrt(big(2));
  return static_cast<double>(boost::multiprecision::log(boost::multiprecision::erfc(arg) / 2));
}

inline double binary_entropy(double p) { return -p * std::log(p) - (1.0 - p) * std::log(1.0 - p); }

/// Odometer enumeration of every count vector; independent of the oracle's
/// depth-first search and pruning.
struct BruteForce {
  double best_profit = -1.0;
  std::vector<int> best_counts;
  std::uint64_t n_feasible = 0;
  std::vector<std::vector<double>> marginals;
};

inline BruteForce brute_force(const Instance& instance) {
  const std::size_t n = instance.n_items(), k = instance.n_constraints();
  const auto caps = instance.max_counts();
  std::vector<int> x(n, 0);
  std::vector<std::vector<std::uint64_t>> tallies(n);
  for (std::size_t i = 0; i < n; ++i) tallies[i].assign(static_cast<std::size_t>(caps[i]) + 1, 0);
  BruteForce out;
  while (true) {
    bool ok = true;
    for (std::size_t mu = 0; mu < k && ok; ++mu) {
      double load = 0.0;
      for (std::size_t i = 0; i < n; ++i) load += instance.weight(mu, i) * x[i];
      ok = load <= instance.capacities()[mu];
    }
    if (ok) {
      ++out.n_feasible;
      double profit = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        profit += instance.profits()[i] * x[i];
        ++tallies[i][static_cast<std::size_t>(x[i])];
      }
      // strict improvement keeps the first (lexicographically smallest) optimum
      if (profit > out.best_profit + 1e-12) {
        out.best_profit = profit;
        out.best_counts = x;
      }
    }
    bool carry = true;
    for (std::size_t j = n; j-- > 0;) {
      if (x[j] < caps[j]) {
        ++x[j];
        carry = false;
        break;
      }
      x[j] = 0;
    }
    if (carry) break;
  }
  out.marginals.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (auto t : tallies[i])
      out.marginals[i].push_back(static_cast<double>(t) / static_cast<double>(out.n_feasible));
  return out;
}

}  // namespace gmdkp::testing
