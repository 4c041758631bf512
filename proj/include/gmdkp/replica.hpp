#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "gmdkp/instance.hpp"
#include "gmdkp/quadrature.hpp"

namespace gmdkp::replica {

/// Replica-symmetric order parameters and their conjugates.
struct RSOrder {
  double Q = 0.0;
  double q = 0.0;
  double Q_hat = 0.0;
  double q_hat = 0.0;
  double M_hat = 0.0;
};

struct EntropyPoint {
  double m = 0.0;
  double alpha = 0.0;
  double entropy = 0.0;
  RSOrder order;
  /// Largest violation among the five stationarity conditions.
  double residual = 0.0;
  int iterations = 0;
};

struct TheoryResult {
  double alpha = 0.0;
  int x_max = 1;
  double m_opt = 0.0;
  /// Scanned grid points, ascending in M.
  std::vector<EntropyPoint> curve;
};

struct SaddleOptions {
  /// Resolution of the z-integrals (see NormalRule).
  std::size_t nodes = 120;
  double tol = 1e-12;
  int max_iter = 20000;
  /// Weight on the previous iterate in the (Q, q) fixed-point update.
  double damping = 0.3;
};

struct ScanOptions {
  /// First grid point; the scan backs off to the left until it sits on the
  /// regular branch with S > 0, then walks right.
  double start = 0.0;
  double step = 0.05;
  /// Maximum scan distance from start; defaults to 5 * x_max.
  std::optional<double> m_range;
  double root_tol = 1e-7;
  SaddleOptions saddle;
};

/// The bracketed RS functional
///   alpha int Dz ln H(f(z)) + int Dz ln sum_x g(x, z) + Q_hat Q / 2 + q_hat q / 2 - (C/w) M_hat
/// with f(z) = (w M / sigma + sqrt(q) z) / sqrt(Q - q) and
/// g(x, z) = exp(-(Q_hat + q_hat) x^2 / 2 + (sqrt(q_hat) z + M_hat) x),
/// evaluated with the given rule. Ensemble fields used: mean_weight,
/// weight_variance, capacity_ratio, x_max.
double rs_functional(const RSOrder& order, double m, double alpha, const EnsembleParams& params,
                     const NormalRule& rule);

/// Residuals of the five saddle-point conditions at `order`.
std::array<double, 5> stationarity_residuals(const RSOrder& order, double m, double alpha,
                                             const EnsembleParams& params, const NormalRule& rule);

/// Default starting point: Q = q + 0.1, q = (C/w)^2 + 0.05, Q_hat = q_hat = 0.1, M_hat = 0.
RSOrder default_order(const EnsembleParams& params);

/// Solve the saddle point at (m, alpha) and return the entropy there.
/// Damped fixed-point iteration on (Q, q) with the conjugates solved in
/// closed form / by a 1-D root for M_hat; falls back to Newton on (Q, q).
/// Throws ConvergenceError on failure, when Q - q collapses below 1e-14, or
/// when the conjugates run past 1e6 (the collapsing branch).
EntropyPoint rs_entropy(double m, double alpha, const EnsembleParams& params,
                        const std::optional<RSOrder>& init = std::nullopt, const SaddleOptions& options = {});

/// Same, reusing a prebuilt quadrature rule.
EntropyPoint rs_entropy(double m, double alpha, const EnsembleParams& params, const std::optional<RSOrder>& init,
                        const SaddleOptions& options, const NormalRule& rule);

/// Locate M_opt where S(M) = 0: grid scan with continuation, then bisection.
/// Throws ConvergenceError (message includes the sampled curve size) when no
/// sign change is found within the scan range.
TheoryResult find_m_opt(double alpha, const EnsembleParams& params, const ScanOptions& options = {});

/// (C/w) N + M_opt sqrt(N).
double u_opt(std::size_t n_items, double m_opt, const EnsembleParams& params);

}  // namespace gmdkp::replica
