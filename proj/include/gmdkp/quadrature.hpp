#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gmdkp {

/// Gauss-Legendre rule on [-1, 1], nodes ascending. Throws for n == 0.
struct LegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
LegendreRule gauss_legendre_rule(std::size_t n);

/// A place where the integrand bends sharply: a kink smoothed over `width`.
struct Feature {
  double at;
  double width;
};

/// Integrals against the standard normal measure Dz = e^{-z^2/2} dz / sqrt(2 pi),
/// truncated to |z| <= 12 (the dropped mass is below 1e-32).
///
/// The range is cut into Gauss-Legendre panels no wider than 1.5. Panel edges
/// are also placed at every feature and at geometric distances width * 4^k
/// around it, so an integrand that is smooth except near known kinks still
/// converges at the smooth rate. Each panel gets nodes / 8 points.
class NormalRule {
 public:
  explicit NormalRule(std::size_t nodes = 120);

  std::size_t nodes() const noexcept { return nodes_; }

  /// Abscissae and weights for the given features; weights include the density.
  void build(std::span<const Feature> features, std::vector<double>& z, std::vector<double>& w) const;

  template <typename F>
  double integrate(F&& f, std::span<const Feature> features = {}) const {
    std::vector<double> z, w;
    build(features, z, w);
    double sum = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) sum += w[k] * f(z[k]);
    return sum;
  }

  static constexpr double kCutoff = 12.0;
  static constexpr double kPanelWidth = 1.5;

 private:
  std::size_t nodes_;
  LegendreRule panel_;
};

}  // namespace gmdkp
