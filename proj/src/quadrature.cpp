#include "gmdkp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gmdkp {

// Newton on the Legendre recurrence from the usual cosine guesses.
LegendreRule gauss_legendre_rule(std::size_t n) {
  if (n == 0) throw std::invalid_argument("quadrature needs at least one node");
  LegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const auto nd = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t j = 2; j <= n; ++j) {
        const auto jd = static_cast<double>(j);
        const double p2 = ((2.0 * jd - 1.0) * x * p1 - (jd - 1.0) * p0) / jd;
        p0 = p1;
        p1 = p2;
      }
      dp = nd * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) <= 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

NormalRule::NormalRule(std::size_t nodes) : nodes_(nodes) {
  if (nodes < 8) throw std::invalid_argument("normal rule needs at least 8 nodes");
  panel_ = gauss_legendre_rule(nodes / 8);
}

void NormalRule::build(std::span<const Feature> features, std::vector<double>& z, std::vector<double>& w) const {
  std::vector<double> edges;
  const int base = static_cast<int>(std::lround(2.0 * kCutoff / kPanelWidth));
  for (int j = 0; j <= base; ++j) edges.push_back(-kCutoff + kPanelWidth * j);
  for (const Feature& f : features) {
    if (!std::isfinite(f.at) || !(f.width > 0.0)) continue;
    if (std::fabs(f.at) < kCutoff) edges.push_back(f.at);
    for (double d = f.width; d < kPanelWidth; d *= 4.0)
      for (double e : {f.at - d, f.at + d})
        if (std::fabs(e) < kCutoff) edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(), [](double a, double b) { return b - a < 1e-12; }), edges.end());

  const double inv_sqrt_2pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;
  z.clear();
  w.clear();
  z.reserve((edges.size() - 1) * panel_.nodes.size());
  w.reserve(z.capacity());
  for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
    const double mid = 0.5 * (edges[j] + edges[j + 1]);
    const double half = 0.5 * (edges[j + 1] - edges[j]);
    for (std::size_t k = 0; k < panel_.nodes.size(); ++k) {
      const double x = mid + half * panel_.nodes[k];
      z.push_back(x);
      w.push_back(half * panel_.weights[k] * inv_sqrt_2pi * std::exp(-0.5 * x * x));
    }
  }
}

}  // namespace gmdkp
