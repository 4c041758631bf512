#include "gmdkp/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gmdkp {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // ln sqrt(2 pi)
constexpr double kCfThreshold = 5.0;

// t(u) = 1 / (u + 2 / (u + 3 / (u + ...))) by modified Lentz, so that the
// Mills ratio is H(u)/pdf(u) = 1 / (u + t). Converges quickly for u >= 5.
double mills_tail(double u) {
  constexpr double tiny = 1e-300;
  double f = tiny;
  double c = f;
  double d = 0.0;
  // f = b0 + a1/(b1 + a2/(b2 + ...)) with b0 = 0, a1 = 1, a_k = k, b_k = u.
  for (int k = 1; k < 500; ++k) {
    const double a = static_cast<double>(k);
    d = u + a * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = u + a / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return f;
}

}  // namespace

double gaussian_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double log_gaussian_tail(double x) {
  if (x < 0.0) return std::log1p(-0.5 * std::erfc(-x / std::numbers::sqrt2));
  if (x <= kCfThreshold) return std::log(0.5 * std::erfc(x / std::numbers::sqrt2));
  const double t = mills_tail(x);
  return -0.5 * x * x - kLogSqrt2Pi - std::log(x + t);
}

LogTailDerivs log_tail_derivs(double u) {
  if (u > kCfThreshold) {
    const double t = mills_tail(u);
    return {-(u + t), t * (u + t)};
  }
  const double pdf = std::exp(-0.5 * u * u - kLogSqrt2Pi);
  const double slope = -pdf / gaussian_tail(u);
  return {slope, slope * (slope + u)};
}

DiscreteFreeEnergy discrete_free_energy(double a, double b, int x_max) {
  // Moments are accumulated around the mode so the variance does not suffer
  // cancellation when the distribution is sharply peaked.
  auto exponent = [a, b](int x) { return x * (b - 0.5 * a * x); };
  double top = -INFINITY;
  int mode = 0;
  int lo = 0, hi = x_max;
  if (a > 0.0 && std::isfinite(b)) {
    // Concave exponent: the mode sits next to b / a and the terms fall off
    // monotonically on both sides, so stop once they drop below e^-60.
    const double r = std::clamp(b / a, 0.0, static_cast<double>(x_max));
    const int below = static_cast<int>(std::floor(r));
    mode = below < x_max && exponent(below + 1) > exponent(below) ? below + 1 : below;
    top = exponent(mode);
    while (lo < mode && exponent(lo) - top < -60.0) ++lo;
    while (hi > mode && exponent(hi) - top < -60.0) --hi;
  } else {
    for (int x = 0; x <= x_max; ++x) {
      const double e = exponent(x);
      if (e > top) {
        top = e;
        mode = x;
      }
    }
  }
  double z = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  for (int x = lo; x <= hi; ++x) {
    const double p = std::exp(exponent(x) - top);
    const double d = x - mode;
    z += p;
    s1 += p * d;
    s2 += p * d * d;
  }
  const double shift = s1 / z;
  return {top + std::log(z), mode + shift, std::max(0.0, s2 / z - shift * shift)};
}

}  // namespace gmdkp
