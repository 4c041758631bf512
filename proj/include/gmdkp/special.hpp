#pragma once

namespace gmdkp {

/// H(x) = int_x^inf e^{-z^2/2} / sqrt(2 pi) dz.
double gaussian_tail(double x);

/// ln H(x). Finite for every finite x: beyond x = 5 it switches to the
/// continued fraction for the Mills ratio, and on x < 0 it uses log1p.
double log_gaussian_tail(double x);

/// First and second derivative information of ln H at u.
///   slope     = d/du ln H(u)        (B; always < 0)
///   curvature = -d^2/du^2 ln H(u)   (A; > 0, equals B^2 + u B)
struct LogTailDerivs {
  double slope;
  double curvature;
};
LogTailDerivs log_tail_derivs(double u);

/// d/du ln H(u) = -phi(u) / H(u).
inline double lnH_d1(double u) { return log_tail_derivs(u).slope; }
/// d^2/du^2 ln H(u) = -A(u).
inline double lnH_d2(double u) { return -log_tail_derivs(u).curvature; }

/// phi(a, b) = ln sum_{x=0}^{x_max} exp(-a x^2 / 2 + b x) together with its
/// first two b-derivatives, i.e. the mean and variance of the discrete
/// distribution p(x) ~ exp(-a x^2 / 2 + b x).
struct DiscreteFreeEnergy {
  double value;
  double mean;
  double variance;
};
DiscreteFreeEnergy discrete_free_energy(double a, double b, int x_max);

}  // namespace gmdkp
