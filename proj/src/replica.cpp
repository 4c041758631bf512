#include "gmdkp/replica.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmdkp/error.hpp"
#include "gmdkp/special.hpp"

namespace gmdkp::replica {

namespace {

constexpr double kMinGap = 1e-14;
// Regular saddles keep the conjugates at O(10^2); beyond this the iteration
// is running off along the collapsing branch (Q - q -> 0).
constexpr double kMaxConjugate = 1e6;

double mean_ratio(const EnsembleParams& p) { return p.capacity_ratio / p.mean_weight; }

// w M / sigma, the offset inside f(z).
double field_offset(double m, const EnsembleParams& p) { return p.mean_weight * m / std::sqrt(p.weight_variance); }

// Averages over z of ln H(f), B(f)^2 and f B(f).
struct Energetic {
  double log_tail = 0.0;
  double slope_sq = 0.0;
  double f_slope = 0.0;
};

// ln H(f) bends around f = 0 over a unit width in f.
Energetic energetic(double Q, double q, double offset, const NormalRule& rule) {
  const double gap_sd = std::sqrt(Q - q);
  const double sq = std::sqrt(std::max(q, 0.0));
  std::vector<Feature> kinks;
  if (sq > 0.0) kinks.push_back({-offset / sq, gap_sd / sq});
  std::vector<double> nodes, weights;
  rule.build(kinks, nodes, weights);
  Energetic e;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double wk = weights[k];
    const double f = (offset + sq * nodes[k]) / gap_sd;
    const auto d = log_tail_derivs(f);
    e.log_tail += wk * log_gaussian_tail(f);
    e.slope_sq += wk * d.slope * d.slope;
    e.f_slope += wk * f * d.slope;
  }
  return e;
}

// Averages over z of ln sum_x g(x, z) and of the moments of g(., z).
struct Entropic {
  double log_z = 0.0;
  double mean = 0.0;      // E_z <x>
  double mean_sq = 0.0;   // E_z <x>^2
  double second = 0.0;    // E_z <x^2>
  double variance = 0.0;  // E_z (<x^2> - <x>^2)
};

// With t = s z + M_hat, ln sum_x exp(-a x^2 / 2 + t x) is close to piecewise
// linear in t, bending (over a unit width in t) wherever the dominant level
// changes: at t = a (x + 1/2) when a > 0, or once at t = a x_max / 2 when the
// quadratic term favours the end points.
std::vector<Feature> level_switches(double a, double s, double M_hat, int x_max) {
  std::vector<Feature> kinks;
  if (!(s > 0.0)) return kinks;
  auto add = [&](double t) {
    const double z = (t - M_hat) / s;
    if (std::fabs(z) < NormalRule::kCutoff + 1.0) kinks.push_back({z, 1.0 / s});
  };
  if (a > 0.0) {
    for (int x = 0; x < x_max; ++x) add(a * (x + 0.5));
  } else {
    add(0.5 * a * x_max);
  }
  return kinks;
}

Entropic entropic(double Q_hat, double q_hat, double M_hat, int x_max, const NormalRule& rule) {
  const double a = Q_hat + q_hat;
  const double s = std::sqrt(std::max(q_hat, 0.0));
  std::vector<double> nodes, weights;
  rule.build(level_switches(a, s, M_hat, x_max), nodes, weights);
  Entropic e;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double wk = weights[k];
    const auto f = discrete_free_energy(a, s * nodes[k] + M_hat, x_max);
    e.log_z += wk * f.value;
    e.mean += wk * f.mean;
    e.mean_sq += wk * f.mean * f.mean;
    e.second += wk * (f.variance + f.mean * f.mean);
    e.variance += wk * f.variance;
  }
  return e;
}

// M_hat such that E_z <x> = target. E_z <x> is increasing in M_hat with
// slope E_z var > 0, so a bracket plus safeguarded Newton always works.
double solve_m_hat(double Q_hat, double q_hat, double target, int x_max, const NormalRule& rule, double guess) {
  auto g = [&](double h) { return entropic(Q_hat, q_hat, h, x_max, rule); };
  if (!std::isfinite(guess)) guess = 0.0;
  double lo = guess, hi = guess;
  Entropic at = g(guess);
  if (std::fabs(at.mean - target) < 1e-15) return guess;
  double step = 1.0;
  if (at.mean < target) {
    do {
      lo = hi;
      hi += step;
      step *= 2.0;
      if (step > 1e8) throw ConvergenceError("cannot bracket M_hat");
    } while (g(hi).mean < target);
  } else {
    do {
      hi = lo;
      lo -= step;
      step *= 2.0;
      if (step > 1e8) throw ConvergenceError("cannot bracket M_hat");
    } while (g(lo).mean > target);
  }
  double h = std::clamp(guess, lo, hi);
  for (int it = 0; it < 200; ++it) {
    const Entropic e = g(h);
    const double r = e.mean - target;
    if (std::fabs(r) < 1e-15) return h;
    if (r < 0.0) lo = h;
    else hi = h;
    double next = e.variance > 0.0 ? h - r / e.variance : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo < 1e-15 * std::max(1.0, std::fabs(h))) return next;
    h = next;
  }
  return h;
}

struct Context {
  double alpha;
  double offset;
  double target;
  int x_max;
  const NormalRule& rule;
};

// Conjugates at (Q, q): the hats in closed form, M_hat by root finding.
RSOrder conjugates(double Q, double q, double M_hat_guess, const Context& c) {
  RSOrder o{Q, q, 0.0, 0.0, 0.0};
  if (c.alpha > 0.0) {
    const double gap = Q - q;
    const Energetic e = energetic(Q, q, c.offset, c.rule);
    o.Q_hat = c.alpha * e.f_slope / gap;
    o.q_hat = c.alpha * e.slope_sq / gap;
  }
  o.M_hat = solve_m_hat(o.Q_hat, o.q_hat, c.target, c.x_max, c.rule, M_hat_guess);
  return o;
}

// One application of the saddle map (Q, q) -> (E<x^2>, E<x>^2).
struct MapValue {
  RSOrder order;
  double Q_next;
  double q_next;
};

MapValue saddle_map(double Q, double q, double M_hat_guess, const Context& c) {
  MapValue v{conjugates(Q, q, M_hat_guess, c), 0.0, 0.0};
  const Entropic e = entropic(v.order.Q_hat, v.order.q_hat, v.order.M_hat, c.x_max, c.rule);
  v.Q_next = e.second;
  v.q_next = e.mean_sq;
  return v;
}

void check_gap(double Q, double q, double m) {
  if (!(Q - q >= kMinGap))
    throw ConvergenceError("degenerate saddle at M=" + std::to_string(m) + ": Q - q below 1e-14");
}

// Newton on F(Q, q) = map(Q, q) - (Q, q) with a forward-difference Jacobian
// and step halving. Returns false when it fails to reach tol.
bool newton_polish(double& Q, double& q, double& M_hat, const Context& c, double tol, int& iterations) {
  for (int it = 0; it < 60; ++it) {
    ++iterations;
    const MapValue base = saddle_map(Q, q, M_hat, c);
    const double f0 = base.Q_next - Q;
    const double f1 = base.q_next - q;
    const double norm = std::max(std::fabs(f0), std::fabs(f1));
    if (norm < tol) {
      M_hat = base.order.M_hat;
      return true;
    }
    const double hQ = 1e-7 * std::max(1.0, std::fabs(Q));
    const double hq = 1e-7 * std::max(1.0, std::fabs(q));
    const MapValue dQ = saddle_map(Q + hQ, q, base.order.M_hat, c);
    const MapValue dq = saddle_map(Q, q + hq, base.order.M_hat, c);
    const double j00 = (dQ.Q_next - Q - hQ - f0) / hQ;
    const double j10 = (dQ.q_next - q - f1) / hQ;
    const double j01 = (dq.Q_next - Q - f0) / hq;
    const double j11 = (dq.q_next - q - hq - f1) / hq;
    const double det = j00 * j11 - j01 * j10;
    if (!std::isfinite(det) || det == 0.0) return false;
    const double sQ = -(j11 * f0 - j01 * f1) / det;
    const double sq = -(-j10 * f0 + j00 * f1) / det;

    double lambda = 1.0;
    bool accepted = false;
    for (int half = 0; half < 30; ++half, lambda *= 0.5) {
      const double Qt = Q + lambda * sQ;
      const double qt = q + lambda * sq;
      if (!(qt >= 0.0) || !(Qt - qt >= kMinGap)) continue;
      const MapValue trial = saddle_map(Qt, qt, base.order.M_hat, c);
      const double tnorm = std::max(std::fabs(trial.Q_next - Qt), std::fabs(trial.q_next - qt));
      if (std::isfinite(tnorm) && tnorm < norm) {
        Q = Qt;
        q = qt;
        M_hat = trial.order.M_hat;
        accepted = true;
        break;
      }
    }
    if (!accepted) return false;
  }
  return false;
}

}  // namespace

RSOrder default_order(const EnsembleParams& params) {
  const double c = mean_ratio(params);
  const double q = c * c + 0.05;
  return {q + 0.1, q, 0.1, 0.1, 0.0};
}

double rs_functional(const RSOrder& o, double m, double alpha, const EnsembleParams& params,
                     const NormalRule& rule) {
  double value = 0.5 * o.Q_hat * o.Q + 0.5 * o.q_hat * o.q - mean_ratio(params) * o.M_hat;
  value += entropic(o.Q_hat, o.q_hat, o.M_hat, params.x_max, rule).log_z;
  if (alpha != 0.0) value += alpha * energetic(o.Q, o.q, field_offset(m, params), rule).log_tail;
  return value;
}

std::array<double, 5> stationarity_residuals(const RSOrder& o, double m, double alpha, const EnsembleParams& params,
                                             const NormalRule& rule) {
  const Entropic s = entropic(o.Q_hat, o.q_hat, o.M_hat, params.x_max, rule);
  std::array<double, 5> r{o.Q - s.second, o.q - s.mean_sq, s.mean - mean_ratio(params), o.Q_hat, o.q_hat};
  if (alpha != 0.0) {
    const double gap = o.Q - o.q;
    const Energetic e = energetic(o.Q, o.q, field_offset(m, params), rule);
    r[3] -= alpha * e.f_slope / gap;
    r[4] -= alpha * e.slope_sq / gap;
  }
  return r;
}

EntropyPoint rs_entropy(double m, double alpha, const EnsembleParams& params, const std::optional<RSOrder>& init,
                        const SaddleOptions& options) {
  return rs_entropy(m, alpha, params, init, options, NormalRule(options.nodes));
}

EntropyPoint rs_entropy(double m, double alpha, const EnsembleParams& params, const std::optional<RSOrder>& init,
                        const SaddleOptions& options, const NormalRule& rule) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (!std::isfinite(m)) throw std::invalid_argument("M must be finite");
  if (!(params.mean_weight > 0.0 && params.weight_variance > 0.0 && params.capacity_ratio > 0.0))
    throw std::invalid_argument("ensemble parameters must be positive");
  if (params.x_max < 1) throw std::invalid_argument("x_max must be >= 1");
  const double target = mean_ratio(params);
  if (!(target < params.x_max))
    throw std::invalid_argument("C/w must be below x_max for a non-trivial entropy");

  const Context ctx{alpha, field_offset(m, params), target, params.x_max, rule};
  const RSOrder start = init.value_or(default_order(params));
  double Q = start.Q;
  double q = start.q;
  double M_hat = start.M_hat;
  check_gap(Q, q, m);

  int iterations = 0;
  bool converged = false;
  constexpr double kSwitchToNewton = 1e-6;
  bool tried_newton = false;
  while (iterations < options.max_iter) {
    ++iterations;
    const MapValue v = saddle_map(Q, q, M_hat, ctx);
    M_hat = v.order.M_hat;
    const double res = std::max(std::fabs(v.Q_next - Q), std::fabs(v.q_next - q));
    if (!std::isfinite(res)) throw ConvergenceError("non-finite saddle iterate at M=" + std::to_string(m));
    if (std::max(std::fabs(v.order.Q_hat), std::fabs(v.order.q_hat)) > kMaxConjugate)
      throw ConvergenceError("collapsing saddle at M=" + std::to_string(m) + ": conjugates beyond 1e6");
    if (res < options.tol) {
      converged = true;
      break;
    }
    if (res < kSwitchToNewton && !tried_newton) {
      tried_newton = true;
      double Qn = Q, qn = q, Mn = M_hat;
      if (newton_polish(Qn, qn, Mn, ctx, options.tol, iterations)) {
        Q = Qn;
        q = qn;
        M_hat = Mn;
        converged = true;
        break;
      }
    }
    Q = options.damping * Q + (1.0 - options.damping) * v.Q_next;
    q = options.damping * q + (1.0 - options.damping) * v.q_next;
    check_gap(Q, q, m);
  }
  if (!converged && !tried_newton) converged = newton_polish(Q, q, M_hat, ctx, options.tol, iterations);
  if (!converged)
    throw ConvergenceError("saddle point did not converge at M=" + std::to_string(m) +
                           " alpha=" + std::to_string(alpha));
  check_gap(Q, q, m);

  EntropyPoint p;
  p.m = m;
  p.alpha = alpha;
  p.order = conjugates(Q, q, M_hat, ctx);
  p.entropy = rs_functional(p.order, m, alpha, params, rule);
  const auto r = stationarity_residuals(p.order, m, alpha, params, rule);
  for (double x : r) p.residual = std::max(p.residual, std::fabs(x));
  p.iterations = iterations;
  return p;
}

TheoryResult find_m_opt(double alpha, const EnsembleParams& params, const ScanOptions& options) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (!(options.step > 0.0)) throw std::invalid_argument("scan step must be > 0");
  const NormalRule rule(options.saddle.nodes);
  const double range = options.m_range.value_or(5.0 * params.x_max);

  TheoryResult result;
  result.alpha = alpha;
  result.x_max = params.x_max;

  auto solve = [&](double m, const std::optional<RSOrder>& init) {
    return rs_entropy(m, alpha, params, init, options.saddle, rule);
  };

  // Find an anchor on the regular branch: S > 0 there, and a fresh solve one
  // step to the left gives S at least as large. Near and beyond the root the
  // default start can fall onto a nearly frozen branch (Q - q small, huge
  // conjugates) that violates this, so keep backing off to the left.
  std::optional<EntropyPoint> anchor;
  auto try_solve = [&](double m) -> std::optional<EntropyPoint> {
    try {
      return solve(m, std::nullopt);
    } catch (const ConvergenceError&) {
      return std::nullopt;
    }
  };
  std::optional<EntropyPoint> here = try_solve(options.start);
  for (int j = 1; !anchor; ++j) {
    const double m = options.start - options.step * j;
    if (options.start - m > range + 1e-12)
      throw ConvergenceError("no regular saddle with S > 0 within " + std::to_string(range) + " below M=" +
                             std::to_string(options.start));
    std::optional<EntropyPoint> left = try_solve(m);
    if (here && left && here->entropy > 0.0 && left->entropy >= here->entropy) {
      result.curve.push_back(*left);
      anchor = here;
    } else {
      here = std::move(left);
    }
  }
  result.curve.push_back(*anchor);

  // Walk right with continuation until S changes sign. A failed solve, or a
  // jump of the conjugates, means the step overshot onto the collapsing
  // branch: halve and retry.
  auto jumped = [](const RSOrder& from, const RSOrder& to) {
    auto far = [](double a, double b) { return std::fabs(b - a) > 0.5 * std::max(1.0, std::fabs(a)); };
    return far(from.Q_hat, to.Q_hat) || far(from.q_hat, to.q_hat);
  };
  EntropyPoint prev = *anchor;
  std::optional<EntropyPoint> next;
  double h = options.step;
  while (!next) {
    const double m = prev.m + h;
    if (m - anchor->m > range + 1e-12) break;
    std::optional<EntropyPoint> p;
    try {
      p = solve(m, prev.order);
    } catch (const ConvergenceError&) {
    }
    if (!p || jumped(prev.order, p->order)) {
      h *= 0.5;
      if (h < options.step * 1e-4)
        throw ConvergenceError("continuation stalled at M=" + std::to_string(prev.m) + " (" +
                               std::to_string(result.curve.size()) + " curve points sampled)");
      continue;
    }
    result.curve.push_back(*p);
    if (p->entropy > 0.0) prev = *p;
    else next = *p;
  }
  std::sort(result.curve.begin(), result.curve.end(),
            [](const EntropyPoint& a, const EntropyPoint& b) { return a.m < b.m; });
  if (!next)
    throw ConvergenceError("no sign change of S within " + std::to_string(range) + " of M=" +
                           std::to_string(anchor->m) + " (" + std::to_string(result.curve.size()) +
                           " curve points sampled)");

  // Bisection, warm-started from the positive side.
  EntropyPoint left = prev;
  EntropyPoint right = *next;
  if (std::fabs(right.entropy) < options.root_tol) {
    result.m_opt = right.m;
    return result;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (left.m + right.m);
    const EntropyPoint p = solve(mid, left.order);
    if (std::fabs(p.entropy) < options.root_tol || right.m - left.m < 1e-13) {
      result.m_opt = mid;
      return result;
    }
    if (p.entropy > 0.0) left = p;
    else right = p;
  }
  result.m_opt = 0.5 * (left.m + right.m);
  return result;
}

double u_opt(std::size_t n_items, double m_opt, const EnsembleParams& params) {
  if (n_items == 0) throw std::invalid_argument("N must be >= 1");
  const double n = static_cast<double>(n_items);
  return mean_ratio(params) * n + m_opt * std::sqrt(n);
}

}  // namespace gmdkp::replica
