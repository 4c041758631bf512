#include "gmdkp/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "gmdkp/error.hpp"
#include "gmdkp/special.hpp"

namespace gmdkp::cavity {

void IterOpts::validate() const {
  if (max_sweeps < 1) throw std::invalid_argument("max_sweeps must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (damping && !(*damping >= 0.0 && *damping < 1.0)) throw std::invalid_argument("damping must lie in [0, 1)");
  if (!(v_floor > 0.0)) throw std::invalid_argument("v_floor must be > 0");
  if (!(h_floor > 0.0)) throw std::invalid_argument("h_floor must be > 0");
}

double IterOpts::damping_for(Engine engine) const {
  if (damping) return *damping;
  return engine == Engine::bp ? 0.5 : 0.9;
}

std::string RunInfo::to_key_value() const {
  char buf[128];
  std::snprintf(buf, sizeof buf, "converged=%d sweeps=%d residual=%.3e clamps=%zu", converged ? 1 : 0, sweeps,
                residual, clamp_count);
  return buf;
}

// ---------------------------------------------------------------------------
// BP

BPState BPState::uniform(const Instance& instance) {
  BPState s;
  s.n_items = instance.n_items();
  s.n_constraints = instance.n_constraints();
  s.offsets.resize(s.n_items + 1, 0);
  const auto caps = instance.max_counts();
  for (std::size_t i = 0; i < s.n_items; ++i) s.offsets[i + 1] = s.offsets[i] + static_cast<std::size_t>(caps[i]) + 1;
  const std::size_t total = s.total_levels();
  s.var_to_factor.resize(s.n_constraints * total);
  for (std::size_t mu = 0; mu < s.n_constraints; ++mu)
    for (std::size_t i = 0; i < s.n_items; ++i) {
      const double p = 1.0 / static_cast<double>(s.levels(i));
      std::fill_n(&s.var_to_factor[mu * total + s.offsets[i]], s.levels(i), p);
    }
  s.factor_to_var = s.var_to_factor;
  const std::size_t edges = s.n_items * s.n_constraints;
  s.edge_mean.assign(edges, 0.0);
  s.edge_var.assign(edges, 0.0);
  s.cavity_mean.assign(edges, 0.0);
  s.cavity_var.assign(edges, 0.0);
  return s;
}

bool BPState::matches(const Instance& instance) const {
  if (n_items != instance.n_items() || n_constraints != instance.n_constraints()) return false;
  if (offsets.size() != n_items + 1) return false;
  const auto caps = instance.max_counts();
  for (std::size_t i = 0; i < n_items; ++i)
    if (levels(i) != static_cast<std::size_t>(caps[i]) + 1) return false;
  return var_to_factor.size() == n_constraints * total_levels() && factor_to_var.size() == var_to_factor.size();
}

void BPState::drop_top_level(std::size_t item) {
  if (levels(item) < 2) throw std::invalid_argument("item has no level to drop");
  const std::size_t old_total = total_levels();
  const std::size_t cut = offsets[item + 1] - 1;  // position of the dropped level
  auto shrink = [&](std::vector<double>& tables) {
    std::vector<double> out;
    out.reserve(n_constraints * (old_total - 1));
    for (std::size_t mu = 0; mu < n_constraints; ++mu) {
      const double* src = &tables[mu * old_total];
      for (std::size_t p = 0; p < old_total; ++p)
        if (p != cut) out.push_back(src[p]);
    }
    tables = std::move(out);
  };
  shrink(var_to_factor);
  shrink(factor_to_var);
  for (std::size_t i = item + 1; i <= n_items; ++i) --offsets[i];
  const std::size_t total = total_levels();
  const std::size_t len = levels(item);
  for (auto* tables : {&var_to_factor, &factor_to_var}) {
    for (std::size_t mu = 0; mu < n_constraints; ++mu) {
      double* t = &(*tables)[mu * total + offsets[item]];
      double s = 0.0;
      for (std::size_t x = 0; x < len; ++x) s += t[x];
      if (s > 0.0) {
        for (std::size_t x = 0; x < len; ++x) t[x] /= s;
      } else {
        std::fill_n(t, len, 1.0 / static_cast<double>(len));
      }
    }
  }
}

namespace {

void check_finite(double value, std::size_t sweep, const char* what) {
  if (!std::isfinite(value)) throw NumericError(sweep, std::string("non-finite ") + what);
}

}  // namespace

namespace {

// Beyond this argument H is computed in log space, so levels whose H would
// all underflow still get the right relative weights.
constexpr double kLinearTailLimit = 30.0;

// Normalized factor message over the levels of one edge:
// p(x) ~ H(arg0 + step * x), floored at h_floor and renormalized.
void factor_table(double arg0, double step, std::size_t len, double h_floor, double* out) {
  const double lowest = std::min(arg0, arg0 + step * static_cast<double>(len - 1));
  double z = 0.0;
  if (lowest < kLinearTailLimit) {
    for (std::size_t x = 0; x < len; ++x) {
      out[x] = gaussian_tail(arg0 + step * static_cast<double>(x));
      z += out[x];
    }
  } else {
    double top = -INFINITY;
    for (std::size_t x = 0; x < len; ++x) {
      out[x] = log_gaussian_tail(arg0 + step * static_cast<double>(x));
      top = std::max(top, out[x]);
    }
    for (std::size_t x = 0; x < len; ++x) {
      out[x] = std::exp(out[x] - top);
      z += out[x];
    }
  }
  const double inv_z = 1.0 / z;
  bool floored = false;
  for (std::size_t x = 0; x < len; ++x) {
    out[x] *= inv_z;
    if (out[x] < h_floor) {
      out[x] = h_floor;
      floored = true;
    }
  }
  if (!floored) return;
  double z2 = 0.0;
  for (std::size_t x = 0; x < len; ++x) z2 += out[x];
  for (std::size_t x = 0; x < len; ++x) out[x] /= z2;
}

// belief_i(x) = prod_mu M_{mu->i}(x), rescaled to max 1 after every factor.
void accumulate_beliefs(const BPState& s, std::vector<double>& belief) {
  const std::size_t total = s.total_levels();
  std::fill(belief.begin(), belief.end(), 1.0);
  for (std::size_t mu = 0; mu < s.n_constraints; ++mu) {
    const double* f = &s.factor_to_var[mu * total];
    for (std::size_t i = 0; i < s.n_items; ++i) {
      const std::size_t o = s.offsets[i];
      const std::size_t len = s.levels(i);
      double top = 0.0;
      for (std::size_t x = 0; x < len; ++x) {
        belief[o + x] *= f[o + x];
        top = std::max(top, belief[o + x]);
      }
      for (std::size_t x = 0; x < len; ++x) belief[o + x] /= top;
    }
  }
}

}  // namespace

BPResult bp_run(const Instance& instance, const IterOpts& opts, std::optional<BPState> init) {
  opts.validate();
  if (init && !init->matches(instance)) throw std::invalid_argument("BP warm-start state does not match instance");

  BPResult result{{}, init ? std::move(*init) : BPState::uniform(instance), {}};
  BPState& s = result.state;
  RunInfo& info = result.info;

  const std::size_t n = s.n_items;
  const std::size_t k = s.n_constraints;
  const std::size_t total = s.total_levels();
  const auto caps = instance.capacities();
  const double keep = opts.damping_for(Engine::bp);
  const double take = 1.0 - keep;

  std::size_t max_levels = 1;
  for (std::size_t i = 0; i < n; ++i) max_levels = std::max(max_levels, s.levels(i));

  std::vector<double> belief(total);
  std::vector<double> scratch(max_levels);
  accumulate_beliefs(s, belief);

  // Factors are visited in order and each one sees the beliefs already
  // updated by the factors before it in the same sweep.
  for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    const auto sweep_index = static_cast<std::size_t>(sweep);
    double residual = 0.0;

    for (std::size_t mu = 0; mu < k; ++mu) {
      const auto row = instance.row(mu);
      double* f = &s.factor_to_var[mu * total];
      double* g = &s.var_to_factor[mu * total];

      // M_{i->mu} = belief_i / M_{mu->i}, its moments, and the factor sums.
      double sum_mean = 0.0, sum_var = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t o = s.offsets[i];
        const std::size_t len = s.levels(i);
        double z = 0.0;
        for (std::size_t x = 0; x < len; ++x) {
          g[o + x] = belief[o + x] / f[o + x];
          z += g[o + x];
        }
        check_finite(z, sweep_index, "variable message");
        const double inv_z = 1.0 / z;
        double m = 0.0, second = 0.0;
        for (std::size_t x = 0; x < len; ++x) {
          g[o + x] *= inv_z;
          const double xd = static_cast<double>(x);
          m += g[o + x] * xd;
          second += g[o + x] * xd * xd;
        }
        const double chi = std::max(second - m * m, 0.0);
        s.edge_mean[mu * n + i] = m;
        s.edge_var[mu * n + i] = chi;
        sum_mean += row[i] * m;
        sum_var += row[i] * row[i] * chi;
      }

      // New M_{mu->i} from the Gaussian cavity field, then fold it into belief_i.
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t e = mu * n + i;
        const std::size_t o = s.offsets[i];
        const std::size_t len = s.levels(i);
        const double w = row[i];
        const double delta = sum_mean - w * s.edge_mean[e];
        double v = sum_var - w * w * s.edge_var[e];
        if (v < opts.v_floor) {
          v = opts.v_floor;
          ++info.clamp_count;
        }
        s.cavity_mean[e] = delta;
        s.cavity_var[e] = v;
        const double inv_sd = 1.0 / std::sqrt(v);
        factor_table((delta - caps[mu]) * inv_sd, w * inv_sd, len, opts.h_floor, scratch.data());
        // Both tables are normalized, so the damped mix needs no rescaling.
        double top = 0.0;
        for (std::size_t x = 0; x < len; ++x) {
          const double next = std::max(take * scratch[x] + keep * f[o + x], opts.h_floor);
          residual = std::max(residual, std::fabs(next - f[o + x]));
          f[o + x] = next;
          belief[o + x] = g[o + x] * next;
          top = std::max(top, belief[o + x]);
        }
        const double inv_top = 1.0 / top;
        for (std::size_t x = 0; x < len; ++x) belief[o + x] *= inv_top;
      }
    }
    check_finite(residual, sweep_index, "factor message");

    info.sweeps = sweep;
    info.residual = residual;
    if (residual < opts.tol) {
      info.converged = true;
      break;
    }
  }

  accumulate_beliefs(s, belief);
  result.marginals.tables.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t len = s.levels(i);
    auto& table = result.marginals.tables[i];
    table.assign(belief.begin() + static_cast<std::ptrdiff_t>(s.offsets[i]),
                 belief.begin() + static_cast<std::ptrdiff_t>(s.offsets[i] + len));
    double z = 0.0;
    for (double p : table) z += p;
    for (auto& p : table) p /= z;
  }
  return result;
}

// ---------------------------------------------------------------------------
// GAMP

GAMPState GAMPState::initial(const Instance& instance, double v_floor) {
  const std::size_t n = instance.n_items();
  const std::size_t k = instance.n_constraints();
  GAMPState s;
  s.max_counts.assign(instance.max_counts().begin(), instance.max_counts().end());
  s.mean.resize(n);
  s.var.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto moments = discrete_free_energy(0.0, 0.0, s.max_counts[i]);
    s.mean[i] = moments.mean;
    s.var[i] = moments.variance;
  }
  s.curvature.assign(n, 0.0);
  s.field.assign(n, 0.0);
  s.V.assign(k, 0.0);
  s.B.assign(k, 0.0);
  s.A.assign(k, 0.0);
  for (std::size_t mu = 0; mu < k; ++mu) {
    const auto row = instance.row(mu);
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += row[i] * row[i] * s.var[i];
    s.V[mu] = std::max(v, v_floor);
  }
  return s;
}

bool GAMPState::matches(const Instance& instance) const {
  const auto caps = instance.max_counts();
  return max_counts.size() == caps.size() && std::equal(max_counts.begin(), max_counts.end(), caps.begin()) &&
         mean.size() == caps.size() && var.size() == caps.size() && curvature.size() == caps.size() &&
         field.size() == caps.size() && V.size() == instance.n_constraints() && B.size() == V.size() &&
         A.size() == V.size();
}

void GAMPState::drop_top_level(std::size_t item) {
  if (max_counts[item] < 1) throw std::invalid_argument("item has no level to drop");
  --max_counts[item];
  mean[item] = std::min(mean[item], static_cast<double>(max_counts[item]));
  if (max_counts[item] == 0) var[item] = 0.0;
}

namespace {

// a_i and b_i from the constraint variables; sums run over mu ascending.
void node_fields(const Instance& instance, const GAMPState& s, std::vector<double>& a, std::vector<double>& b) {
  const std::size_t n = instance.n_items();
  std::fill(a.begin(), a.end(), 0.0);
  std::fill(b.begin(), b.end(), 0.0);
  for (std::size_t mu = 0; mu < instance.n_constraints(); ++mu) {
    const auto row = instance.row(mu);
    const double ca = s.A[mu] / s.V[mu];
    const double cb = s.B[mu] / std::sqrt(s.V[mu]);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] += row[i] * row[i] * ca;
      b[i] += row[i] * cb;
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] += a[i] * s.mean[i];
}

}  // namespace

GAMPResult gamp_run(const Instance& instance, const IterOpts& opts, std::optional<GAMPState> init) {
  opts.validate();
  if (init && !init->matches(instance)) throw std::invalid_argument("GAMP warm-start state does not match instance");

  GAMPResult result{{}, init ? std::move(*init) : GAMPState::initial(instance, opts.v_floor), {}};
  GAMPState& s = result.state;
  RunInfo& info = result.info;

  const std::size_t n = instance.n_items();
  const std::size_t k = instance.n_constraints();
  const auto caps = instance.capacities();
  const double keep = opts.damping_for(Engine::gamp);
  const double take = 1.0 - keep;

  for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    const auto sweep_index = static_cast<std::size_t>(sweep);

    node_fields(instance, s, s.curvature, s.field);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto moments = discrete_free_energy(s.curvature[i], s.field[i], s.max_counts[i]);
      const double m = take * moments.mean + keep * s.mean[i];
      const double chi = take * moments.variance + keep * s.var[i];
      check_finite(m, sweep_index, "node mean");
      check_finite(chi, sweep_index, "node variance");
      residual = std::max(residual, std::fabs(m - s.mean[i]));
      s.mean[i] = m;
      s.var[i] = chi;
    }

    for (std::size_t mu = 0; mu < k; ++mu) {
      const auto row = instance.row(mu);
      double v = 0.0, load = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        v += row[i] * row[i] * s.var[i];
        load += row[i] * s.mean[i];
      }
      if (v < opts.v_floor) {
        v = opts.v_floor;
        ++info.clamp_count;
      }
      s.V[mu] = v;
      const double u = (load - caps[mu]) / std::sqrt(v) - s.B[mu];
      const auto d = log_tail_derivs(u);
      check_finite(d.slope, sweep_index, "constraint slope");
      check_finite(d.curvature, sweep_index, "constraint curvature");
      residual = std::max(residual, std::fabs(d.slope - s.B[mu]));
      s.B[mu] = d.slope;
      s.A[mu] = d.curvature;
    }

    info.sweeps = sweep;
    info.residual = residual;
    if (residual < opts.tol) {
      info.converged = true;
      break;
    }
  }

  node_fields(instance, s, s.curvature, s.field);
  result.marginals.tables.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& table = result.marginals.tables[i];
    table.resize(static_cast<std::size_t>(s.max_counts[i]) + 1);
    double top = -INFINITY;
    for (std::size_t x = 0; x < table.size(); ++x) {
      const double xd = static_cast<double>(x);
      table[x] = -0.5 * s.curvature[i] * xd * xd + s.field[i] * xd;
      top = std::max(top, table[x]);
    }
    double z = 0.0;
    for (auto& p : table) {
      p = std::exp(p - top);
      z += p;
    }
    for (auto& p : table) p /= z;
  }
  return result;
}

}  // namespace gmdkp::cavity
