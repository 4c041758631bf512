#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "gmdkp/error.hpp"
#include "gmdkp/replica.hpp"

using namespace gmdkp;
using namespace gmdkp::replica;

namespace {

EnsembleParams theory_params(int x_max, double c = 0.25) {
  EnsembleParams p;
  p.x_max = x_max;
  p.capacity_ratio = c;
  return p;
}

// Central-difference gradient of the functional in the five order parameters.
double gradient_norm(const EntropyPoint& pt, const EnsembleParams& p, const NormalRule& rule) {
  const double h = 1e-6;
  double worst = 0.0;
  for (int j = 0; j < 5; ++j) {
    RSOrder up = pt.order, down = pt.order;
    double* u = &up.Q;
    double* d = &down.Q;
    u[j] += h;
    d[j] -= h;
    const double g = (rs_functional(up, pt.m, pt.alpha, p, rule) - rs_functional(down, pt.m, pt.alpha, p, rule)) / (2 * h);
    worst = std::max(worst, std::fabs(g));
  }
  return worst;
}

}  // namespace

TEST_SUITE("replica") {
  TEST_CASE("alpha = 0 reduces to the binary entropy at p = C/w") {
    for (double ratio : {0.2, 0.5, 0.8}) {
      const auto p = theory_params(1, 0.5 * ratio);
      for (double m : {-0.7, 0.0, 0.4}) {
        const auto pt = rs_entropy(m, 0.0, p);
        CHECK(pt.entropy == doctest::Approx(testing::binary_entropy(ratio)).epsilon(1e-9));
      }
    }
    CHECK(rs_entropy(0.0, 0.0, theory_params(1)).entropy == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(rs_entropy(0.0, 0.0, theory_params(1, 0.1)).entropy == doctest::Approx(0.5004024235).epsilon(1e-9));
  }

  TEST_CASE("saddle points are stationary and quadrature-stable") {
    const NormalRule rule(120);
    for (int x_max : {1, 2}) {
      const auto p = theory_params(x_max);
      for (double alpha : {0.25, 0.5, 1.0}) {
        const auto result = find_m_opt(alpha, p);
        for (const auto& pt : result.curve) {
          CHECK(gradient_norm(pt, p, rule) < 1e-5);
          SaddleOptions fine;
          fine.nodes = 240;
          const auto again = rs_entropy(pt.m, alpha, p, pt.order, fine);
          CHECK(std::fabs(again.entropy - pt.entropy) < 1e-8);
          CHECK(pt.residual < 1e-8);
          CHECK(pt.order.Q >= pt.order.q);
          CHECK(pt.order.Q <= x_max * x_max);
          const auto r = stationarity_residuals(pt.order, pt.m, alpha, p, rule);
          CHECK(std::fabs(r[2]) < 1e-9);  // the mean level is pinned to C/w
        }
      }
    }
  }

  TEST_CASE("entropy decreases with M along the regular branch") {
    const auto p = theory_params(1);
    const NormalRule rule(120);
    std::optional<RSOrder> warm;
    double last = INFINITY;
    for (double m = -0.3; m <= 0.2; m += 0.02) {
      const auto pt = rs_entropy(m, 0.25, p, warm, {}, rule);
      CHECK(pt.entropy < last);
      last = pt.entropy;
      warm = pt.order;
    }
  }

  TEST_CASE("m_opt is a root and is stable under the scan start") {
    const auto p = theory_params(1);
    for (double alpha : {0.25, 1.0}) {
      const auto a = find_m_opt(alpha, p);
      const auto at = rs_entropy(a.m_opt, alpha, p);
      CHECK(std::fabs(at.entropy) < 1e-6);
      ScanOptions other;
      other.start = -0.6;
      other.step = 0.03;
      const auto b = find_m_opt(alpha, p, other);
      CHECK(std::fabs(a.m_opt - b.m_opt) < 1e-5);
      for (const auto& pt : a.curve)
        if (pt.m < a.m_opt) CHECK(pt.entropy > 0.0);
      CHECK(std::is_sorted(a.curve.begin(), a.curve.end(),
                           [](const EntropyPoint& x, const EntropyPoint& y) { return x.m < y.m; }));
    }
  }

  TEST_CASE("m_opt ordering in x_max and alpha") {
    const double m1 = find_m_opt(0.5, theory_params(1)).m_opt;
    const double m2 = find_m_opt(0.5, theory_params(2)).m_opt;
    CHECK(m2 > m1);
    CHECK(find_m_opt(2.0, theory_params(1)).m_opt < m1);
  }

  TEST_CASE("m_opt regression values") {
    // recorded at the first verified run
    CHECK(find_m_opt(0.25, theory_params(1)).m_opt == doctest::Approx(0.223348).epsilon(1e-5));
    CHECK(find_m_opt(0.5, theory_params(1)).m_opt == doctest::Approx(0.006889).epsilon(1e-3));
    CHECK(find_m_opt(1.0, theory_params(1)).m_opt == doctest::Approx(-0.178811).epsilon(1e-5));
    CHECK(find_m_opt(0.25, theory_params(2)).m_opt == doctest::Approx(0.456559).epsilon(1e-5));
  }

  TEST_CASE("u_opt") {
    CHECK(u_opt(100, 0.0, theory_params(1)) == 50.0);
    CHECK(u_opt(25, 1.0, theory_params(1)) == 17.5);
    CHECK_THROWS_AS(u_opt(0, 0.0, theory_params(1)), std::invalid_argument);
  }

  TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(rs_entropy(0.0, -1.0, theory_params(1)), std::invalid_argument);
    CHECK_THROWS_AS(rs_entropy(0.0, 1.0, theory_params(0)), std::invalid_argument);
    CHECK_THROWS_AS(rs_entropy(0.0, 1.0, theory_params(1, 0.6)), std::invalid_argument);  // C/w above x_max
    CHECK_THROWS_AS(find_m_opt(0.0, theory_params(1)), std::invalid_argument);
    ScanOptions bad;
    bad.step = 0.0;
    CHECK_THROWS_AS(find_m_opt(1.0, theory_params(1), bad), std::invalid_argument);
  }

  TEST_CASE("collapsing saddles are reported") {
    // far beyond the root the iteration runs off along Q - q -> 0
    CHECK_THROWS_AS(rs_entropy(1.5, 1.0, theory_params(1)), ConvergenceError);
  }
}
