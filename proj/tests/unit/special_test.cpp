#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <random>
#include <span>
#include <vector>

#include "../support/oracles.hpp"
#include "gmdkp/quadrature.hpp"
#include "gmdkp/special.hpp"

using namespace gmdkp;

TEST_SUITE("special") {
  TEST_CASE("gaussian tail basics") {
    CHECK(gaussian_tail(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    for (double x : {0.5, 1.0, 2.0}) CHECK(gaussian_tail(x) + gaussian_tail(-x) == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("gaussian tail against adaptive quadrature") {
    CHECK(gaussian_tail(1.0) == doctest::Approx(0.15865525393).epsilon(1e-10));
    for (double x : {-3.0, -1.2, 0.0, 0.3, 1.0, 2.5, 4.0, 6.0}) {
      const double ref = testing::tail_by_quadrature(x);
      CHECK(gaussian_tail(x) == doctest::Approx(ref).epsilon(1e-10));
    }
  }

  TEST_CASE("log tail matches 50-digit erfc up to |x| = 38") {
    for (double x = -38.0; x <= 38.0; x += 0.37) {
      const double ref = testing::log_tail_multiprecision(x);
      const double got = log_gaussian_tail(x);
      REQUIRE(std::isfinite(got));
      // relative error in the log, with an absolute floor where ln H ~ 0
      CHECK(std::fabs(got - ref) <= 1e-12 * std::max(1.0, std::fabs(ref)));
    }
    CHECK(std::isfinite(log_gaussian_tail(38.0)));
    CHECK(log_gaussian_tail(38.0) < -700.0);
  }

  TEST_CASE("slope and curvature at zero") {
    const auto d = log_tail_derivs(0.0);
    CHECK(d.slope == doctest::Approx(-2.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-12));
    CHECK(d.curvature == doctest::Approx(2.0 / M_PI).epsilon(1e-12));
  }

  TEST_CASE("slope and curvature against finite differences") {
    const double h = 1e-5;
    for (double u : {-6.0, -2.0, 0.0, 0.7, 3.0, 8.0}) {
      auto lnH = [](double x) { return testing::log_tail_multiprecision(x); };
      const double fd1 = (lnH(u + h) - lnH(u - h)) / (2 * h);
      const double fd2 = (lnH(u + h) - 2 * lnH(u) + lnH(u - h)) / (h * h);
      const auto d = log_tail_derivs(u);
      CHECK(d.slope == doctest::Approx(fd1).epsilon(1e-7));
      CHECK(d.curvature == doctest::Approx(-fd2).epsilon(1e-4));
    }
  }

  TEST_CASE("curvature identity and positivity") {
    for (double u : {-2.0, 0.7, 3.0}) {
      const auto d = log_tail_derivs(u);
      CHECK(std::fabs(d.curvature - (d.slope * d.slope + u * d.slope)) < 1e-10);
    }
    for (double u = -30.0; u <= 30.0; u += 0.25) {
      const auto d = log_tail_derivs(u);
      CHECK(d.curvature > 0.0);
      CHECK(d.slope < 0.0);
    }
    CHECK(lnH_d2(1.3) == doctest::Approx(-log_tail_derivs(1.3).curvature));
  }

  TEST_CASE("discrete free energy") {
    for (int x_max : {1, 2, 5, 10}) {
      const auto f = discrete_free_energy(0.0, 0.0, x_max);
      CHECK(f.value == doctest::Approx(std::log(x_max + 1.0)).epsilon(1e-14));
    }
    const auto fair = discrete_free_energy(0.0, 0.0, 1);
    CHECK(fair.mean == doctest::Approx(0.5));
    CHECK(fair.variance == doctest::Approx(0.25));

    // direct three-term sum
    const double a = 1.0, b = 0.3;
    double z = 0, s1 = 0, s2 = 0;
    for (int x = 0; x <= 2; ++x) {
      const double t = std::exp(-a * x * x / 2 + b * x);
      z += t;
      s1 += t * x;
      s2 += t * x * x;
    }
    const auto f = discrete_free_energy(a, b, 2);
    CHECK(f.value == doctest::Approx(std::log(z)).epsilon(1e-14));
    CHECK(f.mean == doctest::Approx(s1 / z).epsilon(1e-14));
    CHECK(f.variance == doctest::Approx(s2 / z - (s1 / z) * (s1 / z)).epsilon(1e-12));
  }

  TEST_CASE("discrete free energy derivatives match finite differences") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> ua(-2.0, 4.0), ub(-5.0, 5.0);
    for (int t = 0; t < 200; ++t) {
      const double a = ua(gen), b = ub(gen);
      const int x_max = 1 + static_cast<int>(gen() % 8);
      const double h = 1e-5;
      const auto f = discrete_free_energy(a, b, x_max);
      const auto fp = discrete_free_energy(a, b + h, x_max);
      const auto fm = discrete_free_energy(a, b - h, x_max);
      const double d1 = (fp.value - fm.value) / (2 * h);
      const double d2 = (fp.mean - fm.mean) / (2 * h);
      CHECK(f.mean == doctest::Approx(d1).epsilon(1e-6));
      CHECK(f.variance >= 0.0);
      if (f.variance > 1e-6) CHECK(f.variance == doctest::Approx(d2).epsilon(1e-6));
    }
  }

  TEST_CASE("discrete free energy stays finite for extreme fields") {
    for (double b : {-800.0, 800.0}) {
      const auto f = discrete_free_energy(-50.0, b, 5);
      CHECK(std::isfinite(f.value));
      CHECK(std::isfinite(f.mean));
      CHECK(f.variance >= 0.0);
    }
  }
}

TEST_SUITE("quadrature") {
  TEST_CASE("Gauss-Legendre rule is exact for polynomials") {
    for (std::size_t n : {1u, 2u, 5u, 15u, 30u}) {
      const auto rule = gauss_legendre_rule(n);
      REQUIRE(rule.nodes.size() == n);
      CHECK(std::is_sorted(rule.nodes.begin(), rule.nodes.end()));
      for (std::size_t d = 0; d < 2 * n; ++d) {
        double sum = 0;
        for (std::size_t k = 0; k < n; ++k) sum += rule.weights[k] * std::pow(rule.nodes[k], static_cast<double>(d));
        const double exact = d % 2 == 1 ? 0.0 : 2.0 / static_cast<double>(d + 1);
        CHECK(sum == doctest::Approx(exact).epsilon(1e-13));
      }
    }
    CHECK_THROWS(gauss_legendre_rule(0));
  }

  TEST_CASE("normal rule integrates normal moments") {
    for (std::size_t n : {120u, 240u}) {
      const NormalRule rule(n);
      CHECK(rule.integrate([](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-14));
      double dfact = 1.0;
      for (int k = 1; k <= 6; ++k) {
        dfact *= (2 * k - 1);
        CHECK(rule.integrate([k](double z) { return std::pow(z, 2 * k); }) == doctest::Approx(dfact).epsilon(1e-12));
        CHECK(std::fabs(rule.integrate([k](double z) { return std::pow(z, 2 * k - 1); })) < 1e-12);
      }
      CHECK(rule.integrate([](double z) { return std::exp(1.5 * z); }) == doctest::Approx(std::exp(1.125)).epsilon(1e-12));
    }
    CHECK_THROWS(NormalRule(4));
  }

  TEST_CASE("kinks at declared features converge at the smooth rate") {
    // E max(0, z - c) = phi(c) - c H(c)
    for (double c : {-1.3, 0.0, 0.4, 2.2}) {
      const double exact = std::exp(-0.5 * c * c) / std::sqrt(2 * M_PI) - c * testing::tail_by_quadrature(c);
      const Feature kink{c, 1e-6};
      const double got = NormalRule(120).integrate([c](double z) { return std::max(0.0, z - c); }, std::span(&kink, 1));
      CHECK(got == doctest::Approx(exact).epsilon(1e-12));
    }
    // sharp softplus against adaptive Simpson
    for (double s : {5.0, 30.0, 200.0}) {
      const double c = 0.37;
      auto f = [s, c](double z) {
        const double t = s * (z - c);
        return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
      };
      const double ref = testing::adaptive_simpson(
          [&](double z) { return f(z) * std::exp(-0.5 * z * z) / std::sqrt(2 * M_PI); }, -12.0, 12.0, 1e-14);
      const Feature kink{c, 1.0 / s};
      const double a = NormalRule(120).integrate(f, std::span(&kink, 1));
      const double b = NormalRule(240).integrate(f, std::span(&kink, 1));
      CHECK(a == doctest::Approx(ref).epsilon(1e-10));
      CHECK(std::fabs(a - b) < 1e-12 * std::max(1.0, std::fabs(b)));
    }
  }

  TEST_CASE("features outside the range or degenerate are ignored") {
    const NormalRule rule(120);
    std::vector<Feature> odd{{40.0, 0.1}, {0.0, 0.0}, {std::nan(""), 1.0}};
    CHECK(rule.integrate([](double z) { return z * z; }, odd) == doctest::Approx(1.0).epsilon(1e-13));
  }
}
