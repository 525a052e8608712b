#include <cmath>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "hspin/quadrature.hpp"
#include "test_util.hpp"

using namespace hspin;
using quad::gauss_hermite_rule;
using quad::gauss_legendre_rule;

namespace {
constexpr double pi = std::numbers::pi;
constexpr double sqrt_pi = 1.7724538509055160273;
}  // namespace

TEST_CASE("gauss-hermite small rules in closed form") {
  const quad::Rule1D one = gauss_hermite_rule(1);
  CHECK(one.nodes[0] == 0.0);
  CHECK(one.weights[0] == doctest::Approx(sqrt_pi).epsilon(1e-15));

  // two-point rule from the moment conditions: nodes +-1/sqrt(2), weights sqrt(pi)/2
  const quad::Rule1D two = gauss_hermite_rule(2);
  CHECK(two.nodes[0] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(two.nodes[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(two.weights[0] == doctest::Approx(0.5 * sqrt_pi).epsilon(1e-14));
  CHECK(two.weights[1] == doctest::Approx(0.5 * sqrt_pi).epsilon(1e-14));

  CHECK_THROWS_AS(gauss_hermite_rule(0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_hermite_rule(201), std::invalid_argument);
}

TEST_CASE("gauss-hermite weights sum to sqrt(pi) and nodes are symmetric") {
  for (const int n : {1, 2, 3, 7, 10, 25, 64, 128, 200}) {
    const quad::Rule1D rule = gauss_hermite_rule(n);
    CHECK(std::abs(rule.weights.sum() - sqrt_pi) < 1e-12);
    for (int i = 0; i < n / 2; ++i) {
      CHECK(rule.nodes[i] == -rule.nodes[n - 1 - i]);
      CHECK(rule.weights[i] == rule.weights[n - 1 - i]);
    }
  }
}

TEST_CASE("gauss-hermite reproduces gaussian moments") {
  const int n = 10;
  const quad::Rule1D rule = gauss_hermite_rule(n);
  double sum_x2 = 0.0;
  for (int i = 0; i < n; ++i) sum_x2 += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
  CHECK(std::abs(sum_x2 - 0.5 * sqrt_pi) < 1e-12);

  double moment = sqrt_pi;
  for (int k = 0; k <= n - 1; ++k) {
    if (k > 0) moment *= (2.0 * k - 1.0) / 2.0;
    double even = 0.0, odd = 0.0;
    for (int i = 0; i < n; ++i) {
      even += rule.weights[i] * std::pow(rule.nodes[i], 2 * k);
      odd += rule.weights[i] * std::pow(rule.nodes[i], 2 * k + 1);
    }
    CHECK(std::abs(even - moment) / moment < 1e-11);
    CHECK(std::abs(odd) < 1e-11 * moment);
  }
}

TEST_CASE("gauss-legendre reproduces monomial integrals") {
  const quad::Rule1D rule = gauss_legendre_rule(6);
  CHECK(std::abs(rule.weights.sum() - 2.0) < 1e-13);
  for (int k = 0; k <= 11; ++k) {
    double sum = 0.0;
    for (int i = 0; i < rule.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
    const double exact = k % 2 == 0 ? 2.0 / (k + 1) : 0.0;
    CHECK(std::abs(sum - exact) < 1e-13);
  }
}

TEST_CASE("grid sizing follows the exactness counting") {
  CHECK(quad::minimal_axis_nodes(Spin(1)) == 3);
  CHECK(quad::minimal_axis_nodes(Spin(4)) == 9);
  const quad::QuadratureGrid grid = quad::grid_for_spin(Spin(1));
  CHECK(grid.n_xy() >= 3);
  CHECK(grid.n_theta() >= 3);
  const quad::QuadratureGrid grid2 = quad::grid_for_spin(Spin(4));
  CHECK(grid2.n_xy() >= 9);
  CHECK(grid2.n_theta() >= 9);
  CHECK(grid.theta_nodes[0] == 0.0);
  CHECK(grid.theta_weight == doctest::Approx(2 * pi / grid.n_theta()).epsilon(1e-15));
}

TEST_CASE("phase-space integration examples") {
  const quad::QuadratureGrid grid = quad::make_grid(8, 8);

  // normalized gaussian: (1/(2 pi^2)) e^{-(x^2+y^2)} integrates to 1
  const Complex gaussian = quad::integrate_phase_space(
      [](double x, double y, double) {
        return Complex(std::exp(-(x * x + y * y)) / (2.0 * pi * pi), 0.0);
      },
      grid);
  CHECK(std::abs(gaussian - Complex(1.0, 0.0)) < 1e-13);

  // separable gaussian moment: e^{-(x^2+y^2)} x^2 -> 2 pi * (sqrt(pi)/2) * sqrt(pi) = pi^2
  const Complex moment = quad::integrate_gaussian_factor(
      [](double x, double, double) { return Complex(x * x, 0.0); }, grid);
  CHECK(std::abs(moment - Complex(pi * pi, 0.0)) < 1e-12);

  // full-period harmonic vanishes
  const Complex harmonic = quad::integrate_gaussian_factor(
      [](double x, double y, double theta) { return std::polar(1.0 + x * x * y * y, theta); },
      grid);
  CHECK(std::abs(harmonic) < 1e-12);
}

TEST_CASE("doubling the grid does not move exact integrals") {
  const quad::QuadratureGrid base = quad::grid_for_spin(Spin(2));
  const quad::QuadratureGrid doubled = quad::make_grid(2 * base.n_xy(), 2 * base.n_theta());
  const auto integrand = [](double x, double y, double theta) {
    return Complex((x * x - y * y) * std::cos(theta) + x * x * y * y, x * y * std::sin(theta));
  };
  const Complex a = quad::integrate_gaussian_factor(integrand, base);
  const Complex b = quad::integrate_gaussian_factor(integrand, doubled);
  CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
}

TEST_CASE("non-finite integrand samples are reported with the grid point") {
  const quad::QuadratureGrid grid = quad::make_grid(3, 3);
  try {
    quad::integrate_gaussian_factor(
        [](double x, double, double) {
          return Complex(x == 0.0 ? std::numeric_limits<double>::infinity() : 1.0, 0.0);
        },
        grid);
    FAIL("expected a non-finite sample error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("x=") != std::string::npos);
  }
}
