#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "hspin/spin.hpp"

namespace hspin::quad {

struct Rule1D {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

// Gauss-Hermite rule for the weight exp(-z^2) on the real line, computed by
// Golub-Welsch from the Jacobi matrix of the (monic) Hermite recurrence.
// Nodes are exactly symmetric about 0 and the weights sum to sqrt(pi).
// Supported range: 1 <= n <= 200.
Rule1D gauss_hermite_rule(int n);

// Gauss-Legendre rule on [-1, 1], same construction. 1 <= n <= 200.
Rule1D gauss_legendre_rule(int n);

// Product grid for the phase-space integrals: one Gauss-Hermite rule shared
// by the x and y axes, plus N equispaced theta nodes on [0, 2pi) with the
// uniform weight 2pi/N (exact for trigonometric polynomials of degree < N).
struct QuadratureGrid {
  Rule1D xy;
  Eigen::VectorXd theta_nodes;
  double theta_weight = 0.0;

  int n_xy() const { return xy.size(); }
  int n_theta() const { return static_cast<int>(theta_nodes.size()); }
};

// Smallest per-axis node count that integrates every integrand this library
// generates at the given spin exactly: polynomial degree up to 8j against
// exp(-x^2) needs 2n-1 >= 8j, and theta harmonics reach |k| = 4j, so both
// minima are 4j + 1 = 2*twice_j + 1.
int minimal_axis_nodes(Spin spin);

QuadratureGrid make_grid(int n_xy, int n_theta);

// Default grid: minimal exact sizes times a 1.5 safety margin, rounded up.
QuadratureGrid grid_for_spin(Spin spin);

namespace detail {
[[noreturn]] void throw_nonfinite(double x, double y, double theta);
}

// Integral of exp(-(x^2+y^2)) * g(x, y, theta) over the full phase space,
// with the Gaussian envelope handled analytically by the Gauss-Hermite
// weights; g supplies only the polynomial/trigonometric factor. Exact for
// the library's integrand class on a sufficiently large grid.
template <class F>
Complex integrate_gaussian_factor(F&& g, const QuadratureGrid& grid) {
  Complex total(0.0, 0.0);
  for (int it = 0; it < grid.n_theta(); ++it) {
    const double theta = grid.theta_nodes[it];
    Complex slice(0.0, 0.0);
    for (int ix = 0; ix < grid.n_xy(); ++ix) {
      const double x = grid.xy.nodes[ix];
      Complex row(0.0, 0.0);
      for (int iy = 0; iy < grid.n_xy(); ++iy) {
        const double y = grid.xy.nodes[iy];
        const Complex v = g(x, y, theta);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
          detail::throw_nonfinite(x, y, theta);
        row += grid.xy.weights[iy] * v;
      }
      slice += grid.xy.weights[ix] * row;
    }
    total += slice;
  }
  return grid.theta_weight * total;
}

// Integral of f(x, y, theta) where f is the full integrand carrying its own
// exp(-(x^2+y^2)) factor; the Gaussian is divided back out node by node.
// Prefer integrate_gaussian_factor when the polynomial part is available.
template <class F>
Complex integrate_phase_space(F&& f, const QuadratureGrid& grid) {
  return integrate_gaussian_factor(
      [&f](double x, double y, double theta) -> Complex {
        const Complex v = f(x, y, theta);
        if (v.real() == 0.0 && v.imag() == 0.0) return Complex(0.0, 0.0);
        return v * std::exp(x * x) * std::exp(y * y);
      },
      grid);
}

}  // namespace hspin::quad
