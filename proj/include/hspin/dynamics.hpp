#pragma once

#include <vector>

#include "hspin/hrep.hpp"
#include "hspin/spin.hpp"

namespace hspin::dynamics {

// Magnetic-moment rotation of a spin 1/2 that starts aligned with +z in a
// field along x. The field strength, charge and mass enter only through the
// single frequency omega_c.
struct LarmorParams {
  double omega_c = 0.0;
  std::vector<double> times;
};

// Exact propagator of H = (omega_c/2) sigma_x:
//   [[cos(w t/2), -i sin(w t/2)], [-i sin(w t/2), cos(w t/2)]].
SpinOperator evolution_operator(const LarmorParams& params, double t);

// rho(t) for the spin-up initial state, pure for all t.
DensityMatrix rho_t(const LarmorParams& params, double t);

// Closed form of the time-dependent H-distribution,
//   (1/pi) e^{-(x^2+y^2)} (x^2+y^2 + (x^2-y^2) cos(w t) + 2 x y sin(w t) sin(theta)).
double h_distribution_t(const LarmorParams& params, double t, const hrep::HPoint& point);

struct SpinMeans {
  double sx = 0.0;
  double sy = 0.0;
  double sz = 0.0;
};

// Mean spin components at time t, computed through the star-product average
// (dual symbols integrated against the H-distribution on the grid), not
// through the trace shortcut.
SpinMeans spin_means_t(const LarmorParams& params, double t, const quad::QuadratureGrid& grid);

// exp(-i H t) for a general constant Hermitian Hamiltonian, by
// eigendecomposition; lets H-distributions be animated at any spin.
SpinOperator propagator(const SpinOperator& hamiltonian, double t);

}  // namespace hspin::dynamics
