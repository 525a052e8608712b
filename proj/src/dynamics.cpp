#include "hspin/dynamics.hpp"

#include <cmath>
#include <numbers>

namespace hspin::dynamics {

SpinOperator evolution_operator(const LarmorParams& params, double t) {
  if (!(params.omega_c >= 0.0))
    throw std::invalid_argument("LarmorParams: omega_c must be >= 0 and finite");
  const double half = 0.5 * params.omega_c * t;
  const double c = std::cos(half);
  const double s = std::sin(half);
  ComplexMatrix u(2, 2);
  u << Complex(c, 0.0), Complex(0.0, -s), Complex(0.0, -s), Complex(c, 0.0);
  return SpinOperator(Spin(1), std::move(u));
}

DensityMatrix rho_t(const LarmorParams& params, double t) {
  const SpinOperator u = evolution_operator(params, t);
  ComplexVector psi0(2);
  psi0 << Complex(1.0, 0.0), Complex(0.0, 0.0);
  const ComplexVector psi = u.mat * psi0;
  return density_from_pure(SpinState::normalized(Spin(1), psi));
}

double h_distribution_t(const LarmorParams& params, double t, const hrep::HPoint& point) {
  const double wt = params.omega_c * t;
  const double x2 = point.x * point.x;
  const double y2 = point.y * point.y;
  return std::exp(-(x2 + y2)) *
         (x2 + y2 + (x2 - y2) * std::cos(wt) +
          2.0 * point.x * point.y * std::sin(wt) * std::sin(point.theta)) /
         std::numbers::pi;
}

SpinMeans spin_means_t(const LarmorParams& params, double t, const quad::QuadratureGrid& grid) {
  const DensityMatrix rho = rho_t(params, t);
  const AngularMomenta ops = angular_momentum_matrices(Spin(1));
  return SpinMeans{hrep::expectation(ops.jx, rho, grid), hrep::expectation(ops.jy, rho, grid),
                   hrep::expectation(ops.jz, rho, grid)};
}

SpinOperator propagator(const SpinOperator& hamiltonian, double t) {
  const ComplexMatrix& h = hamiltonian.mat;
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("propagator: Hamiltonian must be Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  const Eigen::VectorXd evals = solver.eigenvalues();
  ComplexVector phases(evals.size());
  for (int i = 0; i < evals.size(); ++i) phases[i] = std::polar(1.0, -evals[i] * t);
  ComplexMatrix u = solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
  return SpinOperator(hamiltonian.spin, std::move(u));
}

}  // namespace hspin::dynamics
