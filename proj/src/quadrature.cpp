#include "hspin/quadrature.hpp"

#include <numbers>

namespace hspin::quad {

namespace {

// Nodes and weights from the symmetric tridiagonal Jacobi matrix of a monic
// orthogonal-polynomial recurrence: nodes are the eigenvalues, weights are
// mu0 * (first eigenvector component)^2.
Rule1D golub_welsch(const Eigen::VectorXd& subdiagonal, double mu0) {
  const int n = static_cast<int>(subdiagonal.size()) + 1;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(Eigen::VectorXd::Zero(n), subdiagonal,
                                Eigen::ComputeEigenvectors);
  Rule1D rule;
  rule.nodes = solver.eigenvalues();
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

// Both rules used here have an even weight function, so the exact nodes come
// in +- pairs; enforce that symmetry bit-for-bit.
void symmetrize(Rule1D& rule) {
  const int n = rule.size();
  for (int i = 0; i < n / 2; ++i) {
    const int k = n - 1 - i;
    const double x = 0.5 * (rule.nodes[k] - rule.nodes[i]);
    rule.nodes[k] = x;
    rule.nodes[i] = -x;
    const double w = 0.5 * (rule.weights[i] + rule.weights[k]);
    rule.weights[i] = w;
    rule.weights[k] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
}

}  // namespace

Rule1D gauss_hermite_rule(int n) {
  if (n < 1 || n > 200)
    throw std::invalid_argument("gauss_hermite_rule: n = " + std::to_string(n) +
                                " outside supported range [1, 200]");
  if (n == 1) {
    Rule1D rule;
    rule.nodes = Eigen::VectorXd::Zero(1);
    rule.weights = Eigen::VectorXd::Constant(1, std::sqrt(std::numbers::pi));
    return rule;
  }
  // Monic recurrence p_{k+1} = z p_k - (k/2) p_{k-1} -> subdiagonal sqrt(k/2).
  Eigen::VectorXd sub(n - 1);
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(0.5 * k);
  Rule1D rule = golub_welsch(sub, std::sqrt(std::numbers::pi));
  symmetrize(rule);
  return rule;
}

Rule1D gauss_legendre_rule(int n) {
  if (n < 1 || n > 200)
    throw std::invalid_argument("gauss_legendre_rule: n = " + std::to_string(n) +
                                " outside supported range [1, 200]");
  if (n == 1) {
    Rule1D rule;
    rule.nodes = Eigen::VectorXd::Zero(1);
    rule.weights = Eigen::VectorXd::Constant(1, 2.0);
    return rule;
  }
  Eigen::VectorXd sub(n - 1);
  for (int k = 1; k < n; ++k) sub[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  Rule1D rule = golub_welsch(sub, 2.0);
  symmetrize(rule);
  return rule;
}

int minimal_axis_nodes(Spin spin) { return 2 * spin.twice_j() + 1; }

QuadratureGrid make_grid(int n_xy, int n_theta) {
  if (n_theta < 1) throw std::invalid_argument("make_grid: n_theta must be >= 1");
  QuadratureGrid grid;
  grid.xy = gauss_hermite_rule(n_xy);
  grid.theta_nodes.resize(n_theta);
  const double step = 2.0 * std::numbers::pi / n_theta;
  for (int i = 0; i < n_theta; ++i) grid.theta_nodes[i] = i * step;
  grid.theta_weight = step;
  return grid;
}

QuadratureGrid grid_for_spin(Spin spin) {
  const int minimal = minimal_axis_nodes(spin);
  const int padded = (3 * minimal + 1) / 2;
  return make_grid(padded, padded);
}

namespace detail {
[[noreturn]] void throw_nonfinite(double x, double y, double theta) {
  throw std::runtime_error("integrate_phase_space: non-finite integrand sample at (x=" +
                           std::to_string(x) + ", y=" + std::to_string(y) +
                           ", theta=" + std::to_string(theta) + ")");
}
}  // namespace detail

}  // namespace hspin::quad
