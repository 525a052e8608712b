#pragma once

#include <functional>

#include <Eigen/Dense>

#include "hspin/quadrature.hpp"
#include "hspin/spin.hpp"

namespace hspin::tomo {

// Tomogram argument: spin projection m along the axis selected by the Euler
// angles (alpha, beta), beta in [0, pi].
struct TomogramPoint {
  HalfInteger m;
  double alpha = 0.0;
  double beta = 0.0;

  TomogramPoint(HalfInteger m_, double alpha_, double beta_);
};

// Product rule on the sphere: uniform alpha nodes on [0, 2pi) and
// Gauss-Legendre nodes in cos(beta), whose weights absorb the sin(beta)
// measure. Exact for the tomogram/quantizer products when the node counts
// reach the minima below.
struct AngleGrid {
  Eigen::VectorXd alpha_nodes;
  double alpha_weight = 0.0;
  Eigen::VectorXd beta_nodes;
  Eigen::VectorXd beta_weights;

  int n_alpha() const { return static_cast<int>(alpha_nodes.size()); }
  int n_beta() const { return static_cast<int>(beta_nodes.size()); }
};

// Reconstruction integrands reach alpha harmonics 4j and polynomial degree
// 4j in cos(beta): minima 4j+1 uniform alpha nodes and 2j+1 Gauss-Legendre
// beta nodes.
int minimal_alpha_nodes(Spin spin);
int minimal_beta_nodes(Spin spin);

AngleGrid make_angle_grid(int n_alpha, int n_beta);
AngleGrid angle_grid_for_spin(Spin spin);  // minima x 1.5 safety margin

// Dequantizer U(m, alpha, beta) = R |jm><jm| R^dag with
// R = rotation_matrix(spin, alpha, beta, 0): the projector onto the
// eigenvalue-m eigenspace of n.J for the axis returned by measurement_axis.
SpinOperator tomo_dequantizer(Spin spin, const TomogramPoint& point);

// Unit vector n with (n.J) U(m, alpha, beta) = m U(m, alpha, beta).
Eigen::Vector3d measurement_axis(double alpha, double beta);

// w(m, alpha, beta) = tr(rho U(m, alpha, beta)), a probability in [0, 1].
double tomogram_value(const DensityMatrix& rho, const TomogramPoint& point);

// Quantizer from the Clebsch-Gordan double sum
//   D_{m1 m2}(m, a, b) = (-1)^{2j} sum_{j'} (-1)^{m+m1} (2j'+1)
//       <j m; j -m | j' 0> <j m1; j -m2 | j' m1-m2>
//       e^{i (m1-m2) a} d^{(j')}_{0, m1-m2}(b).
// The overall (-1)^{2j} (-1)^{m+m1} phase (well defined for every j since
// m+m1 is an integer) is the resolution of the printed (-1)^m (-1)^{m1}
// that makes the inverse transform exact; see the round-trip and
// dual-frame checks in the test suite.
SpinOperator tomo_quantizer_analytic(Spin spin, const TomogramPoint& point);

// Tomogram sampled on an angle grid for every projection m; values(row, col)
// with row = i_alpha * n_beta + i_beta and col = the m index (m = +j first).
struct TomogramSamples {
  Spin spin;
  AngleGrid grid;
  Eigen::MatrixXd values;
};

TomogramSamples sample_tomogram(const DensityMatrix& rho, const AngleGrid& grid);

// Inverse transform rho = (1/4pi) int dalpha int sin(beta) dbeta sum_m w D.
// Throws std::invalid_argument when the angle grid is below the exactness
// minima for the spin.
DensityMatrix reconstruct_from_tomogram(const TomogramSamples& samples);

}  // namespace hspin::tomo
