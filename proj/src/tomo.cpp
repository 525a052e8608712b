#include "hspin/tomo.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "hspin/specfun.hpp"

namespace hspin::tomo {

namespace {

// Per-spin Clebsch-Gordan tables for the quantizer sum, so reconstruction
// does not re-derive them at every angle node.
//   core(jp, i)      = (-1)^{j+m} <j m; j -m | jp 0>          (m = m_at(i))
//   pair(jp, i1*dim+i2) = (-1)^{j+m1} <j m1; j -m2 | jp m1-m2>
struct QuantizerTables {
  explicit QuantizerTables(Spin spin) : dim(spin.dimension()) {
    const HalfInteger j = spin.j_value();
    const int n_jp = spin.twice_j() + 1;  // j' = 0 .. 2j
    core.resize(n_jp, dim);
    pair.resize(n_jp, dim * dim);
    for (int jp = 0; jp < n_jp; ++jp) {
      const HalfInteger jprime = HalfInteger::from_int(jp);
      for (int i = 0; i < dim; ++i) {
        const HalfInteger m = spin.m_at(i);
        core(jp, i) = parity_sign(j + m) *
                      specfun::clebsch_gordan(j, m, j, -m, jprime, HalfInteger::from_int(0));
      }
      for (int i1 = 0; i1 < dim; ++i1) {
        const HalfInteger m1 = spin.m_at(i1);
        for (int i2 = 0; i2 < dim; ++i2) {
          const HalfInteger m2 = spin.m_at(i2);
          pair(jp, i1 * dim + i2) =
              parity_sign(j + m1) * specfun::clebsch_gordan(j, m1, j, -m2, jprime, m1 - m2);
        }
      }
    }
  }

  int dim;
  Eigen::MatrixXd core;
  Eigen::MatrixXd pair;
};

// Assembles the quantizer at one angle node from the tables; dvals(jp, |mu|
// slot) caching is left to the caller via the lambda-free direct evaluation,
// which is cheap at the spins this module targets.
ComplexMatrix quantizer_from_tables(Spin spin, const QuantizerTables& tables, int m_index,
                                    double alpha, double beta) {
  const int dim = spin.dimension();
  const int n_jp = spin.twice_j() + 1;
  ComplexMatrix d = ComplexMatrix::Zero(dim, dim);
  for (int i1 = 0; i1 < dim; ++i1)
    for (int i2 = i1; i2 < dim; ++i2) {
      const int mu = i2 - i1;  // m1 - m2 = i2 - i1
      double radial = 0.0;
      for (int jp = mu; jp < n_jp; ++jp) {
        const double small_d =
            specfun::wigner_small_d(HalfInteger::from_int(jp), HalfInteger::from_int(0),
                                    HalfInteger::from_int(mu), beta);
        radial += (2 * jp + 1) * tables.core(jp, m_index) * tables.pair(jp, i1 * dim + i2) * small_d;
      }
      d(i1, i2) = std::polar(radial, mu * alpha);
      d(i2, i1) = std::conj(d(i1, i2));
    }
  return d;
}

void require_exact_angle_grid(Spin spin, const AngleGrid& grid, const char* where) {
  if (grid.n_alpha() < minimal_alpha_nodes(spin) || grid.n_beta() < minimal_beta_nodes(spin))
    throw std::invalid_argument(std::string(where) + ": angle grid (" +
                                std::to_string(grid.n_alpha()) + " alpha nodes, " +
                                std::to_string(grid.n_beta()) + " beta nodes) is below the " +
                                "minimal exact sizes (" +
                                std::to_string(minimal_alpha_nodes(spin)) + ", " +
                                std::to_string(minimal_beta_nodes(spin)) + ") for twice_j = " +
                                std::to_string(spin.twice_j()));
}

}  // namespace

TomogramPoint::TomogramPoint(HalfInteger m_, double alpha_, double beta_)
    : m(m_), alpha(alpha_), beta(beta_) {
  if (!std::isfinite(alpha) || !std::isfinite(beta))
    throw std::invalid_argument("TomogramPoint: non-finite angle");
  if (beta < 0.0 || beta > std::numbers::pi)
    throw std::invalid_argument("TomogramPoint: beta must lie in [0, pi]");
}

int minimal_alpha_nodes(Spin spin) { return 2 * spin.twice_j() + 1; }
int minimal_beta_nodes(Spin spin) { return spin.twice_j() + 1; }

AngleGrid make_angle_grid(int n_alpha, int n_beta) {
  if (n_alpha < 1) throw std::invalid_argument("make_angle_grid: n_alpha must be >= 1");
  AngleGrid grid;
  grid.alpha_nodes.resize(n_alpha);
  const double step = 2.0 * std::numbers::pi / n_alpha;
  for (int i = 0; i < n_alpha; ++i) grid.alpha_nodes[i] = i * step;
  grid.alpha_weight = step;
  const quad::Rule1D legendre = quad::gauss_legendre_rule(n_beta);
  grid.beta_nodes.resize(n_beta);
  grid.beta_weights.resize(n_beta);
  for (int i = 0; i < n_beta; ++i) {
    // u = cos(beta) descending -> beta ascending
    grid.beta_nodes[i] = std::acos(legendre.nodes[n_beta - 1 - i]);
    grid.beta_weights[i] = legendre.weights[n_beta - 1 - i];
  }
  return grid;
}

AngleGrid angle_grid_for_spin(Spin spin) {
  const int na = (3 * minimal_alpha_nodes(spin) + 1) / 2;
  const int nb = (3 * minimal_beta_nodes(spin) + 1) / 2;
  return make_angle_grid(na, nb);
}

SpinOperator tomo_dequantizer(Spin spin, const TomogramPoint& point) {
  const int index = spin.index_of(point.m);  // throws on invalid m
  const SpinOperator r = rotation_matrix(spin, point.alpha, point.beta, 0.0);
  const ComplexVector column = r.mat.col(index);
  return SpinOperator(spin, column * column.adjoint());
}

Eigen::Vector3d measurement_axis(double alpha, double beta) {
  return {-std::cos(alpha) * std::sin(beta), std::sin(alpha) * std::sin(beta), std::cos(beta)};
}

double tomogram_value(const DensityMatrix& rho, const TomogramPoint& point) {
  const int index = rho.spin().index_of(point.m);
  const SpinOperator r = rotation_matrix(rho.spin(), point.alpha, point.beta, 0.0);
  const ComplexVector column = r.mat.col(index);
  return column.dot(rho.entries() * column).real();
}

SpinOperator tomo_quantizer_analytic(Spin spin, const TomogramPoint& point) {
  const int index = spin.index_of(point.m);
  const QuantizerTables tables(spin);
  return SpinOperator(spin, quantizer_from_tables(spin, tables, index, point.alpha, point.beta));
}

TomogramSamples sample_tomogram(const DensityMatrix& rho, const AngleGrid& grid) {
  const Spin spin = rho.spin();
  const int dim = spin.dimension();
  TomogramSamples samples{spin, grid, Eigen::MatrixXd(grid.n_alpha() * grid.n_beta(), dim)};
  for (int ia = 0; ia < grid.n_alpha(); ++ia)
    for (int ib = 0; ib < grid.n_beta(); ++ib) {
      const SpinOperator r =
          rotation_matrix(spin, grid.alpha_nodes[ia], grid.beta_nodes[ib], 0.0);
      for (int im = 0; im < dim; ++im) {
        const ComplexVector column = r.mat.col(im);
        samples.values(ia * grid.n_beta() + ib, im) = column.dot(rho.entries() * column).real();
      }
    }
  return samples;
}

DensityMatrix reconstruct_from_tomogram(const TomogramSamples& samples) {
  const Spin spin = samples.spin;
  const AngleGrid& grid = samples.grid;
  require_exact_angle_grid(spin, grid, "reconstruct_from_tomogram");
  if (samples.values.rows() != grid.n_alpha() * grid.n_beta() ||
      samples.values.cols() != spin.dimension())
    throw std::invalid_argument("reconstruct_from_tomogram: sample shape does not match grid");

  const int dim = spin.dimension();
  const QuantizerTables tables(spin);
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (int ia = 0; ia < grid.n_alpha(); ++ia)
    for (int ib = 0; ib < grid.n_beta(); ++ib) {
      const double mu = grid.alpha_weight * grid.beta_weights[ib];
      for (int im = 0; im < dim; ++im) {
        const double w_val = samples.values(ia * grid.n_beta() + ib, im);
        rho += (mu * w_val) * quantizer_from_tables(spin, tables, im, grid.alpha_nodes[ia],
                                                    grid.beta_nodes[ib]);
      }
    }
  rho /= 4.0 * std::numbers::pi;
  return DensityMatrix::validated(spin, rho, DensityMatrix::hermiticity_tolerance, 1e-8, -1e-8);
}

}  // namespace hspin::tomo
