#include "hspin/spin.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "hspin/specfun.hpp"

namespace hspin {

namespace {

// Standard-normal draws from a fully specified uniform stream, so that a
// seed determines the output bit-for-bit on a given platform.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

 private:
  double uniform() {
    // 53 random bits shifted into (0, 1); never returns 0.
    return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1p-53;
  }
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace

SpinState SpinState::normalized(Spin spin, ComplexVector amplitudes) {
  if (amplitudes.size() != spin.dimension())
    throw std::invalid_argument("SpinState: amplitude count does not match spin dimension");
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > 1e-8)
    throw std::invalid_argument("SpinState: norm " + std::to_string(norm) +
                                " deviates from 1 by more than 1e-8");
  return SpinState(spin, std::move(amplitudes), true);
}

SpinState SpinState::unnormalized(Spin spin, ComplexVector amplitudes) {
  if (amplitudes.size() != spin.dimension())
    throw std::invalid_argument("SpinState: amplitude count does not match spin dimension");
  return SpinState(spin, std::move(amplitudes), false);
}

namespace {

std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

DensityMatrix DensityMatrix::validated(Spin spin, const ComplexMatrix& entries) {
  return validated(spin, entries, hermiticity_tolerance, trace_tolerance, positivity_tolerance);
}

DensityMatrix DensityMatrix::validated(Spin spin, const ComplexMatrix& entries, double herm_tol,
                                       double trace_tol, double psd_tol) {
  if (entries.rows() != spin.dimension() || entries.cols() != spin.dimension())
    throw std::invalid_argument("DensityMatrix: matrix dimension does not match spin");

  const double herm_defect = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > herm_tol)
    throw validation_error(validation_error::Kind::Hermiticity,
                           "InvalidHermiticity: max |rho - rho^dag| = " + compact(herm_defect) +
                               " exceeds tolerance " + compact(herm_tol));

  const Complex trace = entries.trace();
  const double trace_defect = std::abs(trace - Complex(1.0, 0.0));
  if (trace_defect > trace_tol)
    throw validation_error(validation_error::Kind::Trace,
                           "InvalidTrace: |tr(rho) - 1| = " + compact(trace_defect) +
                               " exceeds tolerance " + compact(trace_tol));

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (entries + entries.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < psd_tol)
    throw validation_error(validation_error::Kind::Positivity,
                           "NotPositive: minimum eigenvalue " + compact(min_eig) +
                               " is below tolerance " + compact(psd_tol));

  return DensityMatrix(spin, entries);
}

AngularMomenta angular_momentum_matrices(Spin spin) {
  const int dim = spin.dimension();
  const int tj = spin.twice_j();
  ComplexMatrix jz = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix jplus = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const int tm = tj - 2 * i;
    jz(i, i) = 0.5 * tm;
    if (i > 0) {
      // J+ |j m> = sqrt(j(j+1) - m(m+1)) |j m+1>, landing one index up.
      const double c = 0.5 * std::sqrt(static_cast<double>(tj * (tj + 2) - tm * (tm + 2)));
      jplus(i - 1, i) = c;
    }
  }
  const ComplexMatrix jminus = jplus.adjoint();
  ComplexMatrix jx = 0.5 * (jplus + jminus);
  ComplexMatrix jy = Complex(0.0, -0.5) * (jplus - jminus);
  ComplexMatrix j2 = 0.25 * tj * (tj + 2) * ComplexMatrix::Identity(dim, dim);
  return AngularMomenta{SpinOperator(spin, std::move(jx)), SpinOperator(spin, std::move(jy)),
                        SpinOperator(spin, std::move(jz)), SpinOperator(spin, std::move(j2))};
}

SpinOperator rotation_matrix(Spin spin, double alpha, double beta, double gamma) {
  const int dim = spin.dimension();
  ComplexMatrix r(dim, dim);
  for (int i1 = 0; i1 < dim; ++i1) {
    const HalfInteger m1 = spin.m_at(i1);
    for (int i2 = 0; i2 < dim; ++i2) {
      const HalfInteger m2 = spin.m_at(i2);
      const double d = specfun::wigner_small_d(spin.j_value(), m1, m2, beta);
      r(i1, i2) = std::polar(1.0, m1.value() * alpha) * d * std::polar(1.0, m2.value() * gamma);
    }
  }
  return SpinOperator(spin, std::move(r));
}

DensityMatrix density_from_pure(const SpinState& state) {
  const double norm = state.amplitudes().norm();
  if (std::abs(norm - 1.0) > 1e-8)
    throw std::invalid_argument("density_from_pure: state norm deviates from 1 by more than 1e-8");
  ComplexMatrix rho = state.amplitudes() * state.amplitudes().adjoint();
  return DensityMatrix(state.spin(), std::move(rho));
}

DensityMatrix validate_density(Spin spin, const ComplexMatrix& entries) {
  return DensityMatrix::validated(spin, entries);
}

DensityMatrix random_density(Spin spin, std::uint64_t seed) {
  const int dim = spin.dimension();
  NormalSampler normal(seed);
  ComplexMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      const double re = normal();
      const double im = normal();
      g(r, c) = Complex(re, im);
    }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Symmetrize away the last-bit asymmetry of the matrix product.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix::validated(spin, rho);
}

}  // namespace hspin
