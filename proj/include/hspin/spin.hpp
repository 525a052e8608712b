#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "hspin/half_integer.hpp"

namespace hspin {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Total angular momentum j, kept exact as 2j. Basis ordering is fixed for
// every matrix and vector in this library: index 0 <-> m = +j, descending
// one step per index down to m = -j.
class Spin {
 public:
  explicit Spin(int twice_j) : twice_j_(twice_j) {
    if (twice_j < 0) throw std::domain_error("Spin: twice_j must be >= 0");
  }

  int twice_j() const { return twice_j_; }
  double j() const { return 0.5 * twice_j_; }
  HalfInteger j_value() const { return HalfInteger::from_twice(twice_j_); }
  int dimension() const { return twice_j_ + 1; }

  HalfInteger m_at(int index) const {
    if (index < 0 || index >= dimension()) throw std::out_of_range("Spin::m_at: index out of range");
    return HalfInteger::from_twice(twice_j_ - 2 * index);
  }

  int index_of(HalfInteger m) const {
    if (!valid_projection(m))
      throw std::domain_error("Spin: m = " + m.str() + " is not a projection for 2j = " +
                              std::to_string(twice_j_));
    return (twice_j_ - m.twice()) / 2;
  }

  bool valid_projection(HalfInteger m) const {
    const int offset = twice_j_ - m.twice();
    return offset >= 0 && offset % 2 == 0 && offset <= 2 * twice_j_;
  }

  friend bool operator==(Spin a, Spin b) { return a.twice_j_ == b.twice_j_; }
  friend bool operator!=(Spin a, Spin b) { return !(a == b); }

 private:
  int twice_j_;
};

// Raised when a matrix fails one of the density-matrix invariants; the
// message names the violated tolerance.
class validation_error : public std::runtime_error {
 public:
  enum class Kind { Hermiticity, Trace, Positivity };
  validation_error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class SpinState {
 public:
  // A state whose norm is required to be 1 (within 1e-8); throws
  // std::invalid_argument otherwise.
  static SpinState normalized(Spin spin, ComplexVector amplitudes);
  // A state carried without any normalization claim (H-states are of this kind).
  static SpinState unnormalized(Spin spin, ComplexVector amplitudes);

  Spin spin() const { return spin_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  bool is_normalized() const { return normalized_; }

 private:
  SpinState(Spin spin, ComplexVector amplitudes, bool normalized)
      : spin_(spin), amplitudes_(std::move(amplitudes)), normalized_(normalized) {}
  Spin spin_;
  ComplexVector amplitudes_;
  bool normalized_;
};

// Hermitian, unit-trace, positive-semidefinite matrix in the |jm> basis.
// Instances only exist through validated() or library constructors, so the
// three invariants hold for every object of this type.
class DensityMatrix {
 public:
  static constexpr double hermiticity_tolerance = 1e-12;
  static constexpr double trace_tolerance = 1e-12;
  static constexpr double positivity_tolerance = -1e-10;

  // Enforces the three invariants and throws validation_error otherwise.
  static DensityMatrix validated(Spin spin, const ComplexMatrix& entries);

  // Same checks with caller-supplied tolerances. Quadrature reconstruction
  // carries an error floor far above the ingestion tolerances (its acceptance
  // budget is 1e-9 entrywise at j = 3), so the inverse maps validate against
  // that budget instead.
  static DensityMatrix validated(Spin spin, const ComplexMatrix& entries, double herm_tol,
                                 double trace_tol, double psd_tol);

  Spin spin() const { return spin_; }
  const ComplexMatrix& entries() const { return entries_; }

 private:
  friend DensityMatrix density_from_pure(const SpinState& state);
  DensityMatrix(Spin spin, ComplexMatrix entries) : spin_(spin), entries_(std::move(entries)) {}
  Spin spin_;
  ComplexMatrix entries_;
};

struct SpinOperator {
  SpinOperator(Spin s, ComplexMatrix m) : spin(s), mat(std::move(m)) {
    if (mat.rows() != spin.dimension() || mat.cols() != spin.dimension())
      throw std::invalid_argument("SpinOperator: matrix dimension does not match spin");
  }
  Spin spin;
  ComplexMatrix mat;
};

struct AngularMomenta {
  SpinOperator jx, jy, jz, j_squared;
};

// Jz diagonal with entries m (descending); Jx, Jy built from the ladder
// operators with matrix elements sqrt(j(j+1) - m(m+-1)); J^2 = j(j+1) I.
// hbar = 1 throughout.
AngularMomenta angular_momentum_matrices(Spin spin);

// Active rotation R(alpha, beta, gamma) = exp(i alpha Jz) exp(i beta Jy)
// exp(i gamma Jz), with matrix elements
//   R_{m1 m2} = exp(i m1 alpha) d^{(j)}_{m1 m2}(beta) exp(i m2 gamma).
// This is the convention whose columns reproduce the spin-1/2 tomography
// closed forms; see tomo.hpp.
SpinOperator rotation_matrix(Spin spin, double alpha, double beta, double gamma);

// rho = |psi><psi|. Throws std::invalid_argument if the state norm deviates
// from 1 by more than 1e-8.
DensityMatrix density_from_pure(const SpinState& state);

// Enforces Hermiticity (1e-12 entrywise), unit trace (1e-12) and
// positive semidefiniteness (eigenvalues >= -1e-10).
DensityMatrix validate_density(Spin spin, const ComplexMatrix& entries);

// Ginibre-induced random density matrix G G^dag / tr(G G^dag), fully
// determined by the seed.
DensityMatrix random_density(Spin spin, std::uint64_t seed);

}  // namespace hspin
