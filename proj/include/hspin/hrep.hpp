#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hspin/quadrature.hpp"
#include "hspin/spin.hpp"

namespace hspin::hrep {

// Phase-space point of the H-representation. theta is reduced into [0, 2pi)
// on construction; x and y must be finite.
struct HPoint {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  HPoint() = default;
  HPoint(double x_, double y_, double theta_);
};

struct HDistributionSample {
  HPoint point;
  double value = 0.0;
};

// The unnormalized state |x,y,theta> with amplitudes
//   c_m = 2^{-j} pi^{-1/2} e^{-(x^2+y^2)/2} e^{i m theta}
//         H_{j+m}(x) H_{j-m}(y) / sqrt((j-m)!(j+m)!).
SpinState h_state(Spin spin, const HPoint& point);

// Same amplitudes with the Gaussian envelope e^{-(x^2+y^2)/2} stripped;
// this is the polynomial factor the quadrature rules integrate exactly.
ComplexVector h_state_bare(Spin spin, const HPoint& point);

// Dequantizer U(x,y,theta) = |x,y,theta><x,y,theta| (rank <= 1, Hermitian, PSD).
SpinOperator h_dequantizer(Spin spin, const HPoint& point);

// Quantizer D(x,y,theta) with matrix elements
//   D_{m m'} = e^{i(m-m')theta} / (2^{2j+1} pi)
//              * sqrt((j+m)!(j+m')!(j-m)!(j-m')!) / ((2j+m+m')!(2j-m-m')!)
//              * H_{2j+m+m'}(x) H_{2j-m-m'}(y).
// Hermitian at every point; factorial ratios are evaluated in log space.
SpinOperator h_quantizer(Spin spin, const HPoint& point);

// H-distribution w(x,y,theta) = tr(rho U(x,y,theta)) = <x,y,theta|rho|x,y,theta>.
// Real, and nonnegative up to roundoff for every valid rho.
double h_distribution(const DensityMatrix& rho, const HPoint& point);

// Pure-state shortcut w = |<psi|x,y,theta>|^2.
double h_distribution_pure(const SpinState& psi, const HPoint& point);

// Inverse map rho = int dtheta dx dy w(x,y,theta) D(x,y,theta), evaluated on
// the grid (which must be at least the minimal exact size for the spin).
// The callable supplies w including its Gaussian envelope. The result is
// validated; a validation_error therefore signals an inconsistent input w.
DensityMatrix reconstruct_density(Spin spin, const std::function<double(const HPoint&)>& w,
                                  const quad::QuadratureGrid& grid);

// Same inverse map from a dense sample array in canonical grid order
// (theta outer, then x, then y: index = (it * n_xy + ix) * n_xy + iy).
DensityMatrix reconstruct_density(Spin spin, std::span<const double> samples,
                                  const quad::QuadratureGrid& grid);

// Dual symbol f^d_A(x,y,theta) = tr(A D(x,y,theta)).
Complex dual_symbol(const SpinOperator& a, const HPoint& point);

// <A> = int f^d_A w_rho over the phase space; equals tr(rho A) for
// Hermitian A on an exact grid.
double expectation(const SpinOperator& a, const DensityMatrix& rho,
                   const quad::QuadratureGrid& grid);

// |int dx dy w(x,y,theta) - 1| at fixed theta.
double normalization_defect(const DensityMatrix& rho, double theta,
                            const quad::QuadratureGrid& grid);
// Same defect for an arbitrary distribution callable (carrying its Gaussian).
double normalization_defect(const std::function<double(const HPoint&)>& w, double theta,
                            const quad::QuadratureGrid& grid);

// Max-norm of (int dx dy |x,y,theta><x,y,theta| - identity) at fixed theta.
double completeness_defect(Spin spin, double theta, const quad::QuadratureGrid& grid);

// Joint distribution P(x,y,theta) = prior(theta) * w(x,y,theta), treating w
// as the conditional w(x,y|theta). The prior must be nonnegative on the
// theta grid and integrate to 1 on it within 1e-8.
std::function<double(const HPoint&)> joint_distribution(
    std::function<double(const HPoint&)> w, std::function<double(double)> prior,
    const quad::QuadratureGrid& grid);

// w sampled over the grid in canonical order (see reconstruct_density).
std::vector<double> sample_distribution(const DensityMatrix& rho,
                                        const quad::QuadratureGrid& grid);

namespace testhook {
// Multiplies every quantizer coefficient; exists solely so the self-test can
// demonstrate that a corrupted constant is caught by the round-trip check.
void set_quantizer_fault_scale(double scale);
double quantizer_fault_scale();
}  // namespace testhook

}  // namespace hspin::hrep
