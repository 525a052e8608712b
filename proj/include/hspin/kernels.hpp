#pragma once

#include <functional>
#include <span>

#include "hspin/hrep.hpp"
#include "hspin/tomo.hpp"

namespace hspin::kernels {

// Two consistent star-product schemes: the dequantizer of scheme a paired
// with the quantizer of scheme b, for converting a-symbols from b-symbols.
template <class PointA, class PointB>
struct SchemePair {
  std::function<SpinOperator(const PointA&)> dequantizer_a;
  std::function<SpinOperator(const PointB&)> quantizer_b;
};

// Intertwining kernel K_ab(pa, pb) = tr(U^(a)(pa) D^(b)(pb)).
Complex scheme_kernel(const SpinOperator& dequantizer_a, const SpinOperator& quantizer_b);

template <class PointA, class PointB>
Complex scheme_kernel(const SchemePair<PointA, PointB>& pair, const PointA& pa, const PointB& pb) {
  return scheme_kernel(pair.dequantizer_a(pa), pair.quantizer_b(pb));
}

// Spin-1/2 closed form of the tomogram <- H kernel:
//   K_TH = (1/4pi) (x^2+y^2-1 + 2m [(x^2-y^2) cos b - 4 x y sin b cos(a-theta)]).
double k_th_closed(HalfInteger m, double alpha, double beta, double x, double y, double theta);

// Spin-1/2 closed form of the H <- tomogram kernel:
//   K_HT = (1/pi) e^{-(x^2+y^2)} (x^2+y^2 + 6m [(x^2-y^2) cos b - 2 x y sin b cos(a-theta)]).
double k_ht_closed(double x, double y, double theta, HalfInteger m, double alpha, double beta);

// w_T(m, alpha, beta) = int dtheta dx dy K_TH * w_H, for spin 1/2; w_H
// carries its Gaussian envelope and is integrated on the given grid.
double tomogram_from_hdist(const std::function<double(const hrep::HPoint&)>& w_h,
                           const quad::QuadratureGrid& grid, const tomo::TomogramPoint& point);

// Same transform from dense samples in canonical grid order (theta outer,
// then x, then y).
double tomogram_from_hdist(std::span<const double> w_h, const quad::QuadratureGrid& grid,
                           const tomo::TomogramPoint& point);

// w_H(x, y, theta) = (1/4pi) int dalpha sin(beta) dbeta sum_m K_HT * w_T,
// for spin 1/2, from tomogram samples on an exact angle rule.
double hdist_from_tomogram(const tomo::TomogramSamples& samples, const hrep::HPoint& point);

}  // namespace hspin::kernels
