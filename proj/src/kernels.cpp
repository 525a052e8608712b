#include "hspin/kernels.hpp"

#include <cmath>
#include <numbers>

namespace hspin::kernels {

namespace {

void require_spin_half(HalfInteger m, const char* where) {
  if (m.twice() != 1 && m.twice() != -1)
    throw std::domain_error(std::string(where) + ": spin-1/2 closed form needs m = +-1/2, got m = " +
                            m.str());
}

}  // namespace

Complex scheme_kernel(const SpinOperator& dequantizer_a, const SpinOperator& quantizer_b) {
  if (dequantizer_a.mat.rows() != quantizer_b.mat.rows())
    throw std::invalid_argument("scheme_kernel: operator dimensions do not match");
  return (dequantizer_a.mat * quantizer_b.mat).trace();
}

double k_th_closed(HalfInteger m, double alpha, double beta, double x, double y, double theta) {
  require_spin_half(m, "k_th_closed");
  const double r2 = x * x + y * y;
  const double axial = (x * x - y * y) * std::cos(beta) -
                       4.0 * x * y * std::sin(beta) * std::cos(alpha - theta);
  return (r2 - 1.0 + 2.0 * m.value() * axial) / (4.0 * std::numbers::pi);
}

double k_ht_closed(double x, double y, double theta, HalfInteger m, double alpha, double beta) {
  require_spin_half(m, "k_ht_closed");
  const double r2 = x * x + y * y;
  const double axial = (x * x - y * y) * std::cos(beta) -
                       2.0 * x * y * std::sin(beta) * std::cos(alpha - theta);
  return std::exp(-r2) * (r2 + 6.0 * m.value() * axial) / std::numbers::pi;
}

double tomogram_from_hdist(const std::function<double(const hrep::HPoint&)>& w_h,
                           const quad::QuadratureGrid& grid, const tomo::TomogramPoint& point) {
  require_spin_half(point.m, "tomogram_from_hdist");
  const Spin half(1);
  if (grid.n_xy() < quad::minimal_axis_nodes(half) || grid.n_theta() < quad::minimal_axis_nodes(half))
    throw std::invalid_argument("tomogram_from_hdist: grid below the spin-1/2 exact minimum");
  const Complex value = quad::integrate_phase_space(
      [&](double x, double y, double theta) -> Complex {
        const hrep::HPoint p(x, y, theta);
        return k_th_closed(point.m, point.alpha, point.beta, x, y, theta) * w_h(p);
      },
      grid);
  return value.real();
}

double tomogram_from_hdist(std::span<const double> w_h, const quad::QuadratureGrid& grid,
                           const tomo::TomogramPoint& point) {
  require_spin_half(point.m, "tomogram_from_hdist");
  const Spin half(1);
  if (grid.n_xy() < quad::minimal_axis_nodes(half) || grid.n_theta() < quad::minimal_axis_nodes(half))
    throw std::invalid_argument("tomogram_from_hdist: grid below the spin-1/2 exact minimum");
  const std::size_t expected = static_cast<std::size_t>(grid.n_theta()) * grid.n_xy() * grid.n_xy();
  if (w_h.size() != expected)
    throw std::invalid_argument("tomogram_from_hdist: sample count does not match grid size");
  double total = 0.0;
  std::size_t k = 0;
  for (int it = 0; it < grid.n_theta(); ++it) {
    const double theta = grid.theta_nodes[it];
    for (int ix = 0; ix < grid.n_xy(); ++ix) {
      const double x = grid.xy.nodes[ix];
      const double ex = std::exp(x * x);
      for (int iy = 0; iy < grid.n_xy(); ++iy, ++k) {
        const double y = grid.xy.nodes[iy];
        if (w_h[k] == 0.0) continue;
        total += grid.xy.weights[ix] * grid.xy.weights[iy] * w_h[k] * ex * std::exp(y * y) *
                 k_th_closed(point.m, point.alpha, point.beta, x, y, theta);
      }
    }
  }
  return grid.theta_weight * total;
}

double hdist_from_tomogram(const tomo::TomogramSamples& samples, const hrep::HPoint& point) {
  const Spin half(1);
  if (samples.spin != half)
    throw std::invalid_argument("hdist_from_tomogram: closed-form kernel is spin-1/2 only");
  const tomo::AngleGrid& grid = samples.grid;
  if (grid.n_alpha() < tomo::minimal_alpha_nodes(half) ||
      grid.n_beta() < tomo::minimal_beta_nodes(half))
    throw std::invalid_argument("hdist_from_tomogram: angle grid below the spin-1/2 exact minimum");
  double total = 0.0;
  for (int ia = 0; ia < grid.n_alpha(); ++ia)
    for (int ib = 0; ib < grid.n_beta(); ++ib) {
      const double mu = grid.alpha_weight * grid.beta_weights[ib];
      for (int im = 0; im < half.dimension(); ++im) {
        const double k = k_ht_closed(point.x, point.y, point.theta, half.m_at(im),
                                     grid.alpha_nodes[ia], grid.beta_nodes[ib]);
        total += mu * k * samples.values(ia * grid.n_beta() + ib, im);
      }
    }
  return total / (4.0 * std::numbers::pi);
}

}  // namespace hspin::kernels
