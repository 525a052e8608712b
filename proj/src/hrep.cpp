#include "hspin/hrep.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <vector>

#include "hspin/specfun.hpp"

namespace hspin::hrep {

namespace {

std::atomic<double> g_quantizer_fault_scale{1.0};

// Kahan-compensated accumulator; the grid sums cancel heavily and plain
// summation costs two digits of the round-trip budget at j = 3.
struct Compensated {
  double sum = 0.0;
  double carry = 0.0;
  void add(double value) {
    const double y = value - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

double reduce_theta(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("HPoint: non-finite theta");
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(theta, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r -= two_pi;
  return r;
}

// H_0..H_max at every node; row per node, column per order.
Eigen::MatrixXd hermite_table(const Eigen::VectorXd& nodes, int max_order) {
  Eigen::MatrixXd table(nodes.size(), max_order + 1);
  for (int i = 0; i < nodes.size(); ++i) {
    const double z = nodes[i];
    double prev = 0.0;
    double cur = 1.0;
    for (int k = 0; k <= max_order; ++k) {
      table(i, k) = cur;
      const double next = 2.0 * z * cur - 2.0 * k * prev;
      prev = cur;
      cur = next;
    }
  }
  return table;
}

// 1/sqrt((j-m)! (j+m)!) indexed like the basis (index i <-> m = j - i).
Eigen::VectorXd state_normalizers(Spin spin) {
  const int tj = spin.twice_j();
  Eigen::VectorXd norm(spin.dimension());
  for (int i = 0; i < spin.dimension(); ++i)
    norm[i] = std::exp(-0.5 * (specfun::log_factorial(i) + specfun::log_factorial(tj - i)));
  return norm;
}

// The factorial-ratio coefficient of the quantizer, including the global
// 1/(2^{2j+1} pi). With index i <-> m = j - i the Hermite orders are
// 2j+m+m' = 2tj - i1 - i2 in x and 2j-m-m' = i1 + i2 in y.
Eigen::MatrixXd quantizer_coefficients(Spin spin) {
  const int tj = spin.twice_j();
  const int dim = spin.dimension();
  const double log_global = -(tj + 1) * std::numbers::ln2 - std::log(std::numbers::pi);
  const double fault = g_quantizer_fault_scale.load();
  Eigen::MatrixXd coef(dim, dim);
  for (int i1 = 0; i1 < dim; ++i1)
    for (int i2 = i1; i2 < dim; ++i2) {
      const double log_ratio =
          0.5 * (specfun::log_factorial(tj - i1) + specfun::log_factorial(i1) +
                 specfun::log_factorial(tj - i2) + specfun::log_factorial(i2)) -
          specfun::log_factorial(2 * tj - i1 - i2) - specfun::log_factorial(i1 + i2);
      coef(i1, i2) = fault * std::exp(log_global + log_ratio);
      coef(i2, i1) = coef(i1, i2);
    }
  return coef;
}

void require_exact_grid(Spin spin, const quad::QuadratureGrid& grid, const char* where) {
  const int minimal = quad::minimal_axis_nodes(spin);
  if (grid.n_xy() < minimal || grid.n_theta() < minimal)
    throw std::invalid_argument(std::string(where) + ": grid (" + std::to_string(grid.n_xy()) +
                                " xy nodes, " + std::to_string(grid.n_theta()) +
                                " theta nodes) is below the minimal exact size " +
                                std::to_string(minimal) + " for twice_j = " +
                                std::to_string(spin.twice_j()));
}

// Shared core of both reconstruct_density overloads. Calls sample(it, ix, iy,
// point) for the distribution value at the node.
template <class Sample>
DensityMatrix reconstruct_impl(Spin spin, Sample&& sample, const quad::QuadratureGrid& grid) {
  require_exact_grid(spin, grid, "reconstruct_density");
  const int tj = spin.twice_j();
  const int dim = spin.dimension();
  const int nxy = grid.n_xy();
  const Eigen::MatrixXd herm = hermite_table(grid.xy.nodes, 2 * tj);
  const Eigen::MatrixXd coef = quantizer_coefficients(spin);

  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  // g[q] accumulates the (x, y) integral of w * H_{2tj-q}(x) H_q(y) for the
  // Hermite order pair indexed by q = i1 + i2; theta enters only through the
  // phase e^{i (i2-i1) theta}, applied afterwards.
  std::vector<Compensated> g(2 * tj + 1);
  for (int it = 0; it < grid.n_theta(); ++it) {
    const double theta = grid.theta_nodes[it];
    for (auto& acc : g) acc = Compensated{};
    for (int ix = 0; ix < nxy; ++ix) {
      const double x = grid.xy.nodes[ix];
      const double ex = std::exp(x * x);
      for (int iy = 0; iy < nxy; ++iy) {
        const double y = grid.xy.nodes[iy];
        const double w_val = sample(it, ix, iy, HPoint(x, y, theta));
        if (!std::isfinite(w_val)) quad::detail::throw_nonfinite(x, y, theta);
        if (w_val == 0.0) continue;
        const double mu = grid.xy.weights[ix] * grid.xy.weights[iy] * w_val * ex * std::exp(y * y);
        for (int q = 0; q <= 2 * tj; ++q) g[q].add(mu * herm(ix, 2 * tj - q) * herm(iy, q));
      }
    }
    for (int i1 = 0; i1 < dim; ++i1)
      for (int i2 = i1; i2 < dim; ++i2) {
        const Complex phase = std::polar(1.0, (i2 - i1) * theta);
        rho(i1, i2) += phase * (coef(i1, i2) * g[i1 + i2].sum);
      }
  }
  rho *= grid.theta_weight;
  for (int i1 = 0; i1 < dim; ++i1)
    for (int i2 = 0; i2 < i1; ++i2) rho(i1, i2) = std::conj(rho(i2, i1));
  // Validated against the reconstruction error budget (quadrature noise at
  // j = 3 sits around 1e-11), which still flags genuinely inconsistent w.
  return DensityMatrix::validated(spin, rho, DensityMatrix::hermiticity_tolerance, 1e-8, -1e-8);
}

}  // namespace

HPoint::HPoint(double x_, double y_, double theta_) : x(x_), y(y_), theta(reduce_theta(theta_)) {
  if (!std::isfinite(x) || !std::isfinite(y))
    throw std::invalid_argument("HPoint: non-finite coordinate");
}

ComplexVector h_state_bare(Spin spin, const HPoint& point) {
  const int tj = spin.twice_j();
  const int dim = spin.dimension();
  const double pref = std::exp2(-0.5 * tj) / std::sqrt(std::numbers::pi);
  const Eigen::VectorXd norm = state_normalizers(spin);
  ComplexVector c(dim);
  for (int i = 0; i < dim; ++i) {
    const double m = 0.5 * (tj - 2 * i);
    c[i] = std::polar(pref * specfun::hermite(tj - i, point.x) * specfun::hermite(i, point.y) *
                          norm[i],
                      m * point.theta);
  }
  return c;
}

SpinState h_state(Spin spin, const HPoint& point) {
  const double envelope = std::exp(-0.5 * (point.x * point.x + point.y * point.y));
  ComplexVector c = h_state_bare(spin, point);
  c *= envelope;
  return SpinState::unnormalized(spin, std::move(c));
}

SpinOperator h_dequantizer(Spin spin, const HPoint& point) {
  const ComplexVector c = h_state(spin, point).amplitudes();
  return SpinOperator(spin, c * c.adjoint());
}

SpinOperator h_quantizer(Spin spin, const HPoint& point) {
  const int tj = spin.twice_j();
  const int dim = spin.dimension();
  const Eigen::MatrixXd coef = quantizer_coefficients(spin);
  ComplexMatrix d(dim, dim);
  for (int i1 = 0; i1 < dim; ++i1)
    for (int i2 = i1; i2 < dim; ++i2) {
      const double value = coef(i1, i2) * specfun::hermite(2 * tj - i1 - i2, point.x) *
                           specfun::hermite(i1 + i2, point.y);
      d(i1, i2) = std::polar(value, (i2 - i1) * point.theta);
      d(i2, i1) = std::conj(d(i1, i2));
    }
  return SpinOperator(spin, std::move(d));
}

double h_distribution(const DensityMatrix& rho, const HPoint& point) {
  const ComplexVector bare = h_state_bare(rho.spin(), point);
  const Complex quad_form = bare.dot(rho.entries() * bare);
  return std::exp(-(point.x * point.x + point.y * point.y)) * quad_form.real();
}

double h_distribution_pure(const SpinState& psi, const HPoint& point) {
  if (!psi.is_normalized())
    throw std::invalid_argument("h_distribution_pure: state must be normalized");
  const ComplexVector bare = h_state_bare(psi.spin(), point);
  const Complex overlap = psi.amplitudes().dot(bare);
  return std::exp(-(point.x * point.x + point.y * point.y)) * std::norm(overlap);
}

DensityMatrix reconstruct_density(Spin spin, const std::function<double(const HPoint&)>& w,
                                  const quad::QuadratureGrid& grid) {
  return reconstruct_impl(
      spin, [&w](int, int, int, const HPoint& p) { return w(p); }, grid);
}

DensityMatrix reconstruct_density(Spin spin, std::span<const double> samples,
                                  const quad::QuadratureGrid& grid) {
  const std::size_t expected = static_cast<std::size_t>(grid.n_theta()) * grid.n_xy() * grid.n_xy();
  if (samples.size() != expected)
    throw std::invalid_argument("reconstruct_density: sample count " +
                                std::to_string(samples.size()) + " does not match grid size " +
                                std::to_string(expected));
  const int nxy = grid.n_xy();
  return reconstruct_impl(
      spin,
      [&samples, nxy](int it, int ix, int iy, const HPoint&) {
        return samples[(static_cast<std::size_t>(it) * nxy + ix) * nxy + iy];
      },
      grid);
}

Complex dual_symbol(const SpinOperator& a, const HPoint& point) {
  const SpinOperator d = h_quantizer(a.spin, point);
  return (a.mat * d.mat).trace();
}

double expectation(const SpinOperator& a, const DensityMatrix& rho,
                   const quad::QuadratureGrid& grid) {
  if (a.spin != rho.spin()) throw std::invalid_argument("expectation: spin mismatch");
  const Spin spin = a.spin;
  require_exact_grid(spin, grid, "expectation");
  const int tj = spin.twice_j();
  const int dim = spin.dimension();
  const Eigen::MatrixXd herm = hermite_table(grid.xy.nodes, 2 * tj);
  const Eigen::VectorXd norm = state_normalizers(spin);
  const double state_pref = std::exp2(-0.5 * tj) / std::sqrt(std::numbers::pi);
  // tr(A D(p)) = sum_{i1 i2} B_{i1 i2} e^{i(i2-i1)theta} H_{2tj-i1-i2}(x) H_{i1+i2}(y)
  // with B = A (elementwise) coef^T; coef is symmetric so B = A o coef.
  const Eigen::MatrixXd coef = quantizer_coefficients(spin);
  const ComplexMatrix b = a.mat.cwiseProduct(coef.cast<Complex>());

  ComplexVector bare(dim);
  Compensated total;
  for (int it = 0; it < grid.n_theta(); ++it) {
    const double theta = grid.theta_nodes[it];
    ComplexVector phases(dim);
    for (int i = 0; i < dim; ++i) phases[i] = std::polar(1.0, 0.5 * (tj - 2 * i) * theta);
    for (int ix = 0; ix < grid.n_xy(); ++ix) {
      for (int iy = 0; iy < grid.n_xy(); ++iy) {
        // bare state at the node from the tables
        for (int i = 0; i < dim; ++i)
          bare[i] = phases[i] * (state_pref * herm(ix, tj - i) * herm(iy, i) * norm[i]);
        const double w_bare = bare.dot(rho.entries() * bare).real();
        Complex symbol(0.0, 0.0);
        for (int i1 = 0; i1 < dim; ++i1)
          for (int i2 = 0; i2 < dim; ++i2)
            symbol += b(i1, i2) * (phases[i2] / phases[i1]) *
                      (herm(ix, 2 * tj - i1 - i2) * herm(iy, i1 + i2));
        total.add(grid.xy.weights[ix] * grid.xy.weights[iy] * w_bare * symbol.real());
      }
    }
  }
  return grid.theta_weight * total.sum;
}

double normalization_defect(const DensityMatrix& rho, double theta,
                            const quad::QuadratureGrid& grid) {
  const Spin spin = rho.spin();
  double integral = 0.0;
  for (int ix = 0; ix < grid.n_xy(); ++ix)
    for (int iy = 0; iy < grid.n_xy(); ++iy) {
      const HPoint p(grid.xy.nodes[ix], grid.xy.nodes[iy], theta);
      const ComplexVector bare = h_state_bare(spin, p);
      integral += grid.xy.weights[ix] * grid.xy.weights[iy] * bare.dot(rho.entries() * bare).real();
    }
  return std::abs(integral - 1.0);
}

double normalization_defect(const std::function<double(const HPoint&)>& w, double theta,
                            const quad::QuadratureGrid& grid) {
  double integral = 0.0;
  for (int ix = 0; ix < grid.n_xy(); ++ix)
    for (int iy = 0; iy < grid.n_xy(); ++iy) {
      const double x = grid.xy.nodes[ix];
      const double y = grid.xy.nodes[iy];
      const double value = w(HPoint(x, y, theta));
      if (!std::isfinite(value)) quad::detail::throw_nonfinite(x, y, theta);
      integral += grid.xy.weights[ix] * grid.xy.weights[iy] * value * std::exp(x * x) *
                  std::exp(y * y);
    }
  return std::abs(integral - 1.0);
}

double completeness_defect(Spin spin, double theta, const quad::QuadratureGrid& grid) {
  const int dim = spin.dimension();
  ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
  for (int ix = 0; ix < grid.n_xy(); ++ix)
    for (int iy = 0; iy < grid.n_xy(); ++iy) {
      const HPoint p(grid.xy.nodes[ix], grid.xy.nodes[iy], theta);
      const ComplexVector bare = h_state_bare(spin, p);
      acc += (grid.xy.weights[ix] * grid.xy.weights[iy]) * (bare * bare.adjoint());
    }
  return (acc - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

std::function<double(const HPoint&)> joint_distribution(std::function<double(const HPoint&)> w,
                                                        std::function<double(double)> prior,
                                                        const quad::QuadratureGrid& grid) {
  double mass = 0.0;
  for (int it = 0; it < grid.n_theta(); ++it) {
    const double theta = grid.theta_nodes[it];
    const double p = prior(theta);
    if (!std::isfinite(p) || p < 0.0)
      throw std::invalid_argument("joint_distribution: prior is negative or non-finite at theta = " +
                                  std::to_string(theta));
    mass += grid.theta_weight * p;
  }
  if (std::abs(mass - 1.0) > 1e-8)
    throw std::invalid_argument("joint_distribution: prior integrates to " + std::to_string(mass) +
                                " on the theta grid; expected 1 within 1e-8");
  return [w = std::move(w), prior = std::move(prior)](const HPoint& p) {
    return prior(p.theta) * w(p);
  };
}

std::vector<double> sample_distribution(const DensityMatrix& rho,
                                        const quad::QuadratureGrid& grid) {
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(grid.n_theta()) * grid.n_xy() * grid.n_xy());
  for (int it = 0; it < grid.n_theta(); ++it)
    for (int ix = 0; ix < grid.n_xy(); ++ix)
      for (int iy = 0; iy < grid.n_xy(); ++iy)
        samples.push_back(h_distribution(
            rho, HPoint(grid.xy.nodes[ix], grid.xy.nodes[iy], grid.theta_nodes[it])));
  return samples;
}

namespace testhook {
void set_quantizer_fault_scale(double scale) { g_quantizer_fault_scale.store(scale); }
double quantizer_fault_scale() { return g_quantizer_fault_scale.load(); }
}  // namespace testhook

}  // namespace hspin::hrep
