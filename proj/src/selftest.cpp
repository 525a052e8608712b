#include "hspin/selftest.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "hspin/dynamics.hpp"
#include "hspin/hrep.hpp"
#include "hspin/kernels.hpp"
#include "hspin/quadrature.hpp"
#include "hspin/specfun.hpp"
#include "hspin/spin.hpp"
#include "hspin/tomo.hpp"

namespace hspin::selftest {

namespace {

using hrep::HPoint;
using tomo::TomogramPoint;

constexpr double pi = std::numbers::pi;

struct AngleSampler {
  explicit AngleSampler(std::uint64_t seed) : rng(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * ((static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53);
  }
  HPoint point() { return HPoint(uniform(-3.0, 3.0), uniform(-3.0, 3.0), uniform(0.0, 2 * pi)); }
  std::mt19937_64 rng;
};

double check_hermite_orthogonality() {
  const quad::Rule1D rule = quad::gauss_hermite_rule(14);
  const auto norm = [](int n) {
    return std::exp2(n) * static_cast<double>(specfun::factorial(n)) * std::sqrt(pi);
  };
  double worst = 0.0;
  for (int n = 0; n <= 12; ++n)
    for (int k = 0; k <= 12; ++k) {
      double sum = 0.0;
      for (int i = 0; i < rule.size(); ++i)
        sum += rule.weights[i] * specfun::hermite(n, rule.nodes[i]) *
               specfun::hermite(k, rule.nodes[i]);
      const double expected = n == k ? norm(n) : 0.0;
      worst = std::max(worst, std::abs(sum - expected) / std::sqrt(norm(n) * norm(k)));
    }
  return worst;
}

double check_busbridge() {
  const quad::Rule1D rule = quad::gauss_hermite_rule(16);
  double worst = 0.0;
  for (int p = 0; p <= 8; ++p)
    for (int n = p; n <= 8; ++n)
      for (int k = n; k <= 8; ++k) {
        // symmetric node pairing: odd integrands cancel exactly
        double sum = 0.0;
        double mass = 0.0;
        for (int i = 0; i < rule.size() / 2; ++i) {
          const int mirror = rule.size() - 1 - i;
          const double left = rule.weights[i] * specfun::hermite(p, rule.nodes[i]) *
                              specfun::hermite(n, rule.nodes[i]) *
                              specfun::hermite(k, rule.nodes[i]);
          const double right = rule.weights[mirror] * specfun::hermite(p, rule.nodes[mirror]) *
                               specfun::hermite(n, rule.nodes[mirror]) *
                               specfun::hermite(k, rule.nodes[mirror]);
          sum += left + right;
          mass += std::abs(left) + std::abs(right);
        }
        const double closed = specfun::triple_hermite_integral(p, n, k);
        const double scale = std::max(std::abs(closed), 1e-3 * mass);
        worst = std::max(worst, std::abs(closed - sum) / std::max(1.0, scale));
      }
  return worst;
}

double check_d_unitarity() {
  double worst = 0.0;
  for (int tj = 1; tj <= 6; ++tj) {
    const Spin spin(tj);
    for (const double beta : {0.3, 1.1, 2.5}) {
      const int dim = spin.dimension();
      Eigen::MatrixXd d(dim, dim);
      for (int i1 = 0; i1 < dim; ++i1)
        for (int i2 = 0; i2 < dim; ++i2)
          d(i1, i2) =
              specfun::wigner_small_d(spin.j_value(), spin.m_at(i1), spin.m_at(i2), beta);
      worst = std::max(worst,
                       (d * d.transpose() - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double check_cg_unitarity() {
  double worst = 0.0;
  for (int tj1 = 1; tj1 <= 4; ++tj1)
    for (int tj2 = 1; tj2 <= 4; ++tj2) {
      const HalfInteger j1 = HalfInteger::from_twice(tj1);
      const HalfInteger j2 = HalfInteger::from_twice(tj2);
      for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
        for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2)
          for (int tm1p = -tj1; tm1p <= tj1; tm1p += 2)
            for (int tm2p = -tj2; tm2p <= tj2; tm2p += 2) {
              const HalfInteger m1 = HalfInteger::from_twice(tm1);
              const HalfInteger m2 = HalfInteger::from_twice(tm2);
              const HalfInteger m1p = HalfInteger::from_twice(tm1p);
              const HalfInteger m2p = HalfInteger::from_twice(tm2p);
              double sum = 0.0;
              for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
                const HalfInteger J = HalfInteger::from_twice(tJ);
                const HalfInteger M = m1 + m2;
                sum += specfun::clebsch_gordan(j1, m1, j2, m2, J, M) *
                       specfun::clebsch_gordan(j1, m1p, j2, m2p, J, M);
              }
              const double expected = (tm1 == tm1p && tm2 == tm2p) ? 1.0 : 0.0;
              worst = std::max(worst, std::abs(sum - expected));
            }
    }
  return worst;
}

double check_commutators() {
  double worst = 0.0;
  for (int tj = 1; tj <= 8; ++tj) {
    const AngularMomenta ops = angular_momentum_matrices(Spin(tj));
    const Complex i_unit(0.0, 1.0);
    worst = std::max(worst, ((ops.jx.mat * ops.jy.mat - ops.jy.mat * ops.jx.mat) -
                             i_unit * ops.jz.mat).cwiseAbs().maxCoeff());
    worst = std::max(worst, ((ops.jy.mat * ops.jz.mat - ops.jz.mat * ops.jy.mat) -
                             i_unit * ops.jx.mat).cwiseAbs().maxCoeff());
    worst = std::max(worst, ((ops.jz.mat * ops.jx.mat - ops.jx.mat * ops.jz.mat) -
                             i_unit * ops.jy.mat).cwiseAbs().maxCoeff());
  }
  return worst;
}

double check_rotation_unitarity() {
  AngleSampler sampler(11);
  double worst = 0.0;
  for (int tj = 1; tj <= 6; ++tj) {
    const Spin spin(tj);
    for (int rep = 0; rep < 4; ++rep) {
      const SpinOperator r = rotation_matrix(spin, sampler.uniform(0, 2 * pi),
                                             sampler.uniform(0, pi), sampler.uniform(0, 2 * pi));
      worst = std::max(worst, (r.mat * r.mat.adjoint() -
                               ComplexMatrix::Identity(spin.dimension(), spin.dimension()))
                                  .cwiseAbs()
                                  .maxCoeff());
    }
  }
  return worst;
}

double check_gh_moments() {
  const quad::Rule1D rule = quad::gauss_hermite_rule(10);
  double worst = 0.0;
  double moment = std::sqrt(pi);  // integral of z^0 e^{-z^2}
  for (int k = 0; k <= 9; ++k) {
    if (k > 0) moment *= (2.0 * k - 1.0) / 2.0;  // z^{2k}: (2k-1)!!/2^k sqrt(pi)
    double sum = 0.0;
    for (int i = 0; i < rule.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], 2 * k);
    worst = std::max(worst, std::abs(sum - moment) / moment);
  }
  return worst;
}

double check_weight_sums() {
  double worst = 0.0;
  for (const int n : {1, 2, 5, 20, 64}) {
    const quad::Rule1D rule = quad::gauss_hermite_rule(n);
    worst = std::max(worst, std::abs(rule.weights.sum() - std::sqrt(pi)));
  }
  return worst;
}

double check_normalization(bool quick) {
  double worst = 0.0;
  const int tj_max = quick ? 2 : 6;
  for (int tj = 1; tj <= tj_max; ++tj) {
    const Spin spin(tj);
    const quad::QuadratureGrid grid = quad::grid_for_spin(spin);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const DensityMatrix rho = random_density(spin, seed);
      for (const double theta : {0.0, 1.7, 4.4})
        worst = std::max(worst, hrep::normalization_defect(rho, theta, grid));
    }
  }
  return worst;
}

double check_completeness(bool quick) {
  double worst = 0.0;
  const int tj_max = quick ? 2 : 6;
  for (int tj = 0; tj <= tj_max; ++tj) {
    const Spin spin(tj);
    const quad::QuadratureGrid grid = quad::grid_for_spin(spin);
    for (const double theta : {0.0, 2.9})
      worst = std::max(worst, hrep::completeness_defect(spin, theta, grid));
  }
  return worst;
}

double check_nonnegativity(bool quick) {
  double most_negative = 0.0;
  const int tj_max = quick ? 2 : 4;
  for (int tj = 1; tj <= tj_max; ++tj) {
    const Spin spin(tj);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const DensityMatrix rho = random_density(spin, seed);
      for (int ix = -6; ix <= 6; ++ix)
        for (int iy = -6; iy <= 6; ++iy)
          for (int it = 0; it < 8; ++it) {
            const double w = hrep::h_distribution(
                rho, HPoint(ix * 0.5, iy * 0.5, it * pi / 4.0));
            most_negative = std::min(most_negative, w);
          }
    }
  }
  return -most_negative;
}

double check_h_round_trip(bool quick) {
  double worst = 0.0;
  const int tj_max = quick ? 2 : 6;
  const int seeds = quick ? 2 : 5;
  for (int tj = 1; tj <= tj_max; ++tj) {
    const Spin spin(tj);
    const quad::QuadratureGrid grid = quad::grid_for_spin(spin);
    for (std::uint64_t seed = 1; seed <= static_cast<std::uint64_t>(seeds); ++seed) {
      const DensityMatrix rho = random_density(spin, seed);
      const DensityMatrix back = hrep::reconstruct_density(
          spin, [&rho](const HPoint& p) { return hrep::h_distribution(rho, p); }, grid);
      worst = std::max(worst, (back.entries() - rho.entries()).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double check_duality(bool quick) {
  double worst = 0.0;
  const int tj_max = quick ? 2 : 6;
  for (int tj = 1; tj <= tj_max; ++tj) {
    const Spin spin(tj);
    const quad::QuadratureGrid grid = quad::grid_for_spin(spin);
    std::mt19937_64 rng(100 + tj);
    for (int rep = 0; rep < (quick ? 2 : 3); ++rep) {
      const DensityMatrix rho = random_density(spin, rng());
      // random Hermitian observable
      ComplexMatrix g(spin.dimension(), spin.dimension());
      AngleSampler sampler(rng());
      for (int r = 0; r < spin.dimension(); ++r)
        for (int c = 0; c < spin.dimension(); ++c)
          g(r, c) = Complex(sampler.uniform(-1, 1), sampler.uniform(-1, 1));
      const SpinOperator a(spin, 0.5 * (g + g.adjoint()).eval());
      const double via_symbols = hrep::expectation(a, rho, grid);
      const double via_trace = (rho.entries() * a.mat).trace().real();
      worst = std::max(worst, std::abs(via_symbols - via_trace));
    }
  }
  return worst;
}

double check_pure_mixed() {
  AngleSampler sampler(42);
  double worst = 0.0;
  for (int tj = 1; tj <= 4; ++tj) {
    const Spin spin(tj);
    ComplexVector amp(spin.dimension());
    for (int i = 0; i < spin.dimension(); ++i)
      amp[i] = Complex(sampler.uniform(-1, 1), sampler.uniform(-1, 1));
    amp /= amp.norm();
    const SpinState psi = SpinState::normalized(spin, amp);
    const DensityMatrix rho = density_from_pure(psi);
    for (int rep = 0; rep < 20; ++rep) {
      const HPoint p = sampler.point();
      worst = std::max(worst, std::abs(hrep::h_distribution_pure(psi, p) -
                                       hrep::h_distribution(rho, p)));
    }
  }
  return worst;
}

double check_theta_covariance() {
  AngleSampler sampler(7);
  double worst = 0.0;
  for (int tj = 1; tj <= 3; ++tj) {
    const Spin spin(tj);
    const DensityMatrix rho = random_density(spin, 5);
    for (int rep = 0; rep < 10; ++rep) {
      const HPoint p = sampler.point();
      const double delta = sampler.uniform(0, 2 * pi);
      // e^{-i delta Jz} rho e^{+i delta Jz}
      ComplexVector phases(spin.dimension());
      for (int i = 0; i < spin.dimension(); ++i)
        phases[i] = std::polar(1.0, -spin.m_at(i).value() * delta);
      const ComplexMatrix rotated =
          phases.asDiagonal() * rho.entries() * phases.conjugate().asDiagonal();
      const double lhs = hrep::h_distribution(rho, HPoint(p.x, p.y, p.theta + delta));
      const double rhs =
          hrep::h_distribution(validate_density(spin, rotated), p);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

double check_tomo_resolution() {
  AngleSampler sampler(13);
  double worst = 0.0;
  for (int tj = 1; tj <= 4; ++tj) {
    const Spin spin(tj);
    const DensityMatrix rho = random_density(spin, 3);
    for (int rep = 0; rep < 10; ++rep) {
      const double alpha = sampler.uniform(0, 2 * pi);
      const double beta = sampler.uniform(0, pi);
      double sum = 0.0;
      for (int im = 0; im < spin.dimension(); ++im)
        sum += tomo::tomogram_value(rho, TomogramPoint(spin.m_at(im), alpha, beta));
      worst = std::max(worst, std::abs(sum - 1.0));
    }
  }
  return worst;
}

double check_tomo_closed_forms() {
  AngleSampler sampler(17);
  const Spin half(1);
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const double alpha = sampler.uniform(0, 2 * pi);
    const double beta = sampler.uniform(0, pi);
    for (const int tm : {1, -1}) {
      const double m = 0.5 * tm;
      const TomogramPoint point(HalfInteger::from_twice(tm), alpha, beta);
      ComplexMatrix axis(2, 2);
      axis << Complex(std::cos(beta), 0), -std::polar(std::sin(beta), alpha),
          -std::polar(std::sin(beta), -alpha), Complex(-std::cos(beta), 0);
      const ComplexMatrix u_closed = 0.5 * ComplexMatrix::Identity(2, 2) + m * axis;
      const ComplexMatrix d_closed = 0.5 * ComplexMatrix::Identity(2, 2) + 3.0 * m * axis;
      worst = std::max(worst,
                       (tomo::tomo_dequantizer(half, point).mat - u_closed).cwiseAbs().maxCoeff());
      worst = std::max(
          worst, (tomo::tomo_quantizer_analytic(half, point).mat - d_closed).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double check_tomo_round_trip(bool quick) {
  double worst = 0.0;
  const int tj_max = quick ? 2 : 4;
  for (int tj = 1; tj <= tj_max; ++tj) {
    const Spin spin(tj);
    const tomo::AngleGrid grid = tomo::angle_grid_for_spin(spin);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const DensityMatrix rho = random_density(spin, seed);
      const DensityMatrix back = tomo::reconstruct_from_tomogram(tomo::sample_tomogram(rho, grid));
      worst = std::max(worst, (back.entries() - rho.entries()).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double check_kernel_closed_forms() {
  AngleSampler sampler(19);
  const Spin half(1);
  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const HPoint hp = sampler.point();
    const double alpha = sampler.uniform(0, 2 * pi);
    const double beta = sampler.uniform(0, pi);
    for (const int tm : {1, -1}) {
      const HalfInteger m = HalfInteger::from_twice(tm);
      const TomogramPoint tp(m, alpha, beta);
      const Complex k_th = kernels::scheme_kernel(tomo::tomo_dequantizer(half, tp),
                                                  hrep::h_quantizer(half, hp));
      const Complex k_ht = kernels::scheme_kernel(hrep::h_dequantizer(half, hp),
                                                  tomo::tomo_quantizer_analytic(half, tp));
      worst = std::max(worst, std::abs(k_th - Complex(kernels::k_th_closed(
                                                  m, alpha, beta, hp.x, hp.y, hp.theta))));
      worst = std::max(worst, std::abs(k_ht - Complex(kernels::k_ht_closed(
                                                  hp.x, hp.y, hp.theta, m, alpha, beta))));
    }
  }
  return worst;
}

double check_two_path(bool quick) {
  const Spin half(1);
  const quad::QuadratureGrid grid = quad::grid_for_spin(half);
  const tomo::AngleGrid angles = tomo::angle_grid_for_spin(half);
  AngleSampler sampler(23);
  double worst = 0.0;
  const int states = quick ? 3 : 8;
  for (std::uint64_t seed = 1; seed <= static_cast<std::uint64_t>(states); ++seed) {
    const DensityMatrix rho = random_density(half, seed);
    const auto w_h = [&rho](const HPoint& p) { return hrep::h_distribution(rho, p); };
    const tomo::TomogramSamples samples = tomo::sample_tomogram(rho, angles);
    for (int rep = 0; rep < 5; ++rep) {
      const TomogramPoint tp(HalfInteger::from_twice(rep % 2 == 0 ? 1 : -1),
                             sampler.uniform(0, 2 * pi), sampler.uniform(0, pi));
      worst = std::max(worst, std::abs(kernels::tomogram_from_hdist(w_h, grid, tp) -
                                       tomo::tomogram_value(rho, tp)));
      const HPoint hp = sampler.point();
      worst = std::max(worst, std::abs(kernels::hdist_from_tomogram(samples, hp) -
                                       hrep::h_distribution(rho, hp)));
    }
  }
  return worst;
}

double check_larmor_means() {
  const dynamics::LarmorParams params{1.0, {}};
  const quad::QuadratureGrid grid = quad::grid_for_spin(Spin(1));
  double worst = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double t = 2.0 * pi * i / 20.0;
    const dynamics::SpinMeans means = dynamics::spin_means_t(params, t, grid);
    worst = std::max(worst, std::abs(means.sx));
    worst = std::max(worst, std::abs(means.sy + 0.5 * std::sin(t)));
    worst = std::max(worst, std::abs(means.sz - 0.5 * std::cos(t)));
  }
  return worst;
}

double check_larmor_distribution() {
  const dynamics::LarmorParams params{1.3, {}};
  AngleSampler sampler(29);
  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const double t = sampler.uniform(0, 10);
    const HPoint p = sampler.point();
    const double closed = dynamics::h_distribution_t(params, t, p);
    const double traced = hrep::h_distribution(dynamics::rho_t(params, t), p);
    worst = std::max(worst, std::abs(closed - traced));
    const DensityMatrix rho = dynamics::rho_t(params, t);
    const double purity = (rho.entries() * rho.entries()).trace().real();
    worst = std::max(worst, std::abs(purity - 1.0));
  }
  return worst;
}

}  // namespace

std::vector<CheckResult> run(bool quick, double quantizer_fault_scale) {
  const double previous_scale = hrep::testhook::quantizer_fault_scale();
  hrep::testhook::set_quantizer_fault_scale(quantizer_fault_scale);

  struct Item {
    const char* name;
    double tolerance;
    std::function<double()> defect;
  };
  const std::vector<Item> items = {
      {"specfun hermite-orthogonality", 1e-9, [] { return check_hermite_orthogonality(); }},
      {"specfun busbridge-identity", 1e-9, [] { return check_busbridge(); }},
      {"specfun d-unitarity", 1e-10, [] { return check_d_unitarity(); }},
      {"specfun cg-unitarity", 1e-10, [] { return check_cg_unitarity(); }},
      {"spincore commutators", 1e-12, [] { return check_commutators(); }},
      {"spincore rotation-unitarity", 1e-12, [] { return check_rotation_unitarity(); }},
      {"quad gh-moments", 1e-11, [] { return check_gh_moments(); }},
      {"quad weight-sum", 1e-12, [] { return check_weight_sums(); }},
      {"hrep normalization", 1e-11, [quick] { return check_normalization(quick); }},
      {"hrep completeness", 1e-10, [quick] { return check_completeness(quick); }},
      {"hrep nonnegativity", 1e-12, [quick] { return check_nonnegativity(quick); }},
      {"hrep round-trip", 1e-9, [quick] { return check_h_round_trip(quick); }},
      {"hrep duality", 1e-10, [quick] { return check_duality(quick); }},
      {"hrep pure-mixed-consistency", 1e-13, [] { return check_pure_mixed(); }},
      {"hrep theta-covariance", 1e-12, [] { return check_theta_covariance(); }},
      {"tomo projector-resolution", 1e-12, [] { return check_tomo_resolution(); }},
      {"tomo closed-forms", 1e-12, [] { return check_tomo_closed_forms(); }},
      {"tomo round-trip", 1e-9, [quick] { return check_tomo_round_trip(quick); }},
      {"xkernel closed-vs-generic", 1e-12, [] { return check_kernel_closed_forms(); }},
      {"xkernel two-path", 1e-10, [quick] { return check_two_path(quick); }},
      {"dynamics larmor-means", 1e-10, [] { return check_larmor_means(); }},
      {"dynamics larmor-distribution", 1e-13, [] { return check_larmor_distribution(); }},
  };

  std::vector<CheckResult> results;
  results.reserve(items.size());
  for (const Item& item : items) {
    CheckResult r;
    r.name = item.name;
    r.tolerance = item.tolerance;
    try {
      r.defect = item.defect();
      r.pass = r.defect <= item.tolerance;
    } catch (const std::exception&) {
      r.defect = std::numeric_limits<double>::infinity();
      r.pass = false;
    }
    results.push_back(std::move(r));
  }

  hrep::testhook::set_quantizer_fault_scale(previous_scale);
  return results;
}

}  // namespace hspin::selftest
