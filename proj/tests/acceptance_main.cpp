// Acceptance suite: runs every end-to-end consistency criterion at its pinned
// tolerance and prints one PASS/FAIL line per criterion. Exit code 0 iff all
// criteria hold.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hspin/dynamics.hpp"
#include "hspin/hrep.hpp"
#include "hspin/kernels.hpp"
#include "hspin/quadrature.hpp"
#include "hspin/specfun.hpp"
#include "hspin/spin.hpp"
#include "hspin/tomo.hpp"
#include "oracles.hpp"

namespace {

using namespace hspin;
using hrep::HPoint;
using tomo::TomogramPoint;

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Uniform {
  explicit Uniform(std::uint64_t seed) : rng(seed) {}
  double operator()(double lo, double hi) {
    return lo + (hi - lo) * ((static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53);
  }
  std::mt19937_64 rng;
};

std::string eng(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

// --- AC-1: H round trip ----------------------------------------------------
Outcome ac1_h_round_trip() {
  const auto start = std::chrono::steady_clock::now();
  double worst_low = 0.0;  // tj < 6, tolerance 1e-10
  double worst_j3 = 0.0;   // tj = 6, tolerance 1e-9
  for (int tj = 1; tj <= 6; ++tj) {
    const Spin spin(tj);
    const quad::QuadratureGrid grid = quad::grid_for_spin(spin);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const DensityMatrix rho = random_density(spin, seed);
      const DensityMatrix back = hrep::reconstruct_density(
          spin, [&rho](const HPoint& p) { return hrep::h_distribution(rho, p); }, grid);
      const double err = (back.entries() - rho.entries()).cwiseAbs().maxCoeff();
      if (tj == 6)
        worst_j3 = std::max(worst_j3, err);
      else
        worst_low = std::max(worst_low, err);
    }
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = worst_low < 1e-10 && worst_j3 < 1e-9 && elapsed < 30.0;
  return {pass, "max error " + eng(worst_low) + " for j<3 (tol 1e-10), " + eng(worst_j3) +
                    " at j=3 (tol 1e-9), elapsed " + eng(elapsed) + " s (limit 30 s)"};
}

// --- AC-2: normalization ----------------------------------------------------
Outcome ac2_normalization() {
  double worst = 0.0;
  for (int tj = 1; tj <= 6; ++tj) {
    const Spin spin(tj);
    const quad::QuadratureGrid grid = quad::grid_for_spin(spin);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const DensityMatrix rho = random_density(spin, seed);
      for (int k = 0; k < 8; ++k)
        worst = std::max(worst, hrep::normalization_defect(rho, k * pi / 4.0, grid));
    }
  }
  return {worst < 1e-11, "max |integral - 1| = " + eng(worst) + " (tol 1e-11)"};
}

// --- AC-3: nonnegativity ----------------------------------------------------
Outcome ac3_nonnegativity() {
  double most_negative = 0.0;
  for (int tj = 1; tj <= 4; ++tj) {
    const Spin spin(tj);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const DensityMatrix rho = random_density(spin, seed);
      for (int ix = 0; ix < 41; ++ix)
        for (int iy = 0; iy < 41; ++iy)
          for (int it = 0; it < 16; ++it) {
            const HPoint p(-6.0 + 12.0 * ix / 40.0, -6.0 + 12.0 * iy / 40.0, 2 * pi * it / 16.0);
            most_negative = std::min(most_negative, hrep::h_distribution(rho, p));
          }
    }
  }
  return {most_negative >= -1e-12,
          "min w over 41x41x16 grids = " + eng(most_negative) + " (tol -1e-12)"};
}

// --- AC-4: completeness ------------------------------------------------------
Outcome ac4_completeness() {
  double worst = 0.0;
  for (int tj = 1; tj <= 6; ++tj) {
    const Spin spin(tj);
    const quad::QuadratureGrid grid = quad::grid_for_spin(spin);
    for (const double theta : {0.0, 1.1, 2.7, 5.2})
      worst = std::max(worst, hrep::completeness_defect(spin, theta, grid));
  }
  return {worst < 1e-10, "max completeness defect = " + eng(worst) + " (tol 1e-10)"};
}

// --- AC-5: Busbridge identity ------------------------------------------------
Outcome ac5_busbridge() {
  const quad::Rule1D rule = quad::gauss_hermite_rule(16);
  double worst_rel = 0.0;
  double worst_mass_rel = 0.0;
  bool zeros_exact = true;
  for (int p = 0; p <= 8; ++p)
    for (int n = 0; n <= 8; ++n)
      for (int k = 0; k <= 8; ++k) {
        const double closed = specfun::triple_hermite_integral(p, n, k);
        double quadrature = 0.0;
        double mass = 0.0;
        for (int i = 0; i < rule.size() / 2; ++i) {
          const int mirror = rule.size() - 1 - i;
          const double left = rule.weights[i] * specfun::hermite(p, rule.nodes[i]) *
                              specfun::hermite(n, rule.nodes[i]) *
                              specfun::hermite(k, rule.nodes[i]);
          const double right = rule.weights[mirror] * specfun::hermite(p, rule.nodes[mirror]) *
                               specfun::hermite(n, rule.nodes[mirror]) *
                               specfun::hermite(k, rule.nodes[mirror]);
          quadrature += left + right;
          mass += std::abs(left) + std::abs(right);
        }
        if (closed != 0.0)
          worst_rel = std::max(worst_rel, std::abs(closed - quadrature) / std::abs(closed));
        else
          worst_mass_rel = std::max(worst_mass_rel, std::abs(quadrature) / std::max(1.0, mass));
        if ((p + n + k) % 2 == 1 && (closed != 0.0 || quadrature != 0.0)) zeros_exact = false;
      }
  const bool pass = worst_rel < 1e-9 && worst_mass_rel < 1e-11 && zeros_exact;
  return {pass, "max relative error " + eng(worst_rel) +
                    " (tol 1e-9); parity zeros exact, cancellation residual " +
                    eng(worst_mass_rel) + " of quadrature mass (tol 1e-11)"};
}

// --- AC-6: spin-1/2 closed forms ----------------------------------------------
Outcome ac6_closed_forms() {
  const Spin half(1);
  Uniform u(606);
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const HPoint p(u(-3, 3), u(-3, 3), u(0, 2 * pi));
    const double env = std::exp(-0.5 * (p.x * p.x + p.y * p.y));

    ComplexVector state(2);
    state << std::polar(std::sqrt(2.0 / pi) * env * p.x, 0.5 * p.theta),
        std::polar(std::sqrt(2.0 / pi) * env * p.y, -0.5 * p.theta);
    worst =
        std::max(worst, (hrep::h_state(half, p).amplitudes() - state).cwiseAbs().maxCoeff());

    ComplexMatrix dequantizer(2, 2);
    const double g = (2.0 / pi) * env * env;
    dequantizer << Complex(g * p.x * p.x, 0), std::polar(g * p.x * p.y, p.theta),
        std::polar(g * p.x * p.y, -p.theta), Complex(g * p.y * p.y, 0);
    worst =
        std::max(worst, (hrep::h_dequantizer(half, p).mat - dequantizer).cwiseAbs().maxCoeff());

    ComplexMatrix quantizer(2, 2);
    quantizer << Complex((2 * p.x * p.x - 1) / (4 * pi), 0), std::polar(p.x * p.y / pi, p.theta),
        std::polar(p.x * p.y / pi, -p.theta), Complex((2 * p.y * p.y - 1) / (4 * pi), 0);
    worst = std::max(worst, (hrep::h_quantizer(half, p).mat - quantizer).cwiseAbs().maxCoeff());
  }
  return {worst < 1e-13,
          "max deviation from the displayed spin-1/2 forms = " + eng(worst) + " (tol 1e-13)"};
}

// --- AC-7: tomogram round trip -------------------------------------------------
Outcome ac7_tomogram() {
  double worst_rt = 0.0;
  for (int tj = 1; tj <= 4; ++tj) {
    const Spin spin(tj);
    const tomo::AngleGrid grid = tomo::angle_grid_for_spin(spin);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const DensityMatrix rho = random_density(spin, seed);
      const DensityMatrix back = tomo::reconstruct_from_tomogram(tomo::sample_tomogram(rho, grid));
      worst_rt = std::max(worst_rt, (back.entries() - rho.entries()).cwiseAbs().maxCoeff());
    }
  }
  double worst_frame = 0.0;
  Uniform u(707);
  for (int tj = 1; tj <= 4; ++tj) {
    const Spin spin(tj);
    const tomo::AngleGrid grid = tomo::angle_grid_for_spin(spin);
    const Eigen::MatrixXd core = oracles::solve_tomo_quantizer_core(spin, grid);
    for (int rep = 0; rep < 25; ++rep) {
      const double alpha = u(0, 2 * pi);
      const double beta = u(0, pi);
      for (int im = 0; im < spin.dimension(); ++im) {
        const ComplexMatrix numeric =
            oracles::tomo_quantizer_from_core(spin, core, im, alpha, beta);
        const ComplexMatrix analytic =
            tomo::tomo_quantizer_analytic(spin, TomogramPoint(spin.m_at(im), alpha, beta)).mat;
        worst_frame = std::max(worst_frame, (numeric - analytic).cwiseAbs().maxCoeff());
      }
    }
  }
  const bool pass = worst_rt < 1e-9 && worst_frame < 1e-8;
  return {pass, "max round-trip error " + eng(worst_rt) +
                    " (tol 1e-9); analytic vs dual-frame quantizer " + eng(worst_frame) +
                    " (tol 1e-8)"};
}

// --- AC-8: kernel consistency ----------------------------------------------------
Outcome ac8_kernels() {
  const Spin half(1);
  Uniform u(808);
  double worst_kernel = 0.0;
  for (int rep = 0; rep < 10000; ++rep) {
    const HPoint hp(u(-3, 3), u(-3, 3), u(0, 2 * pi));
    const TomogramPoint tp(HalfInteger::from_twice(rep % 2 == 0 ? 1 : -1), u(0, 2 * pi),
                           u(0, pi));
    const Complex k_th =
        kernels::scheme_kernel(tomo::tomo_dequantizer(half, tp), hrep::h_quantizer(half, hp));
    const Complex k_ht = kernels::scheme_kernel(hrep::h_dequantizer(half, hp),
                                                tomo::tomo_quantizer_analytic(half, tp));
    worst_kernel =
        std::max(worst_kernel, std::abs(k_th - Complex(kernels::k_th_closed(
                                                   tp.m, tp.alpha, tp.beta, hp.x, hp.y,
                                                   hp.theta))));
    worst_kernel =
        std::max(worst_kernel, std::abs(k_ht - Complex(kernels::k_ht_closed(
                                                   hp.x, hp.y, hp.theta, tp.m, tp.alpha,
                                                   tp.beta))));
  }

  const quad::QuadratureGrid grid = quad::grid_for_spin(half);
  const tomo::AngleGrid angles = tomo::angle_grid_for_spin(half);
  double worst_two_path = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const DensityMatrix rho = random_density(half, seed);
    const tomo::TomogramSamples samples = tomo::sample_tomogram(rho, angles);
    for (int rep = 0; rep < 10; ++rep) {
      const TomogramPoint tp(HalfInteger::from_twice(rep % 2 == 0 ? 1 : -1), u(0, 2 * pi),
                             u(0, pi));
      const double via_kernel = kernels::tomogram_from_hdist(
          [&rho](const HPoint& p) { return hrep::h_distribution(rho, p); }, grid, tp);
      worst_two_path =
          std::max(worst_two_path, std::abs(via_kernel - tomo::tomogram_value(rho, tp)));
      const HPoint hp(u(-3, 3), u(-3, 3), u(0, 2 * pi));
      worst_two_path =
          std::max(worst_two_path, std::abs(kernels::hdist_from_tomogram(samples, hp) -
                                            hrep::h_distribution(rho, hp)));
    }
  }
  const bool pass = worst_kernel < 1e-12 && worst_two_path < 1e-10;
  return {pass, "closed vs generic kernels " + eng(worst_kernel) +
                    " at 1e4 tuples (tol 1e-12); two-path transforms " + eng(worst_two_path) +
                    " (tol 1e-10)"};
}

// --- AC-9: Larmor example ---------------------------------------------------------
Outcome ac9_larmor() {
  const dynamics::LarmorParams params{1.0, {}};
  const quad::QuadratureGrid grid = quad::grid_for_spin(Spin(1));
  double worst_mean = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = 4 * pi * i / 99.0;
    const dynamics::SpinMeans means = dynamics::spin_means_t(params, t, grid);
    worst_mean = std::max(worst_mean, std::abs(means.sx));
    worst_mean = std::max(worst_mean, std::abs(means.sy + 0.5 * std::sin(t)));
    worst_mean = std::max(worst_mean, std::abs(means.sz - 0.5 * std::cos(t)));
  }
  Uniform u(909);
  double worst_w = 0.0;
  for (int rep = 0; rep < 10000; ++rep) {
    const double t = u(0, 12);
    const HPoint p(u(-3, 3), u(-3, 3), u(0, 2 * pi));
    worst_w = std::max(worst_w, std::abs(dynamics::h_distribution_t(params, t, p) -
                                         hrep::h_distribution(dynamics::rho_t(params, t), p)));
  }
  const bool pass = worst_mean < 1e-10 && worst_w < 1e-13;
  return {pass, "means vs (0, -sin(wt)/2, cos(wt)/2) " + eng(worst_mean) +
                    " at 100 times (tol 1e-10); closed vs trace-path w " + eng(worst_w) +
                    " at 1e4 tuples (tol 1e-13)"};
}

// --- AC-10: duality ------------------------------------------------------------------
Outcome ac10_duality() {
  double worst = 0.0;
  for (int tj = 1; tj <= 6; ++tj) {
    const Spin spin(tj);
    const quad::QuadratureGrid grid = quad::grid_for_spin(spin);
    Uniform u(1000 + tj);
    for (int pair = 0; pair < 50; ++pair) {
      const DensityMatrix rho = random_density(spin, u.rng());
      ComplexMatrix g(spin.dimension(), spin.dimension());
      for (int r = 0; r < spin.dimension(); ++r)
        for (int c = 0; c < spin.dimension(); ++c) g(r, c) = Complex(u(-1, 1), u(-1, 1));
      const SpinOperator a(spin, 0.5 * (g + g.adjoint()).eval());
      const double via_symbols = hrep::expectation(a, rho, grid);
      const double via_trace = (rho.entries() * a.mat).trace().real();
      worst = std::max(worst, std::abs(via_symbols - via_trace));
    }
  }
  return {worst < 1e-10, "max |star-product mean - tr(rho A)| = " + eng(worst) + " (tol 1e-10)"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC-1 h-round-trip", ac1_h_round_trip},
      {"AC-2 normalization", ac2_normalization},
      {"AC-3 nonnegativity", ac3_nonnegativity},
      {"AC-4 completeness", ac4_completeness},
      {"AC-5 busbridge-identity", ac5_busbridge},
      {"AC-6 spin-half-closed-forms", ac6_closed_forms},
      {"AC-7 tomogram-round-trip", ac7_tomogram},
      {"AC-8 kernel-consistency", ac8_kernels},
      {"AC-9 larmor-example", ac9_larmor},
      {"AC-10 duality", ac10_duality},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", outcome.pass ? "PASS" : "FAIL", criterion.name,
                outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  if (failures == 0)
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
