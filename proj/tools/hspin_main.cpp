// Command-line front end for the spin-state H-representation library:
// self-tests, round-trip checks, distribution sampling, tomograms,
// kernel transforms between the two representations, and the Larmor demo.
//
// Exit codes: 0 success, 2 usage error, 3 data validation error,
// 4 numerical-consistency failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hspin/dynamics.hpp"
#include "hspin/hrep.hpp"
#include "hspin/io.hpp"
#include "hspin/kernels.hpp"
#include "hspin/quadrature.hpp"
#include "hspin/selftest.hpp"
#include "hspin/spin.hpp"
#include "hspin/tomo.hpp"

namespace {

using namespace hspin;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

struct GridOverride {
  int n_xy = 0;     // 0 = default for the spin
  int n_theta = 0;
};

// Resolves overrides against the minimal exact sizes; prints an explanation
// and returns false when an override is too small.
bool resolve_grid(Spin spin, const GridOverride& ov, quad::QuadratureGrid& out) {
  const quad::QuadratureGrid defaults = quad::grid_for_spin(spin);
  const int minimal = quad::minimal_axis_nodes(spin);
  const int n_xy = ov.n_xy > 0 ? ov.n_xy : defaults.n_xy();
  const int n_theta = ov.n_theta > 0 ? ov.n_theta : defaults.n_theta();
  if (n_xy < minimal || n_theta < minimal) {
    std::cerr << "grid override (n_xy=" << n_xy << ", n_theta=" << n_theta
              << ") is below the minimal exact size " << minimal << " for twice_j = "
              << spin.twice_j() << "; integrals would no longer be exact\n";
    return false;
  }
  out = quad::make_grid(n_xy, n_theta);
  return true;
}

bool resolve_angle_grid(Spin spin, int n_alpha, int n_beta, tomo::AngleGrid& out) {
  const tomo::AngleGrid defaults = tomo::angle_grid_for_spin(spin);
  const int na = n_alpha > 0 ? n_alpha : defaults.n_alpha();
  const int nb = n_beta > 0 ? n_beta : defaults.n_beta();
  if (na < tomo::minimal_alpha_nodes(spin) || nb < tomo::minimal_beta_nodes(spin)) {
    std::cerr << "angle grid override (n_alpha=" << na << ", n_beta=" << nb
              << ") is below the minimal exact sizes (" << tomo::minimal_alpha_nodes(spin) << ", "
              << tomo::minimal_beta_nodes(spin) << ") for twice_j = " << spin.twice_j() << "\n";
    return false;
  }
  out = tomo::make_angle_grid(na, nb);
  return true;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io::schema_error("cannot open output file: " + path);
  return out;
}

int cmd_selftest(bool quick, double fault_scale) {
  const std::vector<selftest::CheckResult> results = selftest::run(quick, fault_scale);
  std::vector<std::string> failures;
  std::printf("%-34s %12s %10s  %s\n", "check", "defect", "tolerance", "status");
  for (const auto& r : results) {
    std::printf("%-34s %12.3e %10.0e  %s\n", r.name.c_str(), r.defect, r.tolerance,
                r.pass ? "PASS" : "FAIL");
    if (!r.pass) failures.push_back(r.name);
  }
  if (failures.empty()) {
    std::printf("all %zu checks passed\n", results.size());
    return kExitOk;
  }
  std::printf("%zu check(s) failed:", failures.size());
  for (const auto& name : failures) std::printf(" [%s]", name.c_str());
  std::printf("\n");
  return kExitNumerical;
}

int cmd_roundtrip(int twice_j, std::uint64_t seed, const GridOverride& ov,
                  const std::string& out_path) {
  const Spin spin(twice_j);
  quad::QuadratureGrid grid;
  if (!resolve_grid(spin, ov, grid)) return kExitUsage;
  const DensityMatrix rho = random_density(spin, seed);
  const DensityMatrix back = hrep::reconstruct_density(
      spin, [&rho](const hrep::HPoint& p) { return hrep::h_distribution(rho, p); }, grid);
  const double max_error = (back.entries() - rho.entries()).cwiseAbs().maxCoeff();
  const double tolerance = twice_j >= 6 ? 1e-9 : 1e-10;
  const bool pass = max_error < tolerance;

  std::string report = "{\n  \"twice_j\": " + std::to_string(twice_j) +
                       ",\n  \"seed\": " + std::to_string(seed) +
                       ",\n  \"n_xy\": " + std::to_string(grid.n_xy()) +
                       ",\n  \"n_theta\": " + std::to_string(grid.n_theta()) +
                       ",\n  \"max_error\": " + io::format_double(max_error) +
                       ",\n  \"tolerance\": " + io::format_double(tolerance) +
                       ",\n  \"pass\": " + (pass ? "true" : "false") + "\n}\n";
  if (out_path.empty()) {
    std::cout << report;
  } else {
    open_output(out_path) << report;
  }
  if (!pass) {
    std::cerr << "round-trip error " << max_error << " exceeds tolerance " << tolerance << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

// Negative distribution values in [-1e-9, 0) are quadrature roundoff and
// pass through; anything below that indicates corrupted data.
void warn_if_negative(std::span<const double> values, const char* context) {
  double most_negative = 0.0;
  for (const double v : values) most_negative = std::min(most_negative, v);
  if (most_negative < -1e-9)
    std::cerr << "data-integrity warning: " << context << " holds a distribution value "
              << most_negative << " below -1e-9\n";
}

int cmd_hdist(const std::string& state_path, const std::string& out_path, const GridOverride& ov) {
  const DensityMatrix rho = io::read_density_json_file(state_path);
  quad::QuadratureGrid grid;
  if (!resolve_grid(rho.spin(), ov, grid)) return kExitUsage;
  const std::vector<double> values = hrep::sample_distribution(rho, grid);
  warn_if_negative(values, "sampled distribution");
  std::vector<hrep::HDistributionSample> samples;
  samples.reserve(values.size());
  std::size_t k = 0;
  for (int it = 0; it < grid.n_theta(); ++it)
    for (int ix = 0; ix < grid.n_xy(); ++ix)
      for (int iy = 0; iy < grid.n_xy(); ++iy, ++k)
        samples.push_back(hrep::HDistributionSample{
            hrep::HPoint(grid.xy.nodes[ix], grid.xy.nodes[iy], grid.theta_nodes[it]), values[k]});
  auto out = open_output(out_path);
  io::write_hdist_csv(out, samples);
  return kExitOk;
}

int cmd_tomogram(const std::string& state_path, const std::string& out_path, int n_alpha,
                 int n_beta) {
  const DensityMatrix rho = io::read_density_json_file(state_path);
  tomo::AngleGrid grid;
  if (!resolve_angle_grid(rho.spin(), n_alpha, n_beta, grid)) return kExitUsage;
  const tomo::TomogramSamples samples = tomo::sample_tomogram(rho, grid);
  const std::vector<io::TomogramRow> rows = io::tomogram_rows(samples);
  auto out = open_output(out_path);
  io::write_tomogram_csv(out, rows);
  return kExitOk;
}

// Rebuilds the canonical sampling grid behind an hdist CSV and checks the
// rows really lie on it (canonical order, nodes within 1e-9).
quad::QuadratureGrid hdist_grid_from_samples(const std::vector<hrep::HDistributionSample>& samples,
                                             std::vector<double>& w) {
  if (samples.empty()) throw io::schema_error("H-distribution CSV holds no samples");
  std::size_t n_xy = 0;
  {
    const double theta0 = samples[0].point.theta;
    const double x0 = samples[0].point.x;
    std::size_t same_x = 0;
    for (const auto& s : samples) {
      if (s.point.theta != theta0) break;
      if (s.point.x == x0) ++same_x;
    }
    n_xy = same_x;
  }
  if (n_xy == 0 || samples.size() % (n_xy * n_xy) != 0)
    throw io::schema_error("H-distribution CSV does not form a full quadrature grid");
  const std::size_t n_theta = samples.size() / (n_xy * n_xy);
  const quad::QuadratureGrid grid =
      quad::make_grid(static_cast<int>(n_xy), static_cast<int>(n_theta));
  std::size_t k = 0;
  w.resize(samples.size());
  for (int it = 0; it < grid.n_theta(); ++it)
    for (int ix = 0; ix < grid.n_xy(); ++ix)
      for (int iy = 0; iy < grid.n_xy(); ++iy, ++k) {
        const hrep::HDistributionSample& s = samples[k];
        if (std::abs(s.point.x - grid.xy.nodes[ix]) > 1e-9 ||
            std::abs(s.point.y - grid.xy.nodes[iy]) > 1e-9 ||
            std::abs(s.point.theta - grid.theta_nodes[it]) > 1e-9)
          throw io::schema_error("H-distribution CSV row " + std::to_string(k + 2) +
                                 " does not match the canonical quadrature grid");
        w[k] = s.value;
      }
  return grid;
}

tomo::TomogramSamples tomogram_from_rows(const std::vector<io::TomogramRow>& rows) {
  if (rows.empty()) throw io::schema_error("tomogram CSV holds no samples");
  // m runs fastest and descends from +j; its block length gives the dimension.
  std::size_t dim = 0;
  for (const auto& r : rows) {
    if (dim > 0 && r.twice_m == rows[0].twice_m) break;
    ++dim;
  }
  if (dim == 0 || rows.size() % dim != 0)
    throw io::schema_error("tomogram CSV does not cover every projection m");
  const Spin spin(static_cast<int>(dim) - 1);
  std::size_t n_beta = 0;
  {
    const double alpha0 = rows[0].alpha;
    for (std::size_t i = 0; i < rows.size(); i += dim) {
      if (rows[i].alpha != alpha0) break;
      ++n_beta;
    }
  }
  const std::size_t angle_count = rows.size() / dim;
  if (n_beta == 0 || angle_count % n_beta != 0)
    throw io::schema_error("tomogram CSV does not form a full angle grid");
  const std::size_t n_alpha = angle_count / n_beta;
  tomo::TomogramSamples samples{
      spin, tomo::make_angle_grid(static_cast<int>(n_alpha), static_cast<int>(n_beta)),
      Eigen::MatrixXd(static_cast<int>(angle_count), spin.dimension())};
  std::size_t k = 0;
  for (std::size_t ia = 0; ia < n_alpha; ++ia)
    for (std::size_t ib = 0; ib < n_beta; ++ib)
      for (int im = 0; im < spin.dimension(); ++im, ++k) {
        const io::TomogramRow& r = rows[k];
        if (r.twice_m != spin.m_at(im).twice() ||
            std::abs(r.alpha - samples.grid.alpha_nodes[static_cast<int>(ia)]) > 1e-9 ||
            std::abs(r.beta - samples.grid.beta_nodes[static_cast<int>(ib)]) > 1e-9)
          throw io::schema_error("tomogram CSV row " + std::to_string(k + 2) +
                                 " does not match the canonical angle grid");
        samples.values(static_cast<int>(ia * n_beta + ib), im) = r.w;
      }
  return samples;
}

int cmd_kernel(const std::string& direction, const std::string& in_path,
               const std::string& out_path, const GridOverride& ov, int n_alpha, int n_beta) {
  const Spin half(1);
  if (direction == "th") {
    std::ifstream in(in_path);
    if (!in) throw io::schema_error("cannot open input file: " + in_path);
    std::vector<double> w;
    const std::vector<hrep::HDistributionSample> samples = io::read_hdist_csv(in);
    const quad::QuadratureGrid grid = hdist_grid_from_samples(samples, w);
    warn_if_negative(w, "input CSV");
    if (grid.n_xy() < quad::minimal_axis_nodes(half) ||
        grid.n_theta() < quad::minimal_axis_nodes(half))
      throw io::schema_error("input grid is below the spin-1/2 exact minimum");
    tomo::AngleGrid angles;
    if (!resolve_angle_grid(half, n_alpha, n_beta, angles)) return kExitUsage;
    std::vector<io::TomogramRow> rows;
    for (int ia = 0; ia < angles.n_alpha(); ++ia)
      for (int ib = 0; ib < angles.n_beta(); ++ib)
        for (int im = 0; im < half.dimension(); ++im) {
          const tomo::TomogramPoint tp(half.m_at(im), angles.alpha_nodes[ia],
                                       angles.beta_nodes[ib]);
          rows.push_back(io::TomogramRow{half.m_at(im).twice(), tp.alpha, tp.beta,
                                         kernels::tomogram_from_hdist(w, grid, tp)});
        }
    auto out = open_output(out_path);
    io::write_tomogram_csv(out, rows);
    return kExitOk;
  }
  if (direction == "ht") {
    std::ifstream in(in_path);
    if (!in) throw io::schema_error("cannot open input file: " + in_path);
    const tomo::TomogramSamples samples = tomogram_from_rows(io::read_tomogram_csv(in));
    if (samples.spin != half)
      throw io::schema_error("kernel transform is spin-1/2 only; input has twice_j = " +
                             std::to_string(samples.spin.twice_j()));
    if (samples.grid.n_alpha() < tomo::minimal_alpha_nodes(half) ||
        samples.grid.n_beta() < tomo::minimal_beta_nodes(half))
      throw io::schema_error("input angle grid is below the spin-1/2 exact minimum");
    quad::QuadratureGrid grid;
    if (!resolve_grid(half, ov, grid)) return kExitUsage;
    std::vector<hrep::HDistributionSample> out_samples;
    for (int it = 0; it < grid.n_theta(); ++it)
      for (int ix = 0; ix < grid.n_xy(); ++ix)
        for (int iy = 0; iy < grid.n_xy(); ++iy) {
          const hrep::HPoint p(grid.xy.nodes[ix], grid.xy.nodes[iy], grid.theta_nodes[it]);
          out_samples.push_back(
              hrep::HDistributionSample{p, kernels::hdist_from_tomogram(samples, p)});
        }
    auto out = open_output(out_path);
    io::write_hdist_csv(out, out_samples);
    return kExitOk;
  }
  std::cerr << "kernel direction must be 'th' or 'ht', got '" << direction << "'\n";
  return kExitUsage;
}

int cmd_larmor(double omega, double t_max, int steps, const std::string& out_path,
               const std::string& frames_path, const GridOverride& ov) {
  const Spin half(1);
  quad::QuadratureGrid grid;
  if (!resolve_grid(half, ov, grid)) return kExitUsage;
  dynamics::LarmorParams params{omega, {}};
  for (int i = 0; i <= steps; ++i) params.times.push_back(t_max * i / steps);

  std::vector<dynamics::SpinMeans> means;
  means.reserve(params.times.size());
  for (const double t : params.times) means.push_back(dynamics::spin_means_t(params, t, grid));
  auto out = open_output(out_path);
  io::write_means_csv(out, params.times, means);

  if (!frames_path.empty()) {
    std::vector<std::vector<double>> frames;
    frames.reserve(params.times.size());
    for (const double t : params.times)
      frames.push_back(hrep::sample_distribution(dynamics::rho_t(params, t), grid));
    auto frames_out = open_output(frames_path);
    io::write_frames_csv(frames_out, params.times, grid, frames);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin-state H-representation toolkit: distributions, tomograms, kernels"};
  app.require_subcommand(1);

  // selftest
  auto* selftest_cmd = app.add_subcommand("selftest", "run the cross-module invariant suite");
  bool quick = false;
  selftest_cmd->add_flag("--quick", quick, "run a reduced suite (a few seconds)");
  double fault_scale = 1.0;
  selftest_cmd->add_option("--inject-quantizer-fault", fault_scale)->group("");

  // roundtrip
  auto* roundtrip_cmd =
      app.add_subcommand("roundtrip", "map a random density matrix to w and back, report the error");
  int rt_twice_j = 1;
  std::uint64_t rt_seed = 1;
  GridOverride rt_grid;
  std::string rt_out;
  roundtrip_cmd->add_option("--twice-j", rt_twice_j, "2j of the random state")
      ->check(CLI::NonNegativeNumber);
  roundtrip_cmd->add_option("--seed", rt_seed, "random seed");
  roundtrip_cmd->add_option("--n-xy", rt_grid.n_xy, "Gauss-Hermite nodes per axis (0 = default)");
  roundtrip_cmd->add_option("--n-theta", rt_grid.n_theta, "theta nodes (0 = default)");
  roundtrip_cmd->add_option("--out", rt_out, "write the JSON report here instead of stdout");

  // hdist
  auto* hdist_cmd = app.add_subcommand("hdist", "sample the H-distribution of a state to CSV");
  std::string hd_state, hd_out;
  GridOverride hd_grid;
  hdist_cmd->add_option("--state", hd_state, "density-matrix JSON file")->required();
  hdist_cmd->add_option("--out", hd_out, "output CSV path")->required();
  hdist_cmd->add_option("--n-xy", hd_grid.n_xy, "Gauss-Hermite nodes per axis (0 = default)");
  hdist_cmd->add_option("--n-theta", hd_grid.n_theta, "theta nodes (0 = default)");

  // tomogram
  auto* tomo_cmd = app.add_subcommand("tomogram", "sample the spin tomogram of a state to CSV");
  std::string tm_state, tm_out;
  int tm_alpha = 0, tm_beta = 0;
  tomo_cmd->add_option("--state", tm_state, "density-matrix JSON file")->required();
  tomo_cmd->add_option("--out", tm_out, "output CSV path")->required();
  tomo_cmd->add_option("--n-alpha", tm_alpha, "alpha nodes (0 = default)");
  tomo_cmd->add_option("--n-beta", tm_beta, "beta nodes (0 = default)");

  // kernel
  auto* kernel_cmd =
      app.add_subcommand("kernel", "convert between tomogram and H-distribution (spin 1/2)");
  std::string kn_direction, kn_in, kn_out;
  GridOverride kn_grid;
  int kn_alpha = 0, kn_beta = 0;
  kernel_cmd->add_option("--direction", kn_direction, "'th' (H -> tomogram) or 'ht' (tomogram -> H)")
      ->required();
  kernel_cmd->add_option("--in", kn_in, "input CSV")->required();
  kernel_cmd->add_option("--out", kn_out, "output CSV")->required();
  kernel_cmd->add_option("--n-xy", kn_grid.n_xy, "output H grid nodes per axis (ht direction)");
  kernel_cmd->add_option("--n-theta", kn_grid.n_theta, "output H grid theta nodes (ht direction)");
  kernel_cmd->add_option("--n-alpha", kn_alpha, "output angle grid alpha nodes (th direction)");
  kernel_cmd->add_option("--n-beta", kn_beta, "output angle grid beta nodes (th direction)");

  // larmor
  auto* larmor_cmd =
      app.add_subcommand("larmor", "magnetic-moment rotation demo: spin means over time");
  double lm_omega = 1.0, lm_tmax = 2.0 * std::numbers::pi;
  int lm_steps = 100;
  std::string lm_out, lm_frames;
  GridOverride lm_grid;
  larmor_cmd->add_option("--omega", lm_omega, "precession frequency omega_c")
      ->check(CLI::NonNegativeNumber);
  larmor_cmd->add_option("--tmax", lm_tmax, "final time")->check(CLI::NonNegativeNumber);
  larmor_cmd->add_option("--steps", lm_steps, "number of time steps")->check(CLI::PositiveNumber);
  larmor_cmd->add_option("--out", lm_out, "means CSV path (t,Sx,Sy,Sz)")->required();
  larmor_cmd->add_option("--frames-out", lm_frames, "optional framewise CSV (t,x,y,theta,w)");
  larmor_cmd->add_option("--n-xy", lm_grid.n_xy, "Gauss-Hermite nodes per axis (0 = default)");
  larmor_cmd->add_option("--n-theta", lm_grid.n_theta, "theta nodes (0 = default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (selftest_cmd->parsed()) return cmd_selftest(quick, fault_scale);
    if (roundtrip_cmd->parsed()) return cmd_roundtrip(rt_twice_j, rt_seed, rt_grid, rt_out);
    if (hdist_cmd->parsed()) return cmd_hdist(hd_state, hd_out, hd_grid);
    if (tomo_cmd->parsed()) return cmd_tomogram(tm_state, tm_out, tm_alpha, tm_beta);
    if (kernel_cmd->parsed())
      return cmd_kernel(kn_direction, kn_in, kn_out, kn_grid, kn_alpha, kn_beta);
    if (larmor_cmd->parsed()) return cmd_larmor(lm_omega, lm_tmax, lm_steps, lm_out, lm_frames, lm_grid);
  } catch (const io::schema_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
