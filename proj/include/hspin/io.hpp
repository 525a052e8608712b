#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hspin/dynamics.hpp"
#include "hspin/hrep.hpp"
#include "hspin/spin.hpp"
#include "hspin/tomo.hpp"

namespace hspin::io {

// Raised when an input file does not match its documented schema; the
// message names the offending field or line.
class schema_error : public std::runtime_error {
 public:
  explicit schema_error(const std::string& what) : std::runtime_error(what) {}
};

// Shortest round-trip decimal form of a double (17 significant digits).
std::string format_double(double value);

// Density-matrix JSON schema:
//   { "twice_j": int, "re": [[...]], "im": [[...]] }
// Finite doubles survive a write/read cycle bit-exactly. Reading validates
// the density-matrix invariants.
DensityMatrix read_density_json(std::istream& in);
DensityMatrix read_density_json_file(const std::string& path);
void write_density_json(std::ostream& out, const DensityMatrix& rho);
void write_density_json_file(const std::string& path, const DensityMatrix& rho);

// H-distribution CSV: header "x,y,theta,w", one row per grid point in
// canonical order (theta outer, then x, then y).
void write_hdist_csv(std::ostream& out, std::span<const hrep::HDistributionSample> samples);
std::vector<hrep::HDistributionSample> read_hdist_csv(std::istream& in);

// Tomogram CSV: header "m,alpha,beta,w", rows ordered alpha outer, then
// beta, then m descending from +j.
struct TomogramRow {
  int twice_m = 0;
  double alpha = 0.0, beta = 0.0, w = 0.0;
};
void write_tomogram_csv(std::ostream& out, std::span<const TomogramRow> rows);
std::vector<TomogramRow> read_tomogram_csv(std::istream& in);

std::vector<TomogramRow> tomogram_rows(const tomo::TomogramSamples& samples);

// Tomogram-sample JSON schema for reconstruction input:
//   { "twice_j": int, "n_alpha": int, "n_beta": int, "w": [...] }
// where w is flat in canonical order (alpha outer, beta, then m descending)
// and the angle grid is the canonical rule for (n_alpha, n_beta).
tomo::TomogramSamples read_tomogram_json(std::istream& in);
void write_tomogram_json(std::ostream& out, const tomo::TomogramSamples& samples);

// Larmor time series CSV: header "t,Sx,Sy,Sz".
void write_means_csv(std::ostream& out, std::span<const double> times,
                     std::span<const dynamics::SpinMeans> means);

// Frame-by-frame distribution CSV: header "t,x,y,theta,w", canonical grid
// order within each frame.
void write_frames_csv(std::ostream& out, std::span<const double> times,
                      const quad::QuadratureGrid& grid,
                      std::span<const std::vector<double>> frames);

}  // namespace hspin::io
