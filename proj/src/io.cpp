#include "hspin/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hspin::io {

namespace {

using nlohmann::json;

json parse_json(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw schema_error(std::string("JSON parse error: ") + e.what());
  }
  return j;
}

int require_int(const json& j, const char* field) {
  if (!j.contains(field)) throw schema_error(std::string("missing field \"") + field + "\"");
  if (!j[field].is_number_integer())
    throw schema_error(std::string("field \"") + field + "\" must be an integer");
  return j[field].get<int>();
}

// (2j+1) x (2j+1) real matrix stored as an array of row arrays.
Eigen::MatrixXd require_matrix(const json& j, const char* field, int dim) {
  if (!j.contains(field)) throw schema_error(std::string("missing field \"") + field + "\"");
  const json& rows = j[field];
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
    throw schema_error(std::string("field \"") + field + "\" must be an array of " +
                       std::to_string(dim) + " rows");
  Eigen::MatrixXd out(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw schema_error(std::string("field \"") + field + "\" row " + std::to_string(r) +
                         " must hold " + std::to_string(dim) + " numbers");
    for (int c = 0; c < dim; ++c) {
      if (!row[c].is_number())
        throw schema_error(std::string("field \"") + field + "\" entry (" + std::to_string(r) +
                           ", " + std::to_string(c) + ") is not a number");
      out(r, c) = row[c].get<double>();
    }
  }
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

double parse_field(const std::string& text, int line_no, const char* name) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw schema_error("CSV line " + std::to_string(line_no) + ": field \"" + name +
                       "\" is not a number: '" + text + "'");
  }
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw schema_error("cannot open input file: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw schema_error("cannot open output file: " + path);
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

DensityMatrix read_density_json(std::istream& in) {
  const json j = parse_json(in);
  const int twice_j = require_int(j, "twice_j");
  if (twice_j < 0) throw schema_error("field \"twice_j\" must be >= 0");
  const Spin spin(twice_j);
  const Eigen::MatrixXd re = require_matrix(j, "re", spin.dimension());
  const Eigen::MatrixXd im = require_matrix(j, "im", spin.dimension());
  ComplexMatrix entries(spin.dimension(), spin.dimension());
  entries.real() = re;
  entries.imag() = im;
  return validate_density(spin, entries);
}

DensityMatrix read_density_json_file(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_density_json(in);
}

void write_density_json(std::ostream& out, const DensityMatrix& rho) {
  const int dim = rho.spin().dimension();
  json re = json::array();
  json im = json::array();
  for (int r = 0; r < dim; ++r) {
    json re_row = json::array();
    json im_row = json::array();
    for (int c = 0; c < dim; ++c) {
      re_row.push_back(rho.entries()(r, c).real());
      im_row.push_back(rho.entries()(r, c).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  const json j = {{"twice_j", rho.spin().twice_j()}, {"re", std::move(re)}, {"im", std::move(im)}};
  out << j.dump(2) << "\n";
}

void write_density_json_file(const std::string& path, const DensityMatrix& rho) {
  std::ofstream out = open_output(path);
  write_density_json(out, rho);
}

void write_hdist_csv(std::ostream& out, std::span<const hrep::HDistributionSample> samples) {
  out << "x,y,theta,w\n";
  for (const hrep::HDistributionSample& s : samples)
    out << format_double(s.point.x) << ',' << format_double(s.point.y) << ','
        << format_double(s.point.theta) << ',' << format_double(s.value) << '\n';
}

std::vector<hrep::HDistributionSample> read_hdist_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "x,y,theta,w")
    throw schema_error("H-distribution CSV must start with header \"x,y,theta,w\"");
  std::vector<hrep::HDistributionSample> samples;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 4)
      throw schema_error("CSV line " + std::to_string(line_no) + ": expected 4 fields, got " +
                         std::to_string(fields.size()));
    samples.push_back(
        hrep::HDistributionSample{hrep::HPoint(parse_field(fields[0], line_no, "x"),
                                               parse_field(fields[1], line_no, "y"),
                                               parse_field(fields[2], line_no, "theta")),
                                  parse_field(fields[3], line_no, "w")});
  }
  return samples;
}

void write_tomogram_csv(std::ostream& out, std::span<const TomogramRow> rows) {
  out << "m,alpha,beta,w\n";
  for (const TomogramRow& r : rows)
    out << format_double(0.5 * r.twice_m) << ',' << format_double(r.alpha) << ','
        << format_double(r.beta) << ',' << format_double(r.w) << '\n';
}

std::vector<TomogramRow> read_tomogram_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "m,alpha,beta,w")
    throw schema_error("tomogram CSV must start with header \"m,alpha,beta,w\"");
  std::vector<TomogramRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 4)
      throw schema_error("CSV line " + std::to_string(line_no) + ": expected 4 fields, got " +
                         std::to_string(fields.size()));
    const double m = parse_field(fields[0], line_no, "m");
    const double twice_m = 2.0 * m;
    if (std::abs(twice_m - std::round(twice_m)) > 1e-9)
      throw schema_error("CSV line " + std::to_string(line_no) + ": m = " + fields[0] +
                         " is not a half-integer");
    rows.push_back(TomogramRow{static_cast<int>(std::llround(twice_m)),
                               parse_field(fields[1], line_no, "alpha"),
                               parse_field(fields[2], line_no, "beta"),
                               parse_field(fields[3], line_no, "w")});
  }
  return rows;
}

std::vector<TomogramRow> tomogram_rows(const tomo::TomogramSamples& samples) {
  std::vector<TomogramRow> rows;
  const tomo::AngleGrid& grid = samples.grid;
  rows.reserve(static_cast<std::size_t>(grid.n_alpha()) * grid.n_beta() *
               samples.spin.dimension());
  for (int ia = 0; ia < grid.n_alpha(); ++ia)
    for (int ib = 0; ib < grid.n_beta(); ++ib)
      for (int im = 0; im < samples.spin.dimension(); ++im)
        rows.push_back(TomogramRow{samples.spin.m_at(im).twice(), grid.alpha_nodes[ia],
                                   grid.beta_nodes[ib],
                                   samples.values(ia * grid.n_beta() + ib, im)});
  return rows;
}

tomo::TomogramSamples read_tomogram_json(std::istream& in) {
  const json j = parse_json(in);
  const int twice_j = require_int(j, "twice_j");
  if (twice_j < 0) throw schema_error("field \"twice_j\" must be >= 0");
  const Spin spin(twice_j);
  const int n_alpha = require_int(j, "n_alpha");
  const int n_beta = require_int(j, "n_beta");
  if (n_alpha < 1 || n_beta < 1)
    throw schema_error("fields \"n_alpha\" and \"n_beta\" must be >= 1");
  if (!j.contains("w")) throw schema_error("missing field \"w\"");
  const json& w = j["w"];
  const std::size_t expected =
      static_cast<std::size_t>(n_alpha) * n_beta * spin.dimension();
  if (!w.is_array() || w.size() != expected)
    throw schema_error("field \"w\" must be a flat array of " + std::to_string(expected) +
                       " numbers");
  tomo::TomogramSamples samples{spin, tomo::make_angle_grid(n_alpha, n_beta),
                                Eigen::MatrixXd(n_alpha * n_beta, spin.dimension())};
  std::size_t k = 0;
  for (int ia = 0; ia < n_alpha; ++ia)
    for (int ib = 0; ib < n_beta; ++ib)
      for (int im = 0; im < spin.dimension(); ++im, ++k) {
        if (!w[k].is_number())
          throw schema_error("field \"w\" entry " + std::to_string(k) + " is not a number");
        samples.values(ia * n_beta + ib, im) = w[k].get<double>();
      }
  return samples;
}

void write_tomogram_json(std::ostream& out, const tomo::TomogramSamples& samples) {
  json w = json::array();
  for (int ia = 0; ia < samples.grid.n_alpha(); ++ia)
    for (int ib = 0; ib < samples.grid.n_beta(); ++ib)
      for (int im = 0; im < samples.spin.dimension(); ++im)
        w.push_back(samples.values(ia * samples.grid.n_beta() + ib, im));
  const json j = {{"twice_j", samples.spin.twice_j()},
                  {"n_alpha", samples.grid.n_alpha()},
                  {"n_beta", samples.grid.n_beta()},
                  {"w", std::move(w)}};
  out << j.dump(2) << "\n";
}

void write_means_csv(std::ostream& out, std::span<const double> times,
                     std::span<const dynamics::SpinMeans> means) {
  if (times.size() != means.size())
    throw std::invalid_argument("write_means_csv: times/means size mismatch");
  out << "t,Sx,Sy,Sz\n";
  for (std::size_t i = 0; i < times.size(); ++i)
    out << format_double(times[i]) << ',' << format_double(means[i].sx) << ','
        << format_double(means[i].sy) << ',' << format_double(means[i].sz) << '\n';
}

void write_frames_csv(std::ostream& out, std::span<const double> times,
                      const quad::QuadratureGrid& grid,
                      std::span<const std::vector<double>> frames) {
  if (times.size() != frames.size())
    throw std::invalid_argument("write_frames_csv: times/frames size mismatch");
  out << "t,x,y,theta,w\n";
  for (std::size_t f = 0; f < frames.size(); ++f) {
    const std::string t = format_double(times[f]);
    std::size_t k = 0;
    for (int it = 0; it < grid.n_theta(); ++it)
      for (int ix = 0; ix < grid.n_xy(); ++ix)
        for (int iy = 0; iy < grid.n_xy(); ++iy, ++k)
          out << t << ',' << format_double(grid.xy.nodes[ix]) << ','
              << format_double(grid.xy.nodes[iy]) << ',' << format_double(grid.theta_nodes[it])
              << ',' << format_double(frames[f][k]) << '\n';
  }
}

}  // namespace hspin::io
