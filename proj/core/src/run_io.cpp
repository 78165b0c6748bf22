#include "autores/run_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "autores/errors.hpp"

namespace autores {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_run(const Trajectory& traj, std::ostream& out, const RunMetadata& meta) {
  for (const auto& [k, v] : meta) out << "# " << k << '=' << v << '\n';
  out << kRunHeader << '\n';
  for (const Sample& s : traj.samples) {
    if (s.y.size() != 4) throw std::invalid_argument("run samples must hold four components");
    out << fmt17(s.t);
    for (double v : s.y) out << ',' << fmt17(v);
    out << ',' << fmt17(std::hypot(s.y[0], s.y[1])) << ',' << fmt17(std::hypot(s.y[2], s.y[3]))
        << '\n';
  }
}

void emit_run(const Trajectory& traj, const std::string& path, const RunMetadata& meta) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open for writing");
  write_run(traj, out, meta);
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

Trajectory read_run(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open for reading");
  Trajectory traj;
  std::string line;
  bool header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != kRunHeader) throw IoError(path, "unexpected header '" + line + "'");
      header = true;
      continue;
    }
    std::istringstream row(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(row, cell, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw IoError(path, "bad number on line " + std::to_string(lineno));
      }
    }
    if (values.size() != 7) throw IoError(path, "expected 7 columns on line " + std::to_string(lineno));
    traj.samples.push_back({values[0], {values[1], values[2], values[3], values[4]}});
  }
  if (in.bad()) throw IoError(path, "read failed");
  if (!header) throw IoError(path, "missing header row");
  return traj;
}

void load_run_config(const std::string& path, RunConfig& cfg, CaptureCriteria& criteria) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    throw IoError(path, e.message());
  }
  try {
    // get<T>(key, default) swallows conversion errors, so only read keys that are present
    // strtod rather than ptree's stream conversion so that "inf" is accepted
    auto get = [&](const char* key, double& field) {
      const auto text = tree.get_optional<std::string>(key);
      if (!text) return;
      std::size_t used = 0;
      try {
        field = std::stod(*text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != text->size()) throw IoError(path, std::string("bad number for ") + key);
    };
    auto get_count = [&](const char* key, std::size_t& field) {
      if (tree.get_child_optional(key)) field = tree.get<std::size_t>(key);
    };
    get("run.f", cfg.f);
    get("run.t0", cfg.t0);
    get("run.t1", cfg.t1);
    double are = cfg.A0.real(), aim = cfg.A0.imag(), bre = cfg.B0.real(), bim = cfg.B0.imag();
    get("run.a0_re", are);
    get("run.a0_im", aim);
    get("run.b0_re", bre);
    get("run.b0_im", bim);
    cfg.A0 = {are, aim};
    cfg.B0 = {bre, bim};
    get_count("run.samples", cfg.sample_count);
    get("integrator.rtol", cfg.integrator.rtol);
    get("integrator.atol", cfg.integrator.atol);
    get("integrator.max_step", cfg.integrator.max_step);
    get_count("integrator.max_steps", cfg.integrator.max_steps);
    get("capture.band_lo", criteria.band_lo);
    get("capture.band_hi", criteria.band_hi);
    get("capture.max_drift", criteria.max_drift);
    get("capture.window_fraction", criteria.window_fraction);
    get("capture.not_captured_ratio", criteria.not_captured_ratio);
    get("capture.max_growth_exponent", criteria.max_growth_exponent);
  } catch (const pt::ptree_error& e) {
    throw IoError(path, e.what());
  }
}

}  // namespace autores
