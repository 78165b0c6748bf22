#include <gtest/gtest.h>

#include <cmath>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "autores/errors.hpp"
#include "autores/experiments.hpp"
#include "autores/run_io.hpp"

using namespace autores;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("autores_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(RunIo, EmptyTrajectoryIsHeaderOnly) {
  std::ostringstream out;
  write_run(Trajectory{}, out);
  EXPECT_EQ(out.str(), std::string(kRunHeader) + "\n");
}

TEST(RunIo, RoundTripFullPrecision) {
  RunConfig run;
  run.t1 = 105.0;
  run.sample_count = 37;
  const Trajectory tr = simulate(run);
  const std::string path = temp_path("roundtrip.csv");
  emit_run(tr, path, {{"f", "12.1"}});
  const Trajectory back = read_run(path);
  ASSERT_EQ(back.samples.size(), tr.samples.size());
  for (std::size_t i = 0; i < tr.samples.size(); ++i) {
    EXPECT_EQ(back.samples[i].t, tr.samples[i].t);
    EXPECT_EQ(back.samples[i].y, tr.samples[i].y);
  }
  std::remove(path.c_str());
}

TEST(RunIo, ColumnsAndDigits) {
  Trajectory tr;
  tr.samples.push_back({0.1, {3.0, 4.0, 0.0, -2.0}});
  std::ostringstream out;
  write_run(tr, out);
  EXPECT_EQ(out.str(), std::string(kRunHeader) + "\n0.10000000000000001,3,4,0,-2,5,2\n");
}

TEST(RunIo, ReproducibleFiles) {
  RunConfig run;
  run.t1 = 102.0;
  run.sample_count = 11;
  const std::string a = temp_path("rep_a.csv"), b = temp_path("rep_b.csv");
  emit_run(simulate(run), a);
  emit_run(simulate(run), b);
  EXPECT_EQ(slurp(a), slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST(RunIo, ErrorsCarryPath) {
  const std::string bad = "/nonexistent_dir_autores/x.csv";
  try {
    emit_run(Trajectory{}, bad);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_EQ(e.path(), bad);
    EXPECT_NE(std::string(e.what()).find(bad), std::string::npos);
  }
  EXPECT_THROW(read_run(bad), IoError);
  const std::string junk = temp_path("junk.csv");
  std::ofstream(junk) << kRunHeader << "\n1,2,three,4,5,6,7\n";
  EXPECT_THROW(read_run(junk), IoError);
  std::remove(junk.c_str());
}

TEST(RunIo, IniConfig) {
  const std::string path = temp_path("cfg.ini");
  std::ofstream(path) << "[run]\nf = 11.9\nt1 = 250\na0_im = -793.88\n\n[integrator]\nrtol = 1e-8\nmax_step = inf\n\n"
                         "[capture]\nband_lo = 5\n";
  RunConfig cfg;
  CaptureCriteria crit;
  load_run_config(path, cfg, crit);
  EXPECT_EQ(cfg.f, 11.9);
  EXPECT_EQ(cfg.t1, 250.0);
  EXPECT_EQ(cfg.t0, 100.0);
  EXPECT_EQ(cfg.A0, Complex(102.669, -793.88));
  EXPECT_EQ(cfg.integrator.rtol, 1e-8);
  EXPECT_TRUE(std::isinf(cfg.integrator.max_step));
  EXPECT_EQ(crit.band_lo, 5.0);
  EXPECT_EQ(crit.band_hi, 10.0);
  std::ofstream(path) << "[run]\nf = twelve\n";
  EXPECT_THROW(load_run_config(path, cfg, crit), IoError);
  std::remove(path.c_str());
  EXPECT_THROW(load_run_config("/nonexistent_dir_autores/c.ini", cfg, crit), IoError);
}
