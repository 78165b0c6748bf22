#include <gtest/gtest.h>

#include <cmath>

#include "autores/asymptotics.hpp"
#include "autores/errors.hpp"
#include "autores/experiments.hpp"

using namespace autores;

namespace {

// |A| = g(t) with a rotating phase; B unused.
Trajectory synthetic(double t0, double t1, double (*amp)(double)) {
  Trajectory tr;
  for (double t : uniform_grid(t0, t1, 401)) {
    const Complex A = std::polar(amp(t), -t * t);
    tr.samples.push_back({t, {A.real(), A.imag(), 0.0, 0.0}});
  }
  return tr;
}

RunConfig short_run(double f, Complex A0, Complex B0) {
  RunConfig r;
  r.f = f;
  r.t0 = 10.0;
  r.t1 = 30.0;
  r.A0 = A0;
  r.B0 = B0;
  r.sample_count = 801;
  return r;
}

}  // namespace

TEST(Classify, LinearGrowthIsCaptured) {
  const auto v = classify_capture(synthetic(100, 300, [](double t) { return 8.0 * t + 3.0; }), 12.1);
  EXPECT_EQ(v.verdict, Verdict::Captured);
  EXPECT_NEAR(v.late_ratio, 8.0, 0.05);
  EXPECT_NEAR(v.window.first, 260.0, 1e-9);
  EXPECT_NEAR(v.growth_exponent, 1.0, 0.01);
}

TEST(Classify, BoundedAmplitudeIsNotCaptured) {
  auto v = classify_capture(synthetic(100, 300, [](double) { return 0.5; }), 11.9);
  EXPECT_EQ(v.verdict, Verdict::NotCaptured);
  EXPECT_LT(v.late_ratio, 1.0);
  // Amplitude of order t0 but not growing: ratio in (1, 6), exponent ~ 0.
  v = classify_capture(synthetic(100, 300, [](double t) { return 800.0 + 20.0 * std::sin(t); }), 11.9);
  EXPECT_EQ(v.verdict, Verdict::NotCaptured);
  EXPECT_LT(std::fabs(v.growth_exponent), 0.2);
}

TEST(Classify, DriftingRatioIsUndetermined) {
  const auto v = classify_capture(synthetic(100, 300, [](double t) { return 8.0 * t * std::pow(t / 260.0, 1.0); }), 1.0);
  EXPECT_EQ(v.verdict, Verdict::Undetermined);
}

TEST(Classify, IncompleteRunIsUndetermined) {
  Trajectory tr = synthetic(100, 300, [](double t) { return t; });
  tr.status = IntegrationStatus::BlowUpDetected;
  const auto v = classify_capture(tr, 1.0);
  EXPECT_EQ(v.verdict, Verdict::Undetermined);
  EXPECT_NE(v.diagnostic.find("blow-up"), std::string::npos);
}

TEST(Classify, ShortSpanRejected) {
  EXPECT_THROW(classify_capture(synthetic(100, 140, [](double) { return 1.0; }), 1.0), std::invalid_argument);
}

TEST(Classify, ZeroSolutionNotCaptured) {
  RunConfig run;
  run.f = 0.0;
  run.A0 = 0.0;
  run.B0 = 0.0;
  const Trajectory tr = simulate(run);
  ASSERT_TRUE(tr.completed());
  EXPECT_EQ(classify_capture(tr, 0.0).verdict, Verdict::NotCaptured);
}

TEST(Scan, NoBracketWithWeakForcing) {
  ScanOptions opt;
  opt.grid_steps = 3;
  EXPECT_THROW(threshold_scan(0.1, 1.0, short_run(0.0, 0.01, 0.01), opt), DomainError);
}

TEST(Scan, DegenerateBracket) {
  EXPECT_THROW(threshold_scan(12.0, 12.0, short_run(0.0, 0.0, 0.0)), std::invalid_argument);
}

TEST(Scan, FindsTransitionIndependentOfThreads) {
  // Start on the f = 20 growing solution; small f drops out of the locked state.
  const auto [A0, B0] = eval_series(growing_series(20.0, SeriesFamily::GrowingPlus, 3), 10.0);
  const RunConfig templ = short_run(0.0, A0, B0);
  ScanOptions one;
  one.grid_steps = 4;
  one.width = 0.2;
  one.threads = 1;
  ScanOptions many = one;
  many.threads = 4;
  const ScanResult a = threshold_scan(2.0, 20.0, templ, one);
  const ScanResult b = threshold_scan(2.0, 20.0, templ, many);
  EXPECT_LT(a.bracket_hi - a.bracket_lo, 0.2 + 1e-12);
  EXPECT_NE(a.below, a.above);
  ASSERT_EQ(a.table.size(), b.table.size());
  for (std::size_t i = 0; i < a.table.size(); ++i) {
    EXPECT_EQ(a.table[i].f, b.table[i].f);
    EXPECT_EQ(a.table[i].verdict, b.table[i].verdict);
    EXPECT_EQ(a.table[i].late_ratio, b.table[i].late_ratio);
  }
  EXPECT_EQ(a.estimate, b.estimate);
}

TEST(Capture, VerdictsStableUnderTolerance) {
  for (Complex A0 : {kRawA100, kLockedA100}) {
    for (double f : {11.9, 12.1}) {
      std::vector<Verdict> seen;
      for (double rtol : {1e-8, 1e-9, 1e-10}) {
        RunConfig run;
        run.f = f;
        run.A0 = A0;
        run.integrator.rtol = rtol;
        seen.push_back(classify_capture(simulate(run), f).verdict);
      }
      EXPECT_EQ(seen[0], seen[1]) << "f=" << f << " A0=" << A0;
      EXPECT_EQ(seen[0], seen[2]) << "f=" << f << " A0=" << A0;
      if (A0 == kLockedA100)
        EXPECT_EQ(seen[0], f < 12.0 ? Verdict::NotCaptured : Verdict::Captured);
    }
  }
}

TEST(Neighborhood, ZeroPerturbationFollowsSeries) {
  const NeighborhoodReport r = neighborhood_run(12.1, 0.0, 0.0);
  ASSERT_TRUE(r.trajectory.completed());
  EXPECT_LT(r.max_comparative, 1e-4);
}

TEST(Neighborhood, PerturbedSolutionStaysClose) {
  const NeighborhoodReport r = neighborhood_run(12.1, 0.1, 0.1);
  ASSERT_TRUE(r.trajectory.completed());
  EXPECT_LT(r.max_comparative, 0.1);
  EXPECT_GT(r.max_comparative, 1e-5);
}

TEST(Neighborhood, BelowThreshold) {
  EXPECT_THROW(neighborhood_run(11.0, 0.1, 0.1), DomainError);
}

TEST(RunConfig, Validation) {
  RunConfig r;
  r.t0 = 0.0;
  EXPECT_THROW(r.validate(), std::invalid_argument);
  r = {};
  r.t1 = r.t0;
  EXPECT_THROW(r.validate(), std::invalid_argument);
}
