#include <benchmark/benchmark.h>

#include "autores/autores.hpp"

using namespace autores;

static void BM_RhsPrimary(benchmark::State& state) {
  Complex A(102.669, -793.388), B(386.825, 101.831);
  double t = 100.0;
  for (auto _ : state) {
    const AmplitudeRates r = rhs_primary(t, A, B, 12.1);
    benchmark::DoNotOptimize(r);
    t += 1e-9;
  }
}
BENCHMARK(BM_RhsPrimary);

static void BM_GrowingSeries(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(growing_series(13.0, SeriesFamily::GrowingPlus, K));
}
BENCHMARK(BM_GrowingSeries)->Arg(1)->Arg(3)->Arg(7);

static void BM_QuadSeries(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(build_series<QuadReal>(13.0, SeriesFamily::GrowingPlus, 3));
}
BENCHMARK(BM_QuadSeries)->Unit(benchmark::kMillisecond);

static void BM_CapturedRun(benchmark::State& state) {
  RunConfig run;
  run.t1 = 100.0 + static_cast<double>(state.range(0));
  for (auto _ : state) {
    const Trajectory tr = simulate(run);
    state.counters["steps"] = static_cast<double>(tr.stats.accepted);
  }
}
BENCHMARK(BM_CapturedRun)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_EllipticOrbit(benchmark::State& state) {
  const EnvelopeInvariants inv = invariants_of({{0.8, 0.3}, {-0.4, 0.5}});
  for (auto _ : state) {
    const EllipticOrbit orbit(inv);
    benchmark::DoNotOptimize(orbit.u(3.7));
  }
}
BENCHMARK(BM_EllipticOrbit);

static void BM_Eigenvalues(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(eigen_report(13.0, SeriesFamily::GrowingMinus, 100.0));
}
BENCHMARK(BM_Eigenvalues);
BENCHMARK_MAIN();
