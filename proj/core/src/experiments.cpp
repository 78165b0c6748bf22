#include "autores/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include "autores/asymptotics.hpp"
#include "autores/errors.hpp"

namespace autores {

namespace {

// Least-squares slope of y against x.
double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

CaptureVerdict run_probe(double f, const RunConfig& templ, const ScanOptions& opt) {
  RunConfig cfg = templ;
  cfg.f = f;
  CaptureVerdict v;
  for (int attempt = 0; attempt <= opt.max_retries; ++attempt) {
    v = classify_capture(simulate(cfg), f, opt.criteria);
    if (v.verdict != Verdict::Undetermined) return v;
    cfg.t1 = cfg.t0 + 1.5 * (cfg.t1 - cfg.t0);
  }
  throw DomainError("verdict at f = " + std::to_string(f) + " stays undetermined after " +
                    std::to_string(opt.max_retries) + " retries (" + v.diagnostic + ")");
}

}  // namespace

void RunConfig::validate() const {
  if (!std::isfinite(f)) throw std::invalid_argument("f must be finite");
  if (!(t0 > 0.0 && t1 > t0 && std::isfinite(t1)))
    throw std::invalid_argument("run span must satisfy 0 < t0 < t1");
  if (!std::isfinite(std::abs(A0)) || !std::isfinite(std::abs(B0)))
    throw std::invalid_argument("initial data must be finite");
  if (sample_count < 2) throw std::invalid_argument("sample_count must be >= 2");
  integrator.validate();
}

void CaptureCriteria::validate() const {
  if (!(band_lo > 0.0 && band_hi > band_lo)) throw std::invalid_argument("invalid capture band");
  if (!(max_drift > 0.0)) throw std::invalid_argument("max_drift must be positive");
  if (!(window_fraction > 0.0 && window_fraction <= 1.0))
    throw std::invalid_argument("window_fraction must lie in (0, 1]");
  if (!(not_captured_ratio >= 0.0 && not_captured_ratio < band_lo))
    throw std::invalid_argument("not_captured_ratio must lie below the band");
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Captured: return "captured";
    case Verdict::NotCaptured: return "not-captured";
    case Verdict::Undetermined: return "undetermined";
  }
  return "unknown";
}

Trajectory simulate(const RunConfig& cfg) {
  cfg.validate();
  const Complex z0[2] = {cfg.A0, cfg.B0};
  const std::vector<double> grid = uniform_grid(cfg.t0, cfg.t1, cfg.sample_count);
  const double f = cfg.f;
  return integrate_complex(
      [f](double t, std::span<const Complex> z, std::span<Complex> dz) {
        const AmplitudeRates r = rhs_primary(t, z[0], z[1], f);
        dz[0] = r.first;
        dz[1] = r.second;
      },
      cfg.t0, z0, cfg.t1, cfg.integrator, grid);
}

CaptureVerdict classify_capture(const Trajectory& traj, double f,
                                const CaptureCriteria& criteria) {
  criteria.validate();
  CaptureVerdict v;
  v.f = f;
  if (!traj.completed()) {
    v.diagnostic = std::string("integration ended early: ") + to_string(traj.status);
    if (!traj.samples.empty()) v.diagnostic += " at t = " + std::to_string(traj.samples.back().t);
    return v;
  }
  if (traj.samples.size() < 2) throw std::invalid_argument("trajectory has fewer than two samples");
  const double t_lo = traj.samples.front().t;
  const double t_hi = traj.samples.back().t;
  if (!(t_lo > 0.0 && t_hi >= 1.5 * t_lo))
    throw std::invalid_argument("trajectory must span at least a factor 1.5 in t");

  const double w_lo = t_hi - criteria.window_fraction * (t_hi - t_lo);
  v.window = {w_lo, t_hi};
  std::vector<double> ts, ratios, log_t, log_a;
  for (const Sample& s : traj.samples) {
    if (s.t < w_lo) continue;
    const double a = std::hypot(s.y[0], s.y[1]);
    ts.push_back(s.t);
    ratios.push_back(a / s.t);
    log_t.push_back(std::log(s.t));
    log_a.push_back(std::log(std::max(a, 1e-300)));
  }
  if (ts.size() < 3) {
    v.diagnostic = "window holds fewer than three samples";
    return v;
  }
  double mean = 0.0;
  for (double r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  v.late_ratio = mean;
  v.drift = mean > 0.0 ? std::fabs(fitted_slope(ts, ratios) * (t_hi - w_lo)) / mean : 0.0;
  const bool vanished = std::all_of(log_a.begin(), log_a.end(), [](double x) { return x < -690.0; });
  v.growth_exponent = vanished ? 0.0 : fitted_slope(log_t, log_a);

  if (mean >= criteria.band_lo && mean <= criteria.band_hi && v.drift < criteria.max_drift) {
    v.verdict = Verdict::Captured;
  } else if (mean < criteria.not_captured_ratio) {
    v.verdict = Verdict::NotCaptured;
  } else if (mean < criteria.band_lo && v.growth_exponent < criteria.max_growth_exponent) {
    v.verdict = Verdict::NotCaptured;
    v.diagnostic = "amplitude does not grow linearly";
  } else {
    v.diagnostic = "ratio outside both regimes";
  }
  return v;
}

ScanResult threshold_scan(double f_lo, double f_hi, const RunConfig& templ,
                          const ScanOptions& options) {
  if (!(f_lo < f_hi)) throw std::invalid_argument("threshold scan needs f_lo < f_hi");
  if (options.grid_steps < 2) throw std::invalid_argument("grid_steps must be >= 2");
  if (!(options.width > 0.0)) throw std::invalid_argument("width must be positive");
  templ.validate();
  options.criteria.validate();

  const std::size_t n = options.grid_steps;
  std::vector<double> fs(n);
  for (std::size_t i = 0; i < n; ++i)
    fs[i] = i + 1 == n ? f_hi : f_lo + (f_hi - f_lo) * static_cast<double>(i) / static_cast<double>(n - 1);

  std::vector<CaptureVerdict> grid(n);
  std::vector<std::exception_ptr> failures(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        grid[i] = run_probe(fs[i], templ, options);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : failures)
    if (e) std::rethrow_exception(e);

  if (grid.front().verdict == grid.back().verdict)
    throw DomainError(std::string("no bracket: both ends are ") + to_string(grid.front().verdict));

  std::map<double, CaptureVerdict> table;
  for (const auto& v : grid) table[v.f] = v;
  std::size_t j = 0;
  while (grid[j + 1].verdict == grid[j].verdict) ++j;

  ScanResult out;
  out.below = grid[j].verdict;
  out.above = grid[j + 1].verdict;
  double lo = fs[j], hi = fs[j + 1];
  while (hi - lo > options.width) {
    const double mid = 0.5 * (lo + hi);
    const CaptureVerdict v = run_probe(mid, templ, options);
    table[mid] = v;
    if (v.verdict == out.below) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  out.estimate = 0.5 * (lo + hi);
  for (auto& [f, v] : table) out.table.push_back(v);
  return out;
}

NeighborhoodReport neighborhood_run(double f, Complex dA, Complex dB, double t0, double t1,
                                    const IntegratorConfig& cfg, std::size_t sample_count) {
  const AsymptoticSeries series = growing_series(f, SeriesFamily::GrowingPlus, 1);
  const auto [A3, B3] = eval_series(series, t0);
  RunConfig run;
  run.f = f;
  run.t0 = t0;
  run.t1 = t1;
  run.A0 = A3 + dA;
  run.B0 = B3 + dB;
  run.integrator = cfg;
  run.sample_count = sample_count;

  NeighborhoodReport r;
  r.trajectory = simulate(run);
  double total = 0.0;
  for (const Sample& s : r.trajectory.samples) {
    const Complex A(s.y[0], s.y[1]);
    const Complex ref = eval_series(series, s.t).first;
    const double absA = std::abs(A);
    const double cmp = absA > 0.0 ? std::abs(A - ref) / absA : std::numeric_limits<double>::infinity();
    r.points.push_back({s.t, absA, cmp});
    r.max_comparative = std::max(r.max_comparative, cmp);
    total += cmp;
  }
  if (!r.points.empty()) r.mean_comparative = total / static_cast<double>(r.points.size());
  return r;
}

}  // namespace autores
