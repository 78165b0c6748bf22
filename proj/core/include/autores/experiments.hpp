#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "autores/integrator.hpp"
#include "autores/model.hpp"

namespace autores {

/// Raw initial data at t = 100 for the capture runs.
inline constexpr Complex kRawA100{102.669, -793.88};
inline constexpr Complex kRawB100{386.825, 101.831};
/// The same data with Im A = -793.388, which is A3(100) of the two-term
/// growing expansion at f = 12.1 to the digits given.
inline constexpr Complex kLockedA100{102.669, -793.388};

struct RunConfig {
  double f = 12.1;
  double t0 = 100.0;
  double t1 = 300.0;
  Complex A0 = kLockedA100;
  Complex B0 = kRawB100;
  IntegratorConfig integrator;
  std::size_t sample_count = 2001;

  /// Throws std::invalid_argument unless 0 < t0 < t1, data finite and
  /// sample_count >= 2.
  void validate() const;
};

/// Thresholds of the capture classifier.
struct CaptureCriteria {
  double band_lo = 6.0;
  double band_hi = 10.0;
  double max_drift = 0.10;
  double window_fraction = 0.2;
  double not_captured_ratio = 1.0;
  /// Below the band, a log-log growth exponent of |A| under this value over
  /// the window also counts as not captured.
  double max_growth_exponent = 0.5;

  void validate() const;
};

enum class Verdict { Captured, NotCaptured, Undetermined };

const char* to_string(Verdict v);

struct CaptureVerdict {
  double f = 0.0;
  Verdict verdict = Verdict::Undetermined;
  double late_ratio = 0.0;       // mean |A|/t over the window
  double drift = 0.0;            // |fitted trend of |A|/t over the window| / late_ratio
  double growth_exponent = 0.0;  // slope of log|A| against log t over the window
  std::pair<double, double> window{0.0, 0.0};
  std::string diagnostic;
};

/// Integrates the primary system; samples hold (Re A, Im A, Re B, Im B) on a
/// uniform grid of cfg.sample_count points.
Trajectory simulate(const RunConfig& cfg);

/// Throws std::invalid_argument when the samples span less than a factor
/// 1.5 in t. Trajectories that did not complete are Undetermined.
CaptureVerdict classify_capture(const Trajectory& traj, double f,
                                const CaptureCriteria& criteria = {});

struct ScanOptions {
  std::size_t grid_steps = 5;
  double width = 0.05;
  unsigned threads = 0;  // 0: hardware concurrency
  int max_retries = 3;
  CaptureCriteria criteria;
};

struct ScanResult {
  std::vector<CaptureVerdict> table;  // every probe, sorted by f
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double estimate = 0.0;
  Verdict below = Verdict::Undetermined;
  Verdict above = Verdict::Undetermined;
};

/// Probes a grid of forcings over [f_lo, f_hi] concurrently, then bisects the
/// first verdict change until the bracket is narrower than `width`.
/// Undetermined probes are rerun on a span extended by half its length, up
/// to max_retries times. Throws DomainError when the endpoints agree or a
/// probe stays undetermined; std::invalid_argument when f_lo >= f_hi.
ScanResult threshold_scan(double f_lo, double f_hi, const RunConfig& templ,
                          const ScanOptions& options = {});

struct NeighborhoodPoint {
  double t = 0.0;
  double abs_A = 0.0;
  double comparative = 0.0;  // |A - A3| / |A|
};

struct NeighborhoodReport {
  Trajectory trajectory;
  std::vector<NeighborhoodPoint> points;
  double max_comparative = 0.0;
  double mean_comparative = 0.0;
};

/// Starts from the two-term growing-plus expansion at t0 shifted by
/// (dA, dB) and compares the solution with the expansion. Throws DomainError
/// for |f| <= 12.
NeighborhoodReport neighborhood_run(double f, Complex dA, Complex dB, double t0 = 100.0,
                                    double t1 = 150.0, const IntegratorConfig& cfg = {},
                                    std::size_t sample_count = 2001);

}  // namespace autores
