#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "autores/model.hpp"

namespace autores {

struct IntegratorConfig {
  double rtol = 1e-9;
  double atol = 1e-11;
  double max_step = std::numeric_limits<double>::infinity();
  std::optional<double> initial_step;
  std::size_t max_steps = 50'000'000;

  void validate() const;
};

enum class IntegrationStatus { Completed, StepBudgetExhausted, BlowUpDetected };

const char* to_string(IntegrationStatus s);

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
};

struct Sample {
  double t = 0.0;
  std::vector<double> y;
};

struct Trajectory {
  std::vector<Sample> samples;
  IntegrationStatus status = IntegrationStatus::Completed;
  StepStats stats;

  bool completed() const { return status == IntegrationStatus::Completed; }
};

/// Components larger than this in magnitude are treated as a numerical
/// divergence; physical solutions of the primary system grow only linearly.
inline constexpr double kBlowUpThreshold = 1e12;

using VectorField =
    std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Dormand-Prince 5(4) with PI step control and the 4th-order continuous
/// extension for dense output.
///
/// Without a sample grid every accepted step is recorded (starting at t0).
/// With a grid, samples are produced exactly at the grid times, which must be
/// strictly monotone in the direction of integration and lie in [t0, t1].
/// Integration may run backwards (t1 < t0).
///
/// Throws std::invalid_argument for t0 == t1, non-finite initial data or an
/// invalid config. Budget exhaustion and blow-up are reported through
/// Trajectory::status together with the samples produced so far; on blow-up
/// the last sample holds the offending state.
Trajectory integrate(const VectorField& rhs, double t0, std::span<const double> y0, double t1,
                     const IntegratorConfig& cfg = {}, std::span<const double> sample_grid = {});

// Complex systems are integrated as interleaved (re, im) components.

using ComplexVectorField =
    std::function<void(double t, std::span<const Complex> z, std::span<Complex> dzdt)>;

Trajectory integrate_complex(const ComplexVectorField& rhs, double t0,
                             std::span<const Complex> z0, double t1,
                             const IntegratorConfig& cfg = {},
                             std::span<const double> sample_grid = {});

std::vector<double> interleave(std::span<const Complex> z);
std::vector<Complex> deinterleave(std::span<const double> y);

/// n evenly spaced times covering [t0, t1] inclusive (n >= 2).
std::vector<double> uniform_grid(double t0, double t1, std::size_t n);

}  // namespace autores
