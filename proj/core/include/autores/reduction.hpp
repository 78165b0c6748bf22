#pragma once

#include <utility>
#include <vector>

#include "autores/integrator.hpp"
#include "autores/model.hpp"

namespace autores {

/// a(tau) = lambda A(t), b(tau) = kappa B(t), tau = chi t.
struct ScalingMap {
  double kappa = 1.0;
  double lambda = 1.0;
  double chi = 1.0;
  double f = 0.0;
};

/// Slow-time amplitudes of the physical oscillators.
struct SlowState {
  double tau = 0.0;
  Complex a{};
  Complex b{};
};

/// kappa = w sqrt(alpha)/alpha1, lambda = w sqrt(alpha/(alpha1 alpha2)),
/// chi = 1/sqrt(alpha), f = sqrt(alpha1 alpha2) gamma / (2 alpha w^2).
/// Throws std::invalid_argument when alpha <= 0, alpha1*alpha2 <= 0 or w <= 0.
ScalingMap scale_params(const PhysicalParams& p);

/// Forcing amplitude gamma that scale_params maps to the given f.
double gamma_for_forcing(double f, const PhysicalParams& p);

SlowState normalized_to_slow(const ResonanceState& s, const ScalingMap& m);
ResonanceState slow_to_normalized(const SlowState& s, const ScalingMap& m);

/// Displacements at fast time theta = tau/eps:
///   x = 2 Re[a exp(i(alpha tau^2 + w theta))],
///   y = 2 Re[b exp(2i(alpha tau^2 + w theta))].
/// Throws std::invalid_argument for eps <= 0.
std::pair<double, double> reconstruct_physical(Complex a, Complex b, double tau,
                                               const PhysicalParams& p);

/// Full physical state (with velocities to first order in eps) matching the
/// slow amplitudes.
PhysicalState physical_state_from_slow(const SlowState& s, const PhysicalParams& p);

struct EnvelopePoint {
  double tau = 0.0;
  double measured = 0.0;   // interpolated peak of |x|
  double predicted = 0.0;  // 2|a(tau)| from the normalized system
};

struct EnvelopeComparison {
  std::vector<EnvelopePoint> points;
  double max_relative_error = 0.0;
  IntegrationStatus physical_status = IntegrationStatus::Completed;
  IntegrationStatus slow_status = IntegrationStatus::Completed;
};

/// Integrates the physical system from the state matching the normalized
/// data (A0, B0) at t = 0 and compares the peaks of |x| with 2|a| obtained by
/// integrating the primary system and scaling back, over tau in [0, tau_end].
EnvelopeComparison compare_envelopes(const PhysicalParams& p, Complex A0, Complex B0,
                                     double tau_end, const IntegratorConfig& cfg = {});

}  // namespace autores
