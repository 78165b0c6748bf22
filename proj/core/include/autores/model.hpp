#pragma once

#include <array>
#include <complex>

namespace autores {

using Complex = std::complex<double>;

/// Constants of the physical two-oscillator system
///
///   x'' + w^2 x      = eps*alpha1*x*y + 2*eps*gamma*cos(phase)
///   y'' + (2w)^2 y   = eps*alpha2*x^2
///
/// with fast time theta, slow time tau = eps*theta and forcing phase
/// phase = w*theta + alpha*tau^2.
struct PhysicalParams {
  double omega = 1.0;
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double gamma = 0.0;
  double alpha = 1.0;
  double epsilon = 0.0;

  /// Throws std::invalid_argument when omega <= 0, alpha <= 0,
  /// alpha1*alpha2 <= 0, epsilon < 0, or any field is non-finite.
  void validate() const;

  double slow_time(double theta) const { return epsilon * theta; }
  double forcing_phase(double theta) const;
};

/// State of the normalized primary resonance system at time t.
struct ResonanceState {
  double t = 0.0;
  Complex A{};
  Complex B{};
};

struct PhysicalState {
  double theta = 0.0;
  double x = 0.0;
  double xdot = 0.0;
  double y = 0.0;
  double ydot = 0.0;
};

/// Leading-order envelope of a perturbation in the rotating frame.
struct EnvelopeState {
  Complex alpha0{};
  Complex beta0{};
};

/// Time derivatives of a pair of complex amplitudes.
struct AmplitudeRates {
  Complex first{};
  Complex second{};

  friend bool operator==(const AmplitudeRates&, const AmplitudeRates&) = default;
};

/// (dx, dxdot, dy, dydot) with respect to fast time.
using PhysicalRates = std::array<double, 4>;

// Vector fields. All are pure functions of their arguments.

/// A' = -i(2tA + A*B/2 + f),  B' = -i(4tB + A^2/4).
AmplitudeRates rhs_primary(double t, Complex A, Complex B, double f);

/// Slow-time amplitude equations before normalization:
///   a' = -2i alpha tau a - (i alpha1 / 2w) a* b - i gamma / 2w
///   b' = -4i alpha tau b - (i alpha2 / 4w) a^2
AmplitudeRates rhs_slow(double tau, Complex a, Complex b, const PhysicalParams& p);

/// Primary system in the frame A = a exp(-i t^2), B = b exp(-2i t^2):
///   i a' = a* b / 2 + f exp(i t^2),  i b' = a^2 / 4.
AmplitudeRates rhs_rotating(double t, Complex a, Complex b, double f);

/// Autonomous leading-order envelope system
///   i alpha0' = alpha0* beta0 / 2,  i beta0' = alpha0^2 / 4.
EnvelopeState rhs_envelope_leading(const EnvelopeState& s);

PhysicalRates rhs_physical(const PhysicalState& s, const PhysicalParams& p);

}  // namespace autores
