#include "autores/model.hpp"

#include <cmath>
#include <stdexcept>

namespace autores {

namespace {
constexpr Complex kI{0.0, 1.0};
}

void PhysicalParams::validate() const {
  for (double v : {omega, alpha1, alpha2, gamma, alpha, epsilon}) {
    if (!std::isfinite(v)) throw std::invalid_argument("physical parameters must be finite");
  }
  if (omega <= 0.0) throw std::invalid_argument("omega must be positive");
  if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
  if (alpha1 * alpha2 <= 0.0) throw std::invalid_argument("alpha1*alpha2 must be positive");
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be non-negative");
}

double PhysicalParams::forcing_phase(double theta) const {
  const double tau = slow_time(theta);
  return omega * theta + alpha * tau * tau;
}

AmplitudeRates rhs_primary(double t, Complex A, Complex B, double f) {
  return {-kI * (2.0 * t * A + 0.5 * std::conj(A) * B + f),
          -kI * (4.0 * t * B + 0.25 * A * A)};
}

AmplitudeRates rhs_slow(double tau, Complex a, Complex b, const PhysicalParams& p) {
  const double w = p.omega;
  return {-2.0 * kI * p.alpha * tau * a - kI * (p.alpha1 / (2.0 * w)) * std::conj(a) * b -
              kI * (p.gamma / (2.0 * w)),
          -4.0 * kI * p.alpha * tau * b - kI * (p.alpha2 / (4.0 * w)) * a * a};
}

AmplitudeRates rhs_rotating(double t, Complex a, Complex b, double f) {
  const Complex carrier = std::polar(1.0, t * t);
  return {-kI * (0.5 * std::conj(a) * b + f * carrier), -kI * (0.25 * a * a)};
}

EnvelopeState rhs_envelope_leading(const EnvelopeState& s) {
  return {-kI * (0.5 * std::conj(s.alpha0) * s.beta0), -kI * (0.25 * s.alpha0 * s.alpha0)};
}

PhysicalRates rhs_physical(const PhysicalState& s, const PhysicalParams& p) {
  const double w = p.omega;
  const double eps = p.epsilon;
  const double drive = 2.0 * eps * p.gamma * std::cos(p.forcing_phase(s.theta));
  return {s.xdot, -w * w * s.x + eps * p.alpha1 * s.x * s.y + drive, s.ydot,
          -4.0 * w * w * s.y + eps * p.alpha2 * s.x * s.x};
}

}  // namespace autores
