#include "autores/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace autores {

namespace {
constexpr Complex kI{0.0, 1.0};

void check_scalable(const PhysicalParams& p) {
  if (!(p.omega > 0.0)) throw std::invalid_argument("omega must be positive");
  if (!(p.alpha > 0.0)) throw std::invalid_argument("alpha must be positive for a real time scale");
  if (!(p.alpha1 * p.alpha2 > 0.0))
    throw std::invalid_argument("alpha1*alpha2 must be positive for real amplitude scales");
}
}  // namespace

ScalingMap scale_params(const PhysicalParams& p) {
  check_scalable(p);
  const double w = p.omega;
  const double coupling = std::sqrt(p.alpha1 * p.alpha2);
  ScalingMap m;
  m.kappa = w * std::sqrt(p.alpha) / p.alpha1;
  m.lambda = w * std::sqrt(p.alpha / (p.alpha1 * p.alpha2));
  m.chi = 1.0 / std::sqrt(p.alpha);
  m.f = coupling * p.gamma / (2.0 * p.alpha * w * w);
  return m;
}

double gamma_for_forcing(double f, const PhysicalParams& p) {
  check_scalable(p);
  return 2.0 * p.alpha * p.omega * p.omega * f / std::sqrt(p.alpha1 * p.alpha2);
}

SlowState normalized_to_slow(const ResonanceState& s, const ScalingMap& m) {
  return {m.chi * s.t, m.lambda * s.A, m.kappa * s.B};
}

ResonanceState slow_to_normalized(const SlowState& s, const ScalingMap& m) {
  return {s.tau / m.chi, s.a / m.lambda, s.b / m.kappa};
}

std::pair<double, double> reconstruct_physical(Complex a, Complex b, double tau,
                                               const PhysicalParams& p) {
  if (!(p.epsilon > 0.0)) throw std::invalid_argument("reconstruction needs epsilon > 0");
  const double theta = tau / p.epsilon;
  const Complex carrier = std::polar(1.0, p.alpha * tau * tau + p.omega * theta);
  return {2.0 * (a * carrier).real(), 2.0 * (b * carrier * carrier).real()};
}

PhysicalState physical_state_from_slow(const SlowState& s, const PhysicalParams& p) {
  if (!(p.epsilon > 0.0)) throw std::invalid_argument("reconstruction needs epsilon > 0");
  const double eps = p.epsilon;
  const double theta = s.tau / eps;
  const Complex carrier = std::polar(1.0, p.alpha * s.tau * s.tau + p.omega * theta);
  const double rate = p.omega + 2.0 * p.alpha * s.tau * eps;  // d(phase)/d(theta)
  const AmplitudeRates d = rhs_slow(s.tau, s.a, s.b, p);
  PhysicalState out;
  out.theta = theta;
  out.x = 2.0 * (s.a * carrier).real();
  out.xdot = 2.0 * ((eps * d.first + kI * rate * s.a) * carrier).real();
  out.y = 2.0 * (s.b * carrier * carrier).real();
  out.ydot = 2.0 * ((eps * d.second + 2.0 * kI * rate * s.b) * carrier * carrier).real();
  return out;
}

EnvelopeComparison compare_envelopes(const PhysicalParams& p, Complex A0, Complex B0,
                                     double tau_end, const IntegratorConfig& cfg) {
  p.validate();
  if (!(p.epsilon > 0.0)) throw std::invalid_argument("envelope comparison needs epsilon > 0");
  if (!(tau_end > 0.0)) throw std::invalid_argument("tau_end must be positive");
  const ScalingMap m = scale_params(p);
  const double eps = p.epsilon;

  // Slow reference from the normalized system.
  const double t_end = tau_end / m.chi;
  const std::size_t slow_n = 2001;
  const std::vector<double> slow_grid = uniform_grid(0.0, t_end, slow_n);
  const Complex z0[2] = {A0, B0};
  const double f = m.f;
  const Trajectory slow = integrate_complex(
      [f](double t, std::span<const Complex> z, std::span<Complex> dz) {
        const AmplitudeRates r = rhs_primary(t, z[0], z[1], f);
        dz[0] = r.first;
        dz[1] = r.second;
      },
      0.0, z0, t_end, cfg, slow_grid);

  EnvelopeComparison out;
  out.slow_status = slow.status;
  if (!slow.completed()) return out;

  std::vector<double> slow_tau, slow_env;
  for (const Sample& s : slow.samples) {
    slow_tau.push_back(m.chi * s.t);
    slow_env.push_back(2.0 * m.lambda * std::hypot(s.y[0], s.y[1]));
  }
  auto predicted_at = [&](double tau) {
    auto it = std::upper_bound(slow_tau.begin(), slow_tau.end(), tau);
    if (it == slow_tau.begin()) return slow_env.front();
    if (it == slow_tau.end()) return slow_env.back();
    const std::size_t j = static_cast<std::size_t>(it - slow_tau.begin());
    const double w = (tau - slow_tau[j - 1]) / (slow_tau[j] - slow_tau[j - 1]);
    return (1.0 - w) * slow_env[j - 1] + w * slow_env[j];
  };

  // Physical system on a grid of ~64 points per carrier period.
  const SlowState start{0.0, m.lambda * A0, m.kappa * B0};
  const PhysicalState ps = physical_state_from_slow(start, p);
  const double theta_end = tau_end / eps;
  const double period = 2.0 * M_PI / p.omega;
  const auto n = static_cast<std::size_t>(std::ceil(64.0 * theta_end / period)) + 1;
  const std::vector<double> grid = uniform_grid(0.0, theta_end, n);
  const double y0[4] = {ps.x, ps.xdot, ps.y, ps.ydot};
  const Trajectory phys = integrate(
      [&p](double theta, std::span<const double> y, std::span<double> dy) {
        const PhysicalRates r = rhs_physical({theta, y[0], y[1], y[2], y[3]}, p);
        std::copy(r.begin(), r.end(), dy.begin());
      },
      0.0, y0, theta_end, cfg, grid);
  out.physical_status = phys.status;
  if (!phys.completed()) return out;

  // Local maxima of |x| refined by a parabola through three samples.
  const auto& sm = phys.samples;
  for (std::size_t i = 1; i + 1 < sm.size(); ++i) {
    const double l = std::fabs(sm[i - 1].y[0]);
    const double c = std::fabs(sm[i].y[0]);
    const double r = std::fabs(sm[i + 1].y[0]);
    if (!(c > l && c >= r)) continue;
    const double denom = l - 2.0 * c + r;
    double shift = 0.0, peak = c;
    if (denom < 0.0) {
      shift = 0.5 * (l - r) / denom;
      peak = c - 0.25 * (l - r) * shift;
    }
    const double dtheta = sm[i + 1].t - sm[i].t;
    const double tau = eps * (sm[i].t + shift * dtheta);
    const double pred = predicted_at(tau);
    out.points.push_back({tau, peak, pred});
    if (pred > 0.0) out.max_relative_error = std::max(out.max_relative_error, std::fabs(peak - pred) / pred);
  }
  return out;
}

}  // namespace autores
