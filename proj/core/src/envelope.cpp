#include "autores/envelope.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "autores/asymptotics.hpp"
#include "autores/errors.hpp"

namespace autores {

namespace {
constexpr Complex kI{0.0, 1.0};
const double kSqrt2 = std::sqrt(2.0);

double cubic(double G, double u) { return G + u - u * u - u * u * u; }

// Real roots of u^3 + u^2 - u - G = 0 in increasing order. Admissible orbits
// have G <= 1, which gives three real roots.
std::array<double, 3> cubic_roots(double G) {
  // u = v - 1/3 gives v^3 - (4/3) v + (11/27 - G) = 0.
  const double q = 11.0 / 27.0 - G;
  const double arg = std::clamp(-27.0 * q / 16.0, -1.0, 1.0);
  const double base = std::acos(arg) / 3.0;
  std::array<double, 3> r{};
  for (int k = 0; k < 3; ++k) {
    double u = (4.0 / 3.0) * std::cos(base - 2.0 * M_PI * k / 3.0) - 1.0 / 3.0;
    for (int it = 0; it < 3; ++it) {
      const double d = 3.0 * u * u + 2.0 * u - 1.0;
      if (std::fabs(d) < 1e-8) break;
      u -= (u * u * u + u * u - u - G) / d;
    }
    r[static_cast<std::size_t>(k)] = u;
  }
  std::sort(r.begin(), r.end());
  return r;
}

template <class F>
double integrate_smooth(F&& f, double a, double b) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}
}  // namespace

double g_parameter(double E2, double H) {
  if (!(E2 > 0.0)) throw std::invalid_argument("E2 must be positive");
  return 1.0 - 4.0 * H * H / (E2 * E2 * E2);
}

EnvelopeInvariants invariants_of(const EnvelopeState& s) {
  EnvelopeInvariants inv;
  const double na = std::norm(s.alpha0);
  const double nb = std::norm(s.beta0);
  inv.E2 = na + 2.0 * nb;
  inv.H = 2.0 * (std::conj(s.alpha0) * std::conj(s.alpha0) * s.beta0).real();
  if (inv.E2 > 0.0) {
    inv.G = g_parameter(inv.E2, inv.H);
    inv.u0 = (na - 2.0 * nb) / inv.E2;
  }
  inv.phi0 = na > 0.0 ? std::arg(s.alpha0) : 0.0;
  inv.rising = (s.alpha0 * s.alpha0 * std::conj(s.beta0)).imag() < 0.0;
  return inv;
}

EnvelopeInvariants make_invariants(double E2, double H, double u0, double phi0, bool rising) {
  if (!(E2 > 0.0) || !std::isfinite(E2)) throw DomainError("E2 must be positive");
  if (!std::isfinite(H) || !std::isfinite(phi0)) throw DomainError("invariants must be finite");
  if (!(u0 >= -1.0 && u0 <= 1.0)) throw DomainError("u0 must lie in [-1, 1]");
  EnvelopeInvariants inv{E2, H, g_parameter(E2, H), u0, phi0, rising};
  if (cubic(inv.G, u0) < -1e-12) throw DomainError("no real orbit through u0 for these E2, H");
  return inv;
}

EnvelopeState initial_state(const EnvelopeInvariants& inv) {
  if (!(inv.E2 > 0.0)) throw DomainError("E2 must be positive");
  const double E = std::sqrt(inv.E2);
  const double Psi = 0.5 * std::acos(std::clamp(inv.u0, -1.0, 1.0));
  const double c = std::cos(Psi), s = std::sin(Psi);
  const double scale = kSqrt2 * E * E * E * c * c * s;
  double Phi = M_PI / 2.0;
  if (std::fabs(scale) > 1e-14 * E * E * E) {
    const double cosPhi = inv.H / scale;
    if (std::fabs(cosPhi) > 1.0 + 1e-9) throw DomainError("no real orbit through u0 for these E2, H");
    Phi = std::acos(std::clamp(cosPhi, -1.0, 1.0));
  }
  if (inv.rising) Phi = -Phi;
  return from_angles({inv.phi0, 2.0 * inv.phi0 - Phi, Psi}, E);
}

AngularCoordinates to_angles(const EnvelopeState& s) {
  const double na = std::abs(s.alpha0);
  const double nb = std::abs(s.beta0);
  const double E = std::sqrt(na * na + 2.0 * nb * nb);
  if (!(E > 0.0)) throw DomainError("angles are undefined at the origin (E = 0)");
  AngularCoordinates out;
  out.E = E;
  out.angles.PsiE = std::atan2(kSqrt2 * nb, na);
  out.angles.phi = na > 0.0 ? std::arg(s.alpha0) : 0.0;
  out.angles.psi = nb > 0.0 ? std::arg(s.beta0) : 0.0;
  out.Phi = std::remainder(2.0 * out.angles.phi - out.angles.psi, 2.0 * M_PI);
  return out;
}

EnvelopeState from_angles(const AngularState& a, double E) {
  return {E * std::polar(1.0, a.phi) * std::cos(a.PsiE),
          (E / kSqrt2) * std::polar(1.0, a.psi) * std::sin(a.PsiE)};
}

AngularRates rhs_angles(const AngularState& a, double E, double Phi) {
  const double s = std::sin(a.PsiE);
  if (s == 0.0) throw DomainError("angular form is singular at sin(PsiE) = 0");
  const double c = std::cos(a.PsiE);
  const double k = E / (2.0 * kSqrt2);
  return {-k * std::cos(Phi) * s, -k * std::cos(Phi) * c * c / s, k * std::sin(Phi) * c};
}

EllipticOrbit::EllipticOrbit(const EnvelopeInvariants& inv) : inv_(inv) {
  if (!(inv.E2 > 0.0)) throw DomainError("E2 must be positive");
  if (!(inv.u0 >= -1.0 && inv.u0 <= 1.0)) throw DomainError("u0 must lie in [-1, 1]");
  E_ = std::sqrt(inv.E2);
  inv_.G = g_parameter(inv.E2, inv.H);
  if (cubic(inv_.G, inv.u0) < -1e-12) throw DomainError("no real orbit through u0 for these E2, H");

  if (inv.H == 0.0) {
    separatrix_ = true;
    r1_ = r2_ = -1.0;
    r3_ = 1.0;
    period_ = std::numeric_limits<double>::infinity();
    stationary_ = inv.u0 <= -1.0;
    return;
  }

  const auto roots = cubic_roots(inv_.G);
  r1_ = roots[0];
  r2_ = std::min(roots[1], inv.u0);
  r3_ = std::max(roots[2], inv.u0);
  const double delta = r3_ - r2_;
  auto weight = [this](double th) {
    const double s = std::sin(th);
    return 1.0 / std::sqrt(r2_ + (r3_ - r2_) * s * s - r1_);
  };
  if (delta < 1e-12) {
    stationary_ = true;
    period_ = (4.0 / E_) * M_PI / std::sqrt(inv.u0 - r1_);
    average_ = 1.0 / (1.0 + inv.u0);
    return;
  }
  const double ratio = std::clamp((inv.u0 - r2_) / delta, 0.0, 1.0);
  theta0_ = std::asin(std::sqrt(ratio));
  if (inv.rising) theta0_ = M_PI - theta0_;
  period_ = (4.0 / E_) * integrate_smooth(weight, 0.0, M_PI);
  drift_period_ = (4.0 / E_) * integrate_smooth(
                                   [&](double th) {
                                     const double s = std::sin(th);
                                     const double u = r2_ + delta * s * s;
                                     return weight(th) / (1.0 + u);
                                   },
                                   0.0, M_PI);
  average_ = drift_period_ / period_;
}

double EllipticOrbit::time_from(double theta) const {
  return (4.0 / E_) * integrate_smooth(
                          [this](double th) {
                            const double s = std::sin(th);
                            return 1.0 / std::sqrt(r2_ + (r3_ - r2_) * s * s - r1_);
                          },
                          theta, theta0_);
}

double EllipticOrbit::drift_integral(double theta) const {
  return (4.0 / E_) * integrate_smooth(
                          [this](double th) {
                            const double s = std::sin(th);
                            const double u = r2_ + (r3_ - r2_) * s * s;
                            return 1.0 / ((1.0 + u) * std::sqrt(u - r1_));
                          },
                          theta, theta0_);
}

// Angle parameter at time t, written as theta - periods*pi with theta in
// [theta0 - pi, theta0].
double EllipticOrbit::theta_at(double t, long& periods) const {
  const double n = std::floor(t / period_);
  periods = static_cast<long>(n);
  const double tr = t - n * period_;
  if (tr <= 0.0) return theta0_;
  auto g = [&](double th) { return time_from(th) - tr; };
  double lo = theta0_ - M_PI, hi = theta0_;
  const double glo = period_ - tr;
  const double ghi = -tr;
  if (glo <= 0.0) return lo;
  boost::uintmax_t iters = 200;
  const auto bracket = boost::math::tools::toms748_solve(
      g, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (bracket.first + bracket.second);
}

double EllipticOrbit::u(double t) const {
  if (stationary_) return inv_.u0;
  if (separatrix_) {
    const double x = std::atanh(std::sqrt(0.5 * (1.0 - inv_.u0)));
    const double rate = E_ / (2.0 * kSqrt2);
    const double th = std::tanh(inv_.rising ? x - rate * t : x + rate * t);
    return 1.0 - 2.0 * th * th;
  }
  long n = 0;
  const double th = theta_at(t, n);
  const double s = std::sin(th);
  return r2_ + (r3_ - r2_) * s * s;
}

double EllipticOrbit::phi(double t) const {
  if (separatrix_) return inv_.phi0;
  const double k = -inv_.H / (2.0 * inv_.E2);
  if (stationary_) return inv_.phi0 + k * average_ * t;
  long n = 0;
  const double th = theta_at(t, n);
  return inv_.phi0 + k * (static_cast<double>(n) * drift_period_ + drift_integral(th));
}

double EllipticOrbit::drift_rate() const {
  if (separatrix_) return 0.0;
  return -inv_.H / (2.0 * inv_.E2) * average_;
}

AngularCoordinates EllipticOrbit::angles(double t) const {
  AngularCoordinates out;
  out.E = E_;
  out.angles.phi = phi(t);
  if (separatrix_) {
    double sinPsi = 0.0;
    if (stationary_) {
      sinPsi = 1.0;
    } else {
      const double x = std::atanh(std::sqrt(0.5 * (1.0 - inv_.u0)));
      const double rate = E_ / (2.0 * kSqrt2);
      sinPsi = std::tanh(inv_.rising ? x - rate * t : x + rate * t);
    }
    out.angles.PsiE = std::asin(sinPsi);
    out.Phi = inv_.rising ? -M_PI / 2.0 : M_PI / 2.0;
  } else {
    long n = 0;
    const double th = stationary_ ? 0.0 : theta_at(t, n);
    const double uu = stationary_ ? inv_.u0 : r2_ + (r3_ - r2_) * std::sin(th) * std::sin(th);
    out.angles.PsiE = 0.5 * std::acos(std::clamp(uu, -1.0, 1.0));
    const double c = std::cos(out.angles.PsiE), s = std::sin(out.angles.PsiE);
    const double cosPhi = std::clamp(inv_.H / (kSqrt2 * E_ * inv_.E2 * c * c * s), -1.0, 1.0);
    double sign = std::sin(2.0 * th) < 0.0 ? -1.0 : 1.0;
    if (stationary_) sign = inv_.rising ? -1.0 : 1.0;
    out.Phi = sign * std::acos(cosPhi);
  }
  out.angles.psi = 2.0 * out.angles.phi - out.Phi;
  return out;
}

EnvelopeState EllipticOrbit::state(double t) const {
  return from_angles(angles(t).angles, E_);
}

double psi_quadrature(const EnvelopeInvariants& inv, double t) {
  return EllipticOrbit(inv).u(t);
}

double phase_drift(const EnvelopeInvariants& inv, double t) {
  return EllipticOrbit(inv).phi(t);
}

BoundednessReport correction_boundedness_probe(double f, const EnvelopeState& perturbation,
                                               double t0, double t1, double bound,
                                               const IntegratorConfig& cfg) {
  if (!(t0 > 0.0 && t1 > t0)) throw std::invalid_argument("probe needs 0 < t0 < t1");
  if (!(bound > 1.0)) throw std::invalid_argument("bound must exceed 1");
  const AsymptoticSeries series = bounded_series(f, 5);
  BoundednessReport r;
  r.t0 = t0;
  r.t1 = t1;
  r.initial = invariants_of(perturbation);
  r.initial_norm = std::hypot(std::abs(perturbation.alpha0), std::abs(perturbation.beta0));

  const Complex z0[2] = {perturbation.alpha0, perturbation.beta0};
  const std::vector<double> grid = uniform_grid(t0, t1, 20001);
  const Trajectory traj = integrate_complex(
      [&series](double t, std::span<const Complex> z, std::span<Complex> dz) {
        const auto [A2, B2] = eval_series(series, t);
        const Complex e1 = std::polar(1.0, t * t);
        const Complex al = z[0], be = z[1];
        const Complex ra = 0.5 * std::conj(al) * be +
                           0.5 * (std::conj(A2) * be * std::conj(e1) + std::conj(al) * B2 * e1 * e1);
        const Complex rb = 0.25 * al * al + 0.5 * A2 * al * e1;
        dz[0] = -kI * ra;
        dz[1] = -kI * rb;
      },
      t0, z0, t1, cfg, grid);
  r.status = traj.status;

  const double limit = bound * r.initial_norm;
  for (const Sample& s : traj.samples) {
    const double norm = std::hypot(std::hypot(s.y[0], s.y[1]), std::hypot(s.y[2], s.y[3]));
    r.sup_norm = std::max(r.sup_norm, norm);
    if (!r.escape_time && norm > limit) r.escape_time = s.t;
  }
  if (!traj.samples.empty()) {
    const auto& last = traj.samples.back().y;
    const EnvelopeInvariants fin = invariants_of({{last[0], last[1]}, {last[2], last[3]}});
    r.final_E2 = fin.E2;
    r.final_H = fin.H;
  }
  if (!traj.completed() && !r.escape_time && !traj.samples.empty())
    r.escape_time = traj.samples.back().t;
  r.passed = traj.completed() && !r.escape_time;
  return r;
}

}  // namespace autores
