#pragma once

#include <optional>
#include <utility>

#include "autores/integrator.hpp"
#include "autores/model.hpp"

namespace autores {

/// Conserved quantities of the leading envelope system and the data that
/// fixes one orbit.
///   E2 = |alpha0|^2 + 2|beta0|^2
///   H  = (alpha0*)^2 beta0 + alpha0^2 beta0*
///   G  = 1 - 4 H^2 / E^6
/// u0 = cos 2Psi at t = 0 and phi0 the phase of alpha0 there. `rising` marks
/// an orbit whose u increases initially (sin Phi0 < 0).
struct EnvelopeInvariants {
  double E2 = 0.0;
  double H = 0.0;
  double G = 1.0;
  double u0 = 1.0;
  double phi0 = 0.0;
  bool rising = false;
};

/// alpha0 = E exp(i phi) cos PsiE,  beta0 = (E/sqrt 2) exp(i psi) sin PsiE.
struct AngularState {
  double phi = 0.0;
  double psi = 0.0;
  double PsiE = 0.0;
};

struct AngularCoordinates {
  AngularState angles;
  double E = 0.0;
  double Phi = 0.0;  // 2 phi - psi
};

struct AngularRates {
  double dphi = 0.0;
  double dpsi = 0.0;
  double dPsiE = 0.0;
};

/// G from (E2, H). Throws std::invalid_argument for E2 <= 0.
double g_parameter(double E2, double H);

EnvelopeInvariants invariants_of(const EnvelopeState& s);

/// Builds the invariants from the independent data (E2, H, u0, phi0).
/// Throws DomainError when no real orbit passes through u0.
EnvelopeInvariants make_invariants(double E2, double H, double u0, double phi0,
                                   bool rising = false);

/// Cartesian state at t = 0 of the orbit described by inv.
EnvelopeState initial_state(const EnvelopeInvariants& inv);

/// PsiE in [0, pi/2]. Throws DomainError for E = 0. phi (resp. psi) is set to
/// zero when alpha0 (resp. beta0) vanishes.
AngularCoordinates to_angles(const EnvelopeState& s);
EnvelopeState from_angles(const AngularState& a, double E);

/// phi'  = -(E/2 sqrt 2) cos Phi sin PsiE
/// psi'  = -(E/2 sqrt 2) cos Phi cos^2 PsiE / sin PsiE
/// PsiE' =  (E/2 sqrt 2) sin Phi cos PsiE
/// Throws DomainError when sin PsiE = 0.
AngularRates rhs_angles(const AngularState& a, double E, double Phi);

/// Periodic orbit of the leading envelope system, solved by quadrature.
///
/// u = cos 2PsiE obeys (du/dt)^2 = (E^2/4)(G + u - u^2 - u^3). The cubic has
/// roots r1 < -1 <= r2 <= u <= r3 <= 1; with u = r2 + (r3 - r2) sin^2 th the
/// motion becomes th' = -(E/4) sqrt(u - r1), which is regular at the turning
/// points. H = 0 is the separatrix and is handled in closed form.
class EllipticOrbit {
 public:
  /// Throws DomainError when the invariants admit no real orbit.
  explicit EllipticOrbit(const EnvelopeInvariants& inv);

  const EnvelopeInvariants& invariants() const { return inv_; }
  double E() const { return E_; }
  /// Turning points (r2, r3) of u.
  std::pair<double, double> turning_points() const { return {r2_, r3_}; }
  /// Infinite on the separatrix H = 0.
  double period() const { return period_; }

  double u(double t) const;
  /// phi(t) = phi0 - (H / 2E^2) int_0^t ds / (1 + u(s)).
  double phi(double t) const;
  /// Orbit average of 1/(1 + u); zero-drift orbits report 0.
  double orbit_average() const { return average_; }
  /// Limit of phi(t)/t.
  double drift_rate() const;

  AngularCoordinates angles(double t) const;
  EnvelopeState state(double t) const;

 private:
  double theta_at(double t, long& periods) const;
  double time_from(double theta) const;
  double drift_integral(double theta) const;

  EnvelopeInvariants inv_;
  double E_ = 0.0;
  double r1_ = 0.0, r2_ = 0.0, r3_ = 0.0;
  double theta0_ = 0.0;
  double period_ = 0.0;
  double drift_period_ = 0.0;
  double average_ = 0.0;
  bool separatrix_ = false;
  bool stationary_ = false;
};

double psi_quadrature(const EnvelopeInvariants& inv, double t);
double phase_drift(const EnvelopeInvariants& inv, double t);

struct BoundednessReport {
  bool passed = true;
  double initial_norm = 0.0;
  double sup_norm = 0.0;
  std::optional<double> escape_time;
  double t0 = 0.0, t1 = 0.0;
  EnvelopeInvariants initial;
  double final_E2 = 0.0;
  double final_H = 0.0;
  IntegrationStatus status = IntegrationStatus::Completed;
};

/// Integrates the perturbation system around the bounded series (order 5)
///   i alpha' = alpha* beta/2 + (A2* beta e^{-it^2} + alpha* B2 e^{2it^2})/2
///   i beta'  = alpha^2/4 + A2 alpha e^{it^2}/2
/// from t0 to t1 and checks that |(alpha, beta)| stays below `bound` times its
/// initial size. Requires 0 < t0 < t1.
BoundednessReport correction_boundedness_probe(double f, const EnvelopeState& perturbation,
                                               double t0, double t1, double bound = 10.0,
                                               const IntegratorConfig& cfg = {});

}  // namespace autores
