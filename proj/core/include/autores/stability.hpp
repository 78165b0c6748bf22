#pragma once

#include <array>
#include <functional>
#include <utility>

#include "autores/asymptotics.hpp"

namespace autores {

/// Jacobian of the real form of the primary system, acting on
/// (Re alpha, Im alpha, Re beta, Im beta).
struct VariationalMatrix {
  double t = 0.0;
  Mat4 M = Mat4::Zero();
};

using ReferenceSolution = std::function<std::pair<Complex, Complex>(double t)>;
using Spectrum = std::array<Complex, 4>;

enum class StabilityClass { Unstable, Indeterminate };

const char* to_string(StabilityClass c);

/// Perturbations obey alpha' = -i(2t alpha + alpha* B/2 + A* beta/2),
/// beta' = -i(4t beta + A alpha/2); f drops out.
VariationalMatrix linearize(double t, Complex A, Complex B);
VariationalMatrix linearize(const ReferenceSolution& reference, double t);

/// Eigenvalues sorted by imaginary part, then real part.
Spectrum numeric_eigenvalues(const VariationalMatrix& m);

/// Leading-order eigenvalues along a family:
///   GrowingMinus (A1)  +-4i sqrt(3) t,  +-(f^2-144)^(1/4)/sqrt(6)
///   Bounded      (A2)  +-4i t,          +-2i t
///   GrowingPlus  (A3)  +-4i sqrt(3) t,  +-i (f^2-144)^(1/4)/sqrt(6)
/// Throws DomainError for |f| <= 12 on the growing families.
Spectrum asymptotic_eigenvalues(double f, SeriesFamily family, double t);

/// A real eigenvalue of order one makes A1 unstable; the other families have
/// a purely imaginary leading spectrum and are left undecided.
StabilityClass classify_stability(double f, SeriesFamily family);

struct EigenReport {
  double f = 0.0;
  double t = 0.0;
  SeriesFamily family = SeriesFamily::Bounded;
  Spectrum numeric{};
  Spectrum asymptotic{};
  StabilityClass classification = StabilityClass::Indeterminate;
};

/// Linearizes along the family's truncated series (order 3).
EigenReport eigen_report(double f, SeriesFamily family, double t, int order = 3);

}  // namespace autores
