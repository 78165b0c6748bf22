#include "autores/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "autores/errors.hpp"

namespace autores {

namespace {
constexpr Complex kI{0.0, 1.0};

void require_above_threshold(double f, SeriesFamily family) {
  if (family == SeriesFamily::Bounded) return;
  if (!(std::fabs(f) > 12.0))
    throw DomainError("growing families need |f| > 12, got " + std::to_string(f));
}

void sort_spectrum(Spectrum& s) {
  std::sort(s.begin(), s.end(), [](const Complex& x, const Complex& y) {
    if (x.imag() != y.imag()) return x.imag() < y.imag();
    return x.real() < y.real();
  });
}
}  // namespace

const char* to_string(StabilityClass c) {
  return c == StabilityClass::Unstable ? "unstable" : "indeterminate";
}

VariationalMatrix linearize(double t, Complex A, Complex B) {
  VariationalMatrix out;
  out.t = t;
  for (int j = 0; j < 4; ++j) {
    const Complex alpha = j == 0 ? Complex(1, 0) : j == 1 ? Complex(0, 1) : Complex(0);
    const Complex beta = j == 2 ? Complex(1, 0) : j == 3 ? Complex(0, 1) : Complex(0);
    const Complex da = -kI * (2.0 * t * alpha + 0.5 * std::conj(alpha) * B + 0.5 * std::conj(A) * beta);
    const Complex db = -kI * (4.0 * t * beta + 0.5 * A * alpha);
    out.M(0, j) = da.real();
    out.M(1, j) = da.imag();
    out.M(2, j) = db.real();
    out.M(3, j) = db.imag();
  }
  return out;
}

VariationalMatrix linearize(const ReferenceSolution& reference, double t) {
  const auto [A, B] = reference(t);
  if (!std::isfinite(std::abs(A)) || !std::isfinite(std::abs(B)))
    throw std::invalid_argument("reference solution is not finite");
  return linearize(t, A, B);
}

Spectrum numeric_eigenvalues(const VariationalMatrix& m) {
  Eigen::EigenSolver<Mat4> solver(m.M, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue iteration failed");
  Spectrum s;
  for (int i = 0; i < 4; ++i) s[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
  sort_spectrum(s);
  return s;
}

Spectrum asymptotic_eigenvalues(double f, SeriesFamily family, double t) {
  require_above_threshold(f, family);
  Spectrum s;
  if (family == SeriesFamily::Bounded) {
    s = {-4.0 * kI * t, 4.0 * kI * t, -2.0 * kI * t, 2.0 * kI * t};
  } else {
    const double big = 4.0 * std::sqrt(3.0) * t;
    const double small = std::pow(f * f - 144.0, 0.25) / std::sqrt(6.0);
    const Complex slow = family == SeriesFamily::GrowingMinus ? Complex(small) : kI * small;
    s = {-kI * big, kI * big, -slow, slow};
  }
  sort_spectrum(s);
  return s;
}

StabilityClass classify_stability(double f, SeriesFamily family) {
  require_above_threshold(f, family);
  return family == SeriesFamily::GrowingMinus ? StabilityClass::Unstable
                                              : StabilityClass::Indeterminate;
}

EigenReport eigen_report(double f, SeriesFamily family, double t, int order) {
  if (!(t > 0.0)) throw std::invalid_argument("eigen report needs t > 0");
  require_above_threshold(f, family);
  if (family == SeriesFamily::Bounded && order % 2 == 0) ++order;
  const AsymptoticSeries series = family == SeriesFamily::Bounded
                                      ? bounded_series(f, order)
                                      : growing_series(f, family, order);
  EigenReport r;
  r.f = f;
  r.t = t;
  r.family = family;
  r.numeric = numeric_eigenvalues(
      linearize([&series](double s) { return eval_series(series, s); }, t));
  r.asymptotic = asymptotic_eigenvalues(f, family, t);
  r.classification = classify_stability(f, family);
  return r;
}

}  // namespace autores
