#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "autores/model.hpp"
#include "autores/scalar.hpp"

namespace autores {

/// Algebraic solution families of the primary system as t -> infinity.
///   Bounded       A ~ -(f/2) t^-1                        (A2/B2)
///   GrowingPlus   A ~ +8 exp(i Psi) t,  sin Psi = -12/f  (A3/B3)
///   GrowingMinus  A ~ -8 exp(i Psi) t,  sin Psi = +12/f  (A1/B1)
enum class SeriesFamily { Bounded, GrowingPlus, GrowingMinus };

/// Sign of cos Psi for the turning angle. Only Positive is the reference
/// branch; Negative swaps GrowingPlus and GrowingMinus leading terms.
enum class CosBranch { Positive, Negative };

const char* to_string(SeriesFamily family);

/// Accepts "bounded"/"A2", "plus"/"A3", "minus"/"A1" (case-insensitive).
/// Throws std::invalid_argument otherwise.
SeriesFamily parse_family(std::string_view name);

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

/// One degenerate algebraic stage, in the unknowns
/// (Re a_n, Im a_n, Re b_n, Im b_n).
struct LinearStage {
  int order = 0;
  Mat4 M = Mat4::Zero();
  Vec4 rhs = Vec4::Zero();
  Vec4 Y0 = Vec4::Zero();
  Vec4 Z = Vec4::Zero();
  Vec4 Xk = Vec4::Zero();
  /// |Z.rhs| / |rhs| with the final coefficients (0 for a zero rhs).
  double solvability_residual = 0.0;
};

template <class Real>
struct SeriesTerm {
  int k = 0;
  ComplexOf<Real> a{};
  ComplexOf<Real> b{};
};

/// Truncated expansion A = sum_{k=-1..K} a_k t^-k, B = sum b_k t^-k.
template <class Real>
struct BasicSeries {
  SeriesFamily family = SeriesFamily::Bounded;
  double f = 0.0;
  std::optional<Real> psi;
  std::vector<SeriesTerm<Real>> coeffs;  // k = -1 .. order
  std::vector<Real> mus;                 // mu_0 .. mu_order, growing families only
  std::vector<LinearStage> stages;       // orders 1 .. order, growing families only
  int order = 0;

  const SeriesTerm<Real>& term(int k) const { return coeffs.at(static_cast<std::size_t>(k + 1)); }
};

using AsymptoticSeries = BasicSeries<double>;
using QuadSeries = BasicSeries<QuadReal>;

/// Psi with sin Psi = -12/f (GrowingPlus) or +12/f (GrowingMinus).
/// Throws DomainError for |f| <= 12 and std::invalid_argument for Bounded.
double turning_angle(double f, SeriesFamily family, CosBranch branch = CosBranch::Positive);

/// Real 4x4 matrix of the degenerate stage for a_-1 = 8 exp(i Psi),
/// b_-1 = -4 exp(2 i Psi), written for i times the linearized equations.
Mat4 build_stage_matrix(double psi);

/// Y0 = (sin Psi, -cos Psi, -sin 2Psi, cos 2Psi), spanning ker M.
Vec4 stage_null(double psi);

/// Z = (-cos Psi, -sin Psi, cos 2Psi, sin 2Psi), spanning ker M^T. Throws
/// std::logic_error if M^T Z fails to vanish.
Vec4 adjoint_null(double psi);

/// Polarization of the quadratic terms (a* b, a^2) in real coordinates:
/// Y (.) X = (conj(x_a) y_b + conj(y_a) x_b, 2 y_a x_a).
Vec4 odot(const Vec4& y, const Vec4& x);

/// Build the truncated expansion of the given family through t^-order.
/// Even orders of the growing families are zero (mu_0 = 0); the
/// homogeneous multiple mu_k of each odd order is fixed by the solvability
/// condition two orders up, so a truncation is a prefix of every longer one.
template <class Real>
BasicSeries<Real> build_series(double f, SeriesFamily family, int order,
                               CosBranch branch = CosBranch::Positive);

extern template BasicSeries<double> build_series<double>(double, SeriesFamily, int, CosBranch);
extern template BasicSeries<QuadReal> build_series<QuadReal>(double, SeriesFamily, int,
                                                             CosBranch);

/// Bounded family; order must be odd and >= 1.
AsymptoticSeries bounded_series(double f, int order);

/// Growing family; |f| > 12, order >= 1.
AsymptoticSeries growing_series(double f, SeriesFamily family, int order,
                                CosBranch branch = CosBranch::Positive);

template <class Real>
std::pair<ComplexOf<Real>, ComplexOf<Real>> eval_series(const BasicSeries<Real>& s, const Real& t);

/// Euclidean norm of (A' + i(2tA + A*B/2 + f), B' + i(4tB + A^2/4)) for
/// the truncated sums, with A', B' differentiated term by term.
template <class Real>
Real series_residual(const BasicSeries<Real>& s, const Real& t);

extern template std::pair<Complex, Complex> eval_series<double>(const AsymptoticSeries&,
                                                                 const double&);
extern template std::pair<ComplexOf<QuadReal>, ComplexOf<QuadReal>> eval_series<QuadReal>(
    const QuadSeries&, const QuadReal&);
extern template double series_residual<double>(const AsymptoticSeries&, const double&);
extern template QuadReal series_residual<QuadReal>(const QuadSeries&, const QuadReal&);

inline std::pair<Complex, Complex> eval_series(const AsymptoticSeries& s, double t) {
  return eval_series<double>(s, t);
}

inline double series_residual(const AsymptoticSeries& s, double t) {
  return series_residual<double>(s, t);
}

}  // namespace autores
