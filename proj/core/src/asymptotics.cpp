#include "autores/asymptotics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/LU>
#include <boost/multiprecision/eigen.hpp>

#include "autores/errors.hpp"

namespace autores {

namespace {

constexpr double kThreshold = 12.0;
// Relative tolerance for Z.rhs at an accepted stage.
constexpr double kSolvabilityTol = 1e-8;

template <class Real>
using V4 = Eigen::Matrix<Real, 4, 1>;
template <class Real>
using M4 = Eigen::Matrix<Real, 4, 4>;

void require_growing_threshold(double f) {
  const double af = std::fabs(f);
  if (!std::isfinite(f)) throw std::invalid_argument("forcing must be finite");
  if (af < kThreshold)
    throw DomainError("no real turning angle: |f| = " + std::to_string(af) + " < 12");
  if (af == kThreshold)
    throw DomainError("degenerate turning angle at |f| = 12 (cos Psi = 0)");
}

// sin and cos of the turning angle in the working precision.
template <class Real>
std::pair<Real, Real> turning_sincos(double f, SeriesFamily family, CosBranch branch) {
  using std::sqrt;
  const Real ratio = Real(12) / Real(f);
  const Real s = family == SeriesFamily::GrowingPlus ? Real(-ratio) : ratio;
  Real c = sqrt(Real(1) - s * s);
  if (branch == CosBranch::Negative) c = -c;
  return {s, c};
}

template <class Real>
M4<Real> stage_matrix_from(const Real& s, const Real& c) {
  M4<Real> m;
  m << 4 * c * s, -4 * c * c, 4 * s, -4 * c,  //
      4 * s * s, -4 * c * s, 4 * c, 4 * s,    //
      -4 * s, -4 * c, 0, -4,                  //
      4 * c, -4 * s, 4, 0;
  return m;
}

template <class Real>
V4<Real> null_from(const Real& s, const Real& c) {
  V4<Real> v;
  v << s, -c, -2 * s * c, c * c - s * s;
  return v;
}

template <class Real>
V4<Real> adjoint_from(const Real& s, const Real& c) {
  V4<Real> v;
  v << -c, -s, c * c - s * s, 2 * s * c;
  return v;
}

template <class Real>
V4<Real> odot_impl(const V4<Real>& y, const V4<Real>& x) {
  using C = ComplexOf<Real>;
  const C ya(y[0], y[1]), yb(y[2], y[3]);
  const C xa(x[0], x[1]), xb(x[2], x[3]);
  using std::conj;
  const C first = conj(xa) * yb + conj(ya) * xb;
  const C second = Real(2) * ya * xa;
  V4<Real> out;
  out << first.real(), first.imag(), second.real(), second.imag();
  return out;
}

Vec4 to_vec4d(const V4<double>& v) { return v; }

template <class Real>
Vec4 to_vec4d(const V4<Real>& v) {
  return v.unaryExpr([](const Real& x) { return static_cast<double>(x); });
}

template <class Real>
Mat4 to_mat4d(const M4<Real>& m) {
  return m.unaryExpr([](const Real& x) { return static_cast<double>(x); });
}

template <class Real>
Real abs_real(const Real& x) {
  using std::abs;
  return abs(x);
}

// Power-matching engine. Substituting the expansion into
//   i A' = 2tA + A*B/2 + f,  i B' = 4tB + A^2/4
// and collecting t^(1-n) gives, for every n >= -1,
//   2 a_n + (1/2) sum_{m+l=n-1} a_m* b_l + f [n=1] + i (n-2) a_{n-2} = 0
//   4 b_n + (1/4) sum_{m+l=n-1} a_m a_l   + i (n-2) b_{n-2}        = 0.
// The terms with m or l equal to -1 are linear in (a_n, b_n) and form the
// stage operator; everything else is the stage right-hand side.
template <class Real>
class SeriesBuilder {
 public:
  using C = ComplexOf<Real>;

  SeriesBuilder(double f, SeriesFamily family, int order, CosBranch branch)
      : f_(f), family_(family), order_(order) {
    a_.assign(static_cast<std::size_t>(order + 2), C(0));
    b_.assign(static_cast<std::size_t>(order + 2), C(0));
    if (family_ != SeriesFamily::Bounded) {
      std::tie(sin_, cos_) = turning_sincos<Real>(f, family, branch);
      // a_-1 = sign * 8 exp(i Psi); the minus family is the plus-family
      // stage at Psi + pi, i.e. with (sin, cos) negated.
      const Real sign = family_ == SeriesFamily::GrowingPlus ? Real(1) : Real(-1);
      eff_sin_ = sign * sin_;
      eff_cos_ = sign * cos_;
      const C e1(cos_, sin_);
      a_[0] = Real(8) * sign * e1;
      b_[0] = Real(-4) * e1 * e1;
      matrix_ = stage_matrix_from(eff_sin_, eff_cos_);
      y0_ = null_from(eff_sin_, eff_cos_);
      z_ = adjoint_from(eff_sin_, eff_cos_);
      y0_hat_ = y0_ / y0_.norm();
      z_hat_ = z_ / z_.norm();
      bordered_lu_ = (matrix_ + z_hat_ * y0_hat_.transpose()).partialPivLu();
    } else {
      // i * diag(2, 2, 4, 4) in real coordinates.
      matrix_.setZero();
      matrix_(0, 1) = -2;
      matrix_(1, 0) = 2;
      matrix_(2, 3) = -4;
      matrix_(3, 2) = 4;
    }
  }

  BasicSeries<Real> build() {
    BasicSeries<Real> out;
    out.family = family_;
    out.f = f_;
    out.order = order_;
    const bool growing = family_ != SeriesFamily::Bounded;
    if (growing) {
      using std::atan2;
      out.psi = atan2(sin_, cos_);
      mus_.assign(static_cast<std::size_t>(order_ + 1), Real(0));
    }

    for (int n = 0; n <= order_; ++n) {
      const V4<Real> rhs = stage_rhs(n);
      if (!growing) {
        set(n, matrix_.partialPivLu().solve(rhs));
        continue;
      }
      if (n == 0) {
        // Stage 0 is homogeneous; the t^0 term is taken to vanish (mu_0 = 0).
        set(0, V4<Real>::Zero());
        continue;
      }
      const Real residual = relative_solvability(rhs);
      if (residual > Real(kSolvabilityTol))
        throw DomainError("stage " + std::to_string(n) + " violates the solvability condition (" +
                          std::to_string(static_cast<double>(residual)) + ")");
      const V4<Real> particular = min_norm_solve(rhs);
      set(n, particular);
      const Real mu = fix_mu(n, particular);
      mus_[static_cast<std::size_t>(n)] = mu;
      set(n, particular + mu * y0_);

      LinearStage stage;
      stage.order = n;
      stage.M = to_mat4d(matrix_);
      stage.rhs = to_vec4d(rhs);
      stage.Y0 = to_vec4d(y0_);
      stage.Z = to_vec4d(z_);
      stage.Xk = to_vec4d(particular);
      stage.solvability_residual = static_cast<double>(residual);
      out.stages.push_back(stage);
    }

    out.coeffs.reserve(a_.size());
    for (int k = -1; k <= order_; ++k) out.coeffs.push_back({k, a(k), b(k)});
    out.mus = mus_;
    return out;
  }

 private:
  C a(int k) const { return k < -1 || k > order_ ? C(0) : a_[static_cast<std::size_t>(k + 1)]; }
  C b(int k) const { return k < -1 || k > order_ ? C(0) : b_[static_cast<std::size_t>(k + 1)]; }

  V4<Real> packed(int k) const {
    V4<Real> v;
    v << a(k).real(), a(k).imag(), b(k).real(), b(k).imag();
    return v;
  }

  void set(int k, const V4<Real>& v) {
    a_[static_cast<std::size_t>(k + 1)] = C(v[0], v[1]);
    b_[static_cast<std::size_t>(k + 1)] = C(v[2], v[3]);
  }

  // Right-hand side of stage n, multiplied by i to match the stage matrix.
  // Only coefficients with index in [0, n-2] contribute when a_0 = 0, so the
  // value is final once mu_{n-2} is fixed.
  V4<Real> stage_rhs(int n) const {
    V4<Real> quad = V4<Real>::Zero();
    const int total = n - 1;
    for (int m = 0; 2 * m <= total; ++m) {
      const int l = total - m;
      if (l > order_) continue;
      const V4<Real> vm = packed(m);
      if (m == l) {
        quad += odot_impl<Real>(vm, vm) / Real(2);
      } else {
        quad += odot_impl<Real>(vm, packed(l));
      }
    }
    const C i(Real(0), Real(1));
    const C sum_ab(quad[0], quad[1]);
    const C sum_aa(quad[2], quad[3]);
    const Real shift(n - 2);
    C ra = -(sum_ab / Real(2) + i * shift * a(n - 2));
    if (n == 1) ra -= C(Real(f_), Real(0));
    const C rb = -(sum_aa / Real(4) + i * shift * b(n - 2));
    const C fa = i * ra;
    const C fb = i * rb;
    V4<Real> out;
    out << fa.real(), fa.imag(), fb.real(), fb.imag();
    return out;
  }

  Real relative_solvability(const V4<Real>& rhs) const {
    const Real norm = rhs.norm();
    if (norm == Real(0)) return Real(0);
    return abs_real<Real>(z_hat_.dot(rhs)) / norm;
  }

  // Minimum-norm least-squares solution of the rank-3 stage: the bordered
  // matrix M + Z Y0^T is regular, and for a right-hand side orthogonal to Z
  // its solution satisfies M x = rhs and Y0.x = 0.
  V4<Real> min_norm_solve(const V4<Real>& rhs) const {
    const V4<Real> projected = rhs - z_hat_.dot(rhs) * z_hat_;
    V4<Real> x = bordered_lu_.solve(projected);
    x -= y0_hat_.dot(x) * y0_hat_;
    return x;
  }

  // mu_n enters the right-hand side two orders up, which is the first stage
  // to see it. The solvability condition there is a polynomial of degree
  // at most two in mu_n; sample it and solve.
  Real fix_mu(int n, const V4<Real>& particular) {
    auto condition = [&](const Real& mu) {
      set(n, particular + mu * y0_);
      return z_hat_.dot(stage_rhs(n + 2));
    };
    const Real g0 = condition(Real(0));
    const Real gp = condition(Real(1));
    const Real gm = condition(Real(-1));
    set(n, particular);
    const Real c1 = (gp - gm) / Real(2);
    const Real c2 = (gp + gm) / Real(2) - g0;
    const Real scale = abs_real<Real>(g0) + abs_real<Real>(c1) + Real(1);
    const Real eps = Real(std::numeric_limits<Real>::epsilon());
    using std::sqrt;
    if (abs_real<Real>(c2) > sqrt(eps) * scale) {
      const Real disc = c1 * c1 - Real(4) * c2 * g0;
      if (disc < Real(0))
        throw DomainError("no real homogeneous multiple at order " + std::to_string(n));
      const Real root = sqrt(disc);
      const Real r1 = (-c1 + root) / (Real(2) * c2);
      const Real r2 = (-c1 - root) / (Real(2) * c2);
      return abs_real<Real>(r1) <= abs_real<Real>(r2) ? r1 : r2;
    }
    if (abs_real<Real>(c1) <= eps * scale)
      throw DomainError("homogeneous multiple undetermined at order " + std::to_string(n));
    return -g0 / c1;
  }

  double f_;
  SeriesFamily family_;
  int order_;
  std::vector<C> a_, b_;
  std::vector<Real> mus_;
  Real sin_{0}, cos_{1}, eff_sin_{0}, eff_cos_{1};
  M4<Real> matrix_ = M4<Real>::Zero();
  V4<Real> y0_ = V4<Real>::Zero(), z_ = V4<Real>::Zero();
  V4<Real> y0_hat_ = V4<Real>::Zero(), z_hat_ = V4<Real>::Zero();
  Eigen::PartialPivLU<M4<Real>> bordered_lu_;
};

}  // namespace

const char* to_string(SeriesFamily family) {
  switch (family) {
    case SeriesFamily::Bounded: return "bounded";
    case SeriesFamily::GrowingPlus: return "plus";
    case SeriesFamily::GrowingMinus: return "minus";
  }
  return "unknown";
}

SeriesFamily parse_family(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "bounded" || lower == "a2") return SeriesFamily::Bounded;
  if (lower == "plus" || lower == "growing-plus" || lower == "a3")
    return SeriesFamily::GrowingPlus;
  if (lower == "minus" || lower == "growing-minus" || lower == "a1")
    return SeriesFamily::GrowingMinus;
  throw std::invalid_argument("unknown series family '" + std::string(name) + "'");
}

double turning_angle(double f, SeriesFamily family, CosBranch branch) {
  if (family == SeriesFamily::Bounded)
    throw std::invalid_argument("the bounded family has no turning angle");
  require_growing_threshold(f);
  const auto [s, c] = turning_sincos<double>(f, family, branch);
  return std::atan2(s, c);
}

Mat4 build_stage_matrix(double psi) {
  return stage_matrix_from(std::sin(psi), std::cos(psi));
}

Vec4 stage_null(double psi) { return null_from(std::sin(psi), std::cos(psi)); }

Vec4 adjoint_null(double psi) {
  const Vec4 z = adjoint_from(std::sin(psi), std::cos(psi));
  const Vec4 check = build_stage_matrix(psi).transpose() * z;
  if (check.norm() > 1e-12) throw std::logic_error("adjoint null vector check failed");
  return z;
}

Vec4 odot(const Vec4& y, const Vec4& x) { return odot_impl<double>(y, x); }

template <class Real>
BasicSeries<Real> build_series(double f, SeriesFamily family, int order, CosBranch branch) {
  if (!std::isfinite(f)) throw std::invalid_argument("forcing must be finite");
  if (order < 1) throw std::invalid_argument("truncation order must be >= 1");
  if (family != SeriesFamily::Bounded) require_growing_threshold(f);
  return SeriesBuilder<Real>(f, family, order, branch).build();
}

template BasicSeries<double> build_series<double>(double, SeriesFamily, int, CosBranch);
template BasicSeries<QuadReal> build_series<QuadReal>(double, SeriesFamily, int, CosBranch);

AsymptoticSeries bounded_series(double f, int order) {
  if (order < 1 || order % 2 == 0)
    throw std::invalid_argument("bounded series order must be odd and >= 1");
  return build_series<double>(f, SeriesFamily::Bounded, order);
}

AsymptoticSeries growing_series(double f, SeriesFamily family, int order, CosBranch branch) {
  if (family == SeriesFamily::Bounded)
    throw std::invalid_argument("growing_series needs a growing family");
  return build_series<double>(f, family, order, branch);
}

template <class Real>
std::pair<ComplexOf<Real>, ComplexOf<Real>> eval_series(const BasicSeries<Real>& s,
                                                         const Real& t) {
  using C = ComplexOf<Real>;
  if (!(t > Real(0))) throw std::invalid_argument("series evaluation needs t > 0");
  const Real inv = Real(1) / t;
  // Horner in 1/t over k = 0..K, then the t^1 term.
  C A(0), B(0);
  for (auto it = s.coeffs.rbegin(); it != s.coeffs.rend() && it->k >= 0; ++it) {
    A = A * inv + it->a;
    B = B * inv + it->b;
  }
  const auto& lead = s.term(-1);
  return {A + lead.a * t, B + lead.b * t};
}

template <class Real>
Real series_residual(const BasicSeries<Real>& s, const Real& t) {
  using C = ComplexOf<Real>;
  if (!(t > Real(0))) throw std::invalid_argument("series residual needs t > 0");
  const auto [A, B] = eval_series<Real>(s, t);
  // d/dt sum c_k t^-k = sum -k c_k t^(-k-1).
  C dA(0), dB(0);
  const Real inv = Real(1) / t;
  for (const auto& term : s.coeffs) {
    if (term.k == 0) continue;
    using std::pow;
    const Real w = Real(-term.k) * pow(inv, term.k + 1);
    dA += w * term.a;
    dB += w * term.b;
  }
  const C i(Real(0), Real(1));
  using std::conj;
  const C ra = dA + i * (Real(2) * t * A + conj(A) * B / Real(2) + C(Real(s.f), Real(0)));
  const C rb = dB + i * (Real(4) * t * B + A * A / Real(4));
  using std::norm;
  using std::sqrt;
  return sqrt(norm(ra) + norm(rb));
}

template std::pair<Complex, Complex> eval_series<double>(const AsymptoticSeries&, const double&);
template std::pair<ComplexOf<QuadReal>, ComplexOf<QuadReal>> eval_series<QuadReal>(
    const QuadSeries&, const QuadReal&);
template double series_residual<double>(const AsymptoticSeries&, const double&);
template QuadReal series_residual<QuadReal>(const QuadSeries&, const QuadReal&);

}  // namespace autores
