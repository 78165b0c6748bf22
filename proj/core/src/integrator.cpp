#include "autores/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace autores {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
// Difference between the 5th and embedded 4th order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Shampine's dense output weights.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

// PI controller.
constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;
constexpr double kBeta = 0.04;
constexpr double kAlpha = 0.2 - 0.75 * kBeta;

bool all_finite(std::span<const double> y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

bool exceeds_blow_up(std::span<const double> y) {
  return std::any_of(y.begin(), y.end(),
                     [](double v) { return !std::isfinite(v) || std::fabs(v) > kBlowUpThreshold; });
}

class DormandPrince {
 public:
  DormandPrince(const VectorField& rhs, std::size_t n, const IntegratorConfig& cfg)
      : rhs_(rhs), cfg_(cfg), n_(n) {
    for (auto* v : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &ytmp_, &ynew_, &r1_, &r2_, &r3_,
                    &r4_, &r5_})
      v->resize(n);
  }

  Trajectory run(double t0, std::span<const double> y0, double t1,
                 std::span<const double> grid) {
    Trajectory out;
    const double dir = t1 > t0 ? 1.0 : -1.0;
    std::vector<double> y(y0.begin(), y0.end());
    double t = t0;

    std::size_t next = 0;
    const bool use_grid = !grid.empty();
    auto emit = [&](double ts, std::span<const double> ys) {
      out.samples.push_back({ts, std::vector<double>(ys.begin(), ys.end())});
    };
    auto emit_final = [&](double ts, std::span<const double> ys) {
      if (out.samples.empty() || out.samples.back().t != ts) emit(ts, ys);
    };
    if (use_grid) {
      while (next < grid.size() && grid[next] == t0) emit(grid[next++], y);
    } else {
      emit(t, y);
    }

    eval(t, y, k1_);
    double h = cfg_.initial_step ? std::fabs(*cfg_.initial_step) : initial_step(t, y, dir);
    h = std::min(h, cfg_.max_step);
    double err_prev = 1e-4;
    bool last_rejected = false;

    while (dir * (t1 - t) > 0.0) {
      if (out.stats.accepted >= cfg_.max_steps) {
        out.status = IntegrationStatus::StepBudgetExhausted;
        return out;
      }
      const double min_h = 16.0 * std::numeric_limits<double>::epsilon() *
                           std::max(std::fabs(t), 1.0);
      if (h < min_h) {
        // Step size collapsed: the solution is no longer resolvable.
        out.status = IntegrationStatus::BlowUpDetected;
        emit_final(t, y);
        return out;
      }
      bool final_step = false;
      double step = dir * h;
      if (dir * (t + step - t1) >= 0.0) {
        step = t1 - t;
        final_step = true;
      }

      const double err = attempt(t, y, step);
      if (std::isfinite(err) && err <= 1.0) {
        ++out.stats.accepted;
        const double t_new = final_step ? t1 : t + step;
        if (use_grid) {
          prepare_dense(y, step);
          while (next < grid.size() && dir * (grid[next] - t_new) < 0.0) {
            const double theta = (grid[next] - t) / step;
            emit(grid[next++], dense(theta));
          }
          while (next < grid.size() && grid[next] == t_new) emit(grid[next++], ynew_);
        } else {
          emit(t_new, ynew_);
        }
        t = t_new;
        y.swap(ynew_);
        std::swap(k1_, k7_);  // FSAL

        if (exceeds_blow_up(y)) {
          out.status = IntegrationStatus::BlowUpDetected;
          emit_final(t, y);
          return out;
        }

        double fac = kSafety * std::pow(err, -kAlpha) * std::pow(err_prev, kBeta);
        if (!std::isfinite(fac)) fac = kMaxFactor;
        fac = std::clamp(fac, kMinFactor, kMaxFactor);
        if (last_rejected) fac = std::min(fac, 1.0);
        h = std::min(std::fabs(step) * fac, cfg_.max_step);
        err_prev = std::max(err, 1e-4);
        last_rejected = false;
      } else {
        ++out.stats.rejected;
        double fac = std::isfinite(err) ? kSafety * std::pow(err, -kAlpha) : kMinFactor;
        fac = std::clamp(fac, kMinFactor, 1.0);
        h = std::fabs(step) * fac;
        last_rejected = true;
      }
    }
    out.status = IntegrationStatus::Completed;
    return out;
  }

  std::size_t evaluations() const { return evals_; }

 private:
  void eval(double t, std::span<const double> y, std::vector<double>& dy) {
    rhs_(t, y, dy);
    ++evals_;
  }

  // Hairer & Wanner's starting step heuristic.
  double initial_step(double t, std::span<const double> y, double dir) {
    double d0 = 0.0, d1n = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double sc = cfg_.atol + cfg_.rtol * std::fabs(y[i]);
      d0 += (y[i] / sc) * (y[i] / sc);
      d1n += (k1_[i] / sc) * (k1_[i] / sc);
    }
    d0 = std::sqrt(d0 / n_);
    d1n = std::sqrt(d1n / n_);
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h0 = std::min(h0, cfg_.max_step);
    for (std::size_t i = 0; i < n_; ++i) ytmp_[i] = y[i] + dir * h0 * k1_[i];
    eval(t + dir * h0, ytmp_, k2_);
    double d2 = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double sc = cfg_.atol + cfg_.rtol * std::fabs(y[i]);
      const double v = (k2_[i] - k1_[i]) / sc;
      d2 += v * v;
    }
    d2 = std::sqrt(d2 / n_) / h0;
    const double dm = std::max(d1n, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    return std::min({100.0 * h0, h1, cfg_.max_step});
  }

  double attempt(double t, std::span<const double> y, double h) {
    for (std::size_t i = 0; i < n_; ++i) ytmp_[i] = y[i] + h * a21 * k1_[i];
    eval(t + c2 * h, ytmp_, k2_);
    for (std::size_t i = 0; i < n_; ++i) ytmp_[i] = y[i] + h * (a31 * k1_[i] + a32 * k2_[i]);
    eval(t + c3 * h, ytmp_, k3_);
    for (std::size_t i = 0; i < n_; ++i)
      ytmp_[i] = y[i] + h * (a41 * k1_[i] + a42 * k2_[i] + a43 * k3_[i]);
    eval(t + c4 * h, ytmp_, k4_);
    for (std::size_t i = 0; i < n_; ++i)
      ytmp_[i] = y[i] + h * (a51 * k1_[i] + a52 * k2_[i] + a53 * k3_[i] + a54 * k4_[i]);
    eval(t + c5 * h, ytmp_, k5_);
    for (std::size_t i = 0; i < n_; ++i)
      ytmp_[i] = y[i] + h * (a61 * k1_[i] + a62 * k2_[i] + a63 * k3_[i] + a64 * k4_[i] +
                             a65 * k5_[i]);
    eval(t + h, ytmp_, k6_);
    for (std::size_t i = 0; i < n_; ++i)
      ynew_[i] = y[i] + h * (a71 * k1_[i] + a73 * k3_[i] + a74 * k4_[i] + a75 * k5_[i] +
                             a76 * k6_[i]);
    eval(t + h, ynew_, k7_);

    double err = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double e = h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] +
                            e6 * k6_[i] + e7 * k7_[i]);
      const double sc = cfg_.atol + cfg_.rtol * std::max(std::fabs(y[i]), std::fabs(ynew_[i]));
      err = std::max(err, std::fabs(e) / sc);
    }
    return err;
  }

  void prepare_dense(std::span<const double> y, double h) {
    for (std::size_t i = 0; i < n_; ++i) {
      const double dy = ynew_[i] - y[i];
      const double bspl = h * k1_[i] - dy;
      r1_[i] = y[i];
      r2_[i] = dy;
      r3_[i] = bspl;
      r4_[i] = dy - h * k7_[i] - bspl;
      r5_[i] = h * (d1 * k1_[i] + d3 * k3_[i] + d4 * k4_[i] + d5 * k5_[i] + d6 * k6_[i] +
                    d7 * k7_[i]);
    }
  }

  std::span<const double> dense(double theta) {
    const double s = 1.0 - theta;
    for (std::size_t i = 0; i < n_; ++i)
      ytmp_[i] = r1_[i] + theta * (r2_[i] + s * (r3_[i] + theta * (r4_[i] + s * r5_[i])));
    return ytmp_;
  }

  const VectorField& rhs_;
  const IntegratorConfig& cfg_;
  std::size_t n_;
  std::size_t evals_ = 0;
  std::vector<double> k1_, k2_, k3_, k4_, k5_, k6_, k7_, ytmp_, ynew_;
  std::vector<double> r1_, r2_, r3_, r4_, r5_;
};

}  // namespace

void IntegratorConfig::validate() const {
  if (!(rtol > 0.0 && rtol < 1.0)) throw std::invalid_argument("rtol must lie in (0, 1)");
  if (!(atol > 0.0)) throw std::invalid_argument("atol must be positive");
  if (!(max_step > 0.0)) throw std::invalid_argument("max_step must be positive");
  if (max_steps == 0) throw std::invalid_argument("max_steps must be positive");
  if (initial_step && !(std::fabs(*initial_step) > 0.0))
    throw std::invalid_argument("initial_step must be non-zero");
}

const char* to_string(IntegrationStatus s) {
  switch (s) {
    case IntegrationStatus::Completed: return "completed";
    case IntegrationStatus::StepBudgetExhausted: return "step-budget-exhausted";
    case IntegrationStatus::BlowUpDetected: return "blow-up-detected";
  }
  return "unknown";
}

Trajectory integrate(const VectorField& rhs, double t0, std::span<const double> y0, double t1,
                     const IntegratorConfig& cfg, std::span<const double> sample_grid) {
  cfg.validate();
  if (!std::isfinite(t0) || !std::isfinite(t1) || t0 == t1)
    throw std::invalid_argument("integration span must be finite and non-empty");
  if (y0.empty()) throw std::invalid_argument("empty initial state");
  if (!all_finite(y0)) throw std::invalid_argument("initial state is not finite");
  const double dir = t1 > t0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < sample_grid.size(); ++i) {
    const double g = sample_grid[i];
    if (dir * (g - t0) < 0.0 || dir * (g - t1) > 0.0)
      throw std::invalid_argument("sample grid leaves the integration span");
    if (i > 0 && dir * (g - sample_grid[i - 1]) <= 0.0)
      throw std::invalid_argument("sample grid must be strictly monotone");
  }
  DormandPrince dp(rhs, y0.size(), cfg);
  Trajectory traj = dp.run(t0, y0, t1, sample_grid);
  traj.stats.rhs_evaluations = dp.evaluations();
  return traj;
}

std::vector<double> interleave(std::span<const Complex> z) {
  std::vector<double> y;
  y.reserve(2 * z.size());
  for (const Complex& c : z) {
    y.push_back(c.real());
    y.push_back(c.imag());
  }
  return y;
}

std::vector<Complex> deinterleave(std::span<const double> y) {
  if (y.size() % 2 != 0) throw std::invalid_argument("interleaved vector has odd length");
  std::vector<Complex> z(y.size() / 2);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = {y[2 * i], y[2 * i + 1]};
  return z;
}

Trajectory integrate_complex(const ComplexVectorField& rhs, double t0,
                             std::span<const Complex> z0, double t1,
                             const IntegratorConfig& cfg, std::span<const double> sample_grid) {
  const std::size_t m = z0.size();
  std::vector<Complex> zbuf(m), dzbuf(m);
  VectorField real_rhs = [&](double t, std::span<const double> y, std::span<double> dy) {
    for (std::size_t i = 0; i < m; ++i) zbuf[i] = {y[2 * i], y[2 * i + 1]};
    rhs(t, zbuf, dzbuf);
    for (std::size_t i = 0; i < m; ++i) {
      dy[2 * i] = dzbuf[i].real();
      dy[2 * i + 1] = dzbuf[i].imag();
    }
  };
  const std::vector<double> y0 = interleave(z0);
  return integrate(real_rhs, t0, y0, t1, cfg, sample_grid);
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t n) {
  if (n < 2) throw std::invalid_argument("grid needs at least two points");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1);
  g.back() = t1;
  return g;
}

}  // namespace autores
