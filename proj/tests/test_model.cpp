#include <gtest/gtest.h>

#include <cmath>

#include "autores/integrator.hpp"
#include "autores/model.hpp"
#include "support/gen.hpp"

using namespace autores;

namespace {

constexpr Complex I{0.0, 1.0};

void expect_near(Complex a, Complex b, double tol) {
  EXPECT_NEAR(a.real(), b.real(), tol);
  EXPECT_NEAR(a.imag(), b.imag(), tol);
}

}  // namespace

TEST(Primary, ZeroStateOnlyForcing) {
  const auto r = rhs_primary(0.0, 0.0, 0.0, 5.0);
  expect_near(r.first, -5.0 * I, 0.0);
  expect_near(r.second, 0.0, 0.0);
}

TEST(Primary, DirectSubstitution) {
  const auto r = rhs_primary(1.0, 2.0, 0.0, 0.0);
  expect_near(r.first, -4.0 * I, 1e-15);
  expect_near(r.second, -1.0 * I, 1e-15);
}

TEST(Primary, HandComputedPoint) {
  // 2tA = 4+4i, A*B/2 = (1+i)/2, plus f: 16.5+4.5i; times -i.
  // 4tB + A^2/4 = 8i + i/2; times -i.
  const auto r = rhs_primary(2.0, {1.0, 1.0}, I, 12.0);
  expect_near(r.first, {4.5, -16.5}, 1e-14);
  expect_near(r.second, {8.5, 0.0}, 1e-14);
}

TEST(Primary, PureAndDeterministic) {
  testgen::Gen g(1);
  for (int i = 0; i < 50; ++i) {
    const double t = g.uniform(-10, 10), f = g.uniform(-20, 20);
    const Complex A = g.complex(5), B = g.complex(5);
    EXPECT_EQ(rhs_primary(t, A, B, f), rhs_primary(t, A, B, f));
  }
}

TEST(Slow, Substitution) {
  PhysicalParams p;
  p.gamma = 2.0;
  auto r = rhs_slow(0.0, 0.0, 0.0, p);
  expect_near(r.first, -1.0 * I, 1e-15);
  expect_near(r.second, 0.0, 0.0);

  p.gamma = 0.0;
  p.alpha2 = 3.0;
  p.omega = 1.5;
  r = rhs_slow(1.0, 1.0, 0.0, p);
  expect_near(r.first, -2.0 * I, 1e-15);
  expect_near(r.second, -I * 3.0 / (4.0 * 1.5), 1e-15);
}

TEST(Rotating, Examples) {
  auto r = rhs_rotating(0.0, 0.0, 0.0, 3.0);
  expect_near(r.first, -3.0 * I, 1e-15);
  expect_near(r.second, 0.0, 0.0);
  r = rhs_rotating(1.7, 2.0, 0.0, 0.0);
  expect_near(r.first, 0.0, 0.0);
  expect_near(r.second, -1.0 * I, 1e-15);
}

TEST(Rotating, FrameEquivalenceUnderFlow) {
  testgen::Gen g(2);
  IntegratorConfig cfg;
  cfg.rtol = 1e-10;
  cfg.atol = 1e-12;
  for (int trial = 0; trial < 4; ++trial) {
    const double f = g.uniform(-13, 13);
    const Complex a0 = g.complex(2), b0 = g.complex(2);
    const double t0 = 1.0, t1 = 10.0;
    const Complex za[2] = {a0 * std::polar(1.0, -t0 * t0), b0 * std::polar(1.0, -2 * t0 * t0)};
    const Complex zr[2] = {a0, b0};
    const auto grid = uniform_grid(t0, t1, 11);
    const Trajectory prim = integrate_complex(
        [f](double t, std::span<const Complex> z, std::span<Complex> dz) {
          const auto r = rhs_primary(t, z[0], z[1], f);
          dz[0] = r.first;
          dz[1] = r.second;
        },
        t0, za, t1, cfg, grid);
    const Trajectory rot = integrate_complex(
        [f](double t, std::span<const Complex> z, std::span<Complex> dz) {
          const auto r = rhs_rotating(t, z[0], z[1], f);
          dz[0] = r.first;
          dz[1] = r.second;
        },
        t0, zr, t1, cfg, grid);
    ASSERT_EQ(prim.samples.size(), rot.samples.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double t = grid[i];
      const auto& p = prim.samples[i].y;
      const auto& q = rot.samples[i].y;
      const Complex A = Complex(q[0], q[1]) * std::polar(1.0, -t * t);
      const Complex B = Complex(q[2], q[3]) * std::polar(1.0, -2 * t * t);
      const double scale = 10.0 * (cfg.atol + cfg.rtol * (std::abs(A) + std::abs(B)));
      EXPECT_NEAR(p[0], A.real(), scale);
      EXPECT_NEAR(p[1], A.imag(), scale);
      EXPECT_NEAR(p[2], B.real(), scale);
      EXPECT_NEAR(p[3], B.imag(), scale);
    }
  }
}

TEST(Envelope, Examples) {
  auto r = rhs_envelope_leading({0.0, 5.0});
  expect_near(r.alpha0, 0.0, 0.0);
  expect_near(r.beta0, 0.0, 0.0);
  r = rhs_envelope_leading({2.0, 0.0});
  expect_near(r.alpha0, 0.0, 0.0);
  expect_near(r.beta0, -1.0 * I, 1e-15);
  r = rhs_envelope_leading({{1.0, 1.0}, 1.0});
  expect_near(r.alpha0, {-0.5, -0.5}, 1e-15);
  expect_near(r.beta0, {0.5, 0.0}, 1e-15);
}

TEST(Envelope, ConservedQuantitiesAreFieldIdentities) {
  testgen::Gen g(3);
  for (int i = 0; i < 200; ++i) {
    const Complex a = g.complex(3), b = g.complex(3);
    const auto d = rhs_envelope_leading({a, b});
    const double dE2 = 2.0 * (std::conj(a) * d.alpha0).real() + 4.0 * (std::conj(b) * d.beta0).real();
    // d/dt [2 Re(conj(a)^2 b)]
    const double dH = 2.0 * (2.0 * std::conj(a) * std::conj(d.alpha0) * b + std::conj(a) * std::conj(a) * d.beta0).real();
    EXPECT_NEAR(dE2, 0.0, 1e-12);
    EXPECT_NEAR(dH, 0.0, 1e-12);
  }
}

TEST(Physical, DecoupledOscillators) {
  PhysicalParams p;
  p.epsilon = 0.0;
  auto r = rhs_physical({3.0, 1.0, 0.0, 0.0, 0.0}, p);
  EXPECT_EQ(r, (PhysicalRates{0.0, -1.0, 0.0, 0.0}));
  r = rhs_physical({3.0, 0.0, 0.0, 1.0, 0.0}, p);
  EXPECT_EQ(r, (PhysicalRates{0.0, 0.0, 0.0, -4.0}));
}

TEST(Physical, CouplingAndForcing) {
  PhysicalParams p;
  p.omega = 2.0;
  p.alpha1 = 0.5;
  p.alpha2 = 3.0;
  p.gamma = 1.5;
  p.alpha = 0.7;
  p.epsilon = 0.01;
  const double theta = 4.0;
  const double tau = p.epsilon * theta;
  const double phase = p.omega * theta + p.alpha * tau * tau;
  const auto r = rhs_physical({theta, 0.3, -0.2, 0.4, 0.1}, p);
  EXPECT_NEAR(r[1], -4.0 * 0.3 + 0.01 * 0.5 * 0.3 * 0.4 + 2 * 0.01 * 1.5 * std::cos(phase), 1e-15);
  EXPECT_NEAR(r[3], -16.0 * 0.4 + 0.01 * 3.0 * 0.09, 1e-15);
  EXPECT_DOUBLE_EQ(p.forcing_phase(theta), phase);
}

TEST(Params, Validation) {
  PhysicalParams p;
  EXPECT_NO_THROW(p.validate());
  p.alpha = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.alpha1 = -1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.omega = -1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.epsilon = -1e-3;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}
