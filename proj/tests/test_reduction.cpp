#include <gtest/gtest.h>

#include <cmath>

#include "autores/reduction.hpp"
#include "support/gen.hpp"

using namespace autores;

TEST(Scaling, UnitParameters) {
  PhysicalParams p;
  p.gamma = 12.0;
  const ScalingMap m = scale_params(p);
  EXPECT_DOUBLE_EQ(m.kappa, 1.0);
  EXPECT_DOUBLE_EQ(m.lambda, 1.0);
  EXPECT_DOUBLE_EQ(m.chi, 1.0);
  // The conjugacy below fixes f = gamma / 2 here.
  EXPECT_DOUBLE_EQ(m.f, 6.0);
}

TEST(Scaling, ChirpFour) {
  PhysicalParams p;
  p.alpha = 4.0;
  p.gamma = 12.0;
  const ScalingMap m = scale_params(p);
  EXPECT_DOUBLE_EQ(m.kappa, 2.0);
  EXPECT_DOUBLE_EQ(m.lambda, 2.0);
  EXPECT_DOUBLE_EQ(m.chi, 0.5);
  EXPECT_DOUBLE_EQ(m.f, 1.5);
}

TEST(Scaling, ZeroForcingAndHomogeneity) {
  testgen::Gen g(21);
  for (int i = 0; i < 20; ++i) {
    PhysicalParams p = g.params();
    const ScalingMap m = scale_params(p);
    p.gamma *= 2.0;
    const ScalingMap m2 = scale_params(p);
    EXPECT_DOUBLE_EQ(m2.f, 2.0 * m.f);
    EXPECT_EQ(m2.kappa, m.kappa);
    EXPECT_EQ(m2.lambda, m.lambda);
    EXPECT_EQ(m2.chi, m.chi);
    p.gamma = 0.0;
    EXPECT_EQ(scale_params(p).f, 0.0);
    EXPECT_NEAR(scale_params(p).kappa, m.kappa, 0.0);
  }
}

TEST(Scaling, SignOfForcing) {
  PhysicalParams p;
  p.gamma = -3.0;
  EXPECT_LT(scale_params(p).f, 0.0);
  p.alpha1 = -2.0;
  p.alpha2 = -0.5;
  EXPECT_LT(scale_params(p).f, 0.0);
}

TEST(Scaling, Rejections) {
  PhysicalParams p;
  p.alpha = 0.0;
  EXPECT_THROW(scale_params(p), std::invalid_argument);
  p = {};
  p.alpha1 = 1.0;
  p.alpha2 = -1.0;
  EXPECT_THROW(scale_params(p), std::invalid_argument);
}

TEST(Scaling, GammaForForcingInverts) {
  testgen::Gen g(22);
  for (int i = 0; i < 20; ++i) {
    PhysicalParams p = g.params();
    const double f = g.uniform(-20, 20);
    p.gamma = gamma_for_forcing(f, p);
    EXPECT_NEAR(scale_params(p).f, f, 1e-12 * (1 + std::fabs(f)));
  }
}

TEST(Conjugacy, SlowFieldMapsOntoPrimary) {
  testgen::Gen g(23);
  for (int i = 0; i < 200; ++i) {
    const PhysicalParams p = g.params();
    const ScalingMap m = scale_params(p);
    const double t = g.uniform(-5, 5);
    const Complex A = g.complex(3), B = g.complex(3);
    const SlowState s = normalized_to_slow({t, A, B}, m);
    const AmplitudeRates slow = rhs_slow(s.tau, s.a, s.b, p);
    const AmplitudeRates prim = rhs_primary(t, A, B, m.f);
    // dA/dt = (chi/lambda) da/dtau, dB/dt = (chi/kappa) db/dtau.
    const Complex dA = m.chi / m.lambda * slow.first;
    const Complex dB = m.chi / m.kappa * slow.second;
    const double scale = 1.0 + std::abs(prim.first) + std::abs(prim.second);
    EXPECT_LT(std::abs(dA - prim.first) / scale, 1e-12);
    EXPECT_LT(std::abs(dB - prim.second) / scale, 1e-12);
  }
}

TEST(Conversion, Examples) {
  const ScalingMap id{};
  const SlowState s = normalized_to_slow({2.5, {1, 2}, {3, 4}}, id);
  EXPECT_EQ(s.tau, 2.5);
  EXPECT_EQ(s.a, Complex(1, 2));
  EXPECT_EQ(s.b, Complex(3, 4));

  const ScalingMap m{3.0, 2.0, 0.5, 0.0};
  const SlowState q = normalized_to_slow({2.0, 1.0, {0, 1}}, m);
  EXPECT_EQ(q.tau, 1.0);
  EXPECT_EQ(q.a, Complex(2.0));
  EXPECT_EQ(q.b, Complex(0, 3));
}

TEST(Conversion, RoundTrip) {
  testgen::Gen g(24);
  for (int i = 0; i < 100; ++i) {
    const ScalingMap m = scale_params(g.params());
    const ResonanceState r{g.uniform(0, 50), g.complex(10), g.complex(10)};
    const ResonanceState back = slow_to_normalized(normalized_to_slow(r, m), m);
    EXPECT_NEAR(back.t, r.t, 1e-14 * (1 + r.t));
    EXPECT_LT(std::abs(back.A - r.A), 1e-14 * (1 + std::abs(r.A)));
    EXPECT_LT(std::abs(back.B - r.B), 1e-14 * (1 + std::abs(r.B)));
  }
}

TEST(Reconstruct, Examples) {
  PhysicalParams p;
  p.epsilon = 1e-3;
  auto [x0, y0] = reconstruct_physical(0.0, 0.0, 0.3, p);
  EXPECT_EQ(x0, 0.0);
  EXPECT_EQ(y0, 0.0);
  auto [x1, y1] = reconstruct_physical(1.0, 0.0, 0.0, p);
  EXPECT_DOUBLE_EQ(x1, 2.0);
  EXPECT_EQ(y1, 0.0);
  const double tau = 0.4;
  const Complex a(0.3, -0.1), b(0.2, 0.5);
  const double phase = p.alpha * tau * tau + p.omega * tau / p.epsilon;
  auto [x, y] = reconstruct_physical(a, b, tau, p);
  EXPECT_NEAR(x, 2 * (a * std::polar(1.0, phase)).real(), 1e-12);
  EXPECT_NEAR(y, 2 * (b * std::polar(1.0, 2 * phase)).real(), 1e-12);
  p.epsilon = 0.0;
  EXPECT_THROW(reconstruct_physical(a, b, tau, p), std::invalid_argument);
}

TEST(Reconstruct, StateMatchesDisplacements) {
  PhysicalParams p;
  p.epsilon = 2e-3;
  const SlowState s{0.7, {0.4, 0.1}, {-0.2, 0.3}};
  const PhysicalState ps = physical_state_from_slow(s, p);
  const auto [x, y] = reconstruct_physical(s.a, s.b, s.tau, p);
  EXPECT_NEAR(ps.x, x, 1e-12);
  EXPECT_NEAR(ps.y, y, 1e-12);
  EXPECT_NEAR(ps.theta, s.tau / p.epsilon, 1e-9);
}

TEST(Envelope, PhysicalSystemTracksNormalizedSystem) {
  PhysicalParams p;
  p.epsilon = 1e-3;
  p.gamma = gamma_for_forcing(3.0, p);
  IntegratorConfig cfg;
  cfg.rtol = 1e-10;
  cfg.atol = 1e-12;
  const EnvelopeComparison c = compare_envelopes(p, {0.5, 0.2}, {0.3, -0.1}, 1.0, cfg);
  ASSERT_EQ(c.physical_status, IntegrationStatus::Completed);
  ASSERT_GT(c.points.size(), 100u);
  EXPECT_LT(c.max_relative_error, 0.05);
  EXPECT_GT(c.points.back().tau, 0.95);
}
