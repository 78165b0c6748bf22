#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "autores/errors.hpp"
#include "autores/stability.hpp"
#include "support/gen.hpp"

using namespace autores;

namespace {

Vec4 rhs_real(double t, const Vec4& x, double f) {
  const auto r = rhs_primary(t, {x[0], x[1]}, {x[2], x[3]}, f);
  return {r.first.real(), r.first.imag(), r.second.real(), r.second.imag()};
}

bool contains(const Spectrum& s, Complex z, double rel) {
  return std::any_of(s.begin(), s.end(), [&](Complex w) { return std::abs(w - z) <= rel * std::abs(z); });
}

}  // namespace

TEST(Linearize, ZeroReference) {
  testgen::Gen g(31);
  for (int i = 0; i < 5; ++i) {
    const double t = g.uniform(0.5, 50);
    const Spectrum s = numeric_eigenvalues(linearize(t, 0.0, 0.0));
    for (Complex z : {Complex(0, 2 * t), Complex(0, -2 * t), Complex(0, 4 * t), Complex(0, -4 * t)})
      EXPECT_TRUE(contains(s, z, 1e-12));
  }
}

TEST(Linearize, FiniteDifferenceOracle) {
  testgen::Gen g(32);
  for (int i = 0; i < 20; ++i) {
    const double t = g.uniform(-20, 20), f = g.uniform(-15, 15);
    const Vec4 x(g.uniform(-5, 5), g.uniform(-5, 5), g.uniform(-5, 5), g.uniform(-5, 5));
    Vec4 d(g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1));
    d.normalize();
    const double h = 1e-6;
    const Vec4 fd = (rhs_real(t, x + h * d, f) - rhs_real(t, x - h * d, f)) / (2 * h);
    const Vec4 jd = linearize(t, {x[0], x[1]}, {x[2], x[3]}).M * d;
    EXPECT_LT((fd - jd).norm() / jd.norm(), 1e-6);
  }
}

TEST(Linearize, SpectrumClosedUnderConjugation) {
  testgen::Gen g(33);
  for (int i = 0; i < 20; ++i) {
    const Spectrum s = numeric_eigenvalues(linearize(g.uniform(0, 30), g.complex(40), g.complex(40)));
    for (Complex z : s) EXPECT_TRUE(contains(s, std::conj(z), 1e-9) || std::abs(z) < 1e-12);
  }
}

TEST(Asymptotic, ClosedForms) {
  const Spectrum a1 = asymptotic_eigenvalues(13.0, SeriesFamily::GrowingMinus, 100.0);
  EXPECT_TRUE(contains(a1, 0.912871, 1e-6));
  EXPECT_TRUE(contains(a1, -0.912871, 1e-6));
  EXPECT_TRUE(contains(a1, Complex(0, 400 * std::sqrt(3.0)), 1e-12));
  const Spectrum a3 = asymptotic_eigenvalues(13.0, SeriesFamily::GrowingPlus, 100.0);
  EXPECT_TRUE(contains(a3, Complex(0, 0.912871), 1e-6));
  const Spectrum a2 = asymptotic_eigenvalues(13.0, SeriesFamily::Bounded, 100.0);
  for (double w : {-400.0, -200.0, 200.0, 400.0}) EXPECT_TRUE(contains(a2, Complex(0, w), 1e-15));
  EXPECT_THROW(asymptotic_eigenvalues(12.0, SeriesFamily::GrowingMinus, 100.0), DomainError);
}

TEST(Asymptotic, NumericMatchesAlongA1) {
  for (double t : {50.0, 100.0, 200.0}) {
    const EigenReport r = eigen_report(13.0, SeriesFamily::GrowingMinus, t);
    const double lam = std::pow(25.0, 0.25) / std::sqrt(6.0);
    double real_err = 1e300, imag_err = 1e300;
    for (Complex z : r.numeric) {
      real_err = std::min(real_err, std::abs(z - lam));
      imag_err = std::min(imag_err, std::abs(z - Complex(0, 4 * std::sqrt(3.0) * t)));
    }
    EXPECT_LT(real_err, 5.0 / t) << "t=" << t;
    EXPECT_LT(imag_err, 5.0 / t) << "t=" << t;
  }
}

TEST(Asymptotic, NumericMatchesAlongA2AndA3) {
  const double t = 100.0;
  const EigenReport b = eigen_report(12.0, SeriesFamily::Bounded, t);
  for (Complex z : b.asymptotic) EXPECT_TRUE(contains(b.numeric, z, 1e-3));
  const EigenReport p = eigen_report(13.0, SeriesFamily::GrowingPlus, t);
  for (Complex z : p.asymptotic) EXPECT_TRUE(contains(p.numeric, z, 2e-2)) << z;
}

TEST(Classify, Families) {
  EXPECT_EQ(classify_stability(13.0, SeriesFamily::GrowingMinus), StabilityClass::Unstable);
  EXPECT_EQ(classify_stability(13.0, SeriesFamily::Bounded), StabilityClass::Indeterminate);
  EXPECT_EQ(classify_stability(13.0, SeriesFamily::GrowingPlus), StabilityClass::Indeterminate);
  EXPECT_THROW(classify_stability(11.0, SeriesFamily::GrowingPlus), DomainError);
}
