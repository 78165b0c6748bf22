#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include "autores/model.hpp"

namespace testgen {

// Small deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  autores::Complex complex(double scale = 1.0) { return {uniform(-scale, scale), uniform(-scale, scale)}; }
  double sign() { return integer(0, 1) ? 1.0 : -1.0; }

  autores::PhysicalParams params() {
    autores::PhysicalParams p;
    p.omega = uniform(0.3, 3.0);
    const double s = sign();
    p.alpha1 = s * uniform(0.2, 3.0);
    p.alpha2 = s * uniform(0.2, 3.0);
    p.gamma = uniform(-5.0, 5.0);
    p.alpha = uniform(0.1, 4.0);
    p.epsilon = uniform(1e-4, 1e-2);
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testgen
