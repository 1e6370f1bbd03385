#pragma once

#include <cstdint>
#include <random>

#include "sp2/algebra.hpp"

namespace sp2 {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to derive independent per-sample seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double standard_normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

inline Quatd random_quaternion(Rng& rng) {
  const double w = standard_normal(rng);
  const double x = standard_normal(rng);
  const double y = standard_normal(rng);
  const double z = standard_normal(rng);
  return {w, x, y, z};
}

inline Quatd random_imaginary(Rng& rng) { return im(random_quaternion(rng)); }

inline Elementd random_element(Rng& rng) {
  const Quatd x = random_imaginary(rng);
  const Quatd y = random_quaternion(rng);
  const Quatd z = random_imaginary(rng);
  return {x, y, z};
}

/// Uniform (r1, r2) in (0, hi]^2, bounded away from zero by lo.
inline Metricd random_metric(Rng& rng, double lo = 0.05, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  const double r1 = u(rng);
  const double r2 = u(rng);
  return {r1, r2};
}

/// Uniform (r1, r2) with r1 + r2 <= 2 (rejection sampling).
inline Metricd random_metric_nonneg(Rng& rng, double lo = 0.05) {
  std::uniform_real_distribution<double> u(lo, 2.0);
  for (;;) {
    const double r1 = u(rng);
    const double r2 = u(rng);
    if (r1 + r2 <= 2.0) return {r1, r2};
  }
}

/// Uniform (r1, r2) in (0, 2]^2 with r1 + r2 > 2 + margin.
inline Metricd random_metric_positive_excess(Rng& rng, double margin = 1e-3) {
  std::uniform_real_distribution<double> u(0.05, 2.0);
  for (;;) {
    const double r1 = u(rng);
    const double r2 = u(rng);
    if (r1 + r2 > 2.0 + margin) return {r1, r2};
  }
}

/// Random element of Sp(2) from two Gaussian quaternionic columns.
inline Sp2d random_sp2(Rng& rng) {
  const Quatd a = random_quaternion(rng);
  const Quatd c = random_quaternion(rng);
  const Quatd b = random_quaternion(rng);
  const Quatd d = random_quaternion(rng);
  return Sp2d::reorthonormalized(QuatMatrix<double>{a, b, c, d});
}

}  // namespace sp2
