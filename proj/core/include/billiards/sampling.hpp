#pragma once

#include <cmath>
#include <cstdint>

#include "billiards/geometry.hpp"

namespace billiards {

/// SplitMix64 step; the fixed rule used to derive per-block and
/// per-direction seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master + 0x9E3779B97F4A7C15ull * (index + 1);
  return splitmix64(s);
}

/// xorshift-based generator with implementation-defined-free helpers, so
/// outputs are reproducible bit-for-bit across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x853C49E6748FEA9Bull) {
    // warm up
    next();
    next();
  }

  std::uint64_t next() { return splitmix64(state_); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double two_pi = 6.283185307179586;
    spare_ = r * std::sin(two_pi * u2);
    have_spare_ = true;
    return r * std::cos(two_pi * u2);
  }

  /// Uniform direction on the unit sphere in R^n.
  Vec unit_vector(int n) {
    Vec v(n);
    double norm2 = 0.0;
    do {
      for (int i = 0; i < n; ++i) v[i] = normal();
      norm2 = v.squaredNorm();
    } while (norm2 < 1e-30);
    return v / std::sqrt(norm2);
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline double frac(double x) { return x - std::floor(x); }

/// Kronecker (golden ratio) low-discrepancy sequence on [0, 1).
inline double golden_sequence(std::uint64_t i, double offset = 0.0) {
  constexpr double inv_phi = 0.6180339887498949;
  return frac(offset + static_cast<double>(i + 1) * inv_phi);
}

/// R2 low-discrepancy sequence on [0, 1)^2 (plastic-constant Kronecker).
inline void r2_sequence(std::uint64_t i, double& u, double& v,
                        double off_u = 0.0, double off_v = 0.0) {
  constexpr double a1 = 0.7548776662466927;  // 1/rho
  constexpr double a2 = 0.5698402909980532;  // 1/rho^2
  u = frac(off_u + static_cast<double>(i + 1) * a1);
  v = frac(off_v + static_cast<double>(i + 1) * a2);
}

/// Quasi-uniform direction on the unit sphere S^2 from a 2D
/// low-discrepancy point.
inline Eigen::Vector3d sphere_point(double u, double v) {
  const double z = 1.0 - 2.0 * u;
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double two_pi = 6.283185307179586;
  return {r * std::cos(two_pi * v), r * std::sin(two_pi * v), z};
}

/// k-th of n quasi-uniform directions covering the projective circle
/// (angles in [0, pi)).
inline Eigen::Vector2d circle_direction(int k, int n) {
  const double phi = M_PI * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
  return {std::cos(phi), std::sin(phi)};
}

/// k-th of n quasi-uniform directions on the upper hemisphere of S^2
/// (projective directions), Fibonacci lattice.
inline Eigen::Vector3d hemisphere_direction(int k, int n) {
  constexpr double golden_angle = 2.3999632297286533;
  const double z = (static_cast<double>(k) + 0.5) / static_cast<double>(n);  // (0,1)
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double a = golden_angle * static_cast<double>(k);
  return {r * std::cos(a), r * std::sin(a), z};
}

}  // namespace billiards
