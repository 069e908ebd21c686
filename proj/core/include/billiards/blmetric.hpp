#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "billiards/bodies.hpp"
#include "billiards/geometry.hpp"

namespace billiards {

enum class Integrator { cubature, monte_carlo };

std::string to_string(Integrator mode);

struct BLConfig {
  Integrator mode = Integrator::cubature;
  long long samples = 2'000'000;   // Monte Carlo accepted-sample quota
  int block_size = 50'000;         // accepted samples per seeded block
  int angular_nodes = 4096;        // 2D cubature
  int polar_nodes = 50;            // 3D cubature, Gauss-Legendre in cos(theta)
  int azimuth_nodes = 100;         // 3D cubature, trapezoid in phi
  std::uint64_t seed = 0x42;
  double max_rel_se = 0.05;        // Monte Carlo error gate, relative to max entry
};

/// Second-moment inner product of a convex body: primal entry (i, j) is
/// (n+2)/vol(T) * integral of (x - b)_i (x - b)_j over T, with b the
/// barycenter. Scaled so the unit ball maps to the identity.
struct BLMatrix {
  Mat primal;
  Mat dual;            // inverse of primal, the induced form on functionals
  Vec barycenter;      // absolute coordinates
  long long samples = 0;
  double standard_error = 0.0;  // max-entry error estimate
  Integrator mode = Integrator::cubature;
  std::uint64_t seed = 0;
};

BLMatrix bl_matrix(const GaugeBody& body, const BLConfig& cfg = {});

/// Max over m boundary samples p of |(p-b)^T dual (p-b) - 1|; near zero
/// exactly when the body is the unit sphere of its own second-moment metric,
/// i.e. an ellipsoid centered at its barycenter.
double bl_sphericity_defect(const GaugeBody& body, const BLMatrix& bl,
                            int m = 256);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace billiards
