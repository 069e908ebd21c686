#pragma once

#include <functional>
#include <string>
#include <vector>

#include "billiards/bodies.hpp"
#include "billiards/geometry.hpp"

namespace billiards {

/// Zero set of z^T Q z + 2 l^T z + c with Q symmetric, normalized so the
/// Frobenius-plus-Euclidean norm of (Q, l, c) is 1 and the largest-magnitude
/// coefficient is positive.
class Quadric {
 public:
  Quadric(Mat q, Vec l, double c);

  int dim() const { return static_cast<int>(q_.rows()); }
  const Mat& quadratic() const { return q_; }
  const Vec& linear() const { return l_; }
  double constant() const { return c_; }

  double evaluate(const Vec& z) const;
  Vec gradient(const Vec& z) const;  // 2 (Q z + l)

  /// Coefficients in graded-lexicographic monomial order:
  /// 2D (x^2, xy, y^2, x, y, 1); 3D (x^2, xy, xz, y^2, yz, z^2, x, y, z, 1).
  Vec coefficients() const;

 private:
  Mat q_;
  Vec l_;
  double c_;
};

struct QuadricFit {
  Quadric quadric;
  double residual = 0.0;   // smallest singular value / sqrt(point count)
  bool degenerate = false; // second singular value also collapsed
  Vec center;              // pre-centering shift that was applied
  double scale = 1.0;      // pre-scaling factor that was applied
};

/// Total least squares quadric through a point cloud: smallest right singular
/// vector of the monomial design matrix after centering and isotropic
/// unit-RMS scaling.
QuadricFit fit_quadric(const std::vector<Vec>& points);

enum class ConicClass {
  ellipse,
  hyperbola,
  parabola,
  line_pair,
  single_line,
  point,
  empty,
};

std::string to_string(ConicClass c);

/// Classification by the ranks and inertia of the bordered 3x3 matrix and
/// the quadratic part, with thresholds at 1e-10 of the leading eigenvalue.
ConicClass classify_conic(const Quadric& conic);

/// A 2-plane in 3-space; e1, e2 are orthonormalized at construction.
struct Plane {
  Vec origin;
  Vec e1;
  Vec e2;

  Plane(Vec origin, Vec span1, Vec span2);
  Vec embed(double u, double v) const;  // origin + u e1 + v e2
};

/// Points of the intersection of an implicit surface {f = 0} with a plane,
/// found by sign changes along the lines of a parameter grid, returned in
/// the plane's (u, v) coordinates.
std::vector<Vec> planar_section(const std::function<double(const Vec&)>& f,
                                const Plane& plane, double extent, int grid = 64);

/// Section of a gauge body boundary {F = 1}; the grid extent is derived from
/// the body's size.
std::vector<Vec> planar_section(const GaugeBody& body, const Plane& plane,
                                int grid = 64);

}  // namespace billiards
