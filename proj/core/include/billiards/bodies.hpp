#pragma once

#include <vector>

#include "billiards/geometry.hpp"

namespace billiards {

enum class BodyFamily { ellipsoid, pball, perturbed_ball };

/// One perturbation term of a perturbed ball. In 2D the gauge factor is
/// 1 + amplitude * cos(frequency * theta); in dimension >= 3 the term is
/// amplitude * sum_i u_i^frequency on unit directions u.
struct Harmonic {
  int frequency;
  double amplitude;
};

/// Point on a body boundary together with the unit-normalized gauge
/// differential (outward conormal) there. Positions are in absolute
/// coordinates; the gauge itself acts on displacements from the center.
struct BoundaryPoint {
  Vec position;
  Vec conormal;
};

struct Chord {
  BoundaryPoint endpoint_a;
  BoundaryPoint endpoint_b;
  Vec direction;            // unit; parallel to b - a when not tangent
  bool tangent_flag = false;  // endpoints coincide
};

/// A strictly convex body given by a positively 1-homogeneous gauge F with
/// gradient access. Immutable after construction; all member operations are
/// pure and thread-safe.
///
/// Families:
///   ellipsoid(A):        F(v) = sqrt(v' A v), A symmetric positive definite
///   pball(p, scale):     F(v) = (sum |v_i / s_i|^p)^(1/p), p > 1
///   perturbed_ball(...): F(v) = (|v| / r) * g(v/|v|) with g a trigonometric
///                        (2D) or low-order polynomial (nD) perturbation of 1
class GaugeBody {
 public:
  static GaugeBody ellipsoid(Mat a, Vec center = Vec());
  static GaugeBody pball(double p, Vec scale, Vec center = Vec());
  static GaugeBody perturbed_ball(int dim, double radius,
                                  std::vector<Harmonic> harmonics,
                                  Vec center = Vec());

  int dim() const { return dim_; }
  BodyFamily family() const { return family_; }
  const Vec& center() const { return center_; }
  const Mat& ellipsoid_matrix() const;
  double pball_exponent() const;
  const Vec& pball_scale() const;
  double base_radius() const { return radius_; }
  const std::vector<Harmonic>& harmonics() const { return harmonics_; }

  /// Largest boundary radius measured from the center; used to scale
  /// tolerances and bounding boxes.
  double scale_hint() const { return scale_hint_; }

  /// F(v) for a displacement v from the center. F(0) = 0.
  double gauge(const Vec& v) const;

  /// dF at v (a covector, not normalized). Rejects |v| below 1e-12 of the
  /// body scale.
  Vec gauge_gradient(const Vec& v) const;

  /// Gauge of an absolute point: F(x - center).
  double gauge_at(const Vec& x) const { return gauge(x - center_); }

  /// Boundary radius along unit-ish direction u: |boundary - center|
  /// along u is radial(u) * |u|... precisely, center + u / F(u) is on the
  /// boundary.
  Vec boundary_point_abs(const Vec& u) const { return center_ + u / gauge(u); }

  /// Boundary point with validated position and stored conormal.
  BoundaryPoint boundary_point(const Vec& x_abs, double tol = 1e-8) const;

  /// Maximizer of the linear functional u over the body; the gauge gradient
  /// there is proportional to u with a positive factor (residual <= 1e-9).
  BoundaryPoint support_point(const Vec& u) const;

  /// Second intersection of the line {p + t dir} with the boundary. When
  /// dir is tangent at p (normalized |dF_p(dir)| below the tangency
  /// threshold), the chord degenerates: tangent_flag set, endpoints equal.
  Chord chord_second_intersection(const BoundaryPoint& p, const Vec& dir) const;

  /// Exit point of the ray x0 + t dir, t > 0, with F(x0) <= 1. For x0 on
  /// the boundary the direction must point inward.
  BoundaryPoint ray_exit(const Vec& x0, const Vec& dir) const;

  /// Per-axis half-widths of a bounding box centered at center().
  Vec bounding_halfwidths() const;

  static constexpr double tangency_threshold = 1e-8;
  static constexpr double gauge_root_tol = 1e-12;

 private:
  GaugeBody() = default;

  double perturbation_factor(const Vec& unit) const;      // g(u)
  Vec perturbation_gradient(const Vec& unit) const;       // spherical grad of g
  void validate_convexity() const;

  BodyFamily family_ = BodyFamily::ellipsoid;
  int dim_ = 0;
  Vec center_;
  double scale_hint_ = 1.0;

  // ellipsoid
  Mat matrix_;
  Mat matrix_inv_;
  // pball
  double exponent_ = 2.0;
  Vec scale_;
  // perturbed ball
  double radius_ = 1.0;
  std::vector<Harmonic> harmonics_;
};

}  // namespace billiards
