#pragma once

#include <functional>
#include <string>
#include <vector>

#include "billiards/bodies.hpp"
#include "billiards/geometry.hpp"

namespace billiards {

/// Field of linear involutions H_q over the boundary of a table body:
/// H_q fixes the tangent hyperplane at q pointwise and negates a chosen
/// transversal direction nu_q.
class InvolutionField {
 public:
  using Rule = std::function<Vec(const BoundaryPoint&)>;

  static InvolutionField euclidean_normal(GaugeBody table);
  static InvolutionField constant_vector(GaugeBody table, Vec v);
  static InvolutionField custom(GaugeBody table, Rule rule, std::string name = "custom");

  const GaugeBody& table() const { return table_; }
  const std::string& rule_name() const { return rule_name_; }

  /// The transversal vector nu_q at a boundary point.
  Vec transversal_at(const BoundaryPoint& q) const;

  /// H_q(v) = v - 2 (d_qF(v) / d_qF(nu_q)) nu_q.
  Vec reflect(const BoundaryPoint& q, const Vec& v) const;

  /// Minimum |<conormal, nu>| / |nu| accepted at construction and reflection.
  static constexpr double transversality_min = 1e-6;

 private:
  InvolutionField(GaugeBody table, Rule rule, std::string name);
  void validate_on_grid() const;

  GaugeBody table_;
  Rule rule_;
  std::string rule_name_;
};

Vec projective_reflect(const InvolutionField& field, const BoundaryPoint& q,
                       const Vec& v_in);

/// Dual-body reflection: v_in picks the support point p1 of T, the chord of T
/// through p1 parallel to d_qF picks p2, and v_out is the gauge gradient of T
/// at p2 rescaled to |v_in|. A tangent chord returns v_in unchanged.
Vec minkowski_reflect(const GaugeBody& table, const GaugeBody& dual_body,
                      const BoundaryPoint& q, const Vec& v_in);

/// Classical equal-angle reflection in the metric G: mirror across the
/// tangent plane with normal G^{-1} d_qF.
Vec standard_reflect(const GaugeBody& table, const Mat& metric,
                     const BoundaryPoint& q, const Vec& v_in);

struct Bounce {
  BoundaryPoint q;
  Vec v_in;
  Vec v_out;
  bool tangency = false;
  double gauge_residual = 0.0;
};

struct Trajectory {
  std::vector<Bounce> bounces;
};

using Reflector = std::function<Vec(const BoundaryPoint&, const Vec&)>;

/// Iterate ray exits and reflections n times starting from q0 with inward
/// velocity v0 (d_{q0}F(v0) < 0). Errors are rethrown with the bounce index.
Trajectory trajectory(const GaugeBody& table, const Reflector& reflect,
                      const BoundaryPoint& q0, const Vec& v0, int n);

/// Linear maps sending an ellipsoid dual body T to the unit ball: b maps T to
/// the ball, b_star is its adjoint under the dual pairing, and b_star_inv
/// carries orbits of the T-reflection to classically reflecting orbits.
struct EllipsoidEquivalence {
  Mat b;
  Mat b_inv;
  Mat b_star;
  Mat b_star_inv;
};

EllipsoidEquivalence ellipsoid_equivalence_map(const GaugeBody& dual_body);

/// Push every bounce of a trajectory through a linear map.
Trajectory map_trajectory(const Trajectory& traj, const Mat& linear,
                          const GaugeBody& image_table);

/// Max over bounces of |v_out - mirror(v_in)| with the mirror law taken in
/// the inner product given by an SPD matrix; the mirror image is rescaled to
/// |v_out| so only the direction is compared.
double standard_reflection_residual(const Trajectory& traj, const Mat& metric);

}  // namespace billiards
