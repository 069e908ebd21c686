#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "billiards/bodies.hpp"
#include "billiards/geometry.hpp"

namespace billiards {

/// A germ of a planar convex curve: a local boundary piece with a base point.
/// Supports quasi-uniform sampling and line intersection, which is all the
/// chord-involution machinery needs.
class PlanarPatch {
 public:
  virtual ~PlanarPatch() = default;

  virtual Vec base_point() const = 0;

  /// k-th of m quasi-uniform sample points on the patch.
  virtual Vec sample(int k, int m) const = 0;

  /// Intersections of the line {x0 + t * dir} with the patch, sorted by
  /// increasing |t|. At most two for the patches implemented here.
  virtual std::vector<Vec> line_intersections(const Vec& x0,
                                              const Vec& dir) const = 0;

  /// Unit normal at a point of the patch.
  virtual Vec unit_normal(const Vec& x) const = 0;

  /// Sine lower bound check helper: |<unit normal, unit dir>| at x.
  double transversality(const Vec& x, const Vec& dir) const;
};

/// Circular arc: angle range [theta0, theta1] on a circle.
class ArcPatch : public PlanarPatch {
 public:
  ArcPatch(Vec center, double radius, double theta0, double theta1);

  Vec base_point() const override;
  Vec sample(int k, int m) const override;
  std::vector<Vec> line_intersections(const Vec& x0, const Vec& dir) const override;
  Vec unit_normal(const Vec& x) const override;

  const Vec& circle_center() const { return center_; }
  double radius() const { return radius_; }

 private:
  bool contains_angle(double theta) const;

  Vec center_;
  double radius_;
  double theta0_, theta1_;
};

/// Straight segment between two points (a degenerate "curve germ").
class SegmentPatch : public PlanarPatch {
 public:
  SegmentPatch(Vec from, Vec to);

  Vec base_point() const override;
  Vec sample(int k, int m) const override;
  std::vector<Vec> line_intersections(const Vec& x0, const Vec& dir) const override;
  Vec unit_normal(const Vec& x) const override;

 private:
  Vec from_, to_;
};

/// Angular window of a 2D gauge body boundary around a base direction.
class BodyWindowPatch : public PlanarPatch {
 public:
  BodyWindowPatch(GaugeBody body, double base_angle, double half_angle);

  Vec base_point() const override;
  Vec sample(int k, int m) const override;
  std::vector<Vec> line_intersections(const Vec& x0, const Vec& dir) const override;
  Vec unit_normal(const Vec& x) const override;

  const GaugeBody& body() const { return body_; }

 private:
  bool in_window(const Vec& x) const;

  GaugeBody body_;
  double base_angle_, half_angle_;
};

}  // namespace billiards
