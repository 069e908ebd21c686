#include "billiards/patches.hpp"

#include <algorithm>
#include <cmath>

#include "billiards/errors.hpp"
#include "billiards/rootfind.hpp"

namespace billiards {

double PlanarPatch::transversality(const Vec& x, const Vec& dir) const {
  return std::abs(unit_normal(x).dot(dir)) / dir.norm();
}

ArcPatch::ArcPatch(Vec center, double radius, double theta0, double theta1)
    : center_(std::move(center)), radius_(radius), theta0_(theta0), theta1_(theta1) {
  if (center_.size() != 2) throw GeometryError("arc patch center must be 2D");
  if (!(radius > 0.0)) throw GeometryError("arc patch radius must be positive");
  if (!(theta1_ > theta0_) || theta1_ - theta0_ > 2.0 * M_PI) {
    throw GeometryError("arc patch angle range must be increasing and <= 2*pi");
  }
}

Vec ArcPatch::base_point() const {
  const double mid = 0.5 * (theta0_ + theta1_);
  Vec p(2);
  p << center_[0] + radius_ * std::cos(mid), center_[1] + radius_ * std::sin(mid);
  return p;
}

Vec ArcPatch::sample(int k, int m) const {
  const double theta = theta0_ + (theta1_ - theta0_) * (k + 0.5) / m;
  Vec p(2);
  p << center_[0] + radius_ * std::cos(theta), center_[1] + radius_ * std::sin(theta);
  return p;
}

bool ArcPatch::contains_angle(double theta) const {
  // Compare modulo 2*pi against [theta0, theta1].
  double t = theta;
  while (t < theta0_) t += 2.0 * M_PI;
  while (t > theta1_ + 2.0 * M_PI) t -= 2.0 * M_PI;
  return t >= theta0_ - 1e-12 && t <= theta1_ + 1e-12;
}

std::vector<Vec> ArcPatch::line_intersections(const Vec& x0, const Vec& dir) const {
  // |x0 + t d - c|^2 = r^2, a quadratic in t.
  const Vec d = dir / dir.norm();
  const Vec w = x0 - center_;
  const double b = w.dot(d);
  const double c = w.squaredNorm() - radius_ * radius_;
  const double disc = b * b - c;
  std::vector<Vec> hits;
  if (disc < 0.0) return hits;
  const double s = std::sqrt(disc);
  double roots[2] = {-b - s, -b + s};
  if (std::abs(roots[1]) < std::abs(roots[0])) std::swap(roots[0], roots[1]);
  for (double t : roots) {
    const Vec p = x0 + t * d;
    if (contains_angle(std::atan2(p[1] - center_[1], p[0] - center_[0]))) {
      hits.push_back(p);
    }
  }
  return hits;
}

Vec ArcPatch::unit_normal(const Vec& x) const {
  Vec n = x - center_;
  const double norm = n.norm();
  if (norm < 1e-12 * radius_) throw GeometryError("arc normal at the center");
  return n / norm;
}

SegmentPatch::SegmentPatch(Vec from, Vec to)
    : from_(std::move(from)), to_(std::move(to)) {
  if (from_.size() != 2 || to_.size() != 2) {
    throw GeometryError("segment patch endpoints must be 2D");
  }
  if ((to_ - from_).norm() <= 0.0) {
    throw GeometryError("segment patch endpoints coincide");
  }
}

Vec SegmentPatch::base_point() const { return 0.5 * (from_ + to_); }

Vec SegmentPatch::sample(int k, int m) const {
  return from_ + (to_ - from_) * ((k + 0.5) / m);
}

std::vector<Vec> SegmentPatch::line_intersections(const Vec& x0, const Vec& dir) const {
  // Solve x0 + t d = from + s (to - from), s in [0, 1].
  Mat a(2, 2);
  a.col(0) = dir / dir.norm();
  a.col(1) = from_ - to_;
  std::vector<Vec> hits;
  if (std::abs(a.determinant()) < 1e-14 * a.col(1).norm()) return hits;  // parallel
  const Vec ts = a.inverse() * (from_ - x0);
  const double s = ts[1];
  if (s >= -1e-12 && s <= 1.0 + 1e-12) {
    hits.push_back(from_ + std::clamp(s, 0.0, 1.0) * (to_ - from_));
  }
  return hits;
}

Vec SegmentPatch::unit_normal(const Vec&) const {
  const Vec d = (to_ - from_).normalized();
  Vec n(2);
  n << -d[1], d[0];
  return n;
}

BodyWindowPatch::BodyWindowPatch(GaugeBody body, double base_angle,
                                 double half_angle)
    : body_(std::move(body)), base_angle_(base_angle), half_angle_(half_angle) {
  if (body_.dim() != 2) throw GeometryError("body window patch requires a 2D body");
  if (!(half_angle > 0.0) || half_angle >= M_PI) {
    throw GeometryError("body window half angle must lie in (0, pi)");
  }
}

Vec BodyWindowPatch::base_point() const {
  Vec e(2);
  e << std::cos(base_angle_), std::sin(base_angle_);
  return body_.boundary_point_abs(e);
}

Vec BodyWindowPatch::sample(int k, int m) const {
  const double theta =
      base_angle_ + half_angle_ * (2.0 * (k + 0.5) / m - 1.0);
  Vec e(2);
  e << std::cos(theta), std::sin(theta);
  return body_.boundary_point_abs(e);
}

bool BodyWindowPatch::in_window(const Vec& x) const {
  const Vec rel = x - body_.center();
  double delta = std::atan2(rel[1], rel[0]) - base_angle_;
  while (delta > M_PI) delta -= 2.0 * M_PI;
  while (delta < -M_PI) delta += 2.0 * M_PI;
  return std::abs(delta) <= half_angle_ + 1e-12;
}

std::vector<Vec> BodyWindowPatch::line_intersections(const Vec& x0,
                                                     const Vec& dir) const {
  // Roots of gauge(x0 + t d) = 1 on both sides of the line's closest
  // approach to the body, each kept only if it falls inside the window.
  const Vec d = dir / dir.norm();
  const Vec rel0 = x0 - body_.center();
  auto value = [&](double t) { return body_.gauge(rel0 + t * d) - 1.0; };

  const double span = 2.2 * body_.scale_hint() + rel0.norm();
  const double t_min = golden_max([&](double t) { return -value(t); }, -span,
                                  span, 1e-10 * span);
  const double f_min = value(t_min);
  std::vector<Vec> hits;
  if (f_min >= 0.0) return hits;  // line misses the body

  for (int side = 0; side < 2; ++side) {
    const double t_far = side == 0 ? -span : span;
    const double f_far = value(t_far);
    if (f_far <= 0.0) continue;
    const double root =
        bisect(value, t_min, t_far, f_min, f_far, 1e-14 * span);
    const Vec p = x0 + root * d;
    if (in_window(p)) hits.push_back(p);
  }
  if (hits.size() == 2 &&
      (hits[1] - x0).norm() < (hits[0] - x0).norm()) {
    std::swap(hits[0], hits[1]);
  }
  return hits;
}

Vec BodyWindowPatch::unit_normal(const Vec& x) const {
  Vec g = body_.gauge_gradient(x - body_.center());
  return g / g.norm();
}

}  // namespace billiards
