#include "billiards/reflectors.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "billiards/errors.hpp"
#include "billiards/sampling.hpp"

namespace billiards {

InvolutionField::InvolutionField(GaugeBody table, Rule rule, std::string name)
    : table_(std::move(table)), rule_(std::move(rule)), rule_name_(std::move(name)) {
  validate_on_grid();
}

InvolutionField InvolutionField::euclidean_normal(GaugeBody table) {
  return InvolutionField(std::move(table),
                         [](const BoundaryPoint& q) { return q.conormal; },
                         "euclidean_normal");
}

InvolutionField InvolutionField::constant_vector(GaugeBody table, Vec v) {
  if (v.size() != table.dim() || v.norm() == 0.0) {
    throw GeometryError("constant transversal vector must be nonzero and match dim");
  }
  return InvolutionField(std::move(table),
                         [v](const BoundaryPoint&) { return v; },
                         "constant_vector");
}

InvolutionField InvolutionField::custom(GaugeBody table, Rule rule, std::string name) {
  return InvolutionField(std::move(table), std::move(rule), std::move(name));
}

void InvolutionField::validate_on_grid() const {
  const int n = table_.dim();
  const int grid = n == 2 ? 256 : 512;
  double lo = 0.0, hi = 0.0;
  for (int k = 0; k < grid; ++k) {
    Vec u;
    if (n == 2) {
      u = circle_direction(k, grid / 2);
      if (k >= grid / 2) u = -u;
    } else {
      u = hemisphere_direction(k % (grid / 2), grid / 2);
      if (k >= grid / 2) u = -u;
    }
    const BoundaryPoint q = table_.boundary_point(table_.boundary_point_abs(u));
    const Vec nu = rule_(q);
    if (nu.size() != n || nu.norm() == 0.0 ||
        std::abs(q.conormal.dot(nu)) / nu.norm() < transversality_min) {
      std::ostringstream os;
      os << "transversal field degenerates at boundary direction ("
         << u.transpose() << ")";
      throw GeometryError(os.str());
    }
    const double ratio = q.conormal.dot(nu) / nu.norm();
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  // The boundary is connected, so a pairing that takes both signs on the
  // grid must vanish somewhere between samples.
  if (lo < 0.0 && hi > 0.0) {
    throw GeometryError(
        "transversal pairing changes sign along the boundary, so the field "
        "degenerates between grid samples");
  }
}

Vec InvolutionField::transversal_at(const BoundaryPoint& q) const {
  return rule_(q);
}

Vec InvolutionField::reflect(const BoundaryPoint& q, const Vec& v) const {
  const Vec grad = table_.gauge_gradient(q.position - table_.center());
  const Vec nu = rule_(q);
  const double pairing = grad.dot(nu);
  if (nu.norm() == 0.0 ||
      std::abs(pairing) / (grad.norm() * nu.norm()) < transversality_min) {
    throw GeometryError("transversality violated at the reflection point");
  }
  return v - 2.0 * (grad.dot(v) / pairing) * nu;
}

Vec projective_reflect(const InvolutionField& field, const BoundaryPoint& q,
                       const Vec& v_in) {
  return field.reflect(q, v_in);
}

Vec minkowski_reflect(const GaugeBody& table, const GaugeBody& dual_body,
                      const BoundaryPoint& q, const Vec& v_in) {
  if (v_in.norm() == 0.0) throw GeometryError("minkowski_reflect: zero velocity");
  const Vec grad_k = table.gauge_gradient(q.position - table.center());
  // Grazing arrivals (pairing ~ 0) are allowed: the dual chord is then
  // tangent and the law returns v_in unchanged.
  if (grad_k.dot(v_in) < -1e-12 * grad_k.norm() * v_in.norm()) {
    throw GeometryError("minkowski_reflect: velocity does not arrive from inside");
  }
  const BoundaryPoint p1 = dual_body.support_point(v_in);
  const Chord chord = dual_body.chord_second_intersection(p1, grad_k);
  if (chord.tangent_flag) return v_in;
  Vec w = dual_body.gauge_gradient(chord.endpoint_b.position - dual_body.center());
  return w * (v_in.norm() / w.norm());
}

Vec standard_reflect(const GaugeBody& table, const Mat& metric,
                     const BoundaryPoint& q, const Vec& v_in) {
  const Vec grad = table.gauge_gradient(q.position - table.center());
  const Vec normal = metric.llt().solve(grad);
  const double nn = normal.dot(metric * normal);
  return v_in - 2.0 * (v_in.dot(metric * normal) / nn) * normal;
}

Trajectory trajectory(const GaugeBody& table, const Reflector& reflect,
                      const BoundaryPoint& q0, const Vec& v0, int n) {
  const Vec grad0 = table.gauge_gradient(q0.position - table.center());
  if (grad0.dot(v0) >= 0.0) {
    throw GeometryError("trajectory: initial velocity must point into the table");
  }
  Trajectory traj;
  traj.bounces.reserve(n);
  Vec pos = q0.position;
  Vec vel = v0;
  for (int i = 0; i < n; ++i) {
    try {
      const BoundaryPoint hit = i == 0 ? table.ray_exit(q0.position, v0)
                                       : table.ray_exit(pos, vel);
      const Vec v_out = reflect(hit, vel);
      Bounce b;
      b.q = hit;
      b.v_in = vel;
      b.v_out = v_out;
      b.tangency = (v_out - vel).norm() <= 1e-15 * vel.norm();
      b.gauge_residual =
          std::abs(table.gauge(hit.position - table.center()) - 1.0);
      traj.bounces.push_back(std::move(b));
      pos = hit.position;
      vel = traj.bounces.back().v_out;
      if (traj.bounces.back().tangency) break;  // orbit leaves the table
    } catch (const Error& e) {
      std::ostringstream os;
      os << "bounce " << i << ": " << e.what();
      throw GeometryError(os.str());
    }
  }
  return traj;
}

EllipsoidEquivalence ellipsoid_equivalence_map(const GaugeBody& dual_body) {
  const Mat a = dual_body.ellipsoid_matrix();  // throws unless ellipsoid family
  EllipsoidEquivalence eq;
  eq.b = spd_sqrt(a);
  eq.b_inv = eq.b.inverse();
  eq.b_star = eq.b.transpose();  // SPD, so equal to b
  eq.b_star_inv = eq.b_star.inverse();
  return eq;
}

Trajectory map_trajectory(const Trajectory& traj, const Mat& linear,
                          const GaugeBody& image_table) {
  Trajectory out;
  out.bounces.reserve(traj.bounces.size());
  for (const Bounce& b : traj.bounces) {
    Bounce m;
    m.q = image_table.boundary_point(linear * b.q.position, 1e-6);
    m.v_in = linear * b.v_in;
    m.v_out = linear * b.v_out;
    m.tangency = b.tangency;
    m.gauge_residual =
        std::abs(image_table.gauge(m.q.position - image_table.center()) - 1.0);
    out.bounces.push_back(std::move(m));
  }
  return out;
}

double standard_reflection_residual(const Trajectory& traj, const Mat& metric) {
  if (traj.bounces.empty()) {
    throw GeometryError("standard_reflection_residual: empty trajectory");
  }
  double worst = 0.0;
  for (const Bounce& b : traj.bounces) {
    const Vec n = metric.llt().solve(b.q.conormal);
    const double nn = n.dot(metric * n);
    Vec mirror = b.v_in - 2.0 * (b.v_in.dot(metric * n) / nn) * n;
    mirror *= b.v_out.norm() / mirror.norm();
    worst = std::max(worst, (b.v_out - mirror).norm());
  }
  return worst;
}

}  // namespace billiards
