#include "billiards/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "billiards/errors.hpp"
#include "billiards/rootfind.hpp"
#include "billiards/sampling.hpp"

namespace billiards {

namespace {

Vec resolve_center(Vec center, int dim) {
  if (center.size() == 0) return Vec::Zero(dim);
  if (center.size() != dim) {
    throw GeometryError("body center dimension mismatch");
  }
  return center;
}

}  // namespace

GaugeBody GaugeBody::ellipsoid(Mat a, Vec center) {
  if (a.rows() < 2 || a.rows() != a.cols()) {
    throw GeometryError("ellipsoid matrix must be n x n with n >= 2");
  }
  if (!is_spd(a)) {
    throw GeometryError("ellipsoid matrix must be symmetric positive definite");
  }
  GaugeBody b;
  b.family_ = BodyFamily::ellipsoid;
  b.dim_ = static_cast<int>(a.rows());
  b.matrix_ = 0.5 * (a + a.transpose());
  b.matrix_inv_ = b.matrix_.inverse();
  b.center_ = resolve_center(std::move(center), b.dim_);
  Eigen::SelfAdjointEigenSolver<Mat> es(b.matrix_);
  b.scale_hint_ = 1.0 / std::sqrt(es.eigenvalues().minCoeff());
  return b;
}

GaugeBody GaugeBody::pball(double p, Vec scale, Vec center) {
  if (!(p > 1.0)) {
    throw GeometryError("pball exponent must exceed 1");
  }
  if (scale.size() < 2 || scale.minCoeff() <= 0.0) {
    throw GeometryError("pball scale must be >= 2 positive entries");
  }
  GaugeBody b;
  b.family_ = BodyFamily::pball;
  b.dim_ = static_cast<int>(scale.size());
  b.exponent_ = p;
  b.scale_ = std::move(scale);
  b.center_ = resolve_center(std::move(center), b.dim_);
  b.scale_hint_ = b.scale_.maxCoeff();
  return b;
}

GaugeBody GaugeBody::perturbed_ball(int dim, double radius,
                                    std::vector<Harmonic> harmonics,
                                    Vec center) {
  if (dim < 2) throw GeometryError("perturbed_ball needs dim >= 2");
  if (!(radius > 0.0)) throw GeometryError("perturbed_ball radius must be positive");
  double amp = 0.0;
  for (const auto& h : harmonics) {
    if (h.frequency < 1) throw GeometryError("harmonic frequency must be >= 1");
    amp += std::abs(h.amplitude);
  }
  if (amp >= 0.9) {
    throw GeometryError("perturbation amplitudes too large (sum >= 0.9)");
  }
  GaugeBody b;
  b.family_ = BodyFamily::perturbed_ball;
  b.dim_ = dim;
  b.radius_ = radius;
  b.harmonics_ = std::move(harmonics);
  b.center_ = resolve_center(std::move(center), dim);
  b.scale_hint_ = radius / std::max(0.1, 1.0 - amp);
  b.validate_convexity();
  return b;
}

const Mat& GaugeBody::ellipsoid_matrix() const {
  if (family_ != BodyFamily::ellipsoid) {
    throw GeometryError("body is not of the ellipsoid family");
  }
  return matrix_;
}

double GaugeBody::pball_exponent() const {
  if (family_ != BodyFamily::pball) {
    throw GeometryError("body is not of the pball family");
  }
  return exponent_;
}

const Vec& GaugeBody::pball_scale() const {
  if (family_ != BodyFamily::pball) {
    throw GeometryError("body is not of the pball family");
  }
  return scale_;
}

double GaugeBody::perturbation_factor(const Vec& unit) const {
  double g = 1.0;
  if (dim_ == 2) {
    const double theta = std::atan2(unit[1], unit[0]);
    for (const auto& h : harmonics_) {
      g += h.amplitude * std::cos(h.frequency * theta);
    }
  } else {
    for (const auto& h : harmonics_) {
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) s += std::pow(unit[i], h.frequency);
      g += h.amplitude * s;
    }
  }
  return g;
}

Vec GaugeBody::perturbation_gradient(const Vec& unit) const {
  if (dim_ == 2) {
    const double theta = std::atan2(unit[1], unit[0]);
    double dg = 0.0;
    for (const auto& h : harmonics_) {
      dg -= h.amplitude * h.frequency * std::sin(h.frequency * theta);
    }
    Vec tangent(2);
    tangent << -unit[1], unit[0];
    return dg * tangent;
  }
  Vec grad = Vec::Zero(dim_);
  for (const auto& h : harmonics_) {
    for (int i = 0; i < dim_; ++i) {
      grad[i] += h.amplitude * h.frequency * std::pow(unit[i], h.frequency - 1);
    }
  }
  return grad - grad.dot(unit) * unit;  // tangential part
}

void GaugeBody::validate_convexity() const {
  if (dim_ == 2) {
    // Boundary is the polar curve rho = r/g(theta); its curvature has the
    // sign of g + g''. Sample densely and require strict positivity.
    const int n = 2048;
    for (int k = 0; k < n; ++k) {
      const double theta = 2.0 * M_PI * k / n;
      double g = 1.0, gpp = 0.0;
      for (const auto& h : harmonics_) {
        g += h.amplitude * std::cos(h.frequency * theta);
        gpp -= h.amplitude * h.frequency * h.frequency * std::cos(h.frequency * theta);
      }
      if (!(g > 0.05) || !(g + gpp > 1e-9)) {
        std::ostringstream os;
        os << "perturbed_ball not strictly convex (curvature sign fails at theta="
           << theta << ")";
        throw GeometryError(os.str());
      }
    }
    return;
  }
  // nD: second differences of the gauge along random non-radial directions.
  Rng rng(0xB0D1C0DEull);
  const double h = 1e-3 * scale_hint_;
  for (int k = 0; k < 200; ++k) {
    Vec u = rng.unit_vector(dim_);
    const double g = perturbation_factor(u);
    if (!(g > 0.05)) {
      throw GeometryError("perturbed_ball gauge factor not positive");
    }
    Vec x = boundary_point_abs(u) - center_;
    Vec t = rng.unit_vector(dim_);
    t -= t.dot(x) / x.squaredNorm() * x;
    if (t.norm() < 1e-3) continue;
    t.normalize();
    const double second = gauge(x + h * t) + gauge(x - h * t) - 2.0 * gauge(x);
    if (!(second > 1e-12 * scale_hint_)) {
      throw GeometryError("perturbed_ball not strictly convex (second difference)");
    }
  }
}

double GaugeBody::gauge(const Vec& v) const {
  if (v.size() != dim_) throw GeometryError("gauge: dimension mismatch");
  switch (family_) {
    case BodyFamily::ellipsoid: {
      const double q = v.dot(matrix_ * v);
      return q > 0.0 ? std::sqrt(q) : 0.0;
    }
    case BodyFamily::pball: {
      double m = 0.0;
      for (int i = 0; i < dim_; ++i) m = std::max(m, std::abs(v[i]) / scale_[i]);
      if (m == 0.0) return 0.0;
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) {
        s += std::pow(std::abs(v[i]) / (scale_[i] * m), exponent_);
      }
      return m * std::pow(s, 1.0 / exponent_);
    }
    case BodyFamily::perturbed_ball: {
      const double norm = v.norm();
      if (norm == 0.0) return 0.0;
      return norm / radius_ * perturbation_factor(v / norm);
    }
  }
  return 0.0;
}

Vec GaugeBody::gauge_gradient(const Vec& v) const {
  if (v.size() != dim_) throw GeometryError("gauge_gradient: dimension mismatch");
  const double norm = v.norm();
  if (norm < 1e-12 * scale_hint_) {
    throw GeometryError("gauge_gradient: vector too close to the center");
  }
  switch (family_) {
    case BodyFamily::ellipsoid:
      return matrix_ * v / std::sqrt(v.dot(matrix_ * v));
    case BodyFamily::pball: {
      const double f = gauge(v);
      Vec grad(dim_);
      for (int i = 0; i < dim_; ++i) {
        const double w = std::abs(v[i]) / (scale_[i] * f);
        const double mag = std::pow(w, exponent_ - 1.0) / scale_[i];
        grad[i] = (v[i] >= 0.0 ? mag : -mag);
      }
      return grad;
    }
    case BodyFamily::perturbed_ball: {
      const Vec u = v / norm;
      return (perturbation_factor(u) * u + perturbation_gradient(u)) / radius_;
    }
  }
  return Vec();
}

BoundaryPoint GaugeBody::boundary_point(const Vec& x_abs, double tol) const {
  const Vec rel = x_abs - center_;
  const double f = gauge(rel);
  if (std::abs(f - 1.0) > tol) {
    std::ostringstream os;
    os << "boundary_point: gauge residual " << std::abs(f - 1.0)
       << " exceeds tolerance " << tol;
    throw GeometryError(os.str());
  }
  Vec grad = gauge_gradient(rel);
  return {x_abs, grad / grad.norm()};
}

BoundaryPoint GaugeBody::support_point(const Vec& u) const {
  if (u.size() != dim_) throw GeometryError("support_point: dimension mismatch");
  if (u.norm() == 0.0) throw GeometryError("support_point: zero direction");

  Vec x;  // relative to center
  switch (family_) {
    case BodyFamily::ellipsoid: {
      const Vec w = matrix_inv_ * u;
      x = w / std::sqrt(u.dot(w));
      break;
    }
    case BodyFamily::pball: {
      // Lagrange condition: |x_i/s_i|^(p-1) sign(x_i) / s_i proportional to
      // u_i, a componentwise signed power law.
      const double q = 1.0 / (exponent_ - 1.0);
      Vec w(dim_);
      double m = 0.0;
      for (int i = 0; i < dim_; ++i) m = std::max(m, std::abs(u[i]) * scale_[i]);
      for (int i = 0; i < dim_; ++i) {
        const double t = std::abs(u[i]) * scale_[i] / m;
        const double mag = scale_[i] * std::pow(t, q);
        w[i] = (u[i] >= 0.0 ? mag : -mag);
      }
      x = w / gauge(w);
      break;
    }
    case BodyFamily::perturbed_ball: {
      if (dim_ == 2) {
        // Coarse scan of the boundary angle, then Newton on the analytic
        // derivative of psi(theta) = <u, x(theta)> with x = r e(theta)/g.
        auto trig = [&](double theta, double& g, double& gp, double& gpp) {
          g = 1.0;
          gp = 0.0;
          gpp = 0.0;
          for (const auto& h : harmonics_) {
            const double c = std::cos(h.frequency * theta);
            const double s = std::sin(h.frequency * theta);
            g += h.amplitude * c;
            gp -= h.amplitude * h.frequency * s;
            gpp -= h.amplitude * h.frequency * h.frequency * c;
          }
        };
        auto pos = [&](double theta) {
          double g, gp, gpp;
          trig(theta, g, gp, gpp);
          Vec e(2);
          e << std::cos(theta), std::sin(theta);
          return Vec(radius_ / g * e);
        };
        auto dpsi = [&](double theta) {
          double g, gp, gpp;
          trig(theta, g, gp, gpp);
          const double ue = u[0] * std::cos(theta) + u[1] * std::sin(theta);
          const double uep = -u[0] * std::sin(theta) + u[1] * std::cos(theta);
          return radius_ * (uep * g - ue * gp) / (g * g);
        };
        auto ddpsi = [&](double theta) {
          double g, gp, gpp;
          trig(theta, g, gp, gpp);
          const double ue = u[0] * std::cos(theta) + u[1] * std::sin(theta);
          const double uep = -u[0] * std::sin(theta) + u[1] * std::cos(theta);
          const double num = uep * g - ue * gp;
          const double dnum = -ue * (g + gpp);
          return radius_ * (dnum * g - 2.0 * num * gp) / (g * g * g);
        };
        const int coarse = 512;
        int best = 0;
        double best_val = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < coarse; ++k) {
          const double v = u.dot(pos(2.0 * M_PI * k / coarse));
          if (v > best_val) {
            best_val = v;
            best = k;
          }
        }
        const double step = 2.0 * M_PI / coarse;
        double a = step * (best - 1), b = step * (best + 1);
        double fa = dpsi(a), fb = dpsi(b);
        int widen = 0;
        while (!(fa > 0.0 && fb < 0.0) && ++widen < 8) {
          a -= step;
          b += step;
          fa = dpsi(a);
          fb = dpsi(b);
        }
        if (!(fa > 0.0 && fb < 0.0)) {
          throw ConvergenceError("support_point: failed to bracket the maximum",
                                 std::min(std::abs(fa), std::abs(fb)));
        }
        const double theta = newton_bisect(dpsi, ddpsi, a, b, fa, fb,
                                           1e-14 * u.norm() * scale_hint_, 1e-15);
        x = pos(theta);
      } else {
        // Ascent of phi(d) = <u, d>/F(d) over unit directions, Newton-refined.
        auto phi = [&](const Vec& d) { return u.dot(d) / gauge(d); };
        auto tangential_grad = [&](const Vec& d) {
          const double f = gauge(d);
          Vec g = (u - phi(d) * gauge_gradient(d)) / f;
          return Vec(g - g.dot(d) * d);
        };
        const int coarse = 512;
        Vec d = u.normalized();
        double best_val = phi(d);
        for (int k = 0; k < coarse; ++k) {
          double uu, vv;
          r2_sequence(k, uu, vv);
          Vec cand(3);
          if (dim_ == 3) {
            cand = sphere_point(uu, vv);
          } else {
            Rng r(derive_seed(0xD1CEull, k));
            cand = r.unit_vector(dim_);
          }
          const double v = phi(cand);
          if (v > best_val) {
            best_val = v;
            d = cand;
          }
        }
        double step = 0.1;
        for (int it = 0; it < 400; ++it) {
          Vec g = tangential_grad(d);
          if (g.norm() < 1e-12) break;
          Vec cand = (d + step * g).normalized();
          if (phi(cand) > best_val) {
            d = cand;
            best_val = phi(d);
            step *= 1.6;
          } else {
            step *= 0.5;
            if (step < 1e-12) break;
          }
        }
        // Comparing phi values stalls once the direction error reaches
        // sqrt(eps); polish on the analytic tangential gradient instead,
        // which resolves the root all the way down.
        for (int it = 0; it < 40; ++it) {
          const Vec g0 = tangential_grad(d);
          if (g0.norm() <= 1e-15 * u.norm()) break;
          const Mat frame =
              Eigen::HouseholderQR<Mat>(Mat(d)).householderQ();
          const Mat basis = frame.rightCols(dim_ - 1);
          const Vec rhs = basis.transpose() * g0;
          Mat jac(dim_ - 1, dim_ - 1);
          const double h = 1e-7;
          for (int j = 0; j + 1 < dim_; ++j) {
            const Vec dp = (d + h * basis.col(j)).normalized();
            const Vec dm = (d - h * basis.col(j)).normalized();
            jac.col(j) = basis.transpose() *
                         (tangential_grad(dp) - tangential_grad(dm)) /
                         (2.0 * h);
          }
          Vec s = jac.colPivHouseholderQr().solve(-rhs);
          if (!s.allFinite()) break;
          if (s.norm() > 0.3) s *= 0.3 / s.norm();
          const Vec next = (d + basis * s).normalized();
          if ((next - d).norm() == 0.0) break;
          d = next;
        }
        x = d / gauge(d);
      }
      break;
    }
  }

  BoundaryPoint p = boundary_point(center_ + x, 1e-8);
  const double residual = angle_sine(p.conormal, u);
  if (residual > 1e-9 || p.conormal.dot(u) <= 0.0) {
    std::ostringstream os;
    os << "support_point: proportionality residual " << residual
       << " at best iterate (" << p.position.transpose() << ")";
    throw ConvergenceError(os.str(), residual);
  }
  return p;
}

namespace {

struct LineGauge {
  const GaugeBody& body;
  Vec origin;  // relative to center
  Vec dir;     // unit

  double value(double t) const { return body.gauge(origin + t * dir) - 1.0; }
  double slope(double t) const {
    return body.gauge_gradient(origin + t * dir).dot(dir);
  }
};

}  // namespace

Chord GaugeBody::chord_second_intersection(const BoundaryPoint& p,
                                           const Vec& dir) const {
  if (dir.norm() == 0.0) throw GeometryError("chord: zero direction");
  const Vec d_unit = dir / dir.norm();
  Vec grad = gauge_gradient(p.position - center_);
  const double pairing = grad.dot(d_unit) / grad.norm();
  if (std::abs(pairing) < tangency_threshold) {
    return {p, p, d_unit, true};
  }

  // Walk along the descending side of the chord.
  const Vec d_search = pairing > 0.0 ? Vec(-d_unit) : d_unit;
  LineGauge line{*this, p.position - center_, d_search};

  // The whole chord lies within 2*scale_hint of the center along the line.
  const double t_max = 2.2 * scale_hint_ + 2.0 * (p.position - center_).norm();
  if (!std::isfinite(line.value(t_max))) {
    throw GeometryError("chord: gauge not finite along the line");
  }

  // Find an interior point (gauge < 1). Golden search for the convex
  // minimum, stopping as soon as we are safely inside.
  double lo = 0.0, hi = t_max;
  double t_in = 0.0, f_in = line.value(0.0);
  {
    constexpr double inv_phi = 0.6180339887498949;
    double c = hi - inv_phi * hi, d = inv_phi * hi;
    double fc = line.value(c), fd = line.value(d);
    for (int it = 0; it < 120; ++it) {
      const double f_best = std::min(fc, fd);
      if (f_best < f_in) {
        f_in = f_best;
        t_in = fc < fd ? c : d;
      }
      if (f_in < -1e-9 || (hi - lo) < 1e-13 * t_max) break;
      if (fc < fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - inv_phi * (hi - lo);
        fc = line.value(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + inv_phi * (hi - lo);
        fd = line.value(d);
      }
    }
  }

  double t_root;
  if (f_in >= 0.0) {
    // No detectable interior dip: numerically tangent chord.
    if (f_in <= gauge_root_tol) {
      return {p, p, d_unit, true};
    }
    throw ConvergenceError("chord: no second intersection found", f_in);
  } else {
    const double f_out = line.value(t_max);
    t_root = newton_bisect([&](double t) { return line.value(t); },
                           [&](double t) { return line.slope(t); }, t_in, t_max,
                           f_in, f_out, gauge_root_tol, 1e-15 * t_max);
  }

  const Vec x_b = p.position + t_root * d_search;
  BoundaryPoint b = boundary_point(x_b, 1e-6);
  return {p, b, d_search, false};
}

BoundaryPoint GaugeBody::ray_exit(const Vec& x0, const Vec& dir) const {
  if (dir.norm() == 0.0) throw GeometryError("ray_exit: zero direction");
  const Vec d_unit = dir / dir.norm();
  const Vec rel = x0 - center_;
  const double f0 = gauge(rel);
  if (!std::isfinite(f0)) throw GeometryError("ray_exit: gauge not finite at start");
  if (f0 > 1.0 + 1e-9) throw GeometryError("ray_exit: start point outside the body");

  LineGauge line{*this, rel, d_unit};
  if (f0 > 1.0 - 1e-9) {
    // Boundary start: must point inward; reuse the chord machinery.
    const Vec grad = gauge_gradient(rel);
    if (grad.dot(d_unit) / grad.norm() >= -tangency_threshold) {
      throw GeometryError("ray_exit: direction does not point into the body");
    }
    return chord_second_intersection(boundary_point(x0), d_unit).endpoint_b;
  }

  // Interior start: exponential bracketing, then safeguarded Newton.
  double t_lo = 0.0, f_lo = f0 - 1.0;
  double t_hi = 0.05 * scale_hint_;
  double f_hi = line.value(t_hi);
  int guard = 0;
  while (f_hi < 0.0) {
    if (++guard > 80) {
      throw ConvergenceError("ray_exit: bracketing failed", std::abs(f_hi));
    }
    t_lo = t_hi;
    f_lo = f_hi;
    t_hi *= 2.0;
    f_hi = line.value(t_hi);
    if (!std::isfinite(f_hi)) {
      throw GeometryError("ray_exit: gauge not finite along the ray");
    }
  }
  const double t_root =
      newton_bisect([&](double t) { return line.value(t); },
                    [&](double t) { return line.slope(t); }, t_lo, t_hi, f_lo,
                    f_hi, gauge_root_tol, 1e-16 * std::max(1.0, t_hi));
  return boundary_point(x0 + t_root * d_unit, 1e-6);
}

Vec GaugeBody::bounding_halfwidths() const {
  Vec h(dim_);
  for (int i = 0; i < dim_; ++i) {
    Vec e = Vec::Zero(dim_);
    e[i] = 1.0;
    const double plus = (support_point(e).position - center_)[i];
    e[i] = -1.0;
    const double minus = -(support_point(e).position - center_)[i];
    h[i] = std::max(plus, minus);
  }
  return h;
}

}  // namespace billiards
