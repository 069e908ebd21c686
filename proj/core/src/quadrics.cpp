#include "billiards/quadrics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "billiards/errors.hpp"
#include "billiards/rootfind.hpp"

namespace billiards {

Quadric::Quadric(Mat q, Vec l, double c) : q_(std::move(q)), l_(std::move(l)), c_(c) {
  if (q_.rows() != q_.cols() || q_.rows() != l_.size() || q_.rows() < 2) {
    throw GeometryError("quadric needs an n x n matrix and an n-vector, n >= 2");
  }
  q_ = 0.5 * (q_ + q_.transpose());
  const double norm =
      std::sqrt(q_.squaredNorm() + l_.squaredNorm() + c_ * c_);
  if (!(norm > 0.0)) throw GeometryError("zero quadric");
  q_ /= norm;
  l_ /= norm;
  c_ /= norm;

  // Sign convention: the largest-magnitude coefficient is positive.
  double lead = c_;
  double lead_abs = std::abs(c_);
  for (int i = 0; i < q_.rows(); ++i) {
    for (int j = 0; j < q_.cols(); ++j) {
      if (std::abs(q_(i, j)) > lead_abs) {
        lead_abs = std::abs(q_(i, j));
        lead = q_(i, j);
      }
    }
    if (std::abs(l_[i]) > lead_abs) {
      lead_abs = std::abs(l_[i]);
      lead = l_[i];
    }
  }
  if (lead < 0.0) {
    q_ *= -1.0;
    l_ *= -1.0;
    c_ *= -1.0;
  }
}

double Quadric::evaluate(const Vec& z) const {
  return z.dot(q_ * z) + 2.0 * l_.dot(z) + c_;
}

Vec Quadric::gradient(const Vec& z) const { return 2.0 * (q_ * z + l_); }

Vec Quadric::coefficients() const {
  const int n = dim();
  const int quad_terms = n * (n + 1) / 2;
  Vec coeff(quad_terms + n + 1);
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      coeff[idx++] = i == j ? q_(i, i) : 2.0 * q_(i, j);
    }
  }
  for (int i = 0; i < n; ++i) coeff[idx++] = 2.0 * l_[i];
  coeff[idx] = c_;
  return coeff;
}

QuadricFit fit_quadric(const std::vector<Vec>& points) {
  if (points.empty()) throw GeometryError("quadric fit needs points");
  const int n = static_cast<int>(points.front().size());
  if (n < 2) throw GeometryError("quadric fit needs dimension >= 2");
  const int needed = (n + 1) * (n + 2) / 2 + 3;
  const int m = static_cast<int>(points.size());
  if (m < needed) {
    std::ostringstream os;
    os << "quadric fit needs at least " << needed << " points, got " << m;
    throw GeometryError(os.str());
  }

  Vec center = Vec::Zero(n);
  for (const Vec& p : points) center += p;
  center /= m;
  double scale = 0.0;
  for (const Vec& p : points) scale += (p - center).squaredNorm();
  scale = std::sqrt(scale / m);
  if (!(scale > 0.0)) throw GeometryError("quadric fit: all points coincide");

  const int quad_terms = n * (n + 1) / 2;
  const int cols = quad_terms + n + 1;
  Mat design(m, cols);
  for (int r = 0; r < m; ++r) {
    const Vec z = (points[r] - center) / scale;
    int idx = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) design(r, idx++) = z[i] * z[j];
    }
    for (int i = 0; i < n; ++i) design(r, idx++) = z[i];
    design(r, idx) = 1.0;
  }

  Eigen::JacobiSVD<Mat> svd(design, Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const Vec coeff = svd.matrixV().col(cols - 1);

  // Scaled-frame quadric from the coefficient vector.
  Mat qs = Mat::Zero(n, n);
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      qs(i, j) = i == j ? coeff[idx] : 0.5 * coeff[idx];
      qs(j, i) = qs(i, j);
      ++idx;
    }
  }
  Vec ls(n);
  for (int i = 0; i < n; ++i) ls[i] = 0.5 * coeff[idx++];
  const double cs = coeff[idx];

  // Undo z = (x - center)/scale.
  const double s2 = scale * scale;
  Mat q = qs / s2;
  Vec l = -qs * center / s2 + ls / scale;
  const double c = center.dot(qs * center) / s2 - 2.0 * ls.dot(center) / scale + cs;

  QuadricFit fit{Quadric(q, l, c), sigma(cols - 1) / std::sqrt(double(m)),
                 false, center, scale};
  fit.degenerate = sigma(cols - 2) < 1e-10 * sigma(0);
  return fit;
}

std::string to_string(ConicClass c) {
  switch (c) {
    case ConicClass::ellipse: return "ellipse";
    case ConicClass::hyperbola: return "hyperbola";
    case ConicClass::parabola: return "parabola";
    case ConicClass::line_pair: return "line_pair";
    case ConicClass::single_line: return "single_line";
    case ConicClass::point: return "point";
    case ConicClass::empty: return "empty";
  }
  return "unknown";
}

ConicClass classify_conic(const Quadric& conic) {
  if (conic.dim() != 2) throw GeometryError("conic classification is 2D only");
  const Mat& q = conic.quadratic();
  const Vec& l = conic.linear();
  const double c = conic.constant();

  Mat bordered(3, 3);
  bordered << q(0, 0), q(0, 1), l[0],
              q(1, 0), q(1, 1), l[1],
              l[0],    l[1],    c;

  Eigen::SelfAdjointEigenSolver<Mat> es3(bordered);
  const Vec ev3 = es3.eigenvalues();
  const double tol3 = 1e-10 * ev3.cwiseAbs().maxCoeff();
  int rank3 = 0, pos3 = 0, neg3 = 0;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(ev3[i]) > tol3) {
      ++rank3;
      (ev3[i] > 0.0 ? pos3 : neg3)++;
    }
  }

  Eigen::SelfAdjointEigenSolver<Mat> es2(q);
  const Vec ev2 = es2.eigenvalues();
  const double scale2 = std::max(ev2.cwiseAbs().maxCoeff(), 1e-30);
  const double tol2 = 1e-10 * std::max(scale2, ev3.cwiseAbs().maxCoeff());
  const double det2 = ev2[0] * ev2[1];
  const bool det2_zero = std::abs(det2) <= tol2 * scale2;

  if (rank3 == 3) {
    if (det2_zero) return ConicClass::parabola;
    if (det2 < 0.0) return ConicClass::hyperbola;
    // Same-sign eigenvalues: real ellipse iff the bordered form is indefinite.
    return (pos3 == 3 || neg3 == 3) ? ConicClass::empty : ConicClass::ellipse;
  }
  if (rank3 == 2) {
    if (det2_zero) {
      // Parallel lines, real or not: with Q = lambda u u^T and l along u
      // (forced by rank 2), realness is the discriminant of the 1D quadratic.
      const int big = std::abs(ev2[0]) > std::abs(ev2[1]) ? 0 : 1;
      const double lambda = ev2[big];
      const Vec u = es2.eigenvectors().col(big);
      const double lu = l.dot(u);
      return (lu * lu - lambda * c >= 0.0) ? ConicClass::line_pair
                                           : ConicClass::empty;
    }
    return det2 < 0.0 ? ConicClass::line_pair : ConicClass::point;
  }
  if (rank3 == 1) return ConicClass::single_line;
  return ConicClass::empty;
}

Plane::Plane(Vec o, Vec span1, Vec span2) : origin(std::move(o)) {
  if (origin.size() != 3 || span1.size() != 3 || span2.size() != 3) {
    throw GeometryError("plane requires 3D origin and spanning vectors");
  }
  if (span1.norm() == 0.0) throw GeometryError("plane spanning vector is zero");
  e1 = span1.normalized();
  Vec w = span2 - span2.dot(e1) * e1;
  if (w.norm() < 1e-12 * span2.norm() || span2.norm() == 0.0) {
    throw GeometryError("plane spanning vectors are collinear");
  }
  e2 = w.normalized();
}

Vec Plane::embed(double u, double v) const { return origin + u * e1 + v * e2; }

std::vector<Vec> planar_section(const std::function<double(const Vec&)>& f,
                                const Plane& plane, double extent, int grid) {
  if (grid < 4) throw GeometryError("section grid too small");
  std::vector<Vec> out;
  const double h = 2.0 * extent / grid;
  auto value = [&](double u, double v) { return f(plane.embed(u, v)); };

  // Sign changes along grid rows (varying u) and columns (varying v).
  for (int i = 0; i <= grid; ++i) {
    const double v = -extent + i * h;
    double prev = value(-extent, v);
    for (int j = 1; j <= grid; ++j) {
      const double u = -extent + j * h;
      const double cur = value(u, v);
      if ((cur < 0.0) != (prev < 0.0)) {
        const double root = bisect([&](double t) { return value(t, v); },
                                   u - h, u, prev, cur, 1e-13 * extent);
        Vec p(2);
        p << root, v;
        out.push_back(p);
      }
      prev = cur;
    }
  }
  for (int j = 0; j <= grid; ++j) {
    const double u = -extent + j * h;
    double prev = value(u, -extent);
    for (int i = 1; i <= grid; ++i) {
      const double v = -extent + i * h;
      const double cur = value(u, v);
      if ((cur < 0.0) != (prev < 0.0)) {
        const double root = bisect([&](double t) { return value(u, t); },
                                   v - h, v, prev, cur, 1e-13 * extent);
        Vec p(2);
        p << u, root;
        out.push_back(p);
      }
      prev = cur;
    }
  }
  if (out.empty()) {
    throw GeometryError("plane does not intersect the surface");
  }

  // Deterministic order: sort by angle around the section centroid.
  Vec centroid = Vec::Zero(2);
  for (const Vec& p : out) centroid += p;
  centroid /= static_cast<double>(out.size());
  std::sort(out.begin(), out.end(), [&](const Vec& a, const Vec& b) {
    const double ta = std::atan2(a[1] - centroid[1], a[0] - centroid[0]);
    const double tb = std::atan2(b[1] - centroid[1], b[0] - centroid[0]);
    if (ta != tb) return ta < tb;
    if (a[0] != b[0]) return a[0] < b[0];
    return a[1] < b[1];
  });
  return out;
}

std::vector<Vec> planar_section(const GaugeBody& body, const Plane& plane,
                                int grid) {
  if (body.dim() != 3) throw GeometryError("body section requires a 3D body");
  const double extent =
      2.2 * body.scale_hint() + (plane.origin - body.center()).norm();
  return planar_section(
      [&body](const Vec& x) { return body.gauge(x - body.center()) - 1.0; },
      plane, extent, grid);
}

}  // namespace billiards
