#include "billiards/phasecurves.hpp"

#include <cmath>

#include "billiards/errors.hpp"

namespace billiards {

PlanarLinearField::PlanarLinearField(Mat m, Vec b)
    : m_(std::move(m)), b_(std::move(b)) {
  if (m_.rows() != 2 || m_.cols() != 2 || b_.size() != 2) {
    throw GeometryError("planar field needs a 2x2 matrix and a 2-vector");
  }
  if (std::abs(m_.trace()) > 1e-14 * std::max(1.0, m_.cwiseAbs().maxCoeff())) {
    throw GeometryError("field matrix must be trace-free");
  }
}

double QuadraticHamiltonian::value(const Vec& z) const {
  const double x = z[0], y = z[1];
  return 0.5 * (a * x * x + 2.0 * c * x * y + d * y * y) + e * x + f * y;
}

Vec QuadraticHamiltonian::gradient(const Vec& z) const {
  Vec g(2);
  g << a * z[0] + c * z[1] + e, c * z[0] + d * z[1] + f;
  return g;
}

Vec QuadraticHamiltonian::rotated_gradient(const Vec& z) const {
  const Vec g = gradient(z);
  Vec r(2);
  r << g[1], -g[0];
  return r;
}

QuadraticHamiltonian hamiltonian_of(const PlanarLinearField& field) {
  // (dH/dy, -dH/dx) = M z + b has the unique solution below; the mixed
  // coefficient is consistent exactly because trace(M) = 0.
  const Mat& m = field.m();
  const Vec& b = field.b();
  QuadraticHamiltonian h;
  h.c = m(0, 0);  // = -m(1, 1)
  h.d = m(0, 1);
  h.f = b[0];
  h.a = -m(1, 0);
  h.e = -b[1];
  return h;
}

std::string to_string(FieldCase c) {
  switch (c) {
    case FieldCase::saddle_hyperbolas: return "saddle_hyperbolas";
    case FieldCase::center_circles: return "center_circles";
    case FieldCase::shear_parabolas_or_lines: return "shear_parabolas_or_lines";
    case FieldCase::constant_lines: return "constant_lines";
  }
  return "unknown";
}

FieldCase classify_field(const PlanarLinearField& field) {
  const Mat& m = field.m();
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale <= 1e-300) return FieldCase::constant_lines;
  // Trace-free: eigenvalues are the square roots of -det(M).
  const double det = m.determinant();
  const double tol = 1e-10 * scale * scale;
  if (det < -tol) return FieldCase::saddle_hyperbolas;
  if (det > tol) return FieldCase::center_circles;
  return FieldCase::shear_parabolas_or_lines;
}

bool shear_produces_lines(const PlanarLinearField& field) {
  if (classify_field(field) != FieldCase::shear_parabolas_or_lines) {
    throw GeometryError("shear sub-split applies only to nilpotent fields");
  }
  const Mat& m = field.m();
  const Vec& b = field.b();
  // M is rank one; its image is spanned by the larger column.
  const Vec im = m.col(0).norm() >= m.col(1).norm() ? m.col(0) : m.col(1);
  if (b.norm() == 0.0) return true;
  const double cross = std::abs(im[0] * b[1] - im[1] * b[0]);
  return cross <= 1e-10 * im.norm() * b.norm();
}

Quadric phase_conic(const PlanarLinearField& field, const Vec& z0) {
  if (z0.size() != 2) throw GeometryError("phase conic needs a 2D point");
  if (field.at(z0).norm() == 0.0) {
    throw GeometryError("phase conic through a singular point of the field");
  }
  const QuadraticHamiltonian h = hamiltonian_of(field);
  Mat q(2, 2);
  q << 0.5 * h.a, 0.5 * h.c, 0.5 * h.c, 0.5 * h.d;
  Vec l(2);
  l << 0.5 * h.e, 0.5 * h.f;
  return Quadric(q, l, -h.value(z0));
}

std::vector<Vec> integrate_orbit(const PlanarLinearField& field, const Vec& z0,
                                 double t_end, double dt) {
  if (!(dt > 0.0)) throw GeometryError("orbit integration needs dt > 0");
  std::vector<Vec> orbit;
  const auto steps = static_cast<long long>(std::floor(t_end / dt + 1e-12));
  orbit.reserve(steps + 2);
  Vec z = z0;
  orbit.push_back(z);
  auto step = [&](const Vec& y, double h) {
    const Vec k1 = field.at(y);
    const Vec k2 = field.at(y + 0.5 * h * k1);
    const Vec k3 = field.at(y + 0.5 * h * k2);
    const Vec k4 = field.at(y + h * k3);
    return Vec(y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  };
  for (long long i = 0; i < steps; ++i) {
    z = step(z, dt);
    orbit.push_back(z);
  }
  const double remainder = t_end - steps * dt;
  if (remainder > 1e-12 * dt) {
    z = step(z, remainder);
    orbit.push_back(z);
  }
  return orbit;
}

}  // namespace billiards
