#pragma once

#include <string>
#include <vector>

#include "billiards/geometry.hpp"
#include "billiards/quadrics.hpp"

namespace billiards {

/// Planar vector field z -> M z + b with trace(M) = 0, i.e. divergence-free.
class PlanarLinearField {
 public:
  PlanarLinearField(Mat m, Vec b);

  const Mat& m() const { return m_; }
  const Vec& b() const { return b_; }
  Vec at(const Vec& z) const { return m_ * z + b_; }

 private:
  Mat m_;
  Vec b_;
};

/// H(x, y) = (a x^2 + 2 c x y + d y^2)/2 + e x + f y.
struct QuadraticHamiltonian {
  double a = 0.0, c = 0.0, d = 0.0, e = 0.0, f = 0.0;

  double value(const Vec& z) const;
  Vec gradient(const Vec& z) const;
  Vec rotated_gradient(const Vec& z) const;  // (dH/dy, -dH/dx)
};

/// First integral of the field: its rotated gradient reproduces the field
/// exactly, so phase curves are level sets of H (conics or lines).
QuadraticHamiltonian hamiltonian_of(const PlanarLinearField& field);

enum class FieldCase {
  saddle_hyperbolas,
  center_circles,
  shear_parabolas_or_lines,
  constant_lines,
};

std::string to_string(FieldCase c);

/// Classification by the spectrum of M: real opposite eigenvalues, purely
/// imaginary pair, nonzero nilpotent, or zero.
FieldCase classify_field(const PlanarLinearField& field);

/// For a nonzero nilpotent M: true when b lies in the image of M, in which
/// case the level sets degenerate to lines instead of parabolas.
bool shear_produces_lines(const PlanarLinearField& field);

/// The level conic {H = H(z0)} through a nonsingular point z0.
Quadric phase_conic(const PlanarLinearField& field, const Vec& z0);

/// Classical fixed-step 4th order integration, used as a conservation oracle.
std::vector<Vec> integrate_orbit(const PlanarLinearField& field, const Vec& z0,
                                 double t_end, double dt);

}  // namespace billiards
