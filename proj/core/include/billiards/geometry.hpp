#pragma once

#include <Eigen/Dense>

namespace billiards {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Affine map x -> L x + b.
struct AffineMap {
  Mat linear;
  Vec translation;

  AffineMap() = default;
  AffineMap(Mat L, Vec b) : linear(std::move(L)), translation(std::move(b)) {}

  int dim() const { return static_cast<int>(linear.rows()); }

  Vec operator()(const Vec& x) const { return linear * x + translation; }

  /// this ∘ other: x -> this(other(x)).
  AffineMap compose(const AffineMap& other) const;
  AffineMap inverse() const;

  static AffineMap identity(int n);
};

/// sin of the angle between two nonzero vectors (0 when parallel,
/// insensitive to sign of either argument).
double angle_sine(const Vec& a, const Vec& b);

/// SPD square root via eigendecomposition.
Mat spd_sqrt(const Mat& a);

/// True when `a` is symmetric and positive definite (Cholesky succeeds).
bool is_spd(const Mat& a, double sym_tol = 1e-10);

}  // namespace billiards
