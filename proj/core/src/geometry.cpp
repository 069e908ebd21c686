#include "billiards/geometry.hpp"

#include <Eigen/Eigenvalues>

#include "billiards/errors.hpp"

namespace billiards {

AffineMap AffineMap::compose(const AffineMap& other) const {
  return {linear * other.linear, linear * other.translation + translation};
}

AffineMap AffineMap::inverse() const {
  Mat inv = linear.inverse();
  return {inv, -inv * translation};
}

AffineMap AffineMap::identity(int n) {
  return {Mat::Identity(n, n), Vec::Zero(n)};
}

double angle_sine(const Vec& a, const Vec& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) {
    throw GeometryError("angle_sine: zero vector");
  }
  const double c = a.dot(b) / (na * nb);
  // |sin| from the rejection of a on b; stable near parallel.
  Vec rej = a / na - c * (b / nb);
  return rej.norm();
}

Mat spd_sqrt(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) {
    throw GeometryError("spd_sqrt: matrix is not positive definite");
  }
  return es.operatorSqrt();
}

bool is_spd(const Mat& a, double sym_tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > sym_tol * scale) return false;
  Eigen::LLT<Mat> llt(0.5 * (a + a.transpose()));
  return llt.info() == Eigen::Success;
}

}  // namespace billiards
