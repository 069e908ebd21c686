#include "billiards/blmetric.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "billiards/errors.hpp"
#include "billiards/sampling.hpp"

namespace billiards {

std::string to_string(Integrator mode) {
  return mode == Integrator::cubature ? "cubature" : "mc";
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

namespace {

struct Moments {
  double m0 = 0.0;  // volume
  Vec m1;           // first moments, relative to the body center
  Mat m2;           // raw second moments, relative to the body center

  explicit Moments(int n) : m1(Vec::Zero(n)), m2(Mat::Zero(n, n)) {}
};

Moments cubature_moments_2d(const GaugeBody& body, int nodes) {
  Moments mom(2);
  const double w = 2.0 * M_PI / nodes;
  for (int k = 0; k < nodes; ++k) {
    const double theta = 2.0 * M_PI * (k + 0.5) / nodes;
    Vec e(2);
    e << std::cos(theta), std::sin(theta);
    const double r = 1.0 / body.gauge(e);
    mom.m0 += w * r * r / 2.0;
    mom.m1 += w * r * r * r / 3.0 * e;
    mom.m2 += w * r * r * r * r / 4.0 * (e * e.transpose());
  }
  return mom;
}

Moments cubature_moments_3d(const GaugeBody& body, int polar, int azimuth) {
  Moments mom(3);
  std::vector<double> z, wz;
  gauss_legendre(polar, z, wz);
  const double wphi = 2.0 * M_PI / azimuth;
  for (int i = 0; i < polar; ++i) {
    const double s = std::sqrt(std::max(0.0, 1.0 - z[i] * z[i]));
    for (int j = 0; j < azimuth; ++j) {
      const double phi = 2.0 * M_PI * (j + 0.5) / azimuth;
      Vec u(3);
      u << s * std::cos(phi), s * std::sin(phi), z[i];
      const double r = 1.0 / body.gauge(u);
      const double w = wz[i] * wphi;
      const double r3 = r * r * r;
      mom.m0 += w * r3 / 3.0;
      mom.m1 += w * r3 * r / 4.0 * u;
      mom.m2 += w * r3 * r * r / 5.0 * (u * u.transpose());
    }
  }
  return mom;
}

Moments cubature_moments(const GaugeBody& body, int angular, int polar,
                         int azimuth) {
  if (body.dim() == 2) return cubature_moments_2d(body, angular);
  if (body.dim() == 3) return cubature_moments_3d(body, polar, azimuth);
  throw GeometryError("cubature integrator supports 2D and 3D bodies only");
}

BLMatrix finish(const GaugeBody& body, const Moments& mom, BLMatrix bl) {
  const int n = body.dim();
  if (!(mom.m0 > 0.0)) throw GeometryError("body volume integrated to zero");
  const Vec beta = mom.m1 / mom.m0;
  Mat central = mom.m2 - mom.m0 * beta * beta.transpose();
  Mat primal = (n + 2.0) / mom.m0 * central;
  primal = 0.5 * (primal + primal.transpose());
  if (!is_spd(primal, 1e-9)) {
    throw GeometryError("second-moment matrix is not positive definite");
  }
  Mat dual = primal.inverse();
  bl.primal = primal;
  bl.dual = 0.5 * (dual + dual.transpose());
  bl.barycenter = body.center() + beta;
  return bl;
}

BLMatrix bl_matrix_cubature(const GaugeBody& body, const BLConfig& cfg) {
  BLMatrix bl;
  bl.mode = Integrator::cubature;
  bl.seed = cfg.seed;
  const Moments full = cubature_moments(body, cfg.angular_nodes,
                                        cfg.polar_nodes, cfg.azimuth_nodes);
  bl = finish(body, full, std::move(bl));
  bl.samples = body.dim() == 2
                   ? cfg.angular_nodes
                   : static_cast<long long>(cfg.polar_nodes) * cfg.azimuth_nodes;

  // Error estimate: difference against a half-resolution pass.
  const Moments half =
      cubature_moments(body, std::max(16, cfg.angular_nodes / 2),
                       std::max(8, cfg.polar_nodes / 2),
                       std::max(16, cfg.azimuth_nodes / 2));
  BLMatrix coarse;
  coarse = finish(body, half, std::move(coarse));
  bl.standard_error = (bl.primal - coarse.primal).cwiseAbs().maxCoeff();
  return bl;
}

BLMatrix bl_matrix_monte_carlo(const GaugeBody& body, const BLConfig& cfg) {
  const int n = body.dim();
  if (cfg.samples <= 0 || cfg.block_size <= 0) {
    throw GeometryError("Monte Carlo budgets must be positive");
  }
  const Vec h = body.bounding_halfwidths();
  const long long blocks = (cfg.samples + cfg.block_size - 1) / cfg.block_size;

  Vec sum = Vec::Zero(n);
  Mat sum2 = Mat::Zero(n, n);
  long long total = 0;
  std::vector<Mat> block_second;
  std::vector<Vec> block_mean;
  block_second.reserve(blocks);

  for (long long k = 0; k < blocks; ++k) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
    const long long quota =
        std::min<long long>(cfg.block_size, cfg.samples - k * cfg.block_size);
    Vec bsum = Vec::Zero(n);
    Mat bsum2 = Mat::Zero(n, n);
    long long accepted = 0;
    long long proposals = 0;
    Vec x(n);
    while (accepted < quota) {
      if (++proposals > 10000 * quota) {
        throw ConvergenceError("rejection sampling acceptance rate too low",
                               static_cast<double>(accepted) / proposals);
      }
      for (int i = 0; i < n; ++i) x[i] = (2.0 * rng.uniform() - 1.0) * h[i];
      if (body.gauge(x) <= 1.0) {
        ++accepted;
        bsum += x;
        bsum2 += x * x.transpose();
      }
    }
    sum += bsum;
    sum2 += bsum2;
    total += accepted;
    block_mean.push_back(bsum / accepted);
    block_second.push_back(bsum2 / accepted);
  }

  Moments mom(n);
  mom.m0 = 1.0;  // the empirical mean absorbs the volume factor
  mom.m1 = sum / total;
  mom.m2 = sum2 / total;

  BLMatrix bl;
  bl.mode = Integrator::monte_carlo;
  bl.seed = cfg.seed;
  bl.samples = total;
  bl = finish(body, mom, std::move(bl));

  if (block_mean.size() >= 2) {
    const auto kk = static_cast<double>(block_mean.size());
    Mat mean_est = Mat::Zero(n, n);
    std::vector<Mat> est;
    est.reserve(block_mean.size());
    for (size_t b = 0; b < block_mean.size(); ++b) {
      Mat p = (n + 2.0) * (block_second[b] -
                           block_mean[b] * block_mean[b].transpose());
      est.push_back(p);
      mean_est += p;
    }
    mean_est /= kk;
    Mat var = Mat::Zero(n, n);
    for (const Mat& p : est) {
      var += (p - mean_est).cwiseProduct(p - mean_est);
    }
    var /= kk * (kk - 1.0);
    bl.standard_error = var.cwiseSqrt().maxCoeff();
    const double scale = bl.primal.cwiseAbs().maxCoeff();
    if (bl.standard_error > cfg.max_rel_se * scale) {
      std::ostringstream os;
      os << "sample budget exhausted with standard error " << bl.standard_error
         << " above " << cfg.max_rel_se << " of the matrix scale " << scale;
      throw ConvergenceError(os.str(), bl.standard_error);
    }
  }
  return bl;
}

}  // namespace

BLMatrix bl_matrix(const GaugeBody& body, const BLConfig& cfg) {
  return cfg.mode == Integrator::cubature ? bl_matrix_cubature(body, cfg)
                                          : bl_matrix_monte_carlo(body, cfg);
}

double bl_sphericity_defect(const GaugeBody& body, const BLMatrix& bl, int m) {
  if (m < 1) throw GeometryError("sphericity defect needs at least one sample");
  double worst = 0.0;
  for (int k = 0; k < m; ++k) {
    Vec u;
    if (body.dim() == 2) {
      const double theta = 2.0 * M_PI * k / m;
      u = Vec(2);
      u << std::cos(theta), std::sin(theta);
    } else if (body.dim() == 3) {
      const double z = -1.0 + 2.0 * (k + 0.5) / m;
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = 2.3999632297286533 * k;
      u = Vec(3);
      u << s * std::cos(phi), s * std::sin(phi), z;
    } else {
      Rng rng(derive_seed(0x5E11, k));
      u = rng.unit_vector(body.dim());
    }
    const Vec p = body.boundary_point_abs(u) - bl.barycenter;
    worst = std::max(worst, std::abs(p.dot(bl.dual * p) - 1.0));
  }
  return worst;
}

}  // namespace billiards
