#include "billiards/involutions.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "billiards/errors.hpp"
#include "billiards/rootfind.hpp"
#include "billiards/sampling.hpp"

namespace billiards {

namespace {

// Orthonormal basis with the last column along alpha.
Mat frame_with_axis(const Vec& alpha) {
  const int n = static_cast<int>(alpha.size());
  const Vec a = alpha.normalized();
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  // Put the alpha-parallel column last and make it point along alpha.
  if ((q.col(0) - a).norm() > (q.col(0) + a).norm()) q.col(0) *= -1.0;
  Mat frame(n, n);
  frame.rightCols(1) = q.col(0);
  frame.leftCols(n - 1) = q.rightCols(n - 1);
  return frame;
}

// Equator points: boundary points where the conormal annihilates alpha.
// Found by sign changes of <conormal, alpha> along meridian circles.
std::vector<Vec> find_equator_points(const GaugeBody& body, const Vec& alpha) {
  const int n = body.dim();
  const Mat frame = frame_with_axis(alpha);
  const Vec a = alpha.normalized();
  std::vector<Vec> points;
  const int meridians = n == 2 ? 1 : 8;
  for (int mi = 0; mi < meridians; ++mi) {
    Vec e_perp;
    if (n == 2) {
      e_perp = frame.col(0);
    } else {
      double c = std::cos(M_PI * mi / meridians);
      double s = std::sin(M_PI * mi / meridians);
      e_perp = c * frame.col(0) + s * frame.col(1);
    }
    auto pairing = [&](double theta) {
      const Vec u = std::cos(theta) * e_perp + std::sin(theta) * a;
      const Vec x = body.boundary_point_abs(u);
      return body.gauge_gradient(x - body.center()).dot(a);
    };
    // Half-step offset so zeros at symmetric angles (0, pi) sit strictly
    // inside scan cells instead of on the seam.
    const int grid = 64;
    const double step = 2.0 * M_PI / grid;
    double prev_theta = 0.5 * step, prev_val = pairing(prev_theta);
    for (int k = 1; k <= grid; ++k) {
      const double theta = 0.5 * step + step * k;
      const double val = pairing(theta);
      if ((val < 0.0) != (prev_val < 0.0)) {
        const double root =
            bisect(pairing, prev_theta, theta, prev_val, val, 1e-14);
        const Vec u = std::cos(root) * e_perp + std::sin(root) * a;
        points.push_back(body.boundary_point_abs(u));
      }
      prev_theta = theta;
      prev_val = val;
    }
  }
  return points;
}

double cloud_diameter(const ChordPairSample& sample) {
  std::vector<const Vec*> cloud;
  cloud.reserve(2 * sample.pairs.size());
  for (const auto& pr : sample.pairs) {
    cloud.push_back(&pr.p);
    cloud.push_back(&pr.q);
  }
  double best = 0.0;
  for (size_t i = 0; i < cloud.size(); ++i) {
    for (size_t j = i + 1; j < cloud.size(); ++j) {
      best = std::max(best, (*cloud[i] - *cloud[j]).norm());
    }
  }
  return best;
}

}  // namespace

ChordPairSample chord_involution(const GaugeBody& body, const Vec& alpha,
                                 int m, const InvolutionConfig& cfg) {
  if (alpha.size() != body.dim() || alpha.norm() == 0.0) {
    throw GeometryError("chord direction must be a nonzero vector of body dim");
  }
  if (m < 1) throw GeometryError("chord sample count must be positive");
  const int n = body.dim();
  const Vec a = alpha.normalized();

  ChordPairSample sample;
  sample.alpha = a;
  sample.pairs.reserve(m);

  sample.equator_points = find_equator_points(body, a);

  // Sample boundary points with radial directions in the hemisphere
  // {u : <u, alpha> >= margin}; each chord determines its antipodal partner.
  const double margin = cfg.hemisphere_margin;
  for (int k = 0; k < m; ++k) {
    Vec u;
    if (n == 2) {
      const double cap = std::acos(margin);
      const double phi0 = std::atan2(a[1], a[0]);
      const double theta = phi0 + cap * (2.0 * (k + 0.5) / m - 1.0);
      u = Vec(2);
      u << std::cos(theta), std::sin(theta);
    } else {
      const Mat frame = frame_with_axis(a);
      const double z = margin + (1.0 - margin) * (k + 0.5) / m;
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = 2.3999632297286533 * k;
      Vec local(n);
      if (n == 3) {
        local << s * std::cos(phi), s * std::sin(phi), z;
      } else {
        Rng rng(derive_seed(0xA1FAull, k));
        Vec t = rng.unit_vector(n - 1);
        local.head(n - 1) = s * t;
        local[n - 1] = z;
      }
      u = frame * local;
    }
    const BoundaryPoint p = body.boundary_point(body.boundary_point_abs(u));
    const Chord chord = body.chord_second_intersection(p, a);
    if (chord.tangent_flag) {
      sample.equator_points.push_back(p.position);
      continue;
    }
    sample.pairs.push_back({p.position, chord.endpoint_b.position});
  }
  return sample;
}

ChordPairSample chord_involution(const PlanarPatch& s1, const PlanarPatch& s2,
                                 const Vec& alpha, int m,
                                 const InvolutionConfig& cfg) {
  if (alpha.size() != 2 || alpha.norm() == 0.0) {
    throw GeometryError("patch chord direction must be a nonzero 2D vector");
  }
  if (m < 1) throw GeometryError("chord sample count must be positive");
  const Vec a = alpha.normalized();

  ChordPairSample sample;
  sample.alpha = a;
  sample.pairs.reserve(m);
  const bool same_patch = &s1 == &s2;

  for (int k = 0; k < m; ++k) {
    const Vec p = s1.sample(k, m);
    if (s1.transversality(p, a) < cfg.transversality_min) {
      ++sample.dropped;
      continue;
    }
    std::vector<Vec> hits = s2.line_intersections(p, a);
    if (same_patch) {
      // Drop the trivial self-intersection at p.
      hits.erase(std::remove_if(hits.begin(), hits.end(),
                                [&](const Vec& h) {
                                  return (h - p).norm() < 1e-9;
                                }),
                 hits.end());
    }
    const Vec* chosen = nullptr;
    double best = std::numeric_limits<double>::infinity();
    for (const Vec& h : hits) {
      const double d = (h - s2.base_point()).norm();
      if (d < best) {
        best = d;
        chosen = &h;
      }
    }
    if (chosen == nullptr || s2.transversality(*chosen, a) < cfg.transversality_min) {
      ++sample.dropped;
      continue;
    }
    sample.pairs.push_back({p, *chosen});
  }

  if (sample.dropped > cfg.max_drop_fraction * m) {
    std::ostringstream os;
    os << "chord sampling dropped " << sample.dropped << " of " << m
       << " lines (patch escapes)";
    throw GeometryError(os.str());
  }
  return sample;
}

std::pair<AffineMap, double> fit_affine_map(const ChordPairSample& sample) {
  const int m = static_cast<int>(sample.pairs.size());
  if (m == 0) throw GeometryError("affine fit needs a nonempty pair sample");
  const int n = static_cast<int>(sample.pairs.front().p.size());
  if (m < n * n + n + 5) {
    std::ostringstream os;
    os << "affine fit needs at least " << n * n + n + 5 << " pairs, got " << m;
    throw GeometryError(os.str());
  }

  // Rows [p^T, 1] -> q and [q^T, 1] -> p: an involution must fit both ways.
  Mat x(2 * m, n + 1);
  Mat y(2 * m, n);
  for (int i = 0; i < m; ++i) {
    x.block(i, 0, 1, n) = sample.pairs[i].p.transpose();
    x(i, n) = 1.0;
    y.row(i) = sample.pairs[i].q.transpose();
    x.block(m + i, 0, 1, n) = sample.pairs[i].q.transpose();
    x(m + i, n) = 1.0;
    y.row(m + i) = sample.pairs[i].p.transpose();
  }

  Vec col_scale(n + 1);
  for (int j = 0; j <= n; ++j) {
    col_scale[j] = std::max(x.col(j).norm() / std::sqrt(2.0 * m), 1e-300);
  }
  Mat xs = x * col_scale.cwiseInverse().asDiagonal();

  Eigen::JacobiSVD<Mat> svd(xs, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double cond =
      svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
  if (!(cond <= 1e8)) {
    std::ostringstream os;
    os << "affine fit is rank deficient (condition number " << cond << ")";
    throw GeometryError(os.str());
  }
  Mat w = col_scale.cwiseInverse().asDiagonal() * svd.solve(y);

  AffineMap map;
  map.linear = w.topRows(n).transpose();
  map.translation = w.row(n).transpose();

  const double rss = (x * w - y).squaredNorm();
  const double rms = std::sqrt(rss / (2.0 * m));
  const double diameter = cloud_diameter(sample);
  if (!(diameter > 0.0)) throw GeometryError("pair cloud has zero diameter");
  return {map, rms / diameter};
}

namespace {

DefectReport build_report(const ChordPairSample& sample) {
  DefectReport rep;
  rep.alpha = sample.alpha;
  rep.pair_count = static_cast<int>(sample.pairs.size());
  rep.dropped = sample.dropped;

  auto [map, fit_rms] = fit_affine_map(sample);
  rep.fitted = map;
  rep.fit_rms = fit_rms;

  const int n = static_cast<int>(map.linear.rows());
  const Mat& l = map.linear;
  const Mat involution_gap = l * l - Mat::Identity(n, n);
  rep.involution_residual =
      Eigen::JacobiSVD<Mat>(involution_gap).singularValues()(0) +
      (l * map.translation + map.translation).norm();

  Eigen::EigenSolver<Mat> es(l);
  const auto& lambda = es.eigenvalues();
  // Assign one eigenvalue to -1 and the rest to +1, minimizing the total
  // distance; n <= 3 so trying every assignment is fine.
  double best = std::numeric_limits<double>::infinity();
  int minus_index = 0;
  for (int pick = 0; pick < n; ++pick) {
    double total = std::abs(lambda(pick) - std::complex<double>(-1.0, 0.0));
    for (int j = 0; j < n; ++j) {
      if (j != pick) total += std::abs(lambda(j) - std::complex<double>(1.0, 0.0));
    }
    if (total < best) {
      best = total;
      minus_index = pick;
    }
  }
  rep.eigenstructure_residual = best;

  const Eigen::VectorXcd axis_c = es.eigenvectors().col(minus_index);
  Vec axis = axis_c.real();
  if (axis.norm() < 1e-12) axis = axis_c.imag();
  rep.minus_one_axis_sine =
      axis.norm() > 0.0 ? angle_sine(axis, sample.alpha) : 1.0;

  // Diagnostic: rebuild the translation from an equator anchor point, which
  // the involution must fix, and compare predictions on the sampled pairs.
  if (!sample.equator_points.empty() && !sample.pairs.empty()) {
    const Vec& anchor = sample.equator_points.front();
    const Vec b_anchor = anchor - l * anchor;
    double rss = 0.0;
    for (const auto& pr : sample.pairs) {
      rss += (l * pr.p + b_anchor - pr.q).squaredNorm();
    }
    const double diameter = cloud_diameter(sample);
    rep.anchor_discrepancy =
        std::sqrt(rss / sample.pairs.size()) / diameter;
  }
  return rep;
}

}  // namespace

DefectReport projectivity_defect(const GaugeBody& body, const Vec& alpha,
                                 const InvolutionConfig& cfg) {
  return build_report(chord_involution(body, alpha, cfg.samples, cfg));
}

DefectReport projectivity_defect(const PlanarPatch& s1, const PlanarPatch& s2,
                                 const Vec& alpha, const InvolutionConfig& cfg) {
  return build_report(chord_involution(s1, s2, alpha, cfg.samples, cfg));
}

VerdictRecord ellipsoid_verdict(const GaugeBody& body, const VerdictConfig& cfg) {
  const int n = body.dim();
  const int grid = cfg.grid > 0 ? cfg.grid : (n == 2 ? 40 : 200);

  VerdictRecord rec;
  rec.reports.reserve(grid);
  for (int k = 0; k < grid; ++k) {
    Vec alpha;
    if (n == 2) {
      alpha = circle_direction(k, grid);
    } else if (n == 3) {
      alpha = hemisphere_direction(k, grid);
    } else {
      Rng rng(derive_seed(0xD17ull, k));
      alpha = rng.unit_vector(n);
    }
    try {
      DefectReport rep = projectivity_defect(body, alpha, cfg.chords);
      if (rep.fit_rms > rec.max_defect) {
        rec.max_defect = rep.fit_rms;
        rec.argmax_direction = rep.alpha;
      }
      rec.reports.push_back(std::move(rep));
    } catch (const Error&) {
      ++rec.skipped_directions;
    }
  }
  if (rec.reports.empty()) {
    throw GeometryError("every sweep direction failed");
  }

  const BLMatrix bl = bl_matrix(body, cfg.bl);
  rec.bl_cross_check = bl_sphericity_defect(body, bl, cfg.defect_samples);
  rec.is_ellipsoid_like =
      rec.max_defect < cfg.tol && rec.bl_cross_check < cfg.tol;
  return rec;
}

std::vector<DefectReport> two_patch_defect(const PlanarPatch& s1,
                                           const PlanarPatch& s2,
                                           const Vec& alpha0,
                                           const TwoPatchConfig& cfg) {
  if (alpha0.size() != 2 || alpha0.norm() == 0.0) {
    throw GeometryError("base chord direction must be a nonzero 2D vector");
  }
  const Vec a0 = alpha0.normalized();
  if (s1.transversality(s1.base_point(), a0) < cfg.chords.transversality_min ||
      s2.transversality(s2.base_point(), a0) < cfg.chords.transversality_min) {
    throw GeometryError("base direction is not transversal at the base points");
  }

  std::vector<DefectReport> reports;
  reports.reserve(cfg.directions);
  const double phi0 = std::atan2(a0[1], a0[0]);
  for (int j = 0; j < cfg.directions; ++j) {
    const double phi =
        cfg.directions == 1
            ? phi0
            : phi0 + cfg.cone * (2.0 * j / (cfg.directions - 1.0) - 1.0);
    Vec alpha(2);
    alpha << std::cos(phi), std::sin(phi);
    reports.push_back(projectivity_defect(s1, s2, alpha, cfg.chords));
  }
  return reports;
}

}  // namespace billiards
