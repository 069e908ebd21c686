// Measures the constants frozen into the test suite: defect levels for
// non-quadric bodies, section-fit residuals, conjugation residuals, and the
// noise-response band of the affine fit. Run by hand; not a registered test.

#include <chrono>
#include <cstdio>
#include <vector>

#include "billiards/blmetric.hpp"
#include "billiards/bodies.hpp"
#include "billiards/involutions.hpp"
#include "billiards/patches.hpp"
#include "billiards/phasecurves.hpp"
#include "billiards/quadrics.hpp"
#include "billiards/reflectors.hpp"
#include "billiards/sampling.hpp"

using namespace billiards;

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

Mat random_rotation(Rng& rng, int n) {
  Mat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

// SPD matrix with eigenvalues in [0.3, 3] and condition number <= 10.
Mat random_spd(Rng& rng, int n) {
  Vec lam(n);
  const double lo = rng.uniform(0.3, 0.9);
  lam[0] = lo;
  lam[n - 1] = lo * rng.uniform(2.0, 9.5);
  for (int i = 1; i + 1 < n; ++i) lam[i] = rng.uniform(lam[0], lam[n - 1]);
  const Mat r = random_rotation(rng, n);
  return r * lam.asDiagonal() * r.transpose();
}

GaugeBody random_ellipsoid(Rng& rng, int n, bool off_center) {
  Vec c = Vec::Zero(n);
  if (off_center)
    for (int i = 0; i < n; ++i) c[i] = rng.uniform(-0.4, 0.4);
  return GaugeBody::ellipsoid(random_spd(rng, n), c);
}

// Boundary point plus an arriving velocity (positive pairing with the
// conormal).
std::pair<BoundaryPoint, Vec> random_arrival(const GaugeBody& body, Rng& rng) {
  for (;;) {
    const Vec u = rng.unit_vector(body.dim());
    const BoundaryPoint q = body.boundary_point(body.boundary_point_abs(u));
    Vec v = rng.unit_vector(body.dim());
    double pairing = q.conormal.dot(v);
    if (std::abs(pairing) < 0.05) continue;
    if (pairing < 0) v = -v;
    return {q, v * rng.uniform(0.5, 2.0)};
  }
}

void probe_verdict_baseline() {
  std::printf("== criterion 1/2/4 oracle: verdict sweeps ==\n");
  const double t_start = now_seconds();
  Rng rng(0x5EED0001);
  double baseline = 0.0;
  double worst_bl = 0.0;
  double worst_axis_sine = 0.0;
  int false_verdicts = 0;
  for (int k = 0; k < 10; ++k) {
    const GaugeBody body = random_ellipsoid(rng, 2, k % 2 == 0);
    const VerdictRecord rec = ellipsoid_verdict(body);
    if (!rec.is_ellipsoid_like) ++false_verdicts;
    baseline = std::max(baseline, rec.max_defect);
    worst_bl = std::max(worst_bl, rec.bl_cross_check);
    for (const DefectReport& r : rec.reports)
      worst_axis_sine = std::max(worst_axis_sine, r.minus_one_axis_sine);
    std::printf("  2d ellipse %d: verdict %d max_defect %.3e bl %.3e skipped %d\n",
                k, rec.is_ellipsoid_like ? 1 : 0, rec.max_defect,
                rec.bl_cross_check, rec.skipped_directions);
  }
  const double t_2d = now_seconds();
  for (int k = 0; k < 5; ++k) {
    const GaugeBody body = random_ellipsoid(rng, 3, k % 2 == 0);
    const VerdictRecord rec = ellipsoid_verdict(body);
    if (!rec.is_ellipsoid_like) ++false_verdicts;
    baseline = std::max(baseline, rec.max_defect);
    worst_bl = std::max(worst_bl, rec.bl_cross_check);
    for (const DefectReport& r : rec.reports)
      worst_axis_sine = std::max(worst_axis_sine, r.minus_one_axis_sine);
    std::printf("  3d ellipsoid %d: verdict %d max_defect %.3e bl %.3e skipped %d\n",
                k, rec.is_ellipsoid_like ? 1 : 0, rec.max_defect,
                rec.bl_cross_check, rec.skipped_directions);
  }
  const double t_3d = now_seconds();
  std::printf("  ellipsoid baseline (max fit_rms)   = %.6e\n", baseline);
  std::printf("  ellipsoid worst bl cross-check     = %.6e\n", worst_bl);
  std::printf("  ellipsoid worst minus-one axis sine= %.6e\n", worst_axis_sine);
  std::printf("  false verdicts                     = %d\n", false_verdicts);
  std::printf("  elapsed 2d %.2fs, 3d %.2fs, total %.2fs\n", t_2d - t_start,
              t_3d - t_2d, t_3d - t_start);

  {
    Vec s(2);
    s << 1.0, 1.0;
    const GaugeBody p4 = GaugeBody::pball(4.0, s);
    const VerdictRecord rec = ellipsoid_verdict(p4);
    std::printf("  pball p=4: verdict %d max_defect %.6e bl %.6e\n",
                rec.is_ellipsoid_like ? 1 : 0, rec.max_defect, rec.bl_cross_check);
    std::printf("  pball/baseline ratio = %.3e\n", rec.max_defect / baseline);
    Vec alpha(2);
    alpha << 1.0, 1.0;
    alpha.normalize();
    const DefectReport rep = projectivity_defect(p4, alpha);
    std::printf("  pball defect at alpha=(1,1)/sqrt2: fit_rms %.6e invol %.3e eig %.3e\n",
                rep.fit_rms, rep.involution_residual, rep.eigenstructure_residual);
    Vec generic(2);
    generic << std::cos(0.3), std::sin(0.3);
    const DefectReport rep_g = projectivity_defect(p4, generic);
    std::printf("  pball defect at angle 0.3: fit_rms %.6e invol %.3e eig %.3e\n",
                rep_g.fit_rms, rep_g.involution_residual,
                rep_g.eigenstructure_residual);

    BLConfig blc;
    const BLMatrix bl = bl_matrix(p4, blc);
    std::printf("  pball sphericity defect = %.6e\n", bl_sphericity_defect(p4, bl));
  }
  {
    const GaugeBody wavy =
        GaugeBody::perturbed_ball(2, 1.0, {{2, 0.04}, {3, 0.05}, {5, 0.01}});
    const VerdictRecord rec = ellipsoid_verdict(wavy);
    std::printf("  perturbed (3 harmonics): verdict %d max_defect %.6e bl %.6e\n",
                rec.is_ellipsoid_like ? 1 : 0, rec.max_defect, rec.bl_cross_check);
    std::printf("  perturbed/baseline ratio = %.3e\n", rec.max_defect / baseline);
  }
  {
    Mat a(2, 2);
    a << 0.25, 0.0, 0.0, 1.0;
    const GaugeBody ellipse = GaugeBody::ellipsoid(a);
    BLConfig blc;
    const BLMatrix bl = bl_matrix(ellipse, blc);
    std::printf("  ellipse(2,1) sphericity defect = %.6e\n",
                bl_sphericity_defect(ellipse, bl));
  }
  {
    Vec s3(3);
    s3 << 1.0, 1.0, 1.0;
    const GaugeBody p4_3d = GaugeBody::pball(4.0, s3);
    const double t0 = now_seconds();
    const VerdictRecord rec = ellipsoid_verdict(p4_3d);
    std::printf("  3d pball p=4: verdict %d max_defect %.6e bl %.6e (%.2fs)\n",
                rec.is_ellipsoid_like ? 1 : 0, rec.max_defect, rec.bl_cross_check,
                now_seconds() - t0);
  }
}

void probe_conjugation() {
  std::printf("== criterion 5 oracle: pushed-trajectory residual ==\n");
  Rng rng(0x5EED0005);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const GaugeBody table = random_ellipsoid(rng, 2, false);
    const GaugeBody dual = random_ellipsoid(rng, 2, false);
    const auto [q0, v0_out] = random_arrival(table, rng);
    const Vec v0 = -v0_out;  // inward
    const Trajectory traj = trajectory(
        table,
        [&](const BoundaryPoint& q, const Vec& v) {
          return minkowski_reflect(table, dual, q, v);
        },
        q0, v0, 50);
    const EllipsoidEquivalence eq = ellipsoid_equivalence_map(dual);
    const Mat push = eq.b_star_inv;
    const Mat a_img = eq.b_star.transpose() * table.ellipsoid_matrix() * eq.b_star;
    const GaugeBody image = GaugeBody::ellipsoid(
        (a_img + a_img.transpose()) / 2.0, push * table.center());
    const Trajectory mapped = map_trajectory(traj, push, image);
    const double res =
        standard_reflection_residual(mapped, Mat::Identity(2, 2));
    std::printf("  pair %d: residual %.6e\n", k, res);
    worst = std::max(worst, res);
    double worst_gauge = 0.0;
    for (const Bounce& b : traj.bounces)
      worst_gauge = std::max(worst_gauge, b.gauge_residual);
    std::printf("  pair %d: worst gauge residual %.3e\n", k, worst_gauge);
  }
  std::printf("  conjugation worst residual = %.6e\n", worst);
}

void probe_round_dual() {
  std::printf("== criterion 6 oracle: round dual body vs mirror law ==\n");
  Rng rng(0x5EED0006);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const int n = (k % 2) ? 3 : 2;
    GaugeBody table = [&]() {
      switch ((k / 2) % 3) {
        case 0:
          return random_ellipsoid(rng, n, false);
        case 1: {
          Vec s(n);
          for (int i = 0; i < n; ++i) s[i] = rng.uniform(0.5, 2.0);
          return GaugeBody::pball(rng.uniform(1.5, 6.0), s);
        }
        default:
          return GaugeBody::perturbed_ball(
              n, rng.uniform(0.5, 2.0),
              {{2, rng.uniform(0.0, 0.04)}, {3, rng.uniform(0.0, 0.04)}});
      }
    }();
    const GaugeBody ball = GaugeBody::ellipsoid(Mat::Identity(n, n));
    const auto [q, v_in] = random_arrival(table, rng);
    const Vec mink = minkowski_reflect(table, ball, q, v_in);
    const Vec mirr = standard_reflect(table, Mat::Identity(n, n), q, v_in);
    worst = std::max(worst, (mink - mirr).norm());
  }
  std::printf("  round-dual worst residual over 1000 draws = %.6e\n", worst);

  Rng rng2(0x5EED0016);
  double p4_res = 0.0;
  {
    Vec s(2);
    s << 1.0, 1.0;
    const GaugeBody dual = GaugeBody::pball(4.0, s);
    const GaugeBody table = GaugeBody::ellipsoid(Mat::Identity(2, 2));
    const auto [q0, v0_out] = random_arrival(table, rng2);
    const Trajectory traj = trajectory(
        table,
        [&](const BoundaryPoint& q, const Vec& v) {
          return minkowski_reflect(table, dual, q, v);
        },
        q0, -v0_out, 50);
    p4_res = standard_reflection_residual(traj, Mat::Identity(2, 2));
  }
  std::printf("  pball-dual trajectory standard residual = %.6e\n", p4_res);
}

void probe_sections() {
  std::printf("== criterion 8 oracle: plane sections ==\n");
  Rng rng(0x5EED0008);
  double worst = 0.0;
  int count = 0;
  for (int k = 0; k < 50; ++k) {
    const GaugeBody body = random_ellipsoid(rng, 3, true);
    const Vec inside = body.center() + 0.3 * body.scale_hint() * rng.unit_vector(3);
    const Plane plane(inside, rng.unit_vector(3), rng.unit_vector(3));
    const std::vector<Vec> pts = planar_section(body, plane);
    if (pts.size() < 13) {
      std::printf("  section %d: only %zu points\n", k, pts.size());
      continue;
    }
    const QuadricFit fit = fit_quadric(pts);
    worst = std::max(worst, fit.residual);
    ++count;
  }
  std::printf("  ellipsoid sections: %d fits, worst residual = %.6e\n", count,
              worst);

  Vec s3(3);
  s3 << 1.0, 1.0, 1.0;
  const GaugeBody p4 = GaugeBody::pball(4.0, s3);
  Vec o = Vec::Zero(3);
  Vec e1(3), e2(3);
  e1 << 1.0, 0.0, 0.0;
  e2 << 0.0, std::cos(0.3), std::sin(0.3);
  const std::vector<Vec> pts = planar_section(p4, Plane(o, e1, e2));
  const QuadricFit fit = fit_quadric(pts);
  std::printf("  p4 tilted section: %zu points, residual = %.6e\n", pts.size(),
              fit.residual);

  std::vector<Vec> cubic;
  for (int i = 0; i < 30; ++i) {
    const double x = -1.0 + 2.0 * i / 29.0;
    Vec p(2);
    p << x, x * x * x;
    cubic.push_back(p);
  }
  std::printf("  cubic y=x^3 fit residual = %.6e\n", fit_quadric(cubic).residual);
}

void probe_two_germ() {
  std::printf("== criterion 9 oracle: two-germ sweeps ==\n");
  Vec origin = Vec::Zero(2);
  const double half_pi = 1.5707963267948966;
  {
    ArcPatch s1(origin, 1.0, half_pi - 0.2, half_pi + 0.2);
    ArcPatch s2(origin, 1.0, -half_pi - 0.8, -half_pi + 0.8);
    Vec alpha0(2);
    alpha0 << 0.0, -1.0;
    const auto reports = two_patch_defect(s1, s2, alpha0);
    double worst = 0.0;
    int dropped = 0;
    for (const auto& r : reports) {
      worst = std::max(worst, r.fit_rms);
      dropped += r.dropped;
    }
    std::printf("  same circle: max fit_rms %.6e, dropped %d\n", worst, dropped);
  }
  {
    ArcPatch s1(origin, 1.0, half_pi - 0.25, half_pi + 0.25);
    Vec c2(2);
    c2 << 0.0, -3.0;
    ArcPatch s2(c2, 2.0, half_pi - 0.45, half_pi + 0.45);
    Vec alpha0(2);
    alpha0 << 0.0, -1.0;
    const auto reports = two_patch_defect(s1, s2, alpha0);
    double worst = 0.0, least = 1e300;
    int dropped = 0;
    for (const auto& r : reports) {
      worst = std::max(worst, r.fit_rms);
      least = std::min(least, r.fit_rms);
      dropped += r.dropped;
    }
    std::printf("  radii 1 and 2: max fit_rms %.6e, min %.6e, dropped %d\n",
                worst, least, dropped);
  }
  {
    Vec a(2), b(2), c(2), d(2);
    a << -1.0, 0.0;
    b << 1.0, 0.0;
    c << -1.3, 1.0;
    d << 1.3, 1.0;
    SegmentPatch s1(a, b), s2(c, d);
    Vec alpha0(2);
    alpha0 << 0.0, 1.0;
    const auto reports = two_patch_defect(s1, s2, alpha0);
    double worst = 0.0;
    int dropped = 0;
    for (const auto& r : reports) {
      worst = std::max(worst, r.fit_rms);
      dropped += r.dropped;
    }
    std::printf("  parallel segments: max fit_rms %.6e, dropped %d\n", worst,
                dropped);
  }
}

void probe_involution_algebra() {
  std::printf("== criterion 10 oracle: involution algebra ==\n");
  Rng rng(0x5EED0010);
  double worst_invol = 0.0;   // |I(I(p)) - p| / diameter
  double worst_equator = 0.0; // |I(p) - p| at detected equator points
  std::vector<GaugeBody> bodies;
  bodies.push_back(random_ellipsoid(rng, 2, true));
  bodies.push_back(random_ellipsoid(rng, 3, false));
  {
    Vec s(2);
    s << 1.3, 0.8;
    bodies.push_back(GaugeBody::pball(4.0, s));
  }
  bodies.push_back(GaugeBody::perturbed_ball(2, 1.0, {{3, 0.05}, {5, 0.01}}));
  for (const GaugeBody& body : bodies) {
    for (int j = 0; j < 4; ++j) {
      const Vec alpha = rng.unit_vector(body.dim());
      const ChordPairSample sample = chord_involution(body, alpha, 48);
      double diam = 2.0 * body.scale_hint();
      for (const ChordPair& pr : sample.pairs) {
        const BoundaryPoint bq = body.boundary_point(pr.q, 1e-6);
        const Chord back = body.chord_second_intersection(bq, alpha);
        worst_invol = std::max(
            worst_invol, (back.endpoint_b.position - pr.p).norm() / diam);
      }
      for (const Vec& e : sample.equator_points) {
        const BoundaryPoint be = body.boundary_point(e, 1e-6);
        const Chord tangent = body.chord_second_intersection(be, alpha);
        worst_equator = std::max(
            worst_equator, (tangent.endpoint_b.position - e).norm());
      }
    }
  }
  std::printf("  involutivity worst (diam-normalized) = %.6e\n", worst_invol);
  std::printf("  equator fixing worst                 = %.6e\n", worst_equator);

  double worst_proj = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const int n = (k % 2) ? 3 : 2;
    const GaugeBody body = random_ellipsoid(rng, n, false);
    const InvolutionField field = InvolutionField::euclidean_normal(body);
    const auto [q, v] = random_arrival(body, rng);
    const Vec once = projective_reflect(field, q, v);
    const Vec twice = projective_reflect(field, q, once);
    worst_proj = std::max(worst_proj, (twice - v).norm() / v.norm());
  }
  std::printf("  projective involutivity worst        = %.6e\n", worst_proj);
}

void probe_fit_statistics() {
  std::printf("== fit oracle: noise response, refinement, covariance ==\n");
  const GaugeBody disk = GaugeBody::ellipsoid(Mat::Identity(2, 2));
  Vec alpha(2);
  alpha << 1.0, 0.0;
  double lo = 1e300, hi = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    ChordPairSample sample = chord_involution(disk, alpha, 96);
    Rng noise(0xA0A0 + rep);
    for (ChordPair& pr : sample.pairs) {
      for (int i = 0; i < 2; ++i) {
        pr.p[i] += 1e-4 * noise.normal();
        pr.q[i] += 1e-4 * noise.normal();
      }
    }
    const auto [map, rms] = fit_affine_map(sample);
    lo = std::min(lo, rms);
    hi = std::max(hi, rms);
  }
  std::printf("  noisy-circle fit_rms over 5 reps: min %.6e max %.6e\n", lo, hi);

  Rng rng(0x5EEDF17);
  const GaugeBody ellipse = random_ellipsoid(rng, 2, false);
  const Vec a2 = rng.unit_vector(2);
  InvolutionConfig c1, c2;
  c1.samples = 96;
  c2.samples = 192;
  const DefectReport r1 = projectivity_defect(ellipse, a2, c1);
  const DefectReport r2 = projectivity_defect(ellipse, a2, c2);
  std::printf("  refinement: fit_rms 96 -> %.3e, 192 -> %.3e\n", r1.fit_rms,
              r2.fit_rms);

  // Affine covariance: transform body and direction together.
  Mat g(2, 2);
  g << 1.3, 0.4, -0.2, 0.9;
  const Mat a_old = ellipse.ellipsoid_matrix();
  const Mat g_inv = g.inverse();
  Mat a_new = g_inv.transpose() * a_old * g_inv;
  a_new = (a_new + a_new.transpose()) / 2.0;
  const GaugeBody mapped = GaugeBody::ellipsoid(a_new, g * ellipse.center());
  const Vec alpha_new = (g * a2).normalized();
  const DefectReport rm = projectivity_defect(mapped, alpha_new, c1);
  std::printf("  covariance: defect %.3e vs mapped %.3e (delta %.3e)\n",
              r1.fit_rms, rm.fit_rms, std::abs(r1.fit_rms - rm.fit_rms));

  // p4 ball fit response for a noisier look at the separation.
  Vec s(2);
  s << 1.0, 1.0;
  const GaugeBody p4 = GaugeBody::pball(4.0, s);
  Vec a45(2);
  a45 << 1.0, 1.0;
  a45.normalize();
  InvolutionConfig dense;
  dense.samples = 384;
  const DefectReport dense_rep = projectivity_defect(p4, a45, dense);
  std::printf("  pball defect at 384 samples: fit_rms %.6e\n", dense_rep.fit_rms);
}

void probe_bl_monte_carlo() {
  std::printf("== criterion 3 oracle: Monte Carlo standard errors ==\n");
  struct Case {
    const char* name;
    GaugeBody body;
    bool has_closed_form;
    Mat expected;
  };
  std::vector<Case> cases;
  {
    cases.push_back({"unit disk", GaugeBody::ellipsoid(Mat::Identity(2, 2)),
                     true, Mat::Identity(2, 2)});
    Mat a(2, 2);
    a << 0.25, 0.0, 0.0, 0.25;
    Mat e4(2, 2);
    e4 << 4.0, 0.0, 0.0, 4.0;
    cases.push_back({"radius-2 disk", GaugeBody::ellipsoid(a), true, e4});
    Mat a21(2, 2);
    a21 << 0.25, 0.0, 0.0, 1.0;
    Mat e21(2, 2);
    e21 << 4.0, 0.0, 0.0, 1.0;
    cases.push_back({"ellipse (2,1)", GaugeBody::ellipsoid(a21), true, e21});
    Vec s2(2);
    s2 << 1.0, 1.0;
    cases.push_back({"pball p=4 2d", GaugeBody::pball(4.0, s2), false, Mat()});
    cases.push_back(
        {"perturbed 2d", GaugeBody::perturbed_ball(2, 1.0, {{3, 0.05}}), false,
         Mat()});
    cases.push_back({"unit ball 3d", GaugeBody::ellipsoid(Mat::Identity(3, 3)),
                     true, Mat::Identity(3, 3)});
    Rng rng(0x5EEDB3);
    cases.push_back({"ellipsoid 3d", random_ellipsoid(rng, 3, false), false,
                     Mat()});
    Vec s3(3);
    s3 << 1.0, 1.0, 1.0;
    cases.push_back({"pball p=4 3d", GaugeBody::pball(4.0, s3), false, Mat()});
    cases.push_back(
        {"perturbed 3d", GaugeBody::perturbed_ball(3, 1.0, {{2, 0.03}}), false,
         Mat()});
  }
  for (const Case& c : cases) {
    const double t0 = now_seconds();
    BLConfig mc_cfg;
    mc_cfg.mode = Integrator::monte_carlo;
    const BLMatrix mc = bl_matrix(c.body, mc_cfg);
    const double t_mc = now_seconds() - t0;
    const BLMatrix cub = bl_matrix(c.body);
    const double cub_vs_mc = (mc.primal - cub.primal).cwiseAbs().maxCoeff();
    std::printf("  %-14s mc se %.3e, |mc-cubature| %.3e (%.1f se), %.2fs\n",
                c.name, mc.standard_error, cub_vs_mc,
                cub_vs_mc / mc.standard_error, t_mc);
    if (c.has_closed_form) {
      const double err_cub = (cub.primal - c.expected).cwiseAbs().maxCoeff();
      const double err_mc = (mc.primal - c.expected).cwiseAbs().maxCoeff();
      std::printf("    closed form: cubature err %.3e, mc err %.3e (%.1f se)\n",
                  err_cub, err_mc, err_mc / mc.standard_error);
    }
  }

  // Affine equivariance at cubature accuracy: pull back through a linear map.
  {
    Rng rng(0x5EEDB4);
    const GaugeBody base = random_ellipsoid(rng, 2, false);
    Mat g(2, 2);
    g << 1.2, 0.3, -0.1, 0.8;
    const Mat a_old = base.ellipsoid_matrix();
    const Mat g_inv = g.inverse();
    Mat a_new = g_inv.transpose() * a_old * g_inv;
    a_new = (a_new + a_new.transpose()) / 2.0;
    const GaugeBody mapped = GaugeBody::ellipsoid(a_new);
    const BLMatrix bl_base = bl_matrix(base);
    const BLMatrix bl_mapped = bl_matrix(mapped);
    const Mat pulled = g * bl_base.primal * g.transpose();
    std::printf("  equivariance (cubature): |bl(gT) - g bl(T) g'| = %.3e\n",
                (bl_mapped.primal - pulled).cwiseAbs().maxCoeff());
    const GaugeBody scaled = GaugeBody::ellipsoid(a_old / 2.25);
    const BLMatrix bl_scaled = bl_matrix(scaled);
    std::printf("  scaling: |bl(1.5 T) - 2.25 bl(T)| = %.3e\n",
                (bl_scaled.primal - 2.25 * bl_base.primal).cwiseAbs().maxCoeff());
  }
}

}  // namespace

int main() {
  std::printf("threshold probe (all values measured, not asserted)\n");
  probe_verdict_baseline();
  probe_conjugation();
  probe_round_dual();
  probe_sections();
  probe_two_germ();
  probe_involution_algebra();
  probe_fit_statistics();
  probe_bl_monte_carlo();
  std::printf("total elapsed %.2fs\n", now_seconds());
  return 0;
}
