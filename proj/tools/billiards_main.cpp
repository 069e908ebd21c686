// Batch front end: reads body/field/patch specs, runs an experiment, writes
// a plain-text data file with a reproducible header. Exit codes: 0 success,
// 1 failed verdict under --strict, 2 error (with a machine-readable record
// on stderr).

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "billiards/blmetric.hpp"
#include "billiards/bodies.hpp"
#include "billiards/errors.hpp"
#include "billiards/involutions.hpp"
#include "billiards/phasecurves.hpp"
#include "billiards/quadrics.hpp"
#include "billiards/reflectors.hpp"
#include "billiards/spec_io.hpp"
#include "billiards/version.hpp"

namespace {

using namespace billiards;

std::string fmt(double x) { return format_double(x); }

std::string fmt(const Vec& v) {
  std::ostringstream os;
  for (int i = 0; i < v.size(); ++i) {
    if (i) os << " ";
    os << fmt(v[i]);
  }
  return os.str();
}

std::string fmt_matrix(const Mat& m) {
  std::ostringstream os;
  for (int i = 0; i < m.rows(); ++i) {
    if (i) os << "; ";
    for (int j = 0; j < m.cols(); ++j) {
      if (j) os << " ";
      os << fmt(m(i, j));
    }
  }
  return os.str();
}

struct Output {
  std::ostringstream text;

  void header(const std::string& command,
              const std::vector<std::pair<std::string, std::string>>& config,
              std::uint64_t seed) {
    text << "# billiards " << version_string << "\n";
    text << "# command: " << command << "\n";
    for (const auto& [key, value] : config) {
      text << "# config: " << key << " = " << value << "\n";
    }
    text << "# seed: " << seed << "\n";
  }

  void write(const std::string& path) const {
    if (path.empty()) {
      std::cout << text.str();
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SpecError("cannot open output file '" + path + "'", "out");
    out << text.str();
  }
};

Vec to_vec(const std::vector<double>& v) {
  Vec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[static_cast<int>(i)] = v[i];
  return out;
}

std::string join_doubles(const std::vector<double>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << fmt(v[i]);
  }
  return os.str();
}

int run_simulate(const std::string& body_path, const std::string& table_path,
                 const std::string& law, const std::vector<double>& q0_raw,
                 const std::vector<double>& v0_raw,
                 const std::vector<double>& nu_raw, int bounces,
                 std::uint64_t seed, const std::string& out_path) {
  if (table_path.empty()) {
    throw SpecError("--table is required for simulate", "table");
  }
  const GaugeBody table = load_body_spec(table_path);
  if (static_cast<int>(q0_raw.size()) != table.dim() ||
      static_cast<int>(v0_raw.size()) != table.dim()) {
    throw SpecError("--q0/--v0 must match the table dimension", "q0");
  }
  // Project the requested start radially onto the boundary.
  const Vec q0_rel = to_vec(q0_raw) - table.center();
  if (q0_rel.norm() == 0.0) throw SpecError("--q0 must not be the table center", "q0");
  const BoundaryPoint q0 = table.boundary_point(table.boundary_point_abs(q0_rel));
  const Vec v0 = to_vec(v0_raw);

  Reflector reflect;
  if (law == "minkowski") {
    if (body_path.empty()) {
      throw SpecError("--body (the dual body) is required for the minkowski law",
                      "body");
    }
    GaugeBody dual = load_body_spec(body_path);
    if (dual.dim() != table.dim()) {
      throw SpecError("body and table dimensions differ", "body");
    }
    reflect = [&table, dual](const BoundaryPoint& q, const Vec& v) {
      return minkowski_reflect(table, dual, q, v);
    };
  } else if (law == "projective") {
    InvolutionField field =
        nu_raw.empty()
            ? InvolutionField::euclidean_normal(table)
            : InvolutionField::constant_vector(table, to_vec(nu_raw));
    reflect = [field](const BoundaryPoint& q, const Vec& v) {
      return field.reflect(q, v);
    };
  } else if (law == "standard") {
    const Mat metric = Mat::Identity(table.dim(), table.dim());
    reflect = [&table, metric](const BoundaryPoint& q, const Vec& v) {
      return standard_reflect(table, metric, q, v);
    };
  } else {
    throw SpecError("unknown law '" + law + "'", "law");
  }

  const Trajectory traj = trajectory(table, reflect, q0, v0, bounces);

  Output out;
  out.header("simulate",
             {{"table", table_path},
              {"body", body_path.empty() ? "-" : body_path},
              {"law", law},
              {"q0", join_doubles(q0_raw)},
              {"v0", join_doubles(v0_raw)},
              {"bounces", std::to_string(bounces)}},
             seed);
  out.text << "# columns: index q[" << table.dim() << "] v_in[" << table.dim()
           << "] v_out[" << table.dim() << "] gauge_residual tangency\n";
  for (size_t i = 0; i < traj.bounces.size(); ++i) {
    const Bounce& b = traj.bounces[i];
    out.text << i << " " << fmt(b.q.position) << " " << fmt(b.v_in) << " "
             << fmt(b.v_out) << " " << fmt(b.gauge_residual) << " "
             << (b.tangency ? 1 : 0) << "\n";
  }
  out.write(out_path);
  return 0;
}

int run_projectivity(const std::string& body_path, const std::string& body2_path,
                     int grid, int samples, double tol, double cone,
                     const std::vector<double>& alpha_raw, std::uint64_t seed,
                     bool strict, const std::string& out_path) {
  const std::string text = read_text_file(body_path);

  Output out;
  const auto config = std::vector<std::pair<std::string, std::string>>{
      {"body", body_path},
      {"body2", body2_path.empty() ? "-" : body2_path},
      {"alpha_grid", std::to_string(grid)},
      {"samples", std::to_string(samples)},
      {"tol", fmt(tol)},
      {"cone", fmt(cone)},
      {"alpha",
       alpha_raw.empty() ? std::string("-") : join_doubles(alpha_raw)}};

  if (is_patch_spec(text) || !body2_path.empty()) {
    if (body2_path.empty()) {
      throw SpecError("two-germ mode needs --body2", "body2");
    }
    auto s1 = parse_patch_spec(text);
    auto s2 = load_patch_spec(body2_path);
    Vec alpha0 = alpha_raw.empty()
                     ? Vec(s2->base_point() - s1->base_point())
                     : to_vec(alpha_raw);
    if (alpha0.norm() == 0.0) {
      throw SpecError("base points coincide; pass --alpha", "alpha");
    }

    TwoPatchConfig cfg;
    cfg.cone = cone;
    if (samples > 0) cfg.chords.samples = samples;
    if (grid > 0) cfg.directions = grid;
    const std::vector<DefectReport> reports =
        two_patch_defect(*s1, *s2, alpha0, cfg);

    double max_defect = 0.0;
    Vec argmax = reports.front().alpha;
    for (const auto& r : reports) {
      if (r.fit_rms > max_defect) {
        max_defect = r.fit_rms;
        argmax = r.alpha;
      }
    }
    const bool consistent = max_defect <= tol;

    out.header("projectivity", config, seed);
    out.text << "# columns: alpha[2] fit_rms involution_residual "
                "eigenstructure_residual pairs dropped\n";
    for (const auto& r : reports) {
      out.text << fmt(r.alpha) << " " << fmt(r.fit_rms) << " "
               << fmt(r.involution_residual) << " "
               << fmt(r.eigenstructure_residual) << " " << r.pair_count << " "
               << r.dropped << "\n";
    }
    out.text << "# summary: same quadric: "
             << (consistent ? "consistent" : "inconsistent")
             << " max_defect = " << fmt(max_defect) << " argmax_alpha = "
             << fmt(argmax) << "\n";
    out.write(out_path);
    std::cout << "same quadric: " << (consistent ? "consistent" : "inconsistent")
              << ", max defect " << fmt(max_defect) << " at alpha ("
              << fmt(argmax) << ")\n";
    return (strict && !consistent) ? 1 : 0;
  }

  const GaugeBody body = parse_body_spec(text);
  VerdictConfig cfg;
  cfg.tol = tol;
  if (grid > 0) cfg.grid = grid;
  if (samples > 0) cfg.chords.samples = samples;
  cfg.bl.seed = seed;
  const VerdictRecord rec = ellipsoid_verdict(body, cfg);

  out.header("projectivity", config, seed);
  out.text << "# columns: alpha[" << body.dim()
           << "] fit_rms involution_residual eigenstructure_residual pairs\n";
  for (const auto& r : rec.reports) {
    out.text << fmt(r.alpha) << " " << fmt(r.fit_rms) << " "
             << fmt(r.involution_residual) << " "
             << fmt(r.eigenstructure_residual) << " " << r.pair_count << "\n";
  }
  out.text << "# summary: verdict = " << (rec.is_ellipsoid_like ? "true" : "false")
           << " max_defect = " << fmt(rec.max_defect) << " argmax_alpha = "
           << fmt(rec.argmax_direction)
           << " bl_cross_check = " << fmt(rec.bl_cross_check)
           << " skipped = " << rec.skipped_directions << "\n";
  out.write(out_path);
  std::cout << "verdict: " << (rec.is_ellipsoid_like ? "true" : "false")
            << ", max defect " << fmt(rec.max_defect) << " at alpha ("
            << fmt(rec.argmax_direction) << "), sphericity defect "
            << fmt(rec.bl_cross_check) << "\n";
  return (strict && !rec.is_ellipsoid_like) ? 1 : 0;
}

int run_blmetric(const std::string& body_path, const std::string& integrator,
                 long long samples, std::uint64_t seed,
                 const std::string& out_path) {
  const GaugeBody body = load_body_spec(body_path);
  BLConfig cfg;
  if (integrator == "mc") {
    cfg.mode = Integrator::monte_carlo;
  } else if (integrator == "cubature") {
    cfg.mode = Integrator::cubature;
  } else {
    throw SpecError("unknown integrator '" + integrator + "'", "integrator");
  }
  if (samples > 0) cfg.samples = samples;
  cfg.seed = seed;
  const BLMatrix bl = bl_matrix(body, cfg);

  Output out;
  out.header("blmetric",
             {{"body", body_path},
              {"integrator", integrator},
              {"samples", std::to_string(samples)}},
             seed);
  out.text << "primal = " << fmt_matrix(bl.primal) << "\n";
  out.text << "dual = " << fmt_matrix(bl.dual) << "\n";
  out.text << "barycenter = " << fmt(bl.barycenter) << "\n";
  out.text << "samples = " << bl.samples << "\n";
  out.text << "standard_error = " << fmt(bl.standard_error) << "\n";
  out.text << "mode = " << to_string(bl.mode) << "\n";
  out.write(out_path);
  return 0;
}

int run_phasecurve(const std::string& field_path,
                   const std::vector<double>& z0_raw, std::uint64_t seed,
                   const std::string& out_path) {
  const PlanarLinearField field = load_field_spec(field_path);
  if (z0_raw.size() != 2) throw SpecError("--z0 must have two entries", "z0");
  const Vec z0 = to_vec(z0_raw);
  const Quadric conic = phase_conic(field, z0);
  const QuadraticHamiltonian h = hamiltonian_of(field);
  const FieldCase tag = classify_field(field);

  Output out;
  out.header("phasecurve",
             {{"field", field_path}, {"z0", join_doubles(z0_raw)}}, seed);
  out.text << "# conic coefficients in order x^2 xy y^2 x y 1\n";
  out.text << "conic = " << fmt(conic.coefficients()) << "\n";
  out.text << "conic_class = " << to_string(classify_conic(conic)) << "\n";
  out.text << "field_case = " << to_string(tag) << "\n";
  if (tag == FieldCase::shear_parabolas_or_lines) {
    out.text << "shear_subcase = "
             << (shear_produces_lines(field) ? "lines" : "parabolas") << "\n";
  }
  out.text << "hamiltonian = " << fmt(h.a) << " " << fmt(h.c) << " " << fmt(h.d)
           << " " << fmt(h.e) << " " << fmt(h.f) << "\n";
  out.text << "level = " << fmt(h.value(z0)) << "\n";
  out.write(out_path);
  std::cout << to_string(tag) << ", conic class "
            << to_string(classify_conic(conic)) << "\n";
  return 0;
}

int run_quadricfit(const std::string& points_path, const std::string& body_path,
                   const std::string& plane_path, int grid, std::uint64_t seed,
                   const std::string& out_path) {
  std::vector<Vec> points;
  std::vector<std::pair<std::string, std::string>> config;
  if (!points_path.empty()) {
    points = load_points(points_path);
    config = {{"points", points_path}};
  } else {
    if (body_path.empty() || plane_path.empty()) {
      throw SpecError("pass either --points or both --body and --plane", "points");
    }
    const GaugeBody body = load_body_spec(body_path);
    const Plane plane = load_plane_spec(plane_path);
    points = planar_section(body, plane, grid > 0 ? grid : 64);
    config = {{"body", body_path},
              {"plane", plane_path},
              {"grid", std::to_string(grid > 0 ? grid : 64)}};
  }

  const QuadricFit fit = fit_quadric(points);
  Output out;
  out.header("quadricfit", config, seed);
  out.text << "# coefficients in graded-lex monomial order\n";
  out.text << "coefficients = " << fmt(fit.quadric.coefficients()) << "\n";
  out.text << "residual = " << fmt(fit.residual) << "\n";
  out.text << "degenerate = " << (fit.degenerate ? 1 : 0) << "\n";
  out.text << "points = " << points.size() << "\n";
  if (fit.quadric.dim() == 2) {
    out.text << "conic_class = " << to_string(classify_conic(fit.quadric)) << "\n";
  }
  out.write(out_path);
  std::cout << "residual " << fmt(fit.residual) << " over " << points.size()
            << " points\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex-body billiard laws, chord involutions, and second-moment metrics"};
  app.require_subcommand(1);

  std::string body_path, body2_path, table_path, field_path, points_path,
      plane_path, out_path;
  std::string law = "minkowski", integrator = "cubature";
  std::vector<double> q0_raw, v0_raw, nu_raw, alpha_raw, z0_raw;
  int bounces = 10, grid = 0, samples = 0, section_grid = 0;
  long long mc_samples = 0;
  double tol = 1e-5, cone = 0.2;
  std::uint64_t seed = 0x42;
  bool strict = false;

  auto* sim = app.add_subcommand("simulate", "Iterate a reflection law");
  sim->add_option("--table", table_path, "table body spec (JSON)")->required();
  sim->add_option("--body", body_path, "dual body spec for the minkowski law");
  sim->add_option("--law", law, "minkowski | projective | standard");
  sim->add_option("--q0", q0_raw, "start point, comma separated")
      ->required()->delimiter(',');
  sim->add_option("--v0", v0_raw, "start velocity, comma separated")
      ->required()->delimiter(',');
  sim->add_option("--nu", nu_raw, "constant transversal for the projective law")
      ->delimiter(',');
  sim->add_option("--bounces", bounces, "bounce count");
  sim->add_option("--seed", seed, "master seed");
  sim->add_option("--out", out_path, "output file (default stdout)");

  auto* proj = app.add_subcommand("projectivity",
                                  "Chord-involution affine-fit defect sweep");
  proj->add_option("--body", body_path, "body or first patch spec")->required();
  proj->add_option("--body2", body2_path, "second patch spec (two-germ mode)");
  proj->add_option("--alpha-grid", grid, "direction count");
  proj->add_option("--samples", samples, "chords per direction");
  proj->add_option("--tol", tol, "verdict tolerance");
  proj->add_option("--cone", cone, "two-germ cone half-angle (radians)");
  proj->add_option("--alpha", alpha_raw, "two-germ base direction")->delimiter(',');
  proj->add_option("--seed", seed, "master seed");
  proj->add_flag("--strict", strict, "exit 1 when the verdict is false");
  proj->add_option("--out", out_path, "output file (default stdout)");

  auto* blm = app.add_subcommand("blmetric", "Second-moment inner product");
  blm->add_option("--body", body_path, "body spec")->required();
  blm->add_option("--integrator", integrator, "mc | cubature");
  blm->add_option("--samples", mc_samples, "Monte Carlo accepted-sample budget");
  blm->add_option("--seed", seed, "master seed");
  blm->add_option("--out", out_path, "output file (default stdout)");

  auto* pc = app.add_subcommand("phasecurve",
                                "Level conic of a divergence-free planar field");
  pc->add_option("--field", field_path, "field spec (JSON)")->required();
  pc->add_option("--z0", z0_raw, "point on the orbit")->required()->delimiter(',');
  pc->add_option("--seed", seed, "master seed");
  pc->add_option("--out", out_path, "output file (default stdout)");

  auto* qf = app.add_subcommand("quadricfit", "Least-squares quadric through points");
  qf->add_option("--points", points_path, "point cloud file");
  qf->add_option("--body", body_path, "body spec (with --plane)");
  qf->add_option("--plane", plane_path, "plane spec (with --body)");
  qf->add_option("--grid", section_grid, "section grid resolution");
  qf->add_option("--seed", seed, "master seed");
  qf->add_option("--out", out_path, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      return run_simulate(body_path, table_path, law, q0_raw, v0_raw, nu_raw,
                          bounces, seed, out_path);
    }
    if (proj->parsed()) {
      return run_projectivity(body_path, body2_path, grid, samples, tol, cone,
                              alpha_raw, seed, strict, out_path);
    }
    if (blm->parsed()) {
      return run_blmetric(body_path, integrator, mc_samples, seed, out_path);
    }
    if (pc->parsed()) {
      return run_phasecurve(field_path, z0_raw, seed, out_path);
    }
    if (qf->parsed()) {
      return run_quadricfit(points_path, body_path, plane_path, section_grid,
                            seed, out_path);
    }
  } catch (const SpecError& e) {
    std::cerr << "{\"error\": \"" << e.what() << "\", \"field\": \""
              << e.field() << "\"}\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "{\"error\": \"" << e.what() << "\", \"field\": \"\"}\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": \"" << e.what() << "\", \"field\": \"\"}\n";
    return 2;
  }
  return 2;
}
