#include <benchmark/benchmark.h>

#include "billiards/blmetric.hpp"
#include "billiards/bodies.hpp"
#include "billiards/involutions.hpp"
#include "billiards/quadrics.hpp"
#include "billiards/sampling.hpp"

namespace {

using namespace billiards;

GaugeBody make_ellipse() {
  Mat a(2, 2);
  a << 1.0, 0.3, 0.3, 2.0;
  return GaugeBody::ellipsoid(a);
}

GaugeBody make_pball() {
  Vec s(2);
  s << 1.0, 1.0;
  return GaugeBody::pball(4.0, s);
}

GaugeBody make_wavy() {
  return GaugeBody::perturbed_ball(2, 1.0, {{3, 0.05}, {5, 0.01}});
}

void bm_gauge_ellipsoid(benchmark::State& state) {
  const GaugeBody body = make_ellipse();
  Rng rng(7);
  Vec v = rng.unit_vector(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(body.gauge(v));
  }
}
BENCHMARK(bm_gauge_ellipsoid);

void bm_gauge_pball(benchmark::State& state) {
  const GaugeBody body = make_pball();
  Rng rng(7);
  Vec v = rng.unit_vector(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(body.gauge(v));
  }
}
BENCHMARK(bm_gauge_pball);

void bm_support_point_pball(benchmark::State& state) {
  const GaugeBody body = make_pball();
  Rng rng(7);
  Vec u = rng.unit_vector(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(body.support_point(u));
  }
}
BENCHMARK(bm_support_point_pball);

void bm_support_point_wavy(benchmark::State& state) {
  const GaugeBody body = make_wavy();
  Rng rng(7);
  Vec u = rng.unit_vector(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(body.support_point(u));
  }
}
BENCHMARK(bm_support_point_wavy);

void bm_chord_second_intersection(benchmark::State& state) {
  const GaugeBody body = make_ellipse();
  Vec u(2);
  u << 1.0, 0.4;
  const BoundaryPoint p = body.boundary_point(body.boundary_point_abs(u));
  Vec dir(2);
  dir << -0.2, 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(body.chord_second_intersection(p, dir));
  }
}
BENCHMARK(bm_chord_second_intersection);

void bm_bl_cubature_2d(benchmark::State& state) {
  const GaugeBody body = make_ellipse();
  BLConfig cfg;
  cfg.angular_nodes = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bl_matrix(body, cfg));
  }
}
BENCHMARK(bm_bl_cubature_2d)->Arg(512)->Arg(4096);

void bm_projectivity_defect_direction(benchmark::State& state) {
  const GaugeBody body = make_ellipse();
  Vec alpha(2);
  alpha << 0.6, 0.8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(projectivity_defect(body, alpha));
  }
}
BENCHMARK(bm_projectivity_defect_direction);

void bm_fit_quadric(benchmark::State& state) {
  std::vector<Vec> pts;
  for (int k = 0; k < 64; ++k) {
    const double t = 2.0 * M_PI * k / 64;
    Vec p(2);
    p << 2.0 * std::cos(t) + 0.3, std::sin(t) - 0.1;
    pts.push_back(p);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_quadric(pts));
  }
}
BENCHMARK(bm_fit_quadric);

}  // namespace

BENCHMARK_MAIN();
