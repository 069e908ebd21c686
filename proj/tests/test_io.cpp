#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <string>

#include "billiards/bodies.hpp"
#include "billiards/errors.hpp"
#include "billiards/patches.hpp"
#include "billiards/phasecurves.hpp"
#include "billiards/spec_io.hpp"
#include "support/test_helpers.hpp"

using namespace billiards;
using namespace billiards::testing;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "/tmp/billiards_io_" + name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  return path;
}

std::string spec_field(const std::function<void()>& call) {
  try {
    call();
  } catch (const SpecError& e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("body specs parse every family") {
  {
    const GaugeBody body = parse_body_spec(
        R"({"family": "ellipsoid", "matrix": [[1.0, 0.0], [0.0, 0.25]],
            "center": [0.5, -0.25]})");
    CHECK(body.dim() == 2);
    CHECK((body.center() - vec2(0.5, -0.25)).norm() == 0.0);
    CHECK(std::abs(body.gauge(vec2(0.0, 2.0)) - 1.0) <= 1e-14);
  }
  {
    const GaugeBody body = parse_body_spec(
        R"({"family": "pball", "p": 4.0, "scale": [1.3, 0.7], "dim": 2})");
    CHECK(body.dim() == 2);
    CHECK(body.pball_exponent() == 4.0);
    CHECK(std::abs(body.gauge(vec2(1.3, 0.0)) - 1.0) <= 1e-14);
  }
  {
    const GaugeBody body = parse_body_spec(
        R"({"family": "perturbed_ball", "radius": 1.0,
            "harmonics": [[3, 0.05], [5, 0.01]]})");
    CHECK(body.dim() == 2);  // default dimension
    CHECK(body.harmonics().size() == 2);
  }
  {
    const GaugeBody body = parse_body_spec(
        R"({"family": "perturbed_ball", "radius": 2.0, "dim": 3,
            "harmonics": [[2, 0.03]], "center": [0.1, 0.2, 0.3]})");
    CHECK(body.dim() == 3);
    CHECK((body.center() - vec3(0.1, 0.2, 0.3)).norm() == 0.0);
  }
}

TEST_CASE("malformed body specs name the offending field") {
  CHECK_THROWS_AS(parse_body_spec("not json at all"), SpecError);
  CHECK(spec_field([] { parse_body_spec(R"({"matrix": [[1]]})"); }) == "family");
  CHECK(spec_field([] {
          parse_body_spec(R"({"family": "moebius"})");
        }) == "family");
  CHECK(spec_field([] {
          parse_body_spec(R"({"family": "ellipsoid"})");
        }) == "matrix");
  CHECK(spec_field([] {
          parse_body_spec(
              R"({"family": "ellipsoid", "matrix": [[1, 0], [0, -1]]})");
        }) == "matrix");  // not positive definite
  CHECK(spec_field([] {
          parse_body_spec(
              R"({"family": "ellipsoid", "matrix": [[1, 0], [0, 1]], "dim": 3})");
        }) == "dim");
  CHECK(spec_field([] {
          parse_body_spec(R"({"family": "pball", "p": 1.0, "scale": [1, 1]})");
        }) == "p");
  CHECK(spec_field([] {
          parse_body_spec(R"({"family": "pball", "p": 4.0})");
        }) == "scale");
  CHECK(spec_field([] {
          parse_body_spec(R"({"family": "perturbed_ball", "radius": 1.0,
                              "harmonics": [[0, 0.05]]})");
        }) == "harmonics");
  CHECK(spec_field([] {
          parse_body_spec(R"({"family": "perturbed_ball", "radius": 1.0,
                              "harmonics": [[3, 0.5]]})");
        }) == "harmonics");  // amplitude breaks convexity
  CHECK(spec_field([] {
          parse_body_spec(
              R"({"family": "ellipsoid", "matrix": [[1, 0], [0, 1]],
                  "center": [1, 2, 3]})");
        }) == "center");
}

TEST_CASE("patch specs build arcs, segments, and boundary windows") {
  {
    const auto patch = parse_patch_spec(
        R"({"patch": "arc", "center": [0, 0], "radius": 1,
            "angles": [1.27, 1.87]})");
    REQUIRE(patch != nullptr);
    CHECK(std::abs(patch->base_point().norm() - 1.0) <= 1e-12);
  }
  {
    const auto patch = parse_patch_spec(
        R"({"patch": "segment", "from": [-1, 0], "to": [1, 0]})");
    CHECK((patch->base_point() - vec2(0.0, 0.0)).norm() <= 1e-12);
  }
  {
    const auto patch = parse_patch_spec(
        R"({"patch": "window",
            "body": {"family": "pball", "p": 4.0, "scale": [1, 1]},
            "base_angle": 0.0, "half_angle": 0.4})");
    CHECK(std::abs(patch->base_point()[0] - 1.0) <= 1e-9);
  }
  CHECK(spec_field([] {
          parse_patch_spec(R"({"patch": "helix"})");
        }) == "patch");
  CHECK(spec_field([] {
          parse_patch_spec(R"({"patch": "arc", "center": [0, 0], "radius": 1})");
        }) == "angles");
  CHECK(is_patch_spec(R"({"patch": "segment", "from": [0,0], "to": [1,0]})"));
  CHECK_FALSE(is_patch_spec(R"({"family": "pball", "p": 4, "scale": [1,1]})"));
  CHECK_FALSE(is_patch_spec("not json"));
}

TEST_CASE("field and plane specs parse and validate") {
  {
    const PlanarLinearField field =
        parse_field_spec(R"({"M": [[0, 1], [-1, 0]], "b": [0, 0]})");
    CHECK(classify_field(field) == FieldCase::center_circles);
  }
  CHECK(spec_field([] {
          parse_field_spec(R"({"M": [[1, 0], [0, 1]], "b": [0, 0]})");
        }) == "M");  // not trace-free
  CHECK(spec_field([] {
          parse_field_spec(R"({"M": [[0, 1], [-1, 0]]})");
        }) == "b");
  CHECK(spec_field([] {
          parse_field_spec(R"({"M": [[0, 1, 0], [0, 0, 0], [0, 0, 0]], "b": [0, 0]})");
        }) == "M");
  {
    const Plane plane = parse_plane_spec(
        R"({"origin": [0, 0, 0.5], "span": [[1, 0, 0], [0, 1, 0]]})");
    CHECK((plane.embed(1.0, 1.0) - vec3(1.0, 1.0, 0.5)).norm() <= 1e-14);
  }
  CHECK(spec_field([] {
          parse_plane_spec(
              R"({"origin": [0, 0, 0], "span": [[1, 0, 0], [2, 0, 0]]})");
        }) == "span");
  CHECK(spec_field([] {
          parse_plane_spec(R"({"span": [[1, 0, 0], [0, 1, 0]]})");
        }) == "origin");
}

TEST_CASE("point files accept comments and mixed separators") {
  const std::string path = write_temp("points.txt",
                                      "# a comment line\n"
                                      "1.0, 2.0\n"
                                      "3.0\t4.0  # trailing comment\n"
                                      "\n"
                                      "5.0; 6.0\n");
  const std::vector<Vec> pts = load_points(path);
  REQUIRE(pts.size() == 3);
  CHECK((pts[0] - vec2(1.0, 2.0)).norm() == 0.0);
  CHECK((pts[1] - vec2(3.0, 4.0)).norm() == 0.0);
  CHECK((pts[2] - vec2(5.0, 6.0)).norm() == 0.0);

  const std::string ragged = write_temp("ragged.txt", "1 2\n3 4 5\n");
  try {
    load_points(ragged);
    CHECK(false);
  } catch (const SpecError& e) {
    CHECK(e.field() == "points");
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  const std::string empty = write_temp("empty.txt", "# nothing here\n");
  CHECK_THROWS_AS(load_points(empty), SpecError);
  CHECK_THROWS_AS(load_points("/tmp/billiards_io_does_not_exist"), SpecError);
}

TEST_CASE("file loaders reach the same parsers") {
  const std::string body_path = write_temp(
      "body.json", R"({"family": "ellipsoid", "matrix": [[1, 0], [0, 1]]})");
  CHECK(load_body_spec(body_path).dim() == 2);
  const std::string field_path =
      write_temp("field.json", R"({"M": [[0, 1], [0, 0]], "b": [0, 1]})");
  CHECK(classify_field(load_field_spec(field_path)) ==
        FieldCase::shear_parabolas_or_lines);
  const std::string patch_path = write_temp(
      "patch.json", R"({"patch": "segment", "from": [0, 0], "to": [1, 0]})");
  CHECK(load_patch_spec(patch_path) != nullptr);
  const std::string plane_path = write_temp(
      "plane.json", R"({"origin": [0, 0, 0], "span": [[1, 0, 0], [0, 1, 0]]})");
  CHECK(std::abs(load_plane_spec(plane_path).e1.norm() - 1.0) <= 1e-14);
  CHECK_THROWS_AS(load_body_spec("/tmp/billiards_io_missing.json"), SpecError);
}

TEST_CASE("doubles format with full round-trip precision") {
  for (double x : {1.0 / 3.0, 0.1, -2.5e-13, 6.02214076e23, 0.0}) {
    const std::string s = format_double(x);
    CHECK(std::stod(s) == x);
  }
  CHECK(format_double(0.5) == "0.5");
}
