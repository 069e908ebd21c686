#pragma once

#include <memory>
#include <string>
#include <vector>

#include "billiards/bodies.hpp"
#include "billiards/geometry.hpp"
#include "billiards/patches.hpp"
#include "billiards/phasecurves.hpp"
#include "billiards/quadrics.hpp"

namespace billiards {

/// Body specification, JSON syntax. Families:
///   {"dim": 2, "family": "ellipsoid", "matrix": [[...],[...]]}
///   {"family": "pball", "p": 4.0, "scale": [1.0, 1.0]}
///   {"family": "perturbed_ball", "radius": 1.0, "harmonics": [[3, 0.05]]}
/// "dim" is optional where the other fields determine it.
GaugeBody parse_body_spec(const std::string& text);
GaugeBody load_body_spec(const std::string& path);

/// Patch specification:
///   {"patch": "arc", "center": [0,0], "radius": 1.0, "angles": [1.2, 1.9]}
///   {"patch": "segment", "from": [-1,0], "to": [1,0]}
///   {"patch": "window", "body": {...}, "base_angle": 0.0, "half_angle": 0.4}
std::unique_ptr<PlanarPatch> parse_patch_spec(const std::string& text);
std::unique_ptr<PlanarPatch> load_patch_spec(const std::string& path);

/// True when the JSON object carries a "patch" key (vs a body "family" key).
bool is_patch_spec(const std::string& text);

/// Field specification: {"M": [[...],[...]], "b": [...]}.
PlanarLinearField parse_field_spec(const std::string& text);
PlanarLinearField load_field_spec(const std::string& path);

/// Plane specification: {"origin": [...], "span": [[...],[...]]}.
Plane parse_plane_spec(const std::string& text);
Plane load_plane_spec(const std::string& path);

/// Point cloud: one point per line, coordinates separated by spaces or
/// commas; '#' starts a comment.
std::vector<Vec> load_points(const std::string& path);

std::string read_text_file(const std::string& path);

/// Shortest exact decimal form of a double, stable across runs.
std::string format_double(double x);

}  // namespace billiards
