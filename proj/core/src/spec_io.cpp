#include "billiards/spec_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "billiards/errors.hpp"

namespace billiards {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("invalid JSON: ") + e.what(), "");
  }
}

double get_number(const json& j, const std::string& key) {
  if (!j.contains(key)) throw SpecError("missing field '" + key + "'", key);
  if (!j[key].is_number()) throw SpecError("field '" + key + "' must be a number", key);
  return j[key].get<double>();
}

Vec get_vector(const json& j, const std::string& key, int expect = -1) {
  if (!j.contains(key)) throw SpecError("missing field '" + key + "'", key);
  const json& a = j[key];
  if (!a.is_array() || a.empty()) {
    throw SpecError("field '" + key + "' must be a nonempty array", key);
  }
  Vec v(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) {
      throw SpecError("field '" + key + "' must contain numbers", key);
    }
    v[static_cast<int>(i)] = a[i].get<double>();
  }
  if (expect > 0 && v.size() != expect) {
    std::ostringstream os;
    os << "field '" << key << "' must have " << expect << " entries";
    throw SpecError(os.str(), key);
  }
  return v;
}

Mat get_matrix(const json& j, const std::string& key) {
  if (!j.contains(key)) throw SpecError("missing field '" + key + "'", key);
  const json& a = j[key];
  if (!a.is_array() || a.empty() || !a[0].is_array()) {
    throw SpecError("field '" + key + "' must be an array of rows", key);
  }
  const size_t rows = a.size();
  const size_t cols = a[0].size();
  Mat m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!a[i].is_array() || a[i].size() != cols) {
      throw SpecError("field '" + key + "' rows must have equal length", key);
    }
    for (size_t k = 0; k < cols; ++k) {
      if (!a[i][k].is_number()) {
        throw SpecError("field '" + key + "' must contain numbers", key);
      }
      m(static_cast<int>(i), static_cast<int>(k)) = a[i][k].get<double>();
    }
  }
  return m;
}

Vec optional_center(const json& j, int dim) {
  if (!j.contains("center")) return Vec::Zero(dim);
  return get_vector(j, "center", dim);
}

GaugeBody body_from_json(const json& j) {
  if (!j.is_object()) throw SpecError("body spec must be a JSON object", "");
  if (!j.contains("family")) throw SpecError("missing field 'family'", "family");
  if (!j["family"].is_string()) {
    throw SpecError("field 'family' must be a string", "family");
  }
  const std::string family = j["family"].get<std::string>();

  if (family == "ellipsoid") {
    const Mat a = get_matrix(j, "matrix");
    if (a.rows() != a.cols()) {
      throw SpecError("field 'matrix' must be square", "matrix");
    }
    if (j.contains("dim") && j["dim"].get<int>() != a.rows()) {
      throw SpecError("field 'dim' contradicts the matrix size", "dim");
    }
    const Vec center = optional_center(j, static_cast<int>(a.rows()));
    try {
      return GaugeBody::ellipsoid(a, center);
    } catch (const Error& e) {
      throw SpecError(e.what(), "matrix");
    }
  }
  if (family == "pball") {
    const double p = get_number(j, "p");
    const Vec scale = get_vector(j, "scale");
    if (j.contains("dim") && j["dim"].get<int>() != scale.size()) {
      throw SpecError("field 'dim' contradicts the scale length", "dim");
    }
    const Vec center = optional_center(j, static_cast<int>(scale.size()));
    try {
      return GaugeBody::pball(p, scale, center);
    } catch (const Error& e) {
      throw SpecError(e.what(), "p");
    }
  }
  if (family == "perturbed_ball") {
    const double radius = get_number(j, "radius");
    if (!j.contains("harmonics") || !j["harmonics"].is_array()) {
      throw SpecError("field 'harmonics' must be an array of [frequency, amplitude] pairs",
                      "harmonics");
    }
    std::vector<Harmonic> harmonics;
    for (const auto& h : j["harmonics"]) {
      if (!h.is_array() || h.size() != 2 || !h[0].is_number() || !h[1].is_number()) {
        throw SpecError("field 'harmonics' entries must be [frequency, amplitude]",
                        "harmonics");
      }
      const double freq = h[0].get<double>();
      if (freq != std::floor(freq) || freq < 1) {
        throw SpecError("harmonic frequencies must be positive integers", "harmonics");
      }
      harmonics.push_back({static_cast<int>(freq), h[1].get<double>()});
    }
    const int dim = j.contains("dim") ? j["dim"].get<int>() : 2;
    const Vec center = optional_center(j, dim);
    try {
      return GaugeBody::perturbed_ball(dim, radius, std::move(harmonics), center);
    } catch (const Error& e) {
      throw SpecError(e.what(), "harmonics");
    }
  }
  throw SpecError("unknown family '" + family + "'", "family");
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open file '" + path + "'", "");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

GaugeBody parse_body_spec(const std::string& text) {
  return body_from_json(parse_json(text));
}

GaugeBody load_body_spec(const std::string& path) {
  return parse_body_spec(read_text_file(path));
}

bool is_patch_spec(const std::string& text) {
  try {
    const json j = parse_json(text);
    return j.is_object() && j.contains("patch");
  } catch (const SpecError&) {
    return false;
  }
}

std::unique_ptr<PlanarPatch> parse_patch_spec(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw SpecError("patch spec must be a JSON object", "");
  if (!j.contains("patch")) throw SpecError("missing field 'patch'", "patch");
  if (!j["patch"].is_string()) {
    throw SpecError("field 'patch' must be a string", "patch");
  }
  const std::string kind = j["patch"].get<std::string>();

  try {
    if (kind == "arc") {
      const Vec center = get_vector(j, "center", 2);
      const double radius = get_number(j, "radius");
      const Vec angles = get_vector(j, "angles", 2);
      return std::make_unique<ArcPatch>(center, radius, angles[0], angles[1]);
    }
    if (kind == "segment") {
      return std::make_unique<SegmentPatch>(get_vector(j, "from", 2),
                                            get_vector(j, "to", 2));
    }
    if (kind == "window") {
      if (!j.contains("body")) throw SpecError("missing field 'body'", "body");
      return std::make_unique<BodyWindowPatch>(body_from_json(j["body"]),
                                               get_number(j, "base_angle"),
                                               get_number(j, "half_angle"));
    }
  } catch (const SpecError&) {
    throw;
  } catch (const Error& e) {
    throw SpecError(e.what(), "patch");
  }
  throw SpecError("unknown patch kind '" + kind + "'", "patch");
}

std::unique_ptr<PlanarPatch> load_patch_spec(const std::string& path) {
  return parse_patch_spec(read_text_file(path));
}

PlanarLinearField parse_field_spec(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw SpecError("field spec must be a JSON object", "");
  const Mat m = get_matrix(j, "M");
  if (m.rows() != 2 || m.cols() != 2) {
    throw SpecError("field 'M' must be a 2x2 matrix", "M");
  }
  const Vec b = get_vector(j, "b", 2);
  try {
    return PlanarLinearField(m, b);
  } catch (const Error& e) {
    throw SpecError(e.what(), "M");
  }
}

PlanarLinearField load_field_spec(const std::string& path) {
  return parse_field_spec(read_text_file(path));
}

Plane parse_plane_spec(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw SpecError("plane spec must be a JSON object", "");
  const Vec origin = get_vector(j, "origin", 3);
  const Mat span = get_matrix(j, "span");
  if (span.rows() != 2 || span.cols() != 3) {
    throw SpecError("field 'span' must hold two 3-vectors", "span");
  }
  try {
    return Plane(origin, span.row(0).transpose(), span.row(1).transpose());
  } catch (const Error& e) {
    throw SpecError(e.what(), "span");
  }
}

Plane load_plane_spec(const std::string& path) {
  return parse_plane_spec(read_text_file(path));
}

std::vector<Vec> load_points(const std::string& path) {
  const std::string text = read_text_file(path);
  std::vector<Vec> points;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& ch : line) {
      if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
    }
    std::istringstream fields(line);
    std::vector<double> row;
    double v;
    while (fields >> v) row.push_back(v);
    if (row.empty()) continue;
    Vec p(row.size());
    for (size_t i = 0; i < row.size(); ++i) p[static_cast<int>(i)] = row[i];
    if (!points.empty() && points.front().size() != p.size()) {
      std::ostringstream os;
      os << "line " << lineno << " has " << p.size()
         << " coordinates, expected " << points.front().size();
      throw SpecError(os.str(), "points");
    }
    points.push_back(std::move(p));
  }
  if (points.empty()) throw SpecError("no points found in '" + path + "'", "points");
  return points;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace billiards
