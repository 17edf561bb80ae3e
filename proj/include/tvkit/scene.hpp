#pragma once

// Scene = a pair of closed shapes (A, B), a reference point, and tolerances,
// loaded from a JSON document.  Load errors carry the offending field path.

#include <tvkit/geometry.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tvkit {

using json = nlohmann::ordered_json;

struct Scene {
  int dimension = 0;
  Shape A;
  Shape B;
  Vec xbar;
  double tol_membership = 1e-9;
  std::int64_t seed = 0;
  // Largest norm of a generated sequence point, 0 when the scene has no
  // generated point sequence.  Checkers use it to pick a default ball radius.
  double truncation_radius = 0.0;
};

class LoadError : public std::runtime_error {
 public:
  LoadError(const std::string& path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

namespace detail {

inline Vec parse_vec(const json& j, int expected_dim, const std::string& path) {
  if (!j.is_array()) throw LoadError(path, "expected an array of numbers");
  if (expected_dim >= 0 && static_cast<int>(j.size()) != expected_dim)
    throw LoadError(path, "expected " + std::to_string(expected_dim) + " components, got " +
                              std::to_string(j.size()));
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw LoadError(path + "[" + std::to_string(i) + "]", "expected a number");
    v[static_cast<int>(i)] = j[i].get<double>();
    if (!std::isfinite(v[static_cast<int>(i)]))
      throw LoadError(path + "[" + std::to_string(i) + "]", "coordinate must be finite");
  }
  return v;
}

inline double parse_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw LoadError(path, "expected a number");
  return j.get<double>();
}

// The sequence {(1/n, 2/n) : 1 <= n <= count} from largest to smallest.
inline std::vector<Vec> paper_example_sequence(int count) {
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int n = 1; n <= count; ++n) {
    Vec p(2);
    p << 1.0 / n, 2.0 / n;
    pts.push_back(std::move(p));
  }
  return pts;
}

inline Shape parse_shape(const json& j, int dim, const std::string& path, double* truncation_radius) {
  if (!j.is_object() || j.size() != 1)
    throw LoadError(path, "a shape must be an object with exactly one key");
  const std::string kind = j.begin().key();
  const json& body = j.begin().value();
  auto field = [&](const char* name) -> const json& {
    if (!body.is_object() || !body.contains(name))
      throw LoadError(path + "." + kind, std::string("missing field '") + name + "'");
    return body.at(name);
  };
  auto sub = [&](const char* name) { return path + "." + kind + "." + name; };

  try {
    if (kind == "line") {
      return make_line(parse_vec(field("point"), dim, sub("point")),
                       parse_vec(field("direction"), dim, sub("direction")));
    } else if (kind == "ray") {
      return make_ray(parse_vec(field("origin"), dim, sub("origin")),
                      parse_vec(field("direction"), dim, sub("direction")));
    } else if (kind == "segment") {
      return make_segment(parse_vec(field("from"), dim, sub("from")),
                          parse_vec(field("to"), dim, sub("to")));
    } else if (kind == "halfspace") {
      return make_halfspace(parse_vec(field("normal"), dim, sub("normal")),
                            parse_number(field("offset"), sub("offset")));
    } else if (kind == "ball") {
      return make_ball(parse_vec(field("center"), dim, sub("center")),
                       parse_number(field("radius"), sub("radius")));
    } else if (kind == "box") {
      return make_box(parse_vec(field("min"), dim, sub("min")),
                      parse_vec(field("max"), dim, sub("max")));
    } else if (kind == "points") {
      if (body.is_object() && body.contains("generator")) {
        const json& gen = body.at("generator");
        if (!gen.is_string() || gen.get<std::string>() != "paper_example_sequence")
          throw LoadError(sub("generator"), "unknown generator");
        if (dim != 2) throw LoadError(sub("generator"), "paper_example_sequence requires dimension 2");
        int count = 30;
        if (body.contains("count")) {
          const json& c = body.at("count");
          if (!c.is_number_integer() || c.get<int>() < 1)
            throw LoadError(sub("count"), "count must be a positive integer");
          count = c.get<int>();
        }
        auto pts = paper_example_sequence(count);
        if (truncation_radius) *truncation_radius = std::max(*truncation_radius, pts.front().norm());
        return make_points(std::move(pts));
      }
      const json& list = field("list");
      if (!list.is_array() || list.empty()) throw LoadError(sub("list"), "expected a nonempty array");
      std::vector<Vec> pts;
      pts.reserve(list.size());
      for (std::size_t i = 0; i < list.size(); ++i)
        pts.push_back(parse_vec(list[i], dim, sub("list") + "[" + std::to_string(i) + "]"));
      return make_points(std::move(pts));
    } else if (kind == "union") {
      if (!body.is_array() || body.empty())
        throw LoadError(path + ".union", "expected a nonempty array of shapes");
      std::vector<Shape> parts;
      parts.reserve(body.size());
      for (std::size_t i = 0; i < body.size(); ++i)
        parts.push_back(
            parse_shape(body[i], dim, path + ".union[" + std::to_string(i) + "]", truncation_radius));
      return make_union(std::move(parts));
    } else if (kind == "translate") {
      Shape base = parse_shape(field("shape"), dim, sub("shape"), truncation_radius);
      Vec by = parse_vec(field("by"), dim, sub("by"));
      return translate_shape(base, by);  // applied eagerly; oracles stay closed-form
    }
  } catch (const LoadError&) {
    throw;
  } catch (const std::exception& e) {
    throw LoadError(path + "." + kind, e.what());
  }
  throw LoadError(path, "unknown shape kind '" + kind + "'");
}

}  // namespace detail

inline Scene load_scene(const json& doc) {
  if (!doc.is_object()) throw LoadError("", "scene document must be an object");
  if (!doc.contains("dimension")) throw LoadError("dimension", "missing");
  if (!doc.at("dimension").is_number_integer() || doc.at("dimension").get<int>() < 1)
    throw LoadError("dimension", "must be a positive integer");

  Scene scene;
  scene.dimension = doc.at("dimension").get<int>();
  if (!doc.contains("xbar")) throw LoadError("xbar", "missing");
  scene.xbar = detail::parse_vec(doc.at("xbar"), scene.dimension, "xbar");
  if (!doc.contains("A")) throw LoadError("A", "missing");
  if (!doc.contains("B")) throw LoadError("B", "missing");
  scene.A = detail::parse_shape(doc.at("A"), scene.dimension, "A", &scene.truncation_radius);
  scene.B = detail::parse_shape(doc.at("B"), scene.dimension, "B", &scene.truncation_radius);
  if (doc.contains("tol_membership")) {
    scene.tol_membership = detail::parse_number(doc.at("tol_membership"), "tol_membership");
    if (!(scene.tol_membership > 0.0)) throw LoadError("tol_membership", "must be > 0");
  }
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_integer()) throw LoadError("seed", "must be an integer");
    scene.seed = doc.at("seed").get<std::int64_t>();
  }

  try {
    check_shape(scene.A, scene.dimension);
  } catch (const std::exception& e) {
    throw LoadError("A", e.what());
  }
  try {
    check_shape(scene.B, scene.dimension);
  } catch (const std::exception& e) {
    throw LoadError("B", e.what());
  }
  return scene;
}

inline Scene load_scene_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& e) {
    throw LoadError("", std::string("invalid document: ") + e.what());
  }
  return load_scene(doc);
}

inline Scene load_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("", "cannot open scene file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_scene_text(ss.str());
}

}  // namespace tvkit
