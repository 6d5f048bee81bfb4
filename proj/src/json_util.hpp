#pragma once

// Field access helpers that report the JSON path of whatever went wrong.

#include <string>
#include <string_view>

#include <fmt/format.h>
#include <json.hpp>

#include "mrtamp/geometry.hpp"
#include "mrtamp/scene_io.hpp"

namespace mrtamp::detail {

using nlohmann::json;

inline std::string child_path(std::string_view parent, std::string_view key) {
  return parent.empty() ? std::string(key) : fmt::format("{}.{}", parent, key);
}

inline std::string index_path(std::string_view parent, size_t i) {
  return fmt::format("{}[{}]", parent, i);
}

[[noreturn]] inline void schema_fail(std::string_view path, std::string_view what) {
  throw SchemaError(fmt::format("{}: {}", path, what));
}

inline const json& field(const json& obj, std::string_view key, std::string_view path) {
  if (!obj.is_object()) schema_fail(path, "expected an object");
  auto it = obj.find(std::string(key));
  if (it == obj.end()) schema_fail(child_path(path, key), "missing field");
  return *it;
}

inline double number(const json& j, std::string_view path) {
  if (!j.is_number()) schema_fail(path, "expected a number");
  return j.get<double>();
}

inline int integer(const json& j, std::string_view path) {
  if (!j.is_number_integer()) schema_fail(path, "expected an integer");
  return j.get<int>();
}

inline std::string string(const json& j, std::string_view path) {
  if (!j.is_string()) schema_fail(path, "expected a string");
  return j.get<std::string>();
}

inline const json& array(const json& j, std::string_view path) {
  if (!j.is_array()) schema_fail(path, "expected an array");
  return j;
}

inline Vec2 point(const json& j, std::string_view path) {
  if (!j.is_array() || j.size() != 2) schema_fail(path, "expected [x, y]");
  return {number(j[0], index_path(path, 0)), number(j[1], index_path(path, 1))};
}

inline json point_json(Vec2 p) { return json::array({p.x, p.y}); }

inline Pose pose(const json& j, std::string_view path) {
  const double x = number(field(j, "x", path), child_path(path, "x"));
  const double y = number(field(j, "y", path), child_path(path, "y"));
  double theta = 0.0;
  if (j.contains("theta")) theta = number(j["theta"], child_path(path, "theta"));
  return Pose(x, y, theta);
}

inline json pose_json(const Pose& p) { return json{{"x", p.x}, {"y", p.y}, {"theta", p.theta}}; }

/// Parses text, converting syntax errors into SchemaError with line/column.
inline json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    size_t line = 1, col = 1;
    const size_t limit = std::min(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SchemaError(fmt::format("parse error at line {}, column {}: {}", line, col, e.what()));
  }
}

}  // namespace mrtamp::detail
