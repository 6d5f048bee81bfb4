#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mrtamp/scene.hpp"

namespace mrtamp {

/// Malformed document: bad JSON (message carries line and column) or a field
/// with the wrong type or missing (message carries the field path).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses and validates a scene document. Throws SchemaError for syntax or
/// schema problems and SceneError for invariant violations.
Scene load_scene(std::string_view text);
Scene load_scene_file(const std::filesystem::path& path);

/// Serializes a scene back to the document form (canonical order).
std::string scene_to_json(const Scene& scene);

/// Reads a whole file; throws std::runtime_error when unreadable.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace mrtamp
