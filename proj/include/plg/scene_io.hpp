#pragma once

// JSON scene and report files. Rationals are written as "p/q" strings;
// floats are rejected on input.

#include "plg/invariants.hpp"

#include <json.hpp>

#include <string>

namespace plg {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SceneFile {
  Scene scene;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
};

nlohmann::ordered_json scene_to_json(const SceneFile& f);
/// Throws ParseError on malformed input, including floats and bad indices.
SceneFile scene_from_json(const nlohmann::json& j);

std::string serialize_scene(const SceneFile& f);
SceneFile parse_scene(const std::string& text);
SceneFile read_scene_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Exact structural equality (names, roles, complexes, images, family).
bool scenes_equal(const Scene& a, const Scene& b);

nlohmann::ordered_json report_to_json(const InvariantReport& r);
nlohmann::ordered_json validation_to_json(const Validation& v);
nlohmann::ordered_json degeneracy_to_json(const DegeneracyReport& r);

}  // namespace plg
