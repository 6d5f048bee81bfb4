#include "mrtamp/scene_io.hpp"

#include <fstream>
#include <sstream>

#include "json_util.hpp"

namespace mrtamp {

using namespace detail;

namespace {

Shape parse_shape(const json& j, const std::string& path) {
  const std::string type = string(field(j, "type", path), child_path(path, "type"));
  if (type == "disc") {
    return Disc{number(field(j, "radius", path), child_path(path, "radius"))};
  }
  if (type == "rectangle") {
    return Rectangle{number(field(j, "half_w", path), child_path(path, "half_w")),
                     number(field(j, "half_h", path), child_path(path, "half_h"))};
  }
  schema_fail(child_path(path, "type"), "expected \"disc\" or \"rectangle\"");
}

json shape_json(const Shape& shape) {
  if (const auto* d = std::get_if<Disc>(&shape)) return json{{"type", "disc"}, {"radius", d->radius}};
  const auto& r = std::get<Rectangle>(shape);
  return json{{"type", "rectangle"}, {"half_w", r.half_w}, {"half_h", r.half_h}};
}

// Resolves a name in a not-yet-canonicalized list.
template <class T>
int resolve(const std::vector<T>& items, const std::string& name, const std::string& path,
            const char* kind) {
  for (size_t i = 0; i < items.size(); ++i) {
    if (items[i].name == name) return static_cast<int>(i);
  }
  throw SceneError(fmt::format("{}: unknown {} '{}'", path, kind, name));
}

}  // namespace

Scene load_scene(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) schema_fail("$", "scene document must be an object");
  Scene scene;

  const json& regions = array(field(doc, "regions", ""), "regions");
  for (size_t i = 0; i < regions.size(); ++i) {
    const auto path = index_path("regions", i);
    Region r;
    r.name = string(field(regions[i], "name", path), child_path(path, "name"));
    r.rect.min = point(field(regions[i], "min", path), child_path(path, "min"));
    r.rect.max = point(field(regions[i], "max", path), child_path(path, "max"));
    scene.regions.push_back(std::move(r));
  }

  if (doc.contains("fixed")) {
    const json& fixed = array(doc["fixed"], "fixed");
    for (size_t i = 0; i < fixed.size(); ++i) {
      const auto path = index_path("fixed", i);
      FixedObstacle f;
      f.name = fixed[i].contains("name") ? string(fixed[i]["name"], child_path(path, "name"))
                                         : fmt::format("F{}", i);
      f.shape = parse_shape(field(fixed[i], "shape", path), child_path(path, "shape"));
      f.pose = pose(field(fixed[i], "pose", path), child_path(path, "pose"));
      scene.fixed.push_back(std::move(f));
    }
  }

  const json& movables = array(field(doc, "movables", ""), "movables");
  for (size_t i = 0; i < movables.size(); ++i) {
    const auto path = index_path("movables", i);
    Movable m;
    m.name = string(field(movables[i], "name", path), child_path(path, "name"));
    m.shape = parse_shape(field(movables[i], "shape", path), child_path(path, "shape"));
    m.pose = pose(field(movables[i], "pose", path), child_path(path, "pose"));
    const auto home_path = child_path(path, "home_region");
    m.home_region = RegionId{resolve(
        scene.regions, string(field(movables[i], "home_region", path), home_path), home_path,
        "region")};
    scene.movables.push_back(std::move(m));
  }

  const json& robots = array(field(doc, "robots", ""), "robots");
  for (size_t i = 0; i < robots.size(); ++i) {
    const auto path = index_path("robots", i);
    const json& r = robots[i];
    Robot rb;
    rb.name = string(field(r, "name", path), child_path(path, "name"));
    rb.base = point(field(r, "base", path), child_path(path, "base"));
    rb.reach_min = number(field(r, "reach_min", path), child_path(path, "reach_min"));
    rb.reach_max = number(field(r, "reach_max", path), child_path(path, "reach_max"));
    rb.gripper_width = number(field(r, "gripper_width", path), child_path(path, "gripper_width"));
    scene.robots.push_back(std::move(rb));
  }

  if (doc.contains("handover_points")) {
    const json& hps = array(doc["handover_points"], "handover_points");
    for (size_t i = 0; i < hps.size(); ++i) {
      const auto path = index_path("handover_points", i);
      const json& pair = field(hps[i], "robots", path);
      const auto pair_path = child_path(path, "robots");
      if (!pair.is_array() || pair.size() != 2) schema_fail(pair_path, "expected two robot names");
      const int a = resolve(scene.robots, string(pair[0], index_path(pair_path, 0)), pair_path,
                            "robot");
      const int b = resolve(scene.robots, string(pair[1], index_path(pair_path, 1)), pair_path,
                            "robot");
      if (a == b) throw SceneError(fmt::format("{}: handover needs two distinct robots", path));
      scene.handover_overrides[{std::min(a, b), std::max(a, b)}] =
          point(field(hps[i], "point", path), child_path(path, "point"));
    }
  }

  if (doc.contains("grasp_count")) scene.grasp_count = integer(doc["grasp_count"], "grasp_count");

  const json& goal = array(field(doc, "goal", ""), "goal");
  for (size_t i = 0; i < goal.size(); ++i) {
    const auto path = index_path("goal", i);
    const auto obj_path = child_path(path, "object");
    const auto reg_path = child_path(path, "region");
    GoalEntry g;
    g.object = ObjectId{
        resolve(scene.movables, string(field(goal[i], "object", path), obj_path), obj_path,
                "movable")};
    g.region = RegionId{
        resolve(scene.regions, string(field(goal[i], "region", path), reg_path), reg_path,
                "region")};
    scene.goal.push_back(g);
  }

  canonicalize(scene);
  validate_scene(scene);
  return scene;
}

Scene load_scene_file(const std::filesystem::path& path) { return load_scene(read_text_file(path)); }

std::string scene_to_json(const Scene& scene) {
  json doc;
  doc["regions"] = json::array();
  for (const auto& r : scene.regions) {
    doc["regions"].push_back(
        {{"name", r.name}, {"min", point_json(r.rect.min)}, {"max", point_json(r.rect.max)}});
  }
  doc["fixed"] = json::array();
  for (const auto& f : scene.fixed) {
    doc["fixed"].push_back({{"name", f.name}, {"shape", shape_json(f.shape)}, {"pose", pose_json(f.pose)}});
  }
  doc["movables"] = json::array();
  for (const auto& m : scene.movables) {
    doc["movables"].push_back({{"name", m.name},
                               {"shape", shape_json(m.shape)},
                               {"pose", pose_json(m.pose)},
                               {"home_region", scene.region(m.home_region).name}});
  }
  doc["robots"] = json::array();
  for (const auto& r : scene.robots) {
    doc["robots"].push_back({{"name", r.name},
                             {"base", point_json(r.base)},
                             {"reach_min", r.reach_min},
                             {"reach_max", r.reach_max},
                             {"gripper_width", r.gripper_width}});
  }
  doc["handover_points"] = json::array();
  for (const auto& [key, p] : scene.handover_overrides) {
    doc["handover_points"].push_back(
        {{"robots", {scene.robots[key.first].name, scene.robots[key.second].name}},
         {"point", point_json(p)}});
  }
  doc["grasp_count"] = scene.grasp_count;
  doc["goal"] = json::array();
  for (const auto& g : scene.goal) {
    doc["goal"].push_back(
        {{"object", scene.object(g.object).name}, {"region", scene.region(g.region).name}});
  }
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot read '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw std::runtime_error(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace mrtamp
