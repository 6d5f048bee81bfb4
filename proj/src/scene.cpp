#include "mrtamp/scene.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <fmt/format.h>

namespace mrtamp {

namespace {

template <class T>
int find_by_name(const std::vector<T>& items, const std::string& name) {
  for (size_t i = 0; i < items.size(); ++i) {
    if (items[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

template <class T>
std::vector<int> name_order(const std::vector<T>& items) {
  std::vector<int> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return items[a].name < items[b].name; });
  return order;
}

template <class T>
std::vector<int> apply_order(std::vector<T>& items, const std::vector<int>& order) {
  std::vector<T> sorted;
  sorted.reserve(items.size());
  std::vector<int> remap(items.size());
  for (size_t i = 0; i < order.size(); ++i) {
    remap[order[i]] = static_cast<int>(i);
    sorted.push_back(std::move(items[order[i]]));
  }
  items = std::move(sorted);
  return remap;
}

}  // namespace

ObjectId Scene::object_id(const std::string& name) const {
  const int i = find_by_name(movables, name);
  if (i < 0) throw SceneError(fmt::format("unknown movable object '{}'", name));
  return ObjectId{i};
}

RobotId Scene::robot_id(const std::string& name) const {
  const int i = find_by_name(robots, name);
  if (i < 0) throw SceneError(fmt::format("unknown robot '{}'", name));
  return RobotId{i};
}

RegionId Scene::region_id(const std::string& name) const {
  const int i = find_by_name(regions, name);
  if (i < 0) throw SceneError(fmt::format("unknown region '{}'", name));
  return RegionId{i};
}

std::optional<RegionId> Scene::goal_region(ObjectId m) const {
  for (const auto& g : goal) {
    if (g.object == m) return g.region;
  }
  return std::nullopt;
}

bool Scene::goal_satisfied_initially(ObjectId m) const {
  const auto re = goal_region(m);
  return re && contained_in(region(*re).rect, object(m).placed());
}

double Scene::grasp_angle(int k) const {
  return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(grasp_count);
}

Vec2 Scene::handover_point(RobotId a, RobotId b) const {
  const auto key = std::minmax(a.value, b.value);
  if (auto it = handover_overrides.find({key.first, key.second}); it != handover_overrides.end()) {
    return it->second;
  }
  return 0.5 * (robot(a).base + robot(b).base);
}

double Scene::handover_radius(RobotId a, RobotId b) const {
  return std::max(robot(a).gripper_width, robot(b).gripper_width);
}

std::vector<ObjectId> Scene::object_ids() const {
  std::vector<ObjectId> ids;
  for (int i = 0; i < num_objects(); ++i) ids.push_back(ObjectId{i});
  return ids;
}

std::vector<RobotId> Scene::robot_ids() const {
  std::vector<RobotId> ids;
  for (int i = 0; i < num_robots(); ++i) ids.push_back(RobotId{i});
  return ids;
}

void validate_scene(const Scene& scene) {
  auto check_unique = [](const auto& items, const char* kind) {
    std::set<std::string> seen;
    for (const auto& it : items) {
      if (it.name.empty()) throw SceneError(fmt::format("{} with empty name", kind));
      if (!seen.insert(it.name).second) {
        throw SceneError(fmt::format("duplicate {} name '{}'", kind, it.name));
      }
    }
  };
  check_unique(scene.regions, "region");
  check_unique(scene.movables, "movable");
  check_unique(scene.robots, "robot");

  for (const auto& r : scene.regions) {
    if (!(r.rect.width() > 0.0 && r.rect.height() > 0.0)) {
      throw SceneError(fmt::format("region '{}' has non-positive area", r.name));
    }
  }
  for (const auto& f : scene.fixed) {
    try {
      check_shape(f.shape);
    } catch (const std::invalid_argument&) {
      throw SceneError(fmt::format("fixed obstacle '{}' has non-positive extent", f.name));
    }
  }
  for (const auto& rb : scene.robots) {
    if (!(rb.reach_min >= 0.0 && rb.reach_min < rb.reach_max)) {
      throw SceneError(fmt::format("robot '{}' needs 0 <= reach_min < reach_max", rb.name));
    }
    if (!(rb.gripper_width > 0.0)) {
      throw SceneError(fmt::format("robot '{}' needs gripper_width > 0", rb.name));
    }
  }
  if (scene.grasp_count < 1) throw SceneError("grasp_count must be at least 1");

  for (const auto& m : scene.movables) {
    try {
      check_shape(m.shape);
    } catch (const std::invalid_argument&) {
      throw SceneError(fmt::format("movable '{}' has non-positive extent", m.name));
    }
    if (m.home_region.value < 0 || m.home_region.value >= static_cast<int>(scene.regions.size())) {
      throw SceneError(fmt::format("movable '{}' references an unknown home region", m.name));
    }
    const auto& home = scene.region(m.home_region);
    if (!contained_in(home.rect, m.placed())) {
      throw SceneError(
          fmt::format("movable '{}' is not inside its home region '{}'", m.name, home.name));
    }
  }
  for (size_t i = 0; i < scene.movables.size(); ++i) {
    const auto& a = scene.movables[i];
    for (size_t j = i + 1; j < scene.movables.size(); ++j) {
      const auto& b = scene.movables[j];
      if (collides(a.placed(), b.placed())) {
        throw SceneError(fmt::format("movables '{}' and '{}' overlap", a.name, b.name));
      }
    }
    for (const auto& f : scene.fixed) {
      if (collides(a.placed(), f.placed())) {
        throw SceneError(
            fmt::format("movable '{}' overlaps fixed obstacle '{}'", a.name, f.name));
      }
    }
  }

  std::set<int> goal_objects;
  for (const auto& g : scene.goal) {
    if (g.object.value < 0 || g.object.value >= scene.num_objects() || g.region.value < 0 ||
        g.region.value >= static_cast<int>(scene.regions.size())) {
      throw SceneError("goal references an unknown entity");
    }
    if (!goal_objects.insert(g.object.value).second) {
      throw SceneError(
          fmt::format("goal names object '{}' twice", scene.object(g.object).name));
    }
  }
  for (const auto& [key, _] : scene.handover_overrides) {
    if (key.first < 0 || key.second >= scene.num_robots() || key.first >= key.second) {
      throw SceneError("handover point references an unknown robot pair");
    }
  }
}

void canonicalize(Scene& scene) {
  const auto region_remap = apply_order(scene.regions, name_order(scene.regions));
  const auto object_remap = apply_order(scene.movables, name_order(scene.movables));
  const auto robot_remap = apply_order(scene.robots, name_order(scene.robots));

  for (auto& m : scene.movables) {
    if (m.home_region.value >= 0) m.home_region = RegionId{region_remap.at(m.home_region.value)};
  }
  for (auto& g : scene.goal) {
    g.object = ObjectId{object_remap.at(g.object.value)};
    g.region = RegionId{region_remap.at(g.region.value)};
  }
  std::sort(scene.goal.begin(), scene.goal.end(),
            [](const GoalEntry& a, const GoalEntry& b) { return a.object < b.object; });
  std::map<std::pair<int, int>, Vec2> overrides;
  for (const auto& [key, point] : scene.handover_overrides) {
    const int a = robot_remap.at(key.first), b = robot_remap.at(key.second);
    overrides[{std::min(a, b), std::max(a, b)}] = point;
  }
  scene.handover_overrides = std::move(overrides);
}

}  // namespace mrtamp
