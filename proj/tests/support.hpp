#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <random>
#include <set>
#include <string>

#include "mrtamp/cmtg.hpp"
#include "mrtamp/manipulation.hpp"
#include "mrtamp/scene.hpp"
#include "mrtamp/scene_io.hpp"

namespace testing {

inline std::filesystem::path data_path(const std::string& rel) {
  return std::filesystem::path(MRTAMP_DATA_DIR) / rel;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline mrtamp::Scene fixture(const std::string& rel) { return mrtamp::load_scene_file(data_path(rel)); }

/// The scene with only the named robots (handover points remapped).
inline mrtamp::Scene keep_robots(const mrtamp::Scene& scene, const std::set<std::string>& names) {
  mrtamp::Scene out = scene;
  out.robots.clear();
  out.handover_overrides.clear();
  std::vector<int> new_id(scene.robots.size(), -1);
  for (size_t i = 0; i < scene.robots.size(); ++i) {
    if (!names.contains(scene.robots[i].name)) continue;
    new_id[i] = static_cast<int>(out.robots.size());
    out.robots.push_back(scene.robots[i]);
  }
  for (const auto& [key, p] : scene.handover_overrides) {
    if (new_id[key.first] >= 0 && new_id[key.second] >= 0) {
      out.handover_overrides[{new_id[key.first], new_id[key.second]}] = p;
    }
  }
  mrtamp::validate_scene(out);
  return out;
}

/// One joint action from per-action motions; idle robots wait.
inline mrtamp::GroundedJointAction make_step(const mrtamp::Scene& scene,
                                             const std::vector<mrtamp::ActionMotion>& motions) {
  mrtamp::GroundedJointAction step;
  step.slots.assign(scene.num_robots(), mrtamp::WaitSlot{});
  for (const auto& m : motions) {
    for (const auto& [robot, slot] : m.slots) step.slots[robot.value] = slot;
  }
  return step;
}

/// Non-handover action of `robot` moving `object` into `region`.
inline mrtamp::PartiallyGroundedAction direct(const mrtamp::Scene& scene, const std::string& object,
                                              const std::string& region, const std::string& robot,
                                              int grasp = 0) {
  const auto r = scene.robot_id(robot);
  return {scene.object_id(object), scene.region_id(region), r, r, grasp, grasp};
}

/// Random task graph with up to `max_objects` objects and `max_actions`
/// actions over 1 to 3 robots; blockers point at other objects of the graph.
inline mrtamp::Cmtg random_cmtg(std::mt19937_64& rng, int max_objects = 6, int max_actions = 8) {
  using namespace mrtamp;
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };
  Cmtg g;
  const int n_obj = uniform(1, max_objects);
  const int n_rob = uniform(1, 3);
  for (int m = 0; m < n_obj; ++m) g.object_nodes.insert(ObjectId{m});
  const int n_act = uniform(1, max_actions);
  for (int tries = 0; static_cast<int>(g.action_nodes.size()) < n_act && tries < 100; ++tries) {
    PartiallyGroundedAction a;
    a.object = ObjectId{uniform(0, n_obj - 1)};
    a.region = RegionId{0};
    a.pick_robot = RobotId{uniform(0, n_rob - 1)};
    a.place_robot = a.pick_robot;
    if (n_rob > 1 && chance(0.25)) {
      while (a.place_robot == a.pick_robot) a.place_robot = RobotId{uniform(0, n_rob - 1)};
    }
    a.pick_grasp = uniform(0, 1);
    a.place_grasp = a.is_handover() ? uniform(0, 1) : a.pick_grasp;
    g.action_nodes.insert(a);
  }
  for (const auto& a : g.action_nodes) {
    for (const ObjectId m : g.object_nodes) {
      if (m == a.object) continue;
      if (chance(0.15)) g.block_pick_edges.insert({a, m});
      if (chance(0.08)) g.block_place_edges.insert({a, m});
    }
  }
  // Targets come from objects that have at least one action.
  std::set<ObjectId> movable;
  for (const auto& a : g.action_nodes) movable.insert(a.object);
  std::vector<ObjectId> objs(movable.begin(), movable.end());
  std::shuffle(objs.begin(), objs.end(), rng);
  const int n_targets = uniform(1, std::min<int>(2, static_cast<int>(objs.size())));
  for (int i = 0; i < n_targets; ++i) g.targets.insert(objs[i]);
  return g;
}

}  // namespace testing
