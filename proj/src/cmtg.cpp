#include "mrtamp/cmtg.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace mrtamp {

std::vector<std::pair<ObjectId, PartiallyGroundedAction>> Cmtg::action_edges() const {
  std::vector<std::pair<ObjectId, PartiallyGroundedAction>> out;
  for (const auto& a : action_nodes) out.emplace_back(a.object, a);
  return out;
}

void add_object(ObjectId object, Cmtg& graph, const FactSet& facts, const Scene& scene,
                const std::set<ObjectId>& excluded) {
  if (graph.object_nodes.contains(object)) return;
  graph.object_nodes.insert(object);

  const auto goal = scene.goal_region(object);
  const RegionId region = goal.value_or(scene.object(object).home_region);

  for (const RobotId r : scene.robot_ids()) {
    for (int g = 0; g < scene.grasp_count; ++g) {
      if (!facts.has_pick(object, g, r)) continue;
      std::vector<PartiallyGroundedAction> candidates;
      if (facts.has_place(object, region, g, r)) candidates.push_back({object, region, r, r, g, g});
      if (goal) {
        for (const RobotId r2 : scene.robot_ids()) {
          if (r2 == r) continue;
          for (int g2 = 0; g2 < scene.grasp_count; ++g2) {
            if (facts.has_handover(object, g, g2, r, r2) && facts.has_place(object, region, g2, r2)) {
              candidates.push_back({object, region, r, r2, g, g2});
            }
          }
        }
      }
      for (const auto& a : candidates) {
        const Blockers blockers = occluders_of(facts, scene, a);
        bool blocked_by_excluded = false;
        for (const auto* set : {&blockers.pick, &blockers.place}) {
          for (const ObjectId b : *set) blocked_by_excluded |= excluded.contains(b);
        }
        if (blocked_by_excluded) continue;
        graph.action_nodes.insert(a);
        for (const ObjectId b : blockers.pick) {
          add_object(b, graph, facts, scene, excluded);
          graph.block_pick_edges.insert({a, b});
        }
        for (const ObjectId b : blockers.place) {
          add_object(b, graph, facts, scene, excluded);
          graph.block_place_edges.insert({a, b});
        }
      }
    }
  }
}

Cmtg build_cmtg(const std::set<ObjectId>& targets, const FactSet& facts, const Scene& scene,
                const std::set<ObjectId>& excluded) {
  for (const ObjectId m : targets) {
    if (excluded.contains(m)) {
      throw std::invalid_argument(
          fmt::format("target '{}' is excluded from moving", scene.object(m).name));
    }
  }
  Cmtg graph;
  graph.targets = targets;
  for (const ObjectId m : targets) add_object(m, graph, facts, scene, excluded);
  return graph;
}

std::string action_label(const Scene& scene, const PartiallyGroundedAction& a) {
  return fmt::format("{}:{}:{}/{}>{}/{}", scene.object(a.object).name, scene.region(a.region).name,
                     scene.robot(a.pick_robot).name, a.pick_grasp, scene.robot(a.place_robot).name,
                     a.place_grasp);
}

std::string cmtg_to_text(const Cmtg& graph, const Scene& scene) {
  std::string out;
  for (const ObjectId m : graph.object_nodes) {
    out += fmt::format("object {}{}\n", scene.object(m).name,
                       graph.targets.contains(m) ? " target" : "");
  }
  for (const auto& a : graph.action_nodes) {
    out += fmt::format("action {}{}\n", action_label(scene, a), a.is_handover() ? " handover" : "");
  }
  for (const auto& [m, a] : graph.action_edges()) {
    out += fmt::format("action_edge {} -> {}\n", scene.object(m).name, action_label(scene, a));
  }
  for (const auto& [a, m] : graph.block_pick_edges) {
    out += fmt::format("block_pick {} -> {}\n", action_label(scene, a), scene.object(m).name);
  }
  for (const auto& [a, m] : graph.block_place_edges) {
    out += fmt::format("block_place {} -> {}\n", action_label(scene, a), scene.object(m).name);
  }
  return out;
}

std::string cmtg_to_dot(const Cmtg& graph, const Scene& scene) {
  std::string out = "digraph cmtg {\n";
  for (const ObjectId m : graph.object_nodes) {
    out += fmt::format("  \"{}\" [shape=circle{}];\n", scene.object(m).name,
                       graph.targets.contains(m) ? ", color=red" : "");
  }
  for (const auto& a : graph.action_nodes) {
    out += fmt::format("  \"{}\" [shape=box, style=rounded];\n", action_label(scene, a));
    out += fmt::format("  \"{}\" -> \"{}\" [color=gold];\n", scene.object(a.object).name,
                       action_label(scene, a));
  }
  for (const auto& [a, m] : graph.block_pick_edges) {
    out += fmt::format("  \"{}\" -> \"{}\" [color=blue];\n", action_label(scene, a),
                       scene.object(m).name);
  }
  for (const auto& [a, m] : graph.block_place_edges) {
    out += fmt::format("  \"{}\" -> \"{}\" [color=purple];\n", action_label(scene, a),
                       scene.object(m).name);
  }
  out += "}\n";
  return out;
}

}  // namespace mrtamp
