#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mrtamp/plan.hpp"
#include "mrtamp/predicates.hpp"
#include "mrtamp/scene.hpp"

namespace mrtamp {

using BlockEdge = std::pair<PartiallyGroundedAction, ObjectId>;

/// Collaborative manipulation task graph. Object nodes, action nodes, the
/// action edge of each action (implied by action.object), block-pick and
/// block-place edges, and the objects that must be moved. Set order is the
/// canonical order used for MIP indexing.
struct Cmtg {
  std::set<ObjectId> object_nodes;
  std::set<PartiallyGroundedAction> action_nodes;
  std::set<BlockEdge> block_pick_edges;
  std::set<BlockEdge> block_place_edges;
  std::set<ObjectId> targets;

  std::vector<PartiallyGroundedAction> actions() const {
    return {action_nodes.begin(), action_nodes.end()};
  }
  /// Every (object, action) action edge in canonical order.
  std::vector<std::pair<ObjectId, PartiallyGroundedAction>> action_edges() const;
  bool operator==(const Cmtg&) const = default;
};

/// Adds `object` and, recursively, everything blocking its actions. No-op
/// when the object is already a node. Actions blocked by an excluded object
/// are dropped.
void add_object(ObjectId object, Cmtg& graph, const FactSet& facts, const Scene& scene,
                const std::set<ObjectId>& excluded);

/// Graph for moving `targets`; `excluded` objects are already moved and can
/// not be moved again. Throws std::invalid_argument if they intersect.
Cmtg build_cmtg(const std::set<ObjectId>& targets, const FactSet& facts, const Scene& scene,
                const std::set<ObjectId>& excluded);

/// Compact action name: object:region:pick_robot/grasp>place_robot/grasp.
std::string action_label(const Scene& scene, const PartiallyGroundedAction& a);

/// One node or edge per line, canonical order.
std::string cmtg_to_text(const Cmtg& graph, const Scene& scene);
std::string cmtg_to_dot(const Cmtg& graph, const Scene& scene);

}  // namespace mrtamp
