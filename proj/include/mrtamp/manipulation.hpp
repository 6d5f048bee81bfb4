#pragma once

// Corridor and reach geometry of pick-and-place actions. Predicates, grounding
// and the validator all derive motions from these functions.

#include <optional>
#include <utility>
#include <vector>

#include "mrtamp/plan.hpp"
#include "mrtamp/scene.hpp"

namespace mrtamp {

/// Point a gripper approaches when grasping `object` centered at `center`.
Vec2 grasp_point(const Scene& scene, ObjectId object, Vec2 center, int grasp);

/// Base -> grasp point, gripper width.
Corridor pick_corridor(const Scene& scene, RobotId robot, ObjectId object, Vec2 center, int grasp);

/// Base -> target point while carrying `object`: gripper width plus the
/// object's diameter.
Corridor carry_corridor(const Scene& scene, RobotId robot, ObjectId object, Vec2 target);

bool pick_in_reach(const Scene& scene, RobotId robot, ObjectId object, Vec2 center, int grasp);
bool place_in_reach(const Scene& scene, RobotId robot, ObjectId object, Vec2 center, int grasp);

/// Shortens a leg ending at `h` so its capsule stops `radius` short of h.
/// Returns nullopt when nothing of the leg remains.
std::optional<Corridor> trim_exchange_leg(const Corridor& leg, Vec2 h, double radius);

/// True iff the two exchange legs of a handover do not overlap outside the
/// handover radius.
bool exchange_legs_clear(const Corridor& give, const Corridor& receive, Vec2 h, double radius);

/// Per-robot slots realizing `action` from `start` to `placement`.
struct ActionMotion {
  PartiallyGroundedAction action;
  Pose start;
  Pose placement;
  std::vector<std::pair<RobotId, PickPlaceSlot>> slots;

  std::vector<Corridor> corridors() const;
};

ActionMotion build_motion(const Scene& scene, const PartiallyGroundedAction& action,
                          const Pose& start, const Pose& placement);

/// Reach of every endpoint of the action: pick grasp point, handover point,
/// place grasp point at the placement.
bool motion_in_reach(const Scene& scene, const ActionMotion& motion);

/// Handover legs: (giving leg of the pick robot, receiving leg of the place
/// robot). Only meaningful for handovers.
std::pair<Corridor, Corridor> exchange_legs(const ActionMotion& motion);

}  // namespace mrtamp
