#pragma once

#include <compare>
#include <set>
#include <variant>
#include <vector>

#include "mrtamp/geometry.hpp"
#include "mrtamp/scene.hpp"

namespace mrtamp {

/// A pick-and-place action without its placement. A handover has distinct
/// pick and place robots; otherwise both robots and grasps coincide.
struct PartiallyGroundedAction {
  ObjectId object;
  RegionId region;
  RobotId pick_robot;
  RobotId place_robot;
  int pick_grasp = 0;
  int place_grasp = 0;

  bool is_handover() const { return pick_robot != place_robot; }
  bool uses(RobotId r) const { return pick_robot == r || place_robot == r; }
  auto operator<=>(const PartiallyGroundedAction&) const = default;
};

struct Trajectory {
  std::vector<Pose> waypoints;
  std::vector<Corridor> swept;
};

/// Straight two-waypoint trajectory swept as a single corridor.
Trajectory straight_trajectory(const Corridor& corridor);

struct WaitSlot {};

struct PickPlaceSlot {
  PartiallyGroundedAction action;
  Pose placement;
  Trajectory pick_traj;
  Trajectory place_traj;
};

using RobotSlot = std::variant<WaitSlot, PickPlaceSlot>;

/// One time step: exactly one slot per robot, indexed by robot id.
struct GroundedJointAction {
  std::vector<RobotSlot> slots;

  /// Distinct actions of the step, in robot order of their pick robot.
  std::vector<const PickPlaceSlot*> actions() const;
  std::set<ObjectId> moved_objects() const;
};

struct Plan {
  std::vector<GroundedJointAction> steps;

  int makespan() const { return static_cast<int>(steps.size()); }
  /// Number of distinct objects moved.
  int motion_cost() const;
  std::set<ObjectId> moved_objects() const;
};

}  // namespace mrtamp
