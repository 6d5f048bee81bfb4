#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrtamp/geometry.hpp"

namespace mrtamp {

/// Index into one of the Scene's entity lists. Entity lists are sorted by
/// name, so id order is the canonical order used everywhere downstream.
template <class Tag>
struct Id {
  int value = -1;
  auto operator<=>(const Id&) const = default;
};

using ObjectId = Id<struct ObjectTag>;
using RobotId = Id<struct RobotTag>;
using RegionId = Id<struct RegionTag>;

/// Violation of a Scene invariant; the message names the offending entity.
class SceneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Region {
  std::string name;
  AxisRect rect;
};

struct FixedObstacle {
  std::string name;
  Shape shape;
  Pose pose;
  Placed placed() const { return {shape, pose}; }
};

struct Movable {
  std::string name;
  Shape shape;
  Pose pose;
  RegionId home_region;
  Placed placed() const { return {shape, pose}; }
  Placed placed_at(const Pose& p) const { return {shape, p}; }
};

struct Robot {
  std::string name;
  Vec2 base;
  double reach_min = 0.0;
  double reach_max = 0.0;
  double gripper_width = 0.0;

  bool reaches(Vec2 p) const {
    const double d = distance(base, p);
    return d >= reach_min && d <= reach_max;
  }
};

struct GoalEntry {
  ObjectId object;
  RegionId region;
};

inline constexpr int kDefaultGraspCount = 8;

struct Scene {
  std::vector<Region> regions;
  std::vector<FixedObstacle> fixed;
  std::vector<Movable> movables;
  std::vector<Robot> robots;
  /// Explicit handover points keyed by (lower robot id, higher robot id).
  std::map<std::pair<int, int>, Vec2> handover_overrides;
  int grasp_count = kDefaultGraspCount;
  std::vector<GoalEntry> goal;

  int num_objects() const { return static_cast<int>(movables.size()); }
  int num_robots() const { return static_cast<int>(robots.size()); }

  const Movable& object(ObjectId id) const { return movables.at(id.value); }
  const Robot& robot(RobotId id) const { return robots.at(id.value); }
  const Region& region(RegionId id) const { return regions.at(id.value); }

  /// Name lookups; throw SceneError for unknown names.
  ObjectId object_id(const std::string& name) const;
  RobotId robot_id(const std::string& name) const;
  RegionId region_id(const std::string& name) const;

  std::optional<RegionId> goal_region(ObjectId m) const;
  bool is_goal_object(ObjectId m) const { return goal_region(m).has_value(); }
  /// True iff m is a goal object already inside its goal region at load.
  bool goal_satisfied_initially(ObjectId m) const;

  /// Approach angle of grasp index k: 2 pi k / grasp_count.
  double grasp_angle(int k) const;

  /// Predefined handover point of a robot pair: the override if present,
  /// otherwise the midpoint of the two bases.
  Vec2 handover_point(RobotId a, RobotId b) const;
  /// Clearance around the handover point inside which the two exchange legs
  /// may overlap.
  double handover_radius(RobotId a, RobotId b) const;

  std::vector<ObjectId> object_ids() const;
  std::vector<RobotId> robot_ids() const;
};

/// Checks every Scene invariant; throws SceneError naming the offender.
void validate_scene(const Scene& scene);

/// Sorts regions, movables and robots by name and remaps every reference.
void canonicalize(Scene& scene);

}  // namespace mrtamp
