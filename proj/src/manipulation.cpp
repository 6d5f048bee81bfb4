#include "mrtamp/manipulation.hpp"

#include <stdexcept>

namespace mrtamp {

Vec2 grasp_point(const Scene& scene, ObjectId object, Vec2 center, int grasp) {
  const double offset = 0.5 * inscribed_radius(scene.object(object).shape);
  return center + offset * unit_from_angle(scene.grasp_angle(grasp));
}

Corridor pick_corridor(const Scene& scene, RobotId robot, ObjectId object, Vec2 center, int grasp) {
  const auto& r = scene.robot(robot);
  return swept_corridor(r.base, grasp_point(scene, object, center, grasp), r.gripper_width);
}

Corridor carry_corridor(const Scene& scene, RobotId robot, ObjectId object, Vec2 target) {
  const auto& r = scene.robot(robot);
  const double width = r.gripper_width + 2.0 * bounding_radius(scene.object(object).shape);
  return swept_corridor(r.base, target, width);
}

bool pick_in_reach(const Scene& scene, RobotId robot, ObjectId object, Vec2 center, int grasp) {
  return scene.robot(robot).reaches(grasp_point(scene, object, center, grasp));
}

bool place_in_reach(const Scene& scene, RobotId robot, ObjectId object, Vec2 center, int grasp) {
  return scene.robot(robot).reaches(grasp_point(scene, object, center, grasp));
}

std::optional<Corridor> trim_exchange_leg(const Corridor& leg, Vec2 h, double radius) {
  // Legs run base -> h; keep the part whose capsule stays outside the radius.
  const double keep_back = radius + 0.5 * leg.width;
  const double len = leg.length();
  const double remaining = len - keep_back;
  if (remaining <= 0.0) return std::nullopt;
  const Vec2 dir = (1.0 / len) * (h - leg.from);
  return Corridor{leg.from, leg.from + remaining * dir, leg.width};
}

bool exchange_legs_clear(const Corridor& give, const Corridor& receive, Vec2 h, double radius) {
  const auto a = trim_exchange_leg(give, h, radius);
  const auto b = trim_exchange_leg(receive, h, radius);
  if (!a || !b) return true;
  return !collides(*a, *b);
}

std::vector<Corridor> ActionMotion::corridors() const {
  std::vector<Corridor> out;
  for (const auto& [robot, slot] : slots) {
    out.insert(out.end(), slot.pick_traj.swept.begin(), slot.pick_traj.swept.end());
    out.insert(out.end(), slot.place_traj.swept.begin(), slot.place_traj.swept.end());
  }
  return out;
}

ActionMotion build_motion(const Scene& scene, const PartiallyGroundedAction& action,
                          const Pose& start, const Pose& placement) {
  ActionMotion motion{action, start, placement, {}};
  const Vec2 from = start.position();
  const Vec2 to = placement.position();
  const auto pick = pick_corridor(scene, action.pick_robot, action.object, from, action.pick_grasp);
  if (!action.is_handover()) {
    const auto carry = carry_corridor(scene, action.pick_robot, action.object, to);
    motion.slots.push_back({action.pick_robot,
                            PickPlaceSlot{action, placement, straight_trajectory(pick),
                                          straight_trajectory(carry)}});
    return motion;
  }
  const Vec2 h = scene.handover_point(action.pick_robot, action.place_robot);
  const auto give = carry_corridor(scene, action.pick_robot, action.object, h);
  const auto receive = carry_corridor(scene, action.place_robot, action.object, h);
  const auto carry = carry_corridor(scene, action.place_robot, action.object, to);
  PickPlaceSlot first{action, placement, straight_trajectory(pick), straight_trajectory(give)};
  PickPlaceSlot second{action, placement, straight_trajectory(receive), straight_trajectory(carry)};
  motion.slots.push_back({action.pick_robot, std::move(first)});
  motion.slots.push_back({action.place_robot, std::move(second)});
  return motion;
}

bool motion_in_reach(const Scene& scene, const ActionMotion& motion) {
  const auto& a = motion.action;
  if (!pick_in_reach(scene, a.pick_robot, a.object, motion.start.position(), a.pick_grasp)) {
    return false;
  }
  if (a.is_handover()) {
    const Vec2 h = scene.handover_point(a.pick_robot, a.place_robot);
    if (!scene.robot(a.pick_robot).reaches(h) || !scene.robot(a.place_robot).reaches(h)) {
      return false;
    }
  }
  return place_in_reach(scene, a.place_robot, a.object, motion.placement.position(), a.place_grasp);
}

std::pair<Corridor, Corridor> exchange_legs(const ActionMotion& motion) {
  if (motion.slots.size() != 2) throw std::logic_error("exchange_legs on a single-robot action");
  return {motion.slots[0].second.place_traj.swept.front(),
          motion.slots[1].second.pick_traj.swept.front()};
}

}  // namespace mrtamp
