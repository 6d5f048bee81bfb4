#include "mrtamp/validator.hpp"

#include <map>

#include <fmt/format.h>
#include <json.hpp>

#include "mrtamp/manipulation.hpp"
#include "mrtamp/plan_io.hpp"

namespace mrtamp {

namespace {

constexpr double kGeometryMatch = 1e-9;

bool near(Vec2 a, Vec2 b) { return distance(a, b) <= kGeometryMatch; }

bool same_corridor(const Corridor& a, const Corridor& b) {
  return near(a.from, b.from) && near(a.to, b.to) && std::abs(a.width - b.width) <= kGeometryMatch;
}

bool same_trajectory(const Trajectory& a, const Trajectory& b) {
  if (a.swept.size() != b.swept.size() || a.waypoints.size() != b.waypoints.size()) return false;
  for (size_t i = 0; i < a.swept.size(); ++i) {
    if (!same_corridor(a.swept[i], b.swept[i])) return false;
  }
  for (size_t i = 0; i < a.waypoints.size(); ++i) {
    if (!near(a.waypoints[i].position(), b.waypoints[i].position())) return false;
  }
  return true;
}

std::vector<Corridor> slot_corridors(const PickPlaceSlot& s) {
  std::vector<Corridor> out(s.pick_traj.swept);
  out.insert(out.end(), s.place_traj.swept.begin(), s.place_traj.swept.end());
  return out;
}

struct StepAction {
  const PickPlaceSlot* slot;  // pick robot's slot
  std::vector<std::pair<RobotId, const PickPlaceSlot*>> robot_slots;
  std::vector<Corridor> corridors;
};

}  // namespace

bool ValidationReport::passed(const std::string& cond) const {
  for (const auto& v : violations) {
    if (v.condition == cond) return false;
  }
  return true;
}

std::string ValidationReport::to_json() const {
  nlohmann::json conds = nlohmann::json::object();
  for (const char* c : {condition::kMotion, condition::kPlacement, condition::kHandover,
                        condition::kMonotone, condition::kGoal}) {
    conds[c] = passed(c);
  }
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& v : violations) {
    entries.push_back({{"condition", v.condition}, {"step", v.step}, {"message", v.message}});
  }
  nlohmann::json doc{{"valid", ok()}, {"conditions", conds}, {"violations", entries}};
  return doc.dump(2) + "\n";
}

ValidationReport validate_plan(const Scene& scene, const Plan& plan) {
  ValidationReport report;
  auto add = [&](const char* cond, int step, std::string msg) {
    report.violations.push_back({cond, step, std::move(msg)});
  };
  auto obj_name = [&](ObjectId m) { return scene.object(m).name; };

  std::vector<Pose> poses;
  for (const auto& m : scene.movables) poses.push_back(m.pose);
  std::set<ObjectId> moved;

  for (int s = 0; s < plan.makespan(); ++s) {
    const auto& step = plan.steps[s];
    if (static_cast<int>(step.slots.size()) != scene.num_robots()) {
      throw PlanStructureError(fmt::format("step {} has {} slots for {} robots", s,
                                           step.slots.size(), scene.num_robots()));
    }
    std::vector<StepAction> actions;
    for (int r = 0; r < scene.num_robots(); ++r) {
      const auto* pp = std::get_if<PickPlaceSlot>(&step.slots[r]);
      if (!pp) continue;
      const auto& a = pp->action;
      if (!a.uses(RobotId{r})) {
        throw PlanStructureError(fmt::format("step {}: robot '{}' holds a foreign action", s,
                                             scene.robots[r].name));
      }
      if (a.pick_robot.value != r) continue;
      StepAction sa{pp, {{a.pick_robot, pp}}, slot_corridors(*pp)};
      if (a.is_handover()) {
        const auto* other = std::get_if<PickPlaceSlot>(&step.slots[a.place_robot.value]);
        if (!other || other->action != a || !(other->placement == pp->placement)) {
          throw PlanStructureError(fmt::format("step {}: handover of '{}' is missing its place robot",
                                               s, obj_name(a.object)));
        }
        sa.robot_slots.push_back({a.place_robot, other});
        const auto more = slot_corridors(*other);
        sa.corridors.insert(sa.corridors.end(), more.begin(), more.end());
      }
      actions.push_back(std::move(sa));
    }
    if (actions.empty()) add(condition::kMonotone, s, "step moves no object");

    // Monotonicity.
    std::set<ObjectId> in_step;
    for (const auto& sa : actions) {
      const ObjectId m = sa.slot->action.object;
      if (moved.contains(m) || !in_step.insert(m).second) {
        add(condition::kMonotone, s, fmt::format("object '{}' is moved more than once", obj_name(m)));
      }
    }

    for (size_t i = 0; i < actions.size(); ++i) {
      const auto& sa = actions[i];
      const auto& a = sa.slot->action;
      const ObjectId m = a.object;
      const Placed footprint = scene.object(m).placed_at(sa.slot->placement);

      // Trajectories must be the corridors the action implies.
      const auto expected = build_motion(scene, a, poses[m.value], sa.slot->placement);
      for (size_t k = 0; k < expected.slots.size(); ++k) {
        const auto& [robot, exp_slot] = expected.slots[k];
        const auto* got = sa.robot_slots.at(k).second;
        if (!same_trajectory(exp_slot.pick_traj, got->pick_traj) ||
            !same_trajectory(exp_slot.place_traj, got->place_traj)) {
          add(condition::kMotion, s,
              fmt::format("trajectories of robot '{}' for '{}' do not match the action geometry",
                          scene.robot(robot).name, obj_name(m)));
        }
      }
      if (!pick_in_reach(scene, a.pick_robot, m, poses[m.value].position(), a.pick_grasp)) {
        add(condition::kMotion, s, fmt::format("robot '{}' cannot reach '{}' for picking",
                                               scene.robot(a.pick_robot).name, obj_name(m)));
      }
      if (!place_in_reach(scene, a.place_robot, m, sa.slot->placement.position(), a.place_grasp)) {
        add(condition::kMotion, s, fmt::format("robot '{}' cannot reach the placement of '{}'",
                                               scene.robot(a.place_robot).name, obj_name(m)));
      }

      // (i) corridors against the current world and the other same-step motions.
      for (const auto& c : sa.corridors) {
        for (const auto& f : scene.fixed) {
          if (collides(c, f.placed())) {
            add(condition::kMotion, s, fmt::format("corridor for '{}' hits fixed obstacle '{}'",
                                                   obj_name(m), f.name));
          }
        }
        for (int o = 0; o < scene.num_objects(); ++o) {
          if (o == m.value) continue;
          if (collides(c, scene.movables[o].placed_at(poses[o]))) {
            add(condition::kMotion, s, fmt::format("corridor for '{}' hits object '{}'",
                                                   obj_name(m), scene.movables[o].name));
          }
        }
        for (size_t j = 0; j < actions.size(); ++j) {
          if (j == i) continue;
          const auto& other = actions[j];
          const ObjectId om = other.slot->action.object;
          if (collides(c, scene.object(om).placed_at(other.slot->placement))) {
            add(condition::kMotion, s, fmt::format("corridor for '{}' hits the placement of '{}'",
                                                   obj_name(m), obj_name(om)));
          }
          if (j > i) {
            for (const auto& oc : other.corridors) {
              if (collides(c, oc)) {
                add(condition::kMotion, s, fmt::format("corridors for '{}' and '{}' overlap",
                                                       obj_name(m), obj_name(om)));
              }
            }
          }
        }
      }

      // (ii) placement.
      const auto& home = scene.object(m).home_region;
      const RegionId target = scene.goal_region(m).value_or(home);
      if (a.region != target) {
        add(condition::kPlacement, s,
            fmt::format("'{}' is placed into region '{}' instead of '{}'", obj_name(m),
                        scene.region(a.region).name, scene.region(target).name));
      }
      if (!contained_in(scene.region(a.region).rect, footprint)) {
        add(condition::kPlacement, s, fmt::format("placement of '{}' leaves region '{}'",
                                                  obj_name(m), scene.region(a.region).name));
      }
      for (const auto& f : scene.fixed) {
        if (collides(footprint, f.placed())) {
          add(condition::kPlacement, s, fmt::format("placement of '{}' hits fixed obstacle '{}'",
                                                    obj_name(m), f.name));
        }
      }
      for (int o = 0; o < scene.num_objects(); ++o) {
        if (o == m.value) continue;
        if (collides(footprint, scene.movables[o].placed_at(poses[o]))) {
          add(condition::kPlacement, s, fmt::format("placement of '{}' hits object '{}'",
                                                    obj_name(m), scene.movables[o].name));
        }
      }
      for (size_t j = i + 1; j < actions.size(); ++j) {
        const ObjectId om = actions[j].slot->action.object;
        if (collides(footprint, scene.object(om).placed_at(actions[j].slot->placement))) {
          add(condition::kPlacement, s, fmt::format("placements of '{}' and '{}' overlap",
                                                    obj_name(m), obj_name(om)));
        }
      }

      // (iii) handover exchange.
      if (a.is_handover()) {
        const Vec2 h = scene.handover_point(a.pick_robot, a.place_robot);
        const auto& give = sa.robot_slots[0].second->place_traj.swept;
        const auto& receive = sa.robot_slots[1].second->pick_traj.swept;
        if (give.empty() || receive.empty() || !near(give.back().to, h) ||
            !near(receive.back().to, h)) {
          add(condition::kHandover, s,
              fmt::format("handover legs for '{}' do not meet at the handover point", obj_name(m)));
        } else if (!exchange_legs_clear(give.back(), receive.back(), h,
                                        scene.handover_radius(a.pick_robot, a.place_robot))) {
          add(condition::kHandover, s,
              fmt::format("handover legs for '{}' overlap outside the handover radius",
                          obj_name(m)));
        }
        if (!scene.robot(a.pick_robot).reaches(h) || !scene.robot(a.place_robot).reaches(h)) {
          add(condition::kHandover, s,
              fmt::format("handover point for '{}' is out of reach", obj_name(m)));
        }
      }
    }

    for (const auto& sa : actions) {
      poses[sa.slot->action.object.value] = sa.slot->placement;
      moved.insert(sa.slot->action.object);
    }
  }

  for (const auto& g : scene.goal) {
    const Placed final_pose = scene.object(g.object).placed_at(poses[g.object.value]);
    if (!contained_in(scene.region(g.region).rect, final_pose)) {
      add(condition::kGoal, -1, fmt::format("'{}' does not end inside goal region '{}'",
                                            obj_name(g.object), scene.region(g.region).name));
    }
  }
  return report;
}

}  // namespace mrtamp
