#include "mrtamp/plan_io.hpp"

#include <fmt/format.h>

#include "json_util.hpp"

namespace mrtamp {

using namespace detail;

Trajectory straight_trajectory(const Corridor& corridor) {
  return Trajectory{{Pose(corridor.from.x, corridor.from.y), Pose(corridor.to.x, corridor.to.y)},
                    {corridor}};
}

std::vector<const PickPlaceSlot*> GroundedJointAction::actions() const {
  std::vector<const PickPlaceSlot*> out;
  for (size_t r = 0; r < slots.size(); ++r) {
    const auto* pp = std::get_if<PickPlaceSlot>(&slots[r]);
    if (pp && pp->action.pick_robot.value == static_cast<int>(r)) out.push_back(pp);
  }
  return out;
}

std::set<ObjectId> GroundedJointAction::moved_objects() const {
  std::set<ObjectId> out;
  for (const auto& slot : slots) {
    if (const auto* pp = std::get_if<PickPlaceSlot>(&slot)) out.insert(pp->action.object);
  }
  return out;
}

std::set<ObjectId> Plan::moved_objects() const {
  std::set<ObjectId> out;
  for (const auto& s : steps) {
    const auto m = s.moved_objects();
    out.insert(m.begin(), m.end());
  }
  return out;
}

int Plan::motion_cost() const { return static_cast<int>(moved_objects().size()); }

namespace {

template <class IdT>
IdT lookup(const std::string& name, const std::string& path, IdT (Scene::*fn)(const std::string&) const,
           const Scene& scene) {
  try {
    return (scene.*fn)(name);
  } catch (const SceneError& e) {
    throw PlanStructureError(fmt::format("{}: {}", path, e.what()));
  }
}

Trajectory parse_trajectory(const json& j, const std::string& path) {
  Trajectory t;
  const auto wp_path = child_path(path, "waypoints");
  const json& wps = array(field(j, "waypoints", path), wp_path);
  for (size_t i = 0; i < wps.size(); ++i) t.waypoints.push_back(pose(wps[i], index_path(wp_path, i)));
  const auto sw_path = child_path(path, "swept");
  const json& sw = array(field(j, "swept", path), sw_path);
  for (size_t i = 0; i < sw.size(); ++i) {
    const auto p = index_path(sw_path, i);
    Corridor c;
    c.from = point(field(sw[i], "from", p), child_path(p, "from"));
    c.to = point(field(sw[i], "to", p), child_path(p, "to"));
    c.width = number(field(sw[i], "width", p), child_path(p, "width"));
    if (!(c.width > 0.0)) throw PlanStructureError(fmt::format("{}: corridor width must be > 0", p));
    t.swept.push_back(c);
  }
  if (t.waypoints.size() < 2) {
    throw PlanStructureError(fmt::format("{}: a trajectory needs at least 2 waypoints", path));
  }
  if (t.swept.size() != t.waypoints.size() - 1) {
    throw PlanStructureError(
        fmt::format("{}: swept corridors must cover every consecutive waypoint pair", path));
  }
  return t;
}

json trajectory_json(const Trajectory& t) {
  json wps = json::array();
  for (const auto& p : t.waypoints) wps.push_back(pose_json(p));
  json sw = json::array();
  for (const auto& c : t.swept) {
    sw.push_back({{"from", point_json(c.from)}, {"to", point_json(c.to)}, {"width", c.width}});
  }
  return json{{"waypoints", wps}, {"swept", sw}};
}

}  // namespace

Plan load_plan(std::string_view text, const Scene& scene) {
  const json doc = parse_document(text);
  if (!doc.is_object()) schema_fail("$", "plan document must be an object");
  Plan plan;
  const json& steps = array(field(doc, "steps", ""), "steps");
  for (size_t s = 0; s < steps.size(); ++s) {
    const auto step_path = index_path("steps", s);
    const json& records = array(steps[s], step_path);
    GroundedJointAction step;
    step.slots.assign(scene.num_robots(), WaitSlot{});
    std::vector<bool> seen(scene.num_robots(), false);
    for (size_t k = 0; k < records.size(); ++k) {
      const auto path = index_path(step_path, k);
      const json& rec = records[k];
      const RobotId robot = lookup(string(field(rec, "robot", path), child_path(path, "robot")),
                                   child_path(path, "robot"), &Scene::robot_id, scene);
      if (seen[robot.value]) {
        throw PlanStructureError(
            fmt::format("{}: robot '{}' appears twice in one step", path, scene.robot(robot).name));
      }
      seen[robot.value] = true;
      const std::string kind = string(field(rec, "kind", path), child_path(path, "kind"));
      if (kind == "wait") continue;
      if (kind != "pick_place") schema_fail(child_path(path, "kind"), "expected \"wait\" or \"pick_place\"");
      PickPlaceSlot slot;
      auto& a = slot.action;
      a.object = lookup(string(field(rec, "object", path), child_path(path, "object")),
                        child_path(path, "object"), &Scene::object_id, scene);
      a.region = lookup(string(field(rec, "region", path), child_path(path, "region")),
                        child_path(path, "region"), &Scene::region_id, scene);
      a.pick_robot = lookup(string(field(rec, "pick_robot", path), child_path(path, "pick_robot")),
                            child_path(path, "pick_robot"), &Scene::robot_id, scene);
      a.place_robot = lookup(string(field(rec, "place_robot", path), child_path(path, "place_robot")),
                             child_path(path, "place_robot"), &Scene::robot_id, scene);
      a.pick_grasp = integer(field(rec, "pick_grasp", path), child_path(path, "pick_grasp"));
      a.place_grasp = integer(field(rec, "place_grasp", path), child_path(path, "place_grasp"));
      for (int g : {a.pick_grasp, a.place_grasp}) {
        if (g < 0 || g >= scene.grasp_count) {
          throw PlanStructureError(fmt::format("{}: grasp index {} out of range", path, g));
        }
      }
      if (!a.uses(robot)) {
        throw PlanStructureError(
            fmt::format("{}: robot '{}' is not part of its action", path, scene.robot(robot).name));
      }
      slot.placement = pose(field(rec, "placement", path), child_path(path, "placement"));
      slot.pick_traj = parse_trajectory(field(rec, "pick_traj", path), child_path(path, "pick_traj"));
      slot.place_traj = parse_trajectory(field(rec, "place_traj", path), child_path(path, "place_traj"));
      step.slots[robot.value] = std::move(slot);
    }
    for (int r = 0; r < scene.num_robots(); ++r) {
      if (!seen[r]) {
        throw PlanStructureError(
            fmt::format("{}: robot '{}' has no entry", step_path, scene.robots[r].name));
      }
    }
    // Handover: both robots must carry the identical action and placement.
    for (int r = 0; r < scene.num_robots(); ++r) {
      const auto* pp = std::get_if<PickPlaceSlot>(&step.slots[r]);
      if (!pp || !pp->action.is_handover()) continue;
      const auto& a = pp->action;
      const RobotId other = a.pick_robot.value == r ? a.place_robot : a.pick_robot;
      const auto* op = std::get_if<PickPlaceSlot>(&step.slots[other.value]);
      if (!op || op->action != a || !(op->placement == pp->placement)) {
        throw PlanStructureError(fmt::format(
            "{}: handover of '{}' must occupy both robots with the same action", step_path,
            scene.object(a.object).name));
      }
    }
    plan.steps.push_back(std::move(step));
  }
  if (doc.contains("makespan") && integer(doc["makespan"], "makespan") != plan.makespan()) {
    throw PlanStructureError("makespan does not match the number of steps");
  }
  if (doc.contains("motion_cost") &&
      integer(doc["motion_cost"], "motion_cost") != plan.motion_cost()) {
    throw PlanStructureError("motion_cost does not match the moved objects");
  }
  return plan;
}

std::string plan_to_json(const Plan& plan, const Scene& scene) {
  json steps = json::array();
  for (const auto& step : plan.steps) {
    json records = json::array();
    for (size_t r = 0; r < step.slots.size(); ++r) {
      const auto& robot = scene.robots.at(r).name;
      const auto* pp = std::get_if<PickPlaceSlot>(&step.slots[r]);
      if (!pp) {
        records.push_back({{"robot", robot}, {"kind", "wait"}});
        continue;
      }
      const auto& a = pp->action;
      records.push_back({{"robot", robot},
                         {"kind", "pick_place"},
                         {"object", scene.object(a.object).name},
                         {"region", scene.region(a.region).name},
                         {"pick_robot", scene.robot(a.pick_robot).name},
                         {"place_robot", scene.robot(a.place_robot).name},
                         {"pick_grasp", a.pick_grasp},
                         {"place_grasp", a.place_grasp},
                         {"placement", pose_json(pp->placement)},
                         {"pick_traj", trajectory_json(pp->pick_traj)},
                         {"place_traj", trajectory_json(pp->place_traj)}});
    }
    steps.push_back(std::move(records));
  }
  json doc{{"steps", steps}, {"makespan", plan.makespan()}, {"motion_cost", plan.motion_cost()}};
  return doc.dump(2) + "\n";
}

}  // namespace mrtamp
