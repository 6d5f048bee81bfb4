#include "mrtamp/predicates.hpp"

#include <stdexcept>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "mrtamp/manipulation.hpp"

namespace mrtamp {

namespace {

constexpr int kGridSide = 5;

struct RobotFacts {
  std::set<PickOcclusion> occludes_pick;
  std::set<PlaceOcclusion> occludes_goal_place;
  std::set<PickFact> reachable_pick;
  std::set<PlaceFact> reachable_place;
  std::map<PickFact, Corridor> pick_corridors;
  std::map<PlaceFact, PlaceWitness> place_witnesses;
};

bool hits_fixed(const Scene& scene, const Volume& v) {
  for (const auto& f : scene.fixed) {
    if (collides(v, f.placed())) return true;
  }
  return false;
}

std::set<ObjectId> movable_hits(const Scene& scene, ObjectId self, const std::vector<Volume>& vols) {
  std::set<ObjectId> out;
  for (int o = 0; o < scene.num_objects(); ++o) {
    if (o == self.value) continue;
    const Placed p = scene.movables[o].placed();
    for (const auto& v : vols) {
      if (collides(v, p)) {
        out.insert(ObjectId{o});
        break;
      }
    }
  }
  return out;
}

RobotFacts facts_for_robot(const Scene& scene, RobotId robot) {
  RobotFacts out;
  for (const ObjectId m : scene.object_ids()) {
    const Vec2 at = scene.object(m).pose.position();
    for (int g = 0; g < scene.grasp_count; ++g) {
      // Pick: one straight corridor per grasp; anything movable on it occludes.
      const PickFact pf{m, g, robot};
      const Corridor pc = pick_corridor(scene, robot, m, at, g);
      if (pick_in_reach(scene, robot, m, at, g) && !hits_fixed(scene, pc)) {
        out.reachable_pick.insert(pf);
        out.pick_corridors.emplace(pf, pc);
        for (const ObjectId o : movable_hits(scene, m, {pc})) out.occludes_pick.insert({o, pf});
      }

      // Place: first candidate clear of movables, else fewest occluders.
      const auto goal = scene.goal_region(m);
      for (int re = 0; re < static_cast<int>(scene.regions.size()); ++re) {
        const RegionId region{re};
        const PlaceFact lf{m, region, g, robot};
        const bool goal_pair = goal && *goal == region;
        std::optional<PlaceWitness> best;
        std::set<ObjectId> best_occ;
        for (const Pose& q : place_candidates(scene, m, region)) {
          if (!place_in_reach(scene, robot, m, q.position(), g)) continue;
          const Placed footprint = scene.object(m).placed_at(q);
          if (hits_fixed(scene, footprint)) continue;
          const Corridor cc = carry_corridor(scene, robot, m, q.position());
          if (hits_fixed(scene, cc)) continue;
          if (!goal_pair) {
            best = PlaceWitness{q, cc};
            break;
          }
          auto occ = movable_hits(scene, m, {cc, footprint});
          if (!best || occ.size() < best_occ.size()) {
            best = PlaceWitness{q, cc};
            best_occ = std::move(occ);
            if (best_occ.empty()) break;
          }
        }
        if (!best) continue;
        out.reachable_place.insert(lf);
        out.place_witnesses.emplace(lf, *best);
        for (const ObjectId o : best_occ) out.occludes_goal_place.insert({o, lf});
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Pose> place_candidates(const Scene& scene, ObjectId object, RegionId region) {
  const auto& m = scene.object(object);
  const auto& rect = scene.region(region).rect;
  const Vec2 c = rect.center();
  std::vector<Pose> out{Pose(c.x, c.y, m.pose.theta)};
  const AxisRect ext = bounds(Placed{m.shape, Pose(0.0, 0.0, m.pose.theta)});
  const double lo_x = rect.min.x - ext.min.x, hi_x = rect.max.x - ext.max.x;
  const double lo_y = rect.min.y - ext.min.y, hi_y = rect.max.y - ext.max.y;
  if (lo_x > hi_x || lo_y > hi_y) return out;
  for (int j = 0; j < kGridSide; ++j) {
    const double y = lo_y + (hi_y - lo_y) * j / (kGridSide - 1);
    for (int i = 0; i < kGridSide; ++i) {
      const double x = lo_x + (hi_x - lo_x) * i / (kGridSide - 1);
      out.emplace_back(x, y, m.pose.theta);
    }
  }
  return out;
}

FactSet compute_facts(const Scene& scene) {
  std::vector<RobotFacts> per_robot(scene.num_robots());
  {
    std::vector<std::jthread> workers;
    for (const RobotId r : scene.robot_ids()) {
      workers.emplace_back([&scene, &per_robot, r] { per_robot[r.value] = facts_for_robot(scene, r); });
    }
  }
  FactSet facts;
  for (auto& rf : per_robot) {
    facts.occludes_pick.merge(rf.occludes_pick);
    facts.occludes_goal_place.merge(rf.occludes_goal_place);
    facts.reachable_pick.merge(rf.reachable_pick);
    facts.reachable_place.merge(rf.reachable_place);
    facts.pick_corridors.merge(rf.pick_corridors);
    facts.place_witnesses.merge(rf.place_witnesses);
  }

  for (const auto& g : scene.goal) {
    const ObjectId m = g.object;
    const double rho = bounding_radius(scene.object(m).shape);
    for (const RobotId r1 : scene.robot_ids()) {
      for (const RobotId r2 : scene.robot_ids()) {
        if (r1 == r2) continue;
        const Vec2 h = scene.handover_point(r1, r2);
        const auto& a = scene.robot(r1);
        const auto& b = scene.robot(r2);
        if (!a.reaches(h) || !b.reaches(h)) continue;
        const Corridor give = swept_corridor(a.base, h, a.gripper_width + 2.0 * rho);
        const Corridor receive = swept_corridor(b.base, h, b.gripper_width + 2.0 * rho);
        if (hits_fixed(scene, give) || hits_fixed(scene, receive)) continue;
        if (!exchange_legs_clear(give, receive, h, scene.handover_radius(r1, r2))) continue;
        for (int g1 = 0; g1 < scene.grasp_count; ++g1) {
          for (int g2 = 0; g2 < scene.grasp_count; ++g2) {
            facts.enable_goal_handover.insert({m, g1, g2, r1, r2});
          }
        }
      }
    }
  }
  return facts;
}

Blockers occluders_of(const FactSet& facts, const Scene& scene, const PartiallyGroundedAction& a) {
  if (!facts.has_pick(a.object, a.pick_grasp, a.pick_robot) ||
      !facts.has_place(a.object, a.region, a.place_grasp, a.place_robot)) {
    throw std::out_of_range(
        fmt::format("no reachability facts for an action on '{}'", scene.object(a.object).name));
  }
  Blockers out;
  const PickFact pf{a.object, a.pick_grasp, a.pick_robot};
  for (const auto& occ : facts.occludes_pick) {
    if (occ.pick == pf) out.pick.insert(occ.occluder);
  }
  const auto goal = scene.goal_region(a.object);
  if (goal && *goal == a.region) {
    const PlaceFact lf{a.object, a.region, a.place_grasp, a.place_robot};
    for (const auto& occ : facts.occludes_goal_place) {
      if (occ.place == lf) out.place.insert(occ.occluder);
    }
  }
  return out;
}

std::string facts_to_json(const FactSet& facts, const Scene& scene) {
  using nlohmann::json;
  auto obj = [&](ObjectId m) { return scene.object(m).name; };
  auto rob = [&](RobotId r) { return scene.robot(r).name; };
  auto reg = [&](RegionId r) { return scene.region(r).name; };
  json out = json::array();
  for (const auto& f : facts.enable_goal_handover) {
    out.push_back({{"predicate", "EnableGoalHandover"}, {"object", obj(f.object)},
                   {"pick_grasp", f.pick_grasp}, {"place_grasp", f.place_grasp},
                   {"pick_robot", rob(f.pick_robot)}, {"place_robot", rob(f.place_robot)}});
  }
  for (const auto& f : facts.occludes_goal_place) {
    out.push_back({{"predicate", "OccludesGoalPlace"}, {"occluder", obj(f.occluder)},
                   {"object", obj(f.place.object)}, {"region", reg(f.place.region)},
                   {"grasp", f.place.grasp}, {"robot", rob(f.place.robot)}});
  }
  for (const auto& f : facts.occludes_pick) {
    out.push_back({{"predicate", "OccludesPick"}, {"occluder", obj(f.occluder)},
                   {"object", obj(f.pick.object)}, {"grasp", f.pick.grasp},
                   {"robot", rob(f.pick.robot)}});
  }
  for (const auto& f : facts.reachable_pick) {
    out.push_back({{"predicate", "ReachablePick"}, {"object", obj(f.object)}, {"grasp", f.grasp},
                   {"robot", rob(f.robot)}});
  }
  for (const auto& f : facts.reachable_place) {
    out.push_back({{"predicate", "ReachablePlace"}, {"object", obj(f.object)},
                   {"region", reg(f.region)}, {"grasp", f.grasp}, {"robot", rob(f.robot)}});
  }
  return out.dump(1) + "\n";
}

}  // namespace mrtamp
