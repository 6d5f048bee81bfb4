#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>

#include "mrtamp/plan.hpp"
#include "mrtamp/scene.hpp"

namespace mrtamp {

struct PickFact {
  ObjectId object;
  int grasp = 0;
  RobotId robot;
  auto operator<=>(const PickFact&) const = default;
};

struct PlaceFact {
  ObjectId object;
  RegionId region;
  int grasp = 0;
  RobotId robot;
  auto operator<=>(const PlaceFact&) const = default;
};

struct HandoverFact {
  ObjectId object;
  int pick_grasp = 0;
  int place_grasp = 0;
  RobotId pick_robot;
  RobotId place_robot;
  auto operator<=>(const HandoverFact&) const = default;
};

struct PickOcclusion {
  ObjectId occluder;
  PickFact pick;
  auto operator<=>(const PickOcclusion&) const = default;
};

struct PlaceOcclusion {
  ObjectId occluder;
  PlaceFact place;
  auto operator<=>(const PlaceOcclusion&) const = default;
};

/// Corridor chosen for a place fact together with the candidate pose that
/// certified it.
struct PlaceWitness {
  Pose pose;
  Corridor corridor;
};

struct FactSet {
  std::set<PickOcclusion> occludes_pick;
  std::set<PlaceOcclusion> occludes_goal_place;
  std::set<PickFact> reachable_pick;
  std::set<PlaceFact> reachable_place;
  std::set<HandoverFact> enable_goal_handover;
  std::map<PickFact, Corridor> pick_corridors;
  std::map<PlaceFact, PlaceWitness> place_witnesses;

  bool has_pick(ObjectId m, int g, RobotId r) const { return reachable_pick.contains({m, g, r}); }
  bool has_place(ObjectId m, RegionId re, int g, RobotId r) const {
    return reachable_place.contains({m, re, g, r});
  }
  bool has_handover(ObjectId m, int g1, int g2, RobotId r1, RobotId r2) const {
    return enable_goal_handover.contains({m, g1, g2, r1, r2});
  }
  size_t size() const {
    return occludes_pick.size() + occludes_goal_place.size() + reachable_pick.size() +
           reachable_place.size() + enable_goal_handover.size();
  }
};

/// Evaluates every predicate instance of the scene. Per-robot facts are
/// computed on one thread per robot.
FactSet compute_facts(const Scene& scene);

/// Candidate placement poses used to certify a place fact: region center,
/// then a 5x5 grid inset by the object's extent, row-major.
std::vector<Pose> place_candidates(const Scene& scene, ObjectId object, RegionId region);

struct Blockers {
  std::set<ObjectId> pick;
  std::set<ObjectId> place;
};

/// Pick and goal-place occluders of an action. Throws std::out_of_range when
/// the action is not backed by reachability facts.
Blockers occluders_of(const FactSet& facts, const Scene& scene, const PartiallyGroundedAction& action);

/// Sorted JSON array of all facts, one object per fact.
std::string facts_to_json(const FactSet& facts, const Scene& scene);

}  // namespace mrtamp
