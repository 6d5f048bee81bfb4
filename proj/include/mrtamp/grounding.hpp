#pragma once

#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "mrtamp/manipulation.hpp"
#include "mrtamp/mip.hpp"
#include "mrtamp/plan.hpp"
#include "mrtamp/scene.hpp"

namespace mrtamp {

/// Already grounded future steps and what they occupy.
struct GroundingContext {
  std::vector<GroundedJointAction> s_fut;
  std::set<ObjectId> m_fut;
  std::vector<Volume> v_fut;
  std::set<ObjectId> m_out;
};

/// Context for grounding `skeleton` in front of `s_fut`: moved objects and
/// occupied volumes of s_fut, and every other movable as M_out.
GroundingContext make_context(const Scene& scene, const std::vector<GroundedJointAction>& s_fut,
                              const TaskSkeleton& skeleton);

/// Corridors and placement footprints of grounded steps.
std::vector<Volume> occupied_volumes(const Scene& scene, const std::vector<GroundedJointAction>& steps);

struct GroundingConfig {
  int placement_attempts = 100;
  int placement_restarts = 10;
};

enum class OutcomeKind { kFull, kPartial, kFailure };

struct GroundingOutcome {
  OutcomeKind kind = OutcomeKind::kFailure;
  /// Full: the whole grounded sequence. Partial: S', the grounded suffix in
  /// front of the context's steps.
  std::vector<GroundedJointAction> steps;
  std::set<ObjectId> conflicts;
};

/// An obstacle solid; owner is the movable it belongs to, or -1 when fixed.
struct Obstacle {
  int owner = -1;
  Placed solid;
};

/// Jointly consistent placements (and their motions) for the actions of one
/// step, sampled in action order with per-object attempts and whole-step
/// restarts. Each placement is in reach, inside its region and clear of
/// `obstacles` (own object excepted) and `occupied`; carry corridors avoid
/// `obstacles`; the step's motions are pairwise clear.
std::optional<std::vector<ActionMotion>> find_placements(
    const std::vector<PartiallyGroundedAction>& actions, const std::vector<Obstacle>& obstacles,
    const std::vector<Volume>& occupied, const Scene& scene, std::mt19937_64& rng,
    const GroundingConfig& cfg);

/// Checks every corridor of the motions against `obstacles`, the handover
/// exchange and same-step mutual clearance. Returns the per-robot slots.
std::optional<GroundedJointAction> find_trajectories(const std::vector<ActionMotion>& motions,
                                                     const std::vector<Obstacle>& obstacles,
                                                     const Scene& scene);

/// Reverse grounding of `skeleton` in front of ctx.s_fut. Full when every
/// step grounds against all movables; the skeleton is expected to move every
/// remaining goal object. Throws
/// std::invalid_argument when the skeleton moves an object of ctx.m_fut.
GroundingOutcome ground(const TaskSkeleton& skeleton, const GroundingContext& ctx,
                        const Scene& scene, std::mt19937_64& rng, const GroundingConfig& cfg);

/// Goal objects not moved in `steps` (ignoring goals satisfied at start) and
/// unmoved movables hitting any corridor or footprint of `steps`.
std::set<ObjectId> conflict_set(const Scene& scene, const std::vector<GroundedJointAction>& steps);

}  // namespace mrtamp
