#include "mrtamp/grounding.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace mrtamp {

namespace {

Placed footprint(const Scene& scene, const ActionMotion& m) {
  return scene.object(m.action.object).placed_at(m.placement);
}

bool clear_of(const Volume& v, const std::vector<Obstacle>& obstacles, ObjectId own) {
  for (const auto& o : obstacles) {
    if (o.owner == own.value) continue;
    if (collides(v, o.solid)) return false;
  }
  return true;
}

// Same-step motions must not touch each other's corridors or placements.
bool motions_clear(const Scene& scene, const ActionMotion& a, const ActionMotion& b) {
  const auto ca = a.corridors();
  const auto cb = b.corridors();
  const Placed fa = footprint(scene, a);
  const Placed fb = footprint(scene, b);
  if (collides(fa, fb)) return false;
  for (const auto& c : ca) {
    if (collides(c, fb)) return false;
    for (const auto& d : cb) {
      if (collides(c, d)) return false;
    }
  }
  for (const auto& d : cb) {
    if (collides(d, fa)) return false;
  }
  return true;
}

// The corridor that ends at the placement.
const Corridor& placing_corridor(const ActionMotion& m) {
  return m.slots.back().second.place_traj.swept.front();
}

std::vector<Obstacle> obstacles_for(const Scene& scene, const std::set<ObjectId>& movables) {
  std::vector<Obstacle> out;
  for (const auto& f : scene.fixed) out.push_back({-1, f.placed()});
  for (const ObjectId m : movables) out.push_back({m.value, scene.object(m).placed()});
  return out;
}

GroundedJointAction to_joint_action(const Scene& scene, const std::vector<ActionMotion>& motions) {
  GroundedJointAction step;
  step.slots.assign(scene.num_robots(), WaitSlot{});
  for (const auto& m : motions) {
    for (const auto& [robot, slot] : m.slots) step.slots[robot.value] = slot;
  }
  return step;
}

}  // namespace

std::vector<Volume> occupied_volumes(const Scene& scene, const std::vector<GroundedJointAction>& steps) {
  std::vector<Volume> out;
  for (const auto& step : steps) {
    for (size_t r = 0; r < step.slots.size(); ++r) {
      const auto* pp = std::get_if<PickPlaceSlot>(&step.slots[r]);
      if (!pp) continue;
      for (const auto& c : pp->pick_traj.swept) out.emplace_back(c);
      for (const auto& c : pp->place_traj.swept) out.emplace_back(c);
      if (pp->action.pick_robot.value == static_cast<int>(r)) {
        out.emplace_back(scene.object(pp->action.object).placed_at(pp->placement));
      }
    }
  }
  return out;
}

GroundingContext make_context(const Scene& scene, const std::vector<GroundedJointAction>& s_fut,
                              const TaskSkeleton& skeleton) {
  GroundingContext ctx;
  ctx.s_fut = s_fut;
  for (const auto& step : s_fut) {
    const auto moved = step.moved_objects();
    ctx.m_fut.insert(moved.begin(), moved.end());
  }
  ctx.v_fut = occupied_volumes(scene, s_fut);
  const auto sk_objects = skeleton.moved_objects();
  for (const ObjectId m : scene.object_ids()) {
    if (!ctx.m_fut.contains(m) && !sk_objects.contains(m)) ctx.m_out.insert(m);
  }
  return ctx;
}

std::optional<std::vector<ActionMotion>> find_placements(
    const std::vector<PartiallyGroundedAction>& actions, const std::vector<Obstacle>& obstacles,
    const std::vector<Volume>& occupied, const Scene& scene, std::mt19937_64& rng,
    const GroundingConfig& cfg) {
  for (int restart = 0; restart < cfg.placement_restarts; ++restart) {
    std::vector<ActionMotion> placed;
    for (const auto& a : actions) {
      const auto& obj = scene.object(a.object);
      std::vector<Volume> forbidden(occupied);
      for (const auto& o : obstacles) {
        if (o.owner != a.object.value) forbidden.emplace_back(o.solid);
      }
      for (const auto& p : placed) forbidden.emplace_back(footprint(scene, p));
      std::optional<ActionMotion> accepted;
      for (int attempt = 0; attempt < cfg.placement_attempts && !accepted; ++attempt) {
        const auto pose = sample_placement(scene.region(a.region).rect, obj.shape, forbidden, rng, 1);
        if (!pose) continue;
        ActionMotion motion = build_motion(scene, a, obj.pose, *pose);
        if (!motion_in_reach(scene, motion)) continue;
        if (!clear_of(placing_corridor(motion), obstacles, a.object)) continue;
        bool ok = true;
        for (const auto& p : placed) ok = ok && motions_clear(scene, motion, p);
        if (ok) accepted = std::move(motion);
      }
      if (!accepted) break;
      placed.push_back(std::move(*accepted));
    }
    if (placed.size() == actions.size()) return placed;
  }
  return std::nullopt;
}

std::optional<GroundedJointAction> find_trajectories(const std::vector<ActionMotion>& motions,
                                                     const std::vector<Obstacle>& obstacles,
                                                     const Scene& scene) {
  for (size_t i = 0; i < motions.size(); ++i) {
    const auto& m = motions[i];
    for (const auto& c : m.corridors()) {
      if (!clear_of(c, obstacles, m.action.object)) return std::nullopt;
    }
    if (m.action.is_handover()) {
      const auto [give, receive] = exchange_legs(m);
      const Vec2 h = scene.handover_point(m.action.pick_robot, m.action.place_robot);
      if (!exchange_legs_clear(give, receive, h,
                               scene.handover_radius(m.action.pick_robot, m.action.place_robot))) {
        return std::nullopt;
      }
    }
    for (size_t j = i + 1; j < motions.size(); ++j) {
      if (!motions_clear(scene, m, motions[j])) return std::nullopt;
    }
  }
  return to_joint_action(scene, motions);
}

std::set<ObjectId> conflict_set(const Scene& scene, const std::vector<GroundedJointAction>& steps) {
  std::set<ObjectId> moved;
  for (const auto& s : steps) {
    const auto m = s.moved_objects();
    moved.insert(m.begin(), m.end());
  }
  std::set<ObjectId> out;
  for (const auto& g : scene.goal) {
    if (!moved.contains(g.object) && !scene.goal_satisfied_initially(g.object)) out.insert(g.object);
  }
  const auto volumes = occupied_volumes(scene, steps);
  for (const ObjectId m : scene.object_ids()) {
    if (moved.contains(m)) continue;
    const Placed p = scene.object(m).placed();
    for (const auto& v : volumes) {
      if (collides(v, p)) {
        out.insert(m);
        break;
      }
    }
  }
  return out;
}

GroundingOutcome ground(const TaskSkeleton& skeleton, const GroundingContext& ctx,
                        const Scene& scene, std::mt19937_64& rng, const GroundingConfig& cfg) {
  for (const auto& step : skeleton.steps) {
    for (const auto& a : step) {
      if (a.object.value < 0 || a.object.value >= scene.num_objects() || a.region.value < 0 ||
          a.region.value >= static_cast<int>(scene.regions.size()) || a.pick_robot.value < 0 ||
          a.pick_robot.value >= scene.num_robots() || a.place_robot.value < 0 ||
          a.place_robot.value >= scene.num_robots()) {
        throw std::invalid_argument("skeleton references an unknown entity");
      }
      if (ctx.m_fut.contains(a.object)) {
        throw std::invalid_argument(fmt::format("skeleton moves '{}' which is already moved later",
                                                scene.object(a.object).name));
      }
    }
  }

  std::vector<GroundedJointAction> s_fut = ctx.s_fut;
  std::set<ObjectId> m_fut = ctx.m_fut;
  std::vector<Volume> v_fut = ctx.v_fut;

  // Relaxed success: stop here and report what must be cleared first.
  auto partial = [&](const GroundedJointAction& joint) {
    s_fut.insert(s_fut.begin(), joint);
    GroundingOutcome out;
    out.conflicts = conflict_set(scene, s_fut);
    out.kind = out.conflicts.empty() ? OutcomeKind::kFull : OutcomeKind::kPartial;
    out.steps = std::move(s_fut);
    return out;
  };

  for (int t = skeleton.length() - 1; t >= 0; --t) {
    const auto& actions = skeleton.steps[t];
    std::set<ObjectId> m_t;
    for (const auto& a : actions) m_t.insert(a.object);

    std::set<ObjectId> relaxed_set(m_fut);
    relaxed_set.insert(m_t.begin(), m_t.end());
    std::set<ObjectId> strict_set(relaxed_set);
    strict_set.insert(ctx.m_out.begin(), ctx.m_out.end());
    const auto strict_obs = obstacles_for(scene, strict_set);
    const auto relaxed_obs = obstacles_for(scene, relaxed_set);

    auto motions = find_placements(actions, strict_obs, v_fut, scene, rng, cfg);
    if (!motions) {
      motions = find_placements(actions, relaxed_obs, v_fut, scene, rng, cfg);
      if (!motions) return {};
      const auto joint = find_trajectories(*motions, relaxed_obs, scene);
      if (!joint) return {};
      return partial(*joint);
    }
    auto joint = find_trajectories(*motions, strict_obs, scene);
    if (!joint) {
      joint = find_trajectories(*motions, relaxed_obs, scene);
      if (!joint) return {};
      return partial(*joint);
    }
    m_fut.insert(m_t.begin(), m_t.end());
    s_fut.insert(s_fut.begin(), *joint);
    const auto added = occupied_volumes(scene, {*joint});
    v_fut.insert(v_fut.end(), added.begin(), added.end());
  }
  GroundingOutcome out;
  out.kind = OutcomeKind::kFull;
  out.steps = std::move(s_fut);
  return out;
}

}  // namespace mrtamp
