#include <doctest.h>

#include <random>
#include <stdexcept>

#include <json.hpp>

#include "mrtamp/grounding.hpp"
#include "mrtamp/plan_io.hpp"
#include "mrtamp/scene_io.hpp"
#include "mrtamp/validator.hpp"
#include "support.hpp"

using namespace mrtamp;

namespace {

PartiallyGroundedAction handover(const Scene& s, const std::string& object, const std::string& region,
                                 const std::string& from, const std::string& to) {
  return {s.object_id(object), s.region_id(region), s.robot_id(from), s.robot_id(to), 0, 0};
}

GroundingOutcome run(const Scene& s, const TaskSkeleton& sk, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  return ground(sk, make_context(s, {}, sk), s, rng, {});
}

}  // namespace

TEST_CASE("an unobstructed move grounds fully") {
  const Scene s = testing::fixture("bench/01_unobstructed.json");
  const TaskSkeleton sk{{{testing::direct(s, "M1", "G", "R1")}}};
  const GroundingOutcome out = run(s, sk);
  REQUIRE(out.kind == OutcomeKind::kFull);
  REQUIRE(out.steps.size() == 1);
  CHECK(out.conflicts.empty());
  CHECK(validate_plan(s, Plan{out.steps}).ok());
}

TEST_CASE("an object on a handover leg makes the outcome partial") {
  const Scene s = testing::fixture("scenes/conflict.json");
  const TaskSkeleton sk{{{handover(s, "M1", "G", "R1", "R2")}}};
  const GroundingOutcome out = run(s, sk);
  REQUIRE(out.kind == OutcomeKind::kPartial);
  CHECK(out.conflicts == std::set<ObjectId>{s.object_id("M5")});
  REQUIRE(out.steps.size() == 1);
  CHECK(conflict_set(s, out.steps) == out.conflicts);
}

TEST_CASE("a goal region covered by a fixed obstacle fails") {
  auto doc = nlohmann::json::parse(testing::read_file(testing::data_path("bench/01_unobstructed.json")));
  doc["fixed"] = nlohmann::json::array(
      {{{"name", "lid"},
        {"shape", {{"type", "rectangle"}, {"half_w", 0.25}, {"half_h", 0.25}}},
        {"pose", {{"x", 0.8}, {"y", 0.4}}}}});
  const Scene s = load_scene(doc.dump());
  const TaskSkeleton sk{{{testing::direct(s, "M1", "G", "R1")}}};
  const GroundingOutcome out = run(s, sk);
  CHECK(out.kind == OutcomeKind::kFailure);
  CHECK(out.steps.empty());
}

TEST_CASE("grounding is deterministic for a seed") {
  const Scene s = testing::fixture("bench/05_two_goal_parallel.json");
  const TaskSkeleton sk{{{testing::direct(s, "A", "GA", "R1"), testing::direct(s, "B", "GB", "R2")}}};
  const GroundingOutcome a = run(s, sk, 17);
  const GroundingOutcome b = run(s, sk, 17);
  REQUIRE(a.kind == OutcomeKind::kFull);
  REQUIRE(b.kind == OutcomeKind::kFull);
  CHECK(plan_to_json(Plan{a.steps}, s) == plan_to_json(Plan{b.steps}, s));
  CHECK(validate_plan(s, Plan{a.steps}).ok());
}

TEST_CASE("context and occupied volumes") {
  const Scene s = testing::fixture("bench/05_two_goal_parallel.json");
  const TaskSkeleton later{{{testing::direct(s, "B", "GB", "R2")}}};
  const GroundingOutcome fut = run(s, later);
  REQUIRE(fut.kind == OutcomeKind::kFull);
  REQUIRE(fut.steps.size() == 1);
  // Skeletons are expected to cover the goal; the remaining goal object shows
  // up only when asking for conflicts directly.
  CHECK(conflict_set(s, fut.steps) == std::set<ObjectId>{s.object_id("A")});

  const TaskSkeleton first{{{testing::direct(s, "A", "GA", "R1")}}};
  const GroundingContext ctx = make_context(s, fut.steps, first);
  CHECK(ctx.m_fut == std::set<ObjectId>{s.object_id("B")});
  CHECK(ctx.m_out.empty());
  const auto volumes = occupied_volumes(s, fut.steps);
  CHECK(ctx.v_fut.size() == volumes.size());
  // One pick corridor, one carry corridor and one footprint.
  CHECK(volumes.size() == 3);

  std::mt19937_64 rng(3);
  const GroundingOutcome out = ground(first, ctx, s, rng, {});
  REQUIRE(out.kind == OutcomeKind::kFull);
  CHECK(out.steps.size() == 2);
  CHECK(validate_plan(s, Plan{out.steps}).ok());

  CHECK_THROWS_AS(ground(later, make_context(s, fut.steps, first), s, rng, {}), std::invalid_argument);
}

TEST_CASE("trajectories of a step must be mutually clear") {
  const Scene s = testing::fixture("bench/05_two_goal_parallel.json");
  const auto a = build_motion(s, testing::direct(s, "A", "GA", "R1"), s.object(s.object_id("A")).pose,
                              Pose(0.2, -0.7));
  const auto b_clear = build_motion(s, testing::direct(s, "B", "GB", "R2"),
                                    s.object(s.object_id("B")).pose, Pose(0.8, -0.7));
  const auto b_cross = build_motion(s, testing::direct(s, "B", "GA", "R2"),
                                    s.object(s.object_id("B")).pose, Pose(0.1, -0.6));
  CHECK(find_trajectories({a, b_clear}, {}, s).has_value());
  CHECK_FALSE(find_trajectories({a, b_cross}, {}, s).has_value());
}

TEST_CASE("conflict set of an empty sequence is the unsatisfied goal") {
  const Scene s = testing::fixture("bench/05_two_goal_parallel.json");
  CHECK(conflict_set(s, {}) == std::set<ObjectId>{s.object_id("A"), s.object_id("B")});
  CHECK(conflict_set(testing::fixture("bench/08_satisfied.json"), {}).empty());
}
