#include <doctest.h>

#include <string>

#include <json.hpp>

#include "mrtamp/manipulation.hpp"
#include "mrtamp/plan_io.hpp"
#include "mrtamp/validator.hpp"
#include "support.hpp"

using namespace mrtamp;
using testing::direct;
using testing::make_step;

namespace {

ActionMotion motion(const Scene& s, const PartiallyGroundedAction& a, double x, double y) {
  return build_motion(s, a, s.object(a.object).pose, Pose(x, y));
}

PartiallyGroundedAction handover(const Scene& s, const std::string& object, const std::string& region,
                                 const std::string& from, const std::string& to) {
  return {s.object_id(object), s.region_id(region), s.robot_id(from), s.robot_id(to), 0, 0};
}

}  // namespace

TEST_CASE("a direct move into the goal region is valid") {
  const Scene s = testing::fixture("bench/01_unobstructed.json");
  const Plan p{{make_step(s, {motion(s, direct(s, "M1", "G", "R1"), 0.8, 0.4)})}};
  const auto report = validate_plan(s, p);
  CHECK(report.ok());
  CHECK(p.makespan() == 1);
  CHECK(p.motion_cost() == 1);
  CHECK(nlohmann::json::parse(report.to_json()).is_object());
}

TEST_CASE("empty plan is valid only when every goal already holds") {
  CHECK(validate_plan(testing::fixture("bench/08_satisfied.json"), Plan{}).ok());
  const auto report = validate_plan(testing::fixture("bench/01_unobstructed.json"), Plan{});
  CHECK_FALSE(report.passed(condition::kGoal));
  CHECK(report.passed(condition::kMotion));
}

TEST_CASE("moving an object twice breaks monotonicity") {
  const Scene s = testing::fixture("bench/01_unobstructed.json");
  const auto first = motion(s, direct(s, "M1", "G", "R1"), 0.8, 0.4);
  const auto second = build_motion(s, direct(s, "M1", "G", "R1"), Pose(0.8, 0.4), Pose(0.7, 0.3));
  const Plan p{{make_step(s, {first}), make_step(s, {second})}};
  const auto report = validate_plan(s, p);
  CHECK_FALSE(report.passed(condition::kMonotone));
  bool found = false;
  for (const auto& v : report.violations) {
    if (v.condition == condition::kMonotone) {
      CHECK(v.step == 1);
      CHECK(v.message.find("M1") != std::string::npos);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("placement conditions") {
  SUBCASE("two objects placed on the same spot in one step") {
    const Scene s = testing::fixture("bench/05_two_goal_parallel.json");
    const Plan p{{make_step(s, {motion(s, direct(s, "A", "GA", "R1"), 0.2, -0.7),
                                motion(s, direct(s, "B", "GA", "R2"), 0.2, -0.7)})}};
    CHECK_FALSE(validate_plan(s, p).passed(condition::kPlacement));
  }
  SUBCASE("placement outside the target region") {
    const Scene s = testing::fixture("bench/01_unobstructed.json");
    const Plan p{{make_step(s, {motion(s, direct(s, "M1", "G", "R1"), 1.1, 0.4)})}};
    const auto report = validate_plan(s, p);
    CHECK_FALSE(report.passed(condition::kPlacement));
    CHECK_FALSE(report.passed(condition::kGoal));
  }
  SUBCASE("two objects into two regions in parallel") {
    const Scene s = testing::fixture("bench/05_two_goal_parallel.json");
    const Plan p{{make_step(s, {motion(s, direct(s, "A", "GA", "R1"), 0.2, -0.7),
                                motion(s, direct(s, "B", "GB", "R2"), 0.8, -0.7)})}};
    CHECK(validate_plan(s, p).ok());
  }
}

TEST_CASE("motion conditions") {
  SUBCASE("goal out of reach for a single robot") {
    const Scene s = testing::fixture("bench/04_handover.json");
    const Plan p{{make_step(s, {motion(s, direct(s, "M1", "G", "R1"), 1.7, 0.4)})}};
    CHECK_FALSE(validate_plan(s, p).passed(condition::kMotion));
  }
  SUBCASE("handover between two robots") {
    const Scene s = testing::fixture("bench/04_handover.json");
    const Plan p{{make_step(s, {motion(s, handover(s, "M1", "G", "R1", "R2"), 1.7, 0.4)})}};
    CHECK(validate_plan(s, p).ok());
  }
  SUBCASE("an object on the pick corridor") {
    const Scene s = testing::fixture("bench/02_pick_chain.json");
    const Plan p{{make_step(s, {motion(s, handover(s, "M1", "G", "R1", "R2"), 1.7, 0.4)})}};
    const auto report = validate_plan(s, p);
    CHECK_FALSE(report.passed(condition::kMotion));
    bool names_blocker = false;
    for (const auto& v : report.violations) {
      names_blocker = names_blocker || v.message.find("M4") != std::string::npos;
    }
    CHECK(names_blocker);
  }
}

TEST_CASE("plans survive a JSON round trip") {
  const Scene s = testing::fixture("bench/04_handover.json");
  const Plan p{{make_step(s, {motion(s, handover(s, "M1", "G", "R1", "R2"), 1.7, 0.4)})}};
  const std::string text = plan_to_json(p, s);
  const Plan back = load_plan(text, s);
  CHECK(plan_to_json(back, s) == text);
  CHECK(validate_plan(s, back).ok());
}

TEST_CASE("structural errors") {
  const Scene s = testing::fixture("bench/04_handover.json");
  const Plan good{{make_step(s, {motion(s, handover(s, "M1", "G", "R1", "R2"), 1.7, 0.4)})}};

  SUBCASE("a step missing a robot slot") {
    Plan bad = good;
    bad.steps[0].slots.pop_back();
    CHECK_THROWS_AS(validate_plan(s, bad), PlanStructureError);
  }
  SUBCASE("makespan disagreeing with the steps") {
    auto doc = nlohmann::json::parse(plan_to_json(good, s));
    doc["makespan"] = 2;
    CHECK_THROWS_AS(load_plan(doc.dump(), s), PlanStructureError);
  }
  SUBCASE("unknown object name") {
    auto doc = nlohmann::json::parse(plan_to_json(good, s));
    doc["steps"][0][0]["object"] = "M9";
    CHECK_THROWS_AS(load_plan(doc.dump(), s), PlanStructureError);
  }
  SUBCASE("syntax error") {
    CHECK_THROWS_AS(load_plan("{\"steps\": [", s), SchemaError);
  }
}
