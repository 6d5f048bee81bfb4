#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

#include "mrtamp/mip.hpp"
#include "oracles/mip_bruteforce.hpp"
#include "support.hpp"

using namespace mrtamp;

namespace {

PartiallyGroundedAction act(int object, int robot, int place_robot = -1) {
  const RobotId r{robot};
  return {ObjectId{object}, RegionId{0}, r, RobotId{place_robot < 0 ? robot : place_robot}, 0, 0};
}

Cmtg graph(std::initializer_list<PartiallyGroundedAction> actions, std::set<int> targets) {
  Cmtg g;
  for (const auto& a : actions) {
    g.action_nodes.insert(a);
    g.object_nodes.insert(a.object);
  }
  for (const int t : targets) {
    g.targets.insert(ObjectId{t});
    g.object_nodes.insert(ObjectId{t});
  }
  return g;
}

bool has_family(const MipModel& m, const std::string& family) {
  return std::any_of(m.constraints.begin(), m.constraints.end(),
                     [&](const LinearConstraint& c) { return c.family == family; });
}

}  // namespace

TEST_CASE("single action model") {
  const Cmtg g = graph({act(0, 0)}, {0});
  const MipModel m = compile_model(g, 1);
  CHECK(m.num_vars() == 1);
  for (const char* f : {"target", "move_once", "final_capacity", "final_progress"}) {
    CHECK(has_family(m, f));
  }
  const SolveResult r = solve(m);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(r.solution->objective_value == 1);
  const TaskSkeleton sk = extract_skeleton(*r.solution, m);
  REQUIRE(sk.length() == 1);
  CHECK(sk.steps[0] == std::vector<PartiallyGroundedAction>{act(0, 0)});
}

TEST_CASE("pick blocker on the same robot needs two steps") {
  Cmtg g = graph({act(0, 0), act(1, 0)}, {0});
  g.block_pick_edges.insert({act(0, 0), ObjectId{1}});
  CHECK(solve(compile_model(g, 1)).status == SolveStatus::kInfeasible);

  const MipModel m = compile_model(g, 2);
  CHECK(m.num_vars() == 2 * (2 + 1));
  // Big-M is T + 1 on the block indicator of the first step.
  bool found = false;
  for (const auto& c : m.constraints) {
    if (c.family != "pick_precedence") continue;
    for (const auto& [v, coef] : c.terms) {
      if (v == m.block_var(1, 0)) found = found || coef == 1 - 3;
    }
  }
  CHECK(found);
  const SolveResult r = solve(m);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(r.solution->objective_value == 2);
  const TaskSkeleton sk = extract_skeleton(*r.solution, m);
  REQUIRE(sk.length() == 2);
  CHECK(sk.steps[0] == std::vector<PartiallyGroundedAction>{act(1, 0)});
  CHECK(sk.steps[1] == std::vector<PartiallyGroundedAction>{act(0, 0)});
}

TEST_CASE("precedence kinds across two robots") {
  SUBCASE("pick blocker must move strictly earlier") {
    Cmtg g = graph({act(0, 0), act(1, 1)}, {0});
    g.block_pick_edges.insert({act(0, 0), ObjectId{1}});
    CHECK(solve(compile_model(g, 1)).status == SolveStatus::kInfeasible);
    CHECK(solve(compile_model(g, 2)).status == SolveStatus::kOptimal);
  }
  SUBCASE("place blocker may move in the same step") {
    Cmtg g = graph({act(0, 0), act(1, 1)}, {0});
    g.block_place_edges.insert({act(0, 0), ObjectId{1}});
    const MipModel m = compile_model(g, 1);
    const SolveResult r = solve(m);
    REQUIRE(r.status == SolveStatus::kOptimal);
    CHECK(r.solution->objective_value == 2);
    CHECK(extract_skeleton(*r.solution, m).steps[0].size() == 2);
  }
}

TEST_CASE("two robots move two targets in one step") {
  const Cmtg g = graph({act(0, 0), act(1, 1)}, {0, 1});
  const MipModel m = compile_model(g, 1);
  const SolveResult r = solve(m);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(r.solution->objective_value == 2);
  CHECK(extract_skeleton(*r.solution, m).length() == 1);
}

TEST_CASE("variable count is horizon times edges") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const Cmtg g = testing::random_cmtg(rng);
    const std::set<BlockEdge> blocks = [&] {
      std::set<BlockEdge> out(g.block_pick_edges);
      out.insert(g.block_place_edges.begin(), g.block_place_edges.end());
      return out;
    }();
    for (int T = 1; T <= 3; ++T) {
      const MipModel m = compile_model(g, T);
      CHECK(m.num_vars() == T * static_cast<int>(g.action_edges().size() + blocks.size()));
    }
  }
}

TEST_CASE("solutions satisfy the scheduling rules") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 30; ++i) {
    const Cmtg g = testing::random_cmtg(rng, 4, 5);
    const MipModel m = compile_model(g, 2);
    const SolveResult r = solve(m);
    if (r.status != SolveStatus::kOptimal) continue;
    CHECK(m.feasible(r.solution->assignment));
    CHECK(oracle::vector_feasible(g, m, r.solution->assignment));
    CHECK(extract_skeleton(*r.solution, m).length() == 2);
  }
}

TEST_CASE("skeleton extraction rejects malformed assignments") {
  const Cmtg g = graph({act(0, 0)}, {0});
  const MipModel m = compile_model(g, 2);
  CHECK_THROWS_AS(extract_skeleton(MipSolution{{1}, 1}, m), SkeletonError);
  // Selected at step 2 but not step 1.
  CHECK_THROWS_AS(extract_skeleton(MipSolution{{0, 1}, 0}, m), SkeletonError);
  // Nothing happens at the first step.
  CHECK_THROWS_AS(extract_skeleton(MipSolution{{0, 0}, 0}, m), SkeletonError);
  CHECK_THROWS_AS(extract_skeleton(MipSolution{{1, 1}, 1}, m), SkeletonError);
}

TEST_CASE("skeleton enumeration") {
  SUBCASE("single action") {
    CHECK(enumerate_skeletons(graph({act(0, 0)}, {0}), 3, 10).size() == 1);
  }
  SUBCASE("either robot can move the target") {
    const auto out = enumerate_skeletons(graph({act(0, 0), act(0, 1)}, {0}), 3, 10);
    CHECK(out.size() == 2);
    CHECK(enumerate_skeletons(graph({act(0, 0), act(0, 1)}, {0}), 3, 1).size() == 1);
  }
  SUBCASE("a target without actions yields nothing") {
    CHECK(enumerate_skeletons(graph({act(1, 0)}, {0}), 3, 10).empty());
  }
  SUBCASE("reordering the same actions is not a new skeleton") {
    const auto out = enumerate_skeletons(graph({act(0, 0), act(1, 0)}, {0, 1}), 3, 10);
    CHECK(out.size() == 1);
    CHECK(out[0].length() == 2);
  }
  SUBCASE("shorter skeletons come first") {
    Cmtg g = graph({act(0, 0), act(0, 1), act(1, 1)}, {0});
    g.block_pick_edges.insert({act(0, 1), ObjectId{1}});
    const auto out = enumerate_skeletons(g, 3, 10);
    REQUIRE(out.size() == 2);
    CHECK(out[0].length() == 1);
    CHECK(out[1].length() == 2);
    CHECK(out[1].num_moved() == 2);
  }
  SUBCASE("invalid limits") {
    CHECK_THROWS_AS(enumerate_skeletons(graph({act(0, 0)}, {0}), 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(compile_model(graph({act(0, 0)}, {0}), 0), std::invalid_argument);
    CHECK_THROWS_AS(compile_model(Cmtg{}, 1), std::invalid_argument);
  }
}

TEST_CASE("node budget") {
  Cmtg g = graph({act(0, 0), act(1, 0), act(2, 1), act(1, 1)}, {0, 2});
  g.block_pick_edges.insert({act(0, 0), ObjectId{1}});
  g.block_place_edges.insert({act(2, 1), ObjectId{1}});
  const MipModel m = compile_model(g, 3);
  const SolveResult full = solve(m);
  REQUIRE(full.nodes > 1);
  CHECK(solve(m, 1).status == SolveStatus::kBudgetExceeded);
  CHECK_THROWS_AS(enumerate_skeletons(g, 3, 10, 1), MipBudgetExceeded);
}

TEST_CASE("exclusion cut forbids the exact selection") {
  const Cmtg g = graph({act(0, 0), act(0, 1)}, {0});
  MipModel m = compile_model(g, 1);
  m.add_exclusion_cut({act(0, 0)});
  const SolveResult r = solve(m);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(extract_skeleton(*r.solution, m).steps[0] == std::vector<PartiallyGroundedAction>{act(0, 1)});
  m.add_exclusion_cut({act(0, 1)});
  CHECK(solve(m).status == SolveStatus::kInfeasible);
}

TEST_CASE("LP text output") {
  Cmtg g = graph({act(0, 0), act(1, 0)}, {0});
  g.block_pick_edges.insert({act(0, 0), ObjectId{1}});
  const std::string lp = write_lp(compile_model(g, 2));
  for (const char* section : {"Minimize", "Subject To", "Binary", "End"}) {
    CHECK(lp.find(section) != std::string::npos);
  }
  CHECK(lp.find("x_1_a0") != std::string::npos);
  CHECK(lp.find("x_2_b0") != std::string::npos);
  CHECK(lp.find("pick_precedence") != std::string::npos);
  CHECK(lp == write_lp(compile_model(g, 2)));
}
