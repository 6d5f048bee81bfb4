#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrtamp/grounding.hpp"
#include "mrtamp/mip.hpp"
#include "mrtamp/plan.hpp"
#include "mrtamp/predicates.hpp"
#include "mrtamp/scene.hpp"

namespace mrtamp {

struct PlannerConfig {
  double c = 1.0;
  double alpha = 1.0;
  int t_max = 4;
  int k_max = 10;
  int max_iterations = 200;
  double time_budget = 60.0;  // seconds
  std::uint64_t seed = 0;
  bool exhaust = false;
  long node_budget = kDefaultNodeBudget;
  GroundingConfig grounding;
};

struct SearchNode {
  std::vector<GroundedJointAction> stored;
  int visits = 0;
  bool terminal = false;
  std::vector<int> children;  // edge ids
};

struct SearchEdge {
  int id = 0;
  int tail = 0;
  int head = -1;
  TaskSkeleton skeleton;
  double value = 0.0;
  int visits = 0;
  double prior = 0.0;
  bool evaluated = false;
  bool pruned = false;
  /// Evaluated and nothing selectable remains below it.
  bool exhausted = false;

  bool selectable() const { return !pruned && !exhausted; }
};

struct SearchTree {
  std::vector<SearchNode> nodes;
  std::vector<SearchEdge> edges;

  /// Adds an edge below `node` with prior 1 / |moved objects|.
  int add_edge(int node, TaskSkeleton skeleton);
};

double ucb(const SearchNode& node, const SearchEdge& edge, double c);

/// Reward of an evaluation. `new_skeletons` is only read for Partial.
double reward(const GroundingOutcome& outcome, const std::vector<TaskSkeleton>& new_skeletons,
              double alpha);

/// Max-UCB selectable child edge of `node` (first on ties), or -1.
int select_edge(const SearchTree& tree, int node, double c);

/// Adds r to every edge of the root-to-leaf edge path and one visit to each
/// edge and to every node it touches, the final head node included.
void backpropagate(SearchTree& tree, const std::vector<int>& path, double r);

enum class NoPlanReason { kNoInitialSkeletons, kAllBranchesPruned, kBudgetExhausted };

std::string to_string(NoPlanReason reason);

struct SearchReport {
  int iterations = 0;
  int nodes = 0;
  int edges = 0;
  int full = 0;
  int partial = 0;
  int failures = 0;
  int dead_ends = 0;         // Partial outcomes without new skeletons
  int mip_budget_hits = 0;
  double seconds = 0.0;
  std::optional<NoPlanReason> no_plan;

  std::string to_json() const;
};

struct PlanResult {
  std::optional<Plan> plan;
  SearchReport report;
  std::vector<std::string> trace;  // one line per iteration
};

/// Phase 1 facts, root skeletons for the unsatisfied goal objects, then MCTS
/// over skeleton edges until a plan is found or the budget runs out. Throws
/// std::invalid_argument for an empty goal and std::logic_error if a plan
/// fails validation.
PlanResult plan(const Scene& scene, const PlannerConfig& cfg);

/// Goal objects not already inside their goal region.
std::set<ObjectId> unsatisfied_goal_objects(const Scene& scene);

}  // namespace mrtamp
