#pragma once

// 0-1 program selecting which actions of a task graph run at which step,
// a depth-first branch-and-bound solver for it, and skeleton enumeration.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mrtamp/cmtg.hpp"
#include "mrtamp/plan.hpp"

namespace mrtamp {

enum class Sense { kLe, kGe, kEq };

struct LinearConstraint {
  std::vector<std::pair<int, int>> terms;  // (variable, coefficient), variables unique
  Sense sense = Sense::kLe;
  int rhs = 0;
  std::string family;

  bool satisfied(const std::vector<int8_t>& x) const;
};

/// Variables X[t, e] for t in 1..T and e over action edges followed by block
/// edges; index (t - 1) * (actions + blocks) + e.
struct MipModel {
  int T = 0;
  std::vector<PartiallyGroundedAction> actions;
  std::vector<BlockEdge> blocks;   // union of block-pick and block-place edges
  std::vector<bool> block_is_pick;
  std::vector<bool> block_is_place;
  std::set<ObjectId> objects;
  std::set<ObjectId> targets;
  std::vector<LinearConstraint> constraints;
  std::vector<std::pair<int, int>> objective;

  int num_actions() const { return static_cast<int>(actions.size()); }
  int num_blocks() const { return static_cast<int>(blocks.size()); }
  int edges_per_step() const { return num_actions() + num_blocks(); }
  int num_vars() const { return T * edges_per_step(); }
  int action_var(int t, int a) const { return (t - 1) * edges_per_step() + a; }
  int block_var(int t, int b) const { return (t - 1) * edges_per_step() + num_actions() + b; }
  std::string var_name(int v) const;

  int action_index(const PartiallyGroundedAction& a) const;
  bool feasible(const std::vector<int8_t>& x) const;
  int objective_value(const std::vector<int8_t>& x) const;

  /// Forbids the exact set of actions selected at step 1 (all others off).
  void add_exclusion_cut(const std::set<PartiallyGroundedAction>& selected);
};

/// Compiles the graph at horizon T with big-M = T + 1. Throws
/// std::invalid_argument for T < 1 or a graph without object nodes.
MipModel compile_model(const Cmtg& graph, int T);

struct MipSolution {
  std::vector<int8_t> assignment;
  int objective_value = 0;
};

enum class SolveStatus { kOptimal, kInfeasible, kBudgetExceeded };

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<MipSolution> solution;
  long nodes = 0;
};

inline constexpr long kDefaultNodeBudget = 1'000'000;

/// Provably optimal solution by depth-first branch-and-bound with unit
/// propagation. Deterministic.
SolveResult solve(const MipModel& model, long node_budget = kDefaultNodeBudget);

class MipBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SkeletonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Actions per step; every step holds at least one action and no robot twice.
struct TaskSkeleton {
  std::vector<std::vector<PartiallyGroundedAction>> steps;

  int length() const { return static_cast<int>(steps.size()); }
  std::set<ObjectId> moved_objects() const;
  int num_moved() const { return static_cast<int>(moved_objects().size()); }
  std::set<PartiallyGroundedAction> actions() const;
  bool operator==(const TaskSkeleton&) const = default;
};

/// Step of an action is the number of steps its edge variable is on. Throws
/// SkeletonError for non-monotone or capacity-violating solutions.
TaskSkeleton extract_skeleton(const MipSolution& solution, const MipModel& model);

/// Solves horizons 1..T_max, cutting each found action selection, until
/// K_max skeletons are collected. Throws MipBudgetExceeded.
std::vector<TaskSkeleton> enumerate_skeletons(const Cmtg& graph, int T_max, int K_max,
                                              long node_budget = kDefaultNodeBudget);

/// Model in the text LP interchange format.
std::string write_lp(const MipModel& model);

std::string skeleton_to_text(const TaskSkeleton& skeleton, const Scene& scene);

}  // namespace mrtamp
