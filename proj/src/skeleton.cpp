#include <algorithm>

#include <fmt/format.h>

#include "mrtamp/mip.hpp"

namespace mrtamp {

std::set<ObjectId> TaskSkeleton::moved_objects() const {
  std::set<ObjectId> out;
  for (const auto& step : steps) {
    for (const auto& a : step) out.insert(a.object);
  }
  return out;
}

std::set<PartiallyGroundedAction> TaskSkeleton::actions() const {
  std::set<PartiallyGroundedAction> out;
  for (const auto& step : steps) out.insert(step.begin(), step.end());
  return out;
}

TaskSkeleton extract_skeleton(const MipSolution& solution, const MipModel& model) {
  const auto& x = solution.assignment;
  if (static_cast<int>(x.size()) != model.num_vars()) {
    throw SkeletonError("solution size does not match the model");
  }
  TaskSkeleton sk;
  sk.steps.resize(model.T);
  for (int a = 0; a < model.num_actions(); ++a) {
    int step = 0;
    for (int t = 1; t <= model.T; ++t) {
      const int v = x[model.action_var(t, a)];
      if (t > 1 && v > x[model.action_var(t - 1, a)]) {
        throw SkeletonError(fmt::format("action {} is selected at step {} but not before", a, t));
      }
      step += v;
    }
    if (step > 0) sk.steps[step - 1].push_back(model.actions[a]);
  }
  std::set<ObjectId> seen;
  for (size_t t = 0; t < sk.steps.size(); ++t) {
    auto& step = sk.steps[t];
    if (step.empty()) throw SkeletonError(fmt::format("step {} has no action", t + 1));
    std::sort(step.begin(), step.end());
    std::set<RobotId> robots;
    for (const auto& a : step) {
      if (!robots.insert(a.pick_robot).second ||
          (a.is_handover() && !robots.insert(a.place_robot).second)) {
        throw SkeletonError(fmt::format("a robot has two actions at step {}", t + 1));
      }
      if (!seen.insert(a.object).second) throw SkeletonError("an object is moved twice");
    }
  }
  return sk;
}

std::vector<TaskSkeleton> enumerate_skeletons(const Cmtg& graph, int T_max, int K_max,
                                              long node_budget) {
  if (T_max < 1 || K_max < 1) throw std::invalid_argument("T_max and K_max must be at least 1");
  std::vector<TaskSkeleton> out;
  if (graph.targets.empty() || graph.action_nodes.empty()) return out;
  std::vector<std::set<PartiallyGroundedAction>> cuts;
  for (int T = 1; T <= T_max && static_cast<int>(out.size()) < K_max; ++T) {
    MipModel model = compile_model(graph, T);
    for (const auto& cut : cuts) model.add_exclusion_cut(cut);
    while (static_cast<int>(out.size()) < K_max) {
      const SolveResult res = solve(model, node_budget);
      if (res.status == SolveStatus::kBudgetExceeded) {
        throw MipBudgetExceeded(fmt::format("node budget {} exceeded at horizon {}", node_budget, T));
      }
      if (res.status == SolveStatus::kInfeasible) break;
      TaskSkeleton sk = extract_skeleton(*res.solution, model);
      auto selected = sk.actions();
      model.add_exclusion_cut(selected);
      cuts.push_back(std::move(selected));
      if (std::find(out.begin(), out.end(), sk) == out.end()) out.push_back(std::move(sk));
    }
  }
  return out;
}

std::string skeleton_to_text(const TaskSkeleton& skeleton, const Scene& scene) {
  std::string out;
  for (size_t t = 0; t < skeleton.steps.size(); ++t) {
    out += fmt::format("step {}:", t + 1);
    for (const auto& a : skeleton.steps[t]) out += " " + action_label(scene, a);
    out += "\n";
  }
  return out;
}

}  // namespace mrtamp
