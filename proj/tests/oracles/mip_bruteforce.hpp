#pragma once

// Exhaustive reference for the step-selection program. It never looks at the
// compiled rows: feasibility is checked on an explicit schedule (the step of
// every action, 0 when unused) against the meaning of each rule.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mrtamp/cmtg.hpp"
#include "mrtamp/mip.hpp"

namespace oracle {

using mrtamp::Cmtg;
using mrtamp::MipModel;
using mrtamp::ObjectId;
using mrtamp::PartiallyGroundedAction;

/// schedule[i] is the step (1..T) of the i-th action of graph.actions(), or 0.
inline bool schedule_feasible(const Cmtg& graph, int T, const std::vector<int>& schedule) {
  const auto actions = graph.actions();
  std::map<PartiallyGroundedAction, int> step_of;
  for (size_t i = 0; i < actions.size(); ++i) step_of[actions[i]] = schedule[i];

  // Every step busy, no robot twice in a step.
  for (int t = 1; t <= T; ++t) {
    int busy = 0;
    std::map<int, int> robot_use;
    for (size_t i = 0; i < actions.size(); ++i) {
      if (schedule[i] != t) continue;
      ++busy;
      ++robot_use[actions[i].pick_robot.value];
      if (actions[i].is_handover()) ++robot_use[actions[i].place_robot.value];
    }
    if (busy == 0) return false;
    for (const auto& [r, n] : robot_use) {
      if (n > 1) return false;
    }
  }

  // Each object moved at most once, targets exactly once.
  std::map<ObjectId, int> moved_at;
  for (size_t i = 0; i < actions.size(); ++i) {
    if (schedule[i] == 0) continue;
    if (moved_at.contains(actions[i].object)) return false;
    moved_at[actions[i].object] = schedule[i];
  }
  for (const ObjectId m : graph.targets) {
    if (!moved_at.contains(m)) return false;
  }

  // Obstacles of selected actions are cleared in time.
  for (const auto& [a, m] : graph.block_pick_edges) {
    const int s = step_of[a];
    if (s == 0) continue;
    if (!moved_at.contains(m) || moved_at[m] >= s) return false;
  }
  for (const auto& [a, m] : graph.block_place_edges) {
    const int s = step_of[a];
    if (s == 0) continue;
    if (!moved_at.contains(m) || moved_at[m] > s) return false;
  }

  // A non-target moves only to clear a selected action at or after its move.
  for (const auto& [m, s] : moved_at) {
    if (graph.targets.contains(m)) continue;
    bool justified = false;
    for (const auto* edges : {&graph.block_pick_edges, &graph.block_place_edges}) {
      for (const auto& [a, occ] : *edges) {
        if (occ == m && step_of[a] >= s) justified = true;
      }
    }
    if (!justified) return false;
  }
  return true;
}

/// Calls f(schedule) for every schedule in {0..T}^actions.
template <class F>
void for_each_schedule(size_t n_actions, int T, F f) {
  std::vector<int> s(n_actions, 0);
  while (true) {
    f(s);
    size_t i = 0;
    while (i < n_actions && s[i] == T) s[i++] = 0;
    if (i == n_actions) return;
    ++s[i];
  }
}

inline int moved_count(const std::vector<int>& schedule) {
  int n = 0;
  for (const int s : schedule) n += s > 0 ? 1 : 0;
  return n;
}

/// Minimum number of moved objects over all feasible schedules.
inline std::optional<int> min_moved(const Cmtg& graph, int T) {
  std::optional<int> best;
  for_each_schedule(graph.action_nodes.size(), T, [&](const std::vector<int>& s) {
    const int n = moved_count(s);
    if (best && n >= *best) return;
    if (schedule_feasible(graph, T, s)) best = n;
  });
  return best;
}

inline std::vector<std::vector<int>> feasible_schedules(const Cmtg& graph, int T) {
  std::vector<std::vector<int>> out;
  for_each_schedule(graph.action_nodes.size(), T, [&](const std::vector<int>& s) {
    if (schedule_feasible(graph, T, s)) out.push_back(s);
  });
  return out;
}

/// Variable vector of a schedule: X[t, a] = 1 iff a runs at step >= t; a block
/// variable copies the variable of its blocked action. Uses only the
/// documented index layout of the model.
inline std::vector<int8_t> encode(const MipModel& model, const std::vector<int>& schedule) {
  std::vector<int8_t> x(model.num_vars(), 0);
  for (int t = 1; t <= model.T; ++t) {
    for (int a = 0; a < model.num_actions(); ++a) x[model.action_var(t, a)] = schedule[a] >= t ? 1 : 0;
    for (int b = 0; b < model.num_blocks(); ++b) {
      const int a = model.action_index(model.blocks[b].first);
      x[model.block_var(t, b)] = schedule[a] >= t ? 1 : 0;
    }
  }
  return x;
}

/// Inverse of encode; nullopt when x is not the image of any schedule.
inline std::optional<std::vector<int>> decode(const MipModel& model, const std::vector<int8_t>& x) {
  std::vector<int> schedule(model.num_actions(), 0);
  for (int a = 0; a < model.num_actions(); ++a) {
    for (int t = 1; t <= model.T; ++t) {
      if (x[model.action_var(t, a)] == 0) break;
      schedule[a] = t;
    }
  }
  if (encode(model, schedule) != x) return std::nullopt;
  return schedule;
}

inline bool vector_feasible(const Cmtg& graph, const MipModel& model, const std::vector<int8_t>& x) {
  const auto s = decode(model, x);
  return s && schedule_feasible(graph, model.T, *s);
}

}  // namespace oracle
