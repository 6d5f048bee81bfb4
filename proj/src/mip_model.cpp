#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "mrtamp/mip.hpp"

namespace mrtamp {

namespace {

// Sums duplicate variables and drops zero coefficients.
std::vector<std::pair<int, int>> merge_terms(std::vector<std::pair<int, int>> terms) {
  std::map<int, int> acc;
  for (const auto& [v, c] : terms) acc[v] += c;
  std::vector<std::pair<int, int>> out;
  for (const auto& [v, c] : acc) {
    if (c != 0) out.emplace_back(v, c);
  }
  return out;
}

}  // namespace

bool LinearConstraint::satisfied(const std::vector<int8_t>& x) const {
  long lhs = 0;
  for (const auto& [v, c] : terms) lhs += static_cast<long>(c) * x[v];
  switch (sense) {
    case Sense::kLe: return lhs <= rhs;
    case Sense::kGe: return lhs >= rhs;
    case Sense::kEq: return lhs == rhs;
  }
  return false;
}

std::string MipModel::var_name(int v) const {
  const int t = v / edges_per_step() + 1;
  const int e = v % edges_per_step();
  if (e < num_actions()) return fmt::format("x_{}_a{}", t, e);
  return fmt::format("x_{}_b{}", t, e - num_actions());
}

int MipModel::action_index(const PartiallyGroundedAction& a) const {
  const auto it = std::lower_bound(actions.begin(), actions.end(), a);
  if (it == actions.end() || *it != a) return -1;
  return static_cast<int>(it - actions.begin());
}

bool MipModel::feasible(const std::vector<int8_t>& x) const {
  if (static_cast<int>(x.size()) != num_vars()) return false;
  for (const auto v : x) {
    if (v != 0 && v != 1) return false;
  }
  return std::all_of(constraints.begin(), constraints.end(),
                     [&](const LinearConstraint& c) { return c.satisfied(x); });
}

int MipModel::objective_value(const std::vector<int8_t>& x) const {
  int sum = 0;
  for (const auto& [v, c] : objective) sum += c * x[v];
  return sum;
}

void MipModel::add_exclusion_cut(const std::set<PartiallyGroundedAction>& selected) {
  LinearConstraint cut;
  cut.sense = Sense::kGe;
  cut.family = "exclusion";
  int in_set = 0;
  for (int a = 0; a < num_actions(); ++a) {
    if (selected.contains(actions[a])) {
      cut.terms.emplace_back(action_var(1, a), -1);
      ++in_set;
    } else {
      cut.terms.emplace_back(action_var(1, a), 1);
    }
  }
  cut.rhs = 1 - in_set;
  constraints.push_back(std::move(cut));
}

MipModel compile_model(const Cmtg& graph, int T) {
  if (T < 1) throw std::invalid_argument("horizon T must be at least 1");
  if (graph.object_nodes.empty()) throw std::invalid_argument("task graph has no objects");

  MipModel m;
  m.T = T;
  m.actions = graph.actions();
  m.objects = graph.object_nodes;
  m.targets = graph.targets;
  std::set<BlockEdge> all_blocks(graph.block_pick_edges);
  all_blocks.insert(graph.block_place_edges.begin(), graph.block_place_edges.end());
  for (const auto& b : all_blocks) {
    m.blocks.push_back(b);
    m.block_is_pick.push_back(graph.block_pick_edges.contains(b));
    m.block_is_place.push_back(graph.block_place_edges.contains(b));
  }
  const int nA = m.num_actions();
  const int nB = m.num_blocks();
  const int big_m = T + 1;

  std::map<ObjectId, std::vector<int>> actions_of;
  std::map<ObjectId, std::vector<int>> blocks_into;
  std::vector<std::vector<int>> blocks_of_action(nA);
  std::set<RobotId> robots;
  for (int a = 0; a < nA; ++a) {
    actions_of[m.actions[a].object].push_back(a);
    robots.insert(m.actions[a].pick_robot);
    robots.insert(m.actions[a].place_robot);
  }
  for (int b = 0; b < nB; ++b) {
    blocks_into[m.blocks[b].second].push_back(b);
    blocks_of_action[m.action_index(m.blocks[b].first)].push_back(b);
  }

  auto add = [&](std::vector<std::pair<int, int>> terms, Sense sense, int rhs, const char* family) {
    m.constraints.push_back({merge_terms(std::move(terms)), sense, rhs, family});
  };
  auto robot_actions = [&](RobotId r) {
    std::vector<int> out;
    for (int a = 0; a < nA; ++a) {
      if (m.actions[a].uses(r)) out.push_back(a);
    }
    return out;
  };

  for (int a = 0; a < nA; ++a) m.objective.emplace_back(m.action_var(1, a), 1);

  // Selection persists backwards in time.
  for (int a = 0; a < nA; ++a) {
    for (int t = 1; t < T; ++t) add({{m.action_var(t, a), 1}, {m.action_var(t + 1, a), -1}}, Sense::kGe, 0, "monotone");
  }
  // Block indicators follow the blocked action.
  for (int b = 0; b < nB; ++b) {
    const int a = m.action_index(m.blocks[b].first);
    for (int t = 1; t <= T; ++t) add({{m.action_var(t, a), 1}, {m.block_var(t, b), -1}}, Sense::kEq, 0, "block_link");
  }
  // Non-targets move only when they block something selected.
  for (const ObjectId obj : m.objects) {
    if (m.targets.contains(obj)) continue;
    for (const int a : actions_of[obj]) {
      for (int t = 1; t <= T; ++t) {
        std::vector<std::pair<int, int>> terms{{m.action_var(t, a), 1}};
        for (const int b : blocks_into[obj]) terms.emplace_back(m.block_var(t, b), -1);
        add(std::move(terms), Sense::kLe, 0, "only_blockers");
      }
    }
  }
  // Robot capacity and progress at the last step.
  for (const RobotId r : robots) {
    std::vector<std::pair<int, int>> terms;
    for (const int a : robot_actions(r)) terms.emplace_back(m.action_var(T, a), 1);
    add(std::move(terms), Sense::kLe, 1, "final_capacity");
  }
  {
    std::vector<std::pair<int, int>> terms;
    for (int a = 0; a < nA; ++a) terms.emplace_back(m.action_var(T, a), 1);
    add(std::move(terms), Sense::kGe, 1, "final_progress");
  }
  // Robot capacity and progress at earlier steps.
  for (const RobotId r : robots) {
    const auto ra = robot_actions(r);
    for (int t = 1; t < T; ++t) {
      std::vector<std::pair<int, int>> terms;
      for (const int a : ra) {
        terms.emplace_back(m.action_var(t, a), 1);
        terms.emplace_back(m.action_var(t + 1, a), -1);
      }
      add(std::move(terms), Sense::kLe, 1, "step_capacity");
    }
  }
  for (int t = 1; t < T; ++t) {
    std::vector<std::pair<int, int>> terms;
    for (int a = 0; a < nA; ++a) {
      terms.emplace_back(m.action_var(t, a), 1);
      terms.emplace_back(m.action_var(t + 1, a), -1);
    }
    add(std::move(terms), Sense::kGe, 1, "step_progress");
  }
  // Targets are moved.
  for (const ObjectId obj : m.targets) {
    std::vector<std::pair<int, int>> terms;
    for (const int a : actions_of[obj]) terms.emplace_back(m.action_var(1, a), 1);
    add(std::move(terms), Sense::kEq, 1, "target");
  }
  // Blockers of selected actions are moved.
  for (int b = 0; b < nB; ++b) {
    std::vector<std::pair<int, int>> terms{{m.block_var(1, b), -1}};
    for (const int a : actions_of[m.blocks[b].second]) terms.emplace_back(m.action_var(1, a), 1);
    add(std::move(terms), Sense::kGe, 0, "blocker_moved");
  }
  // Each object moves at most once.
  for (const ObjectId obj : m.objects) {
    std::vector<std::pair<int, int>> terms;
    for (const int a : actions_of[obj]) terms.emplace_back(m.action_var(1, a), 1);
    add(std::move(terms), Sense::kLe, 1, "move_once");
  }
  // Precedence, big-M: X[1,b] = 1 implies sum_t X[t,b] >= sum_t X[t,(M,.)] + gap.
  for (int b = 0; b < nB; ++b) {
    std::vector<std::pair<int, int>> terms;
    for (int t = 1; t <= T; ++t) terms.emplace_back(m.block_var(t, b), 1);
    for (const int a : actions_of[m.blocks[b].second]) {
      for (int t = 1; t <= T; ++t) terms.emplace_back(m.action_var(t, a), -1);
    }
    terms.emplace_back(m.block_var(1, b), -big_m);
    if (m.block_is_pick[b]) add(terms, Sense::kGe, 1 - big_m, "pick_precedence");
    if (m.block_is_place[b]) add(terms, Sense::kGe, -big_m, "place_precedence");
  }
  return m;
}

}  // namespace mrtamp
