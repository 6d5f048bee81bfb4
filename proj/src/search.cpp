#include "mrtamp/search.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "mrtamp/cmtg.hpp"
#include "mrtamp/validator.hpp"

namespace mrtamp {

int SearchTree::add_edge(int node, TaskSkeleton skeleton) {
  SearchEdge e;
  e.id = static_cast<int>(edges.size());
  e.tail = node;
  e.prior = 1.0 / static_cast<double>(skeleton.num_moved());
  e.skeleton = std::move(skeleton);
  edges.push_back(std::move(e));
  nodes[node].children.push_back(edges.back().id);
  return edges.back().id;
}

double ucb(const SearchNode& node, const SearchEdge& edge, double c) {
  const double denom = edge.visits + 1.0;
  return edge.value / denom + c * edge.prior * std::sqrt(static_cast<double>(node.visits)) / denom;
}

double reward(const GroundingOutcome& outcome, const std::vector<TaskSkeleton>& new_skeletons,
              double alpha) {
  std::set<ObjectId> moved;
  for (const auto& s : outcome.steps) {
    const auto m = s.moved_objects();
    moved.insert(m.begin(), m.end());
  }
  switch (outcome.kind) {
    case OutcomeKind::kFailure:
      return 0.0;
    case OutcomeKind::kFull:
      return 1.0 + alpha / static_cast<double>(moved.size());
    case OutcomeKind::kPartial: {
      if (new_skeletons.empty()) return 0.0;
      const TaskSkeleton* best = &new_skeletons.front();
      for (const auto& sk : new_skeletons) {
        if (sk.length() < best->length() ||
            (sk.length() == best->length() && sk.num_moved() < best->num_moved())) {
          best = &sk;
        }
      }
      const double len = static_cast<double>(outcome.steps.size());
      return len / (len + best->length()) +
             alpha / static_cast<double>(moved.size() + best->num_moved());
    }
  }
  return 0.0;
}

int select_edge(const SearchTree& tree, int node, double c) {
  int best = -1;
  double best_q = 0.0;
  for (const int e : tree.nodes[node].children) {
    const auto& edge = tree.edges[e];
    if (!edge.selectable()) continue;
    const double q = ucb(tree.nodes[node], edge, c);
    if (best < 0 || q > best_q) {
      best = e;
      best_q = q;
    }
  }
  return best;
}

void backpropagate(SearchTree& tree, const std::vector<int>& path, double r) {
  for (const int e : path) {
    auto& edge = tree.edges[e];
    edge.value += r;
    edge.visits += 1;
    tree.nodes[edge.tail].visits += 1;
  }
  if (!path.empty() && tree.edges[path.back()].head >= 0) {
    tree.nodes[tree.edges[path.back()].head].visits += 1;
  }
}

std::string to_string(NoPlanReason reason) {
  switch (reason) {
    case NoPlanReason::kNoInitialSkeletons: return "no initial skeletons";
    case NoPlanReason::kAllBranchesPruned: return "all branches pruned";
    case NoPlanReason::kBudgetExhausted: return "budget exhausted";
  }
  return "unknown";
}

std::string SearchReport::to_json() const {
  nlohmann::json doc{{"iterations", iterations}, {"nodes", nodes},         {"edges", edges},
                     {"full", full},             {"partial", partial},     {"failures", failures},
                     {"dead_ends", dead_ends},   {"mip_budget_hits", mip_budget_hits}};
  doc["no_plan"] = no_plan ? nlohmann::json(to_string(*no_plan)) : nlohmann::json(nullptr);
  return doc.dump(2) + "\n";
}

std::set<ObjectId> unsatisfied_goal_objects(const Scene& scene) {
  std::set<ObjectId> out;
  for (const auto& g : scene.goal) {
    if (!scene.goal_satisfied_initially(g.object)) out.insert(g.object);
  }
  return out;
}

namespace {

std::set<ObjectId> moved_in(const std::vector<GroundedJointAction>& steps) {
  std::set<ObjectId> out;
  for (const auto& s : steps) {
    const auto m = s.moved_objects();
    out.insert(m.begin(), m.end());
  }
  return out;
}

// An evaluated edge is spent once nothing below it can still be selected.
void refresh_exhaustion(SearchTree& tree, const std::vector<int>& path) {
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    auto& edge = tree.edges[*it];
    if (!edge.evaluated || edge.pruned || edge.head < 0) continue;
    const auto& head = tree.nodes[edge.head];
    bool open = !head.terminal;
    if (open) {
      open = false;
      for (const int c : head.children) open = open || tree.edges[c].selectable();
    }
    edge.exhausted = !open;
  }
}

bool better(const Plan& a, const Plan& b) {
  if (a.motion_cost() != b.motion_cost()) return a.motion_cost() < b.motion_cost();
  return a.makespan() < b.makespan();
}

}  // namespace

PlanResult plan(const Scene& scene, const PlannerConfig& cfg) {
  if (scene.goal.empty()) throw std::invalid_argument("the goal specification is empty");
  if (cfg.c < 0.0 || cfg.alpha < 0.0) throw std::invalid_argument("c and alpha must be >= 0");
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  PlanResult result;
  auto& report = result.report;
  auto finish = [&] {
    report.seconds = elapsed();
    return result;
  };

  const auto targets = unsatisfied_goal_objects(scene);
  if (targets.empty()) {
    result.plan = Plan{};
    return finish();
  }

  const FactSet facts = compute_facts(scene);
  SearchTree tree;
  tree.nodes.emplace_back();
  std::vector<TaskSkeleton> root_skeletons;
  try {
    root_skeletons = enumerate_skeletons(build_cmtg(targets, facts, scene, {}), cfg.t_max, cfg.k_max,
                                         cfg.node_budget);
  } catch (const MipBudgetExceeded&) {
    ++report.mip_budget_hits;
  }
  for (auto& sk : root_skeletons) tree.add_edge(0, std::move(sk));
  auto sync_sizes = [&] {
    report.nodes = static_cast<int>(tree.nodes.size());
    report.edges = static_cast<int>(tree.edges.size());
  };
  if (tree.edges.empty()) {
    report.no_plan = NoPlanReason::kNoInitialSkeletons;
    sync_sizes();
    return finish();
  }

  std::optional<Plan> best;
  for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
    if (elapsed() > cfg.time_budget) break;

    // Selection.
    std::vector<int> path;
    int node = 0;
    int chosen = -1;
    while (true) {
      const int e = select_edge(tree, node, cfg.c);
      if (e < 0) break;
      path.push_back(e);
      if (!tree.edges[e].evaluated) {
        chosen = e;
        break;
      }
      node = tree.edges[e].head;
    }
    if (chosen < 0) break;  // nothing selectable below the root
    report.iterations = iter;

    // Expansion.
    const int head = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.edges[chosen].head = head;
    tree.edges[chosen].evaluated = true;

    // Evaluation.
    const int tail = tree.edges[chosen].tail;
    const TaskSkeleton skeleton = tree.edges[chosen].skeleton;
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(chosen)};
    std::mt19937_64 rng(seq);
    const auto ctx = make_context(scene, tree.nodes[tail].stored, skeleton);
    const GroundingOutcome outcome = ground(skeleton, ctx, scene, rng, cfg.grounding);

    double r = 0.0;
    std::string kind;
    int new_edges = 0;
    switch (outcome.kind) {
      case OutcomeKind::kFailure: {
        ++report.failures;
        kind = "failure";
        tree.edges[chosen].pruned = true;
        tree.nodes[head].terminal = true;
        break;
      }
      case OutcomeKind::kFull: {
        ++report.full;
        kind = "full";
        Plan found{outcome.steps};
        const auto check = validate_plan(scene, found);
        if (!check.ok()) {
          throw std::logic_error("internal consistency error: grounded plan fails validation: " +
                                 check.violations.front().message);
        }
        tree.nodes[head].stored = outcome.steps;
        tree.nodes[head].terminal = true;
        r = reward(outcome, {}, cfg.alpha);
        if (!best || better(found, *best)) best = std::move(found);
        break;
      }
      case OutcomeKind::kPartial: {
        ++report.partial;
        kind = "partial";
        tree.nodes[head].stored = outcome.steps;
        std::vector<TaskSkeleton> fresh;
        try {
          const auto graph = build_cmtg(outcome.conflicts, facts, scene, moved_in(outcome.steps));
          fresh = enumerate_skeletons(graph, cfg.t_max, cfg.k_max, cfg.node_budget);
        } catch (const MipBudgetExceeded&) {
          ++report.mip_budget_hits;
        }
        r = reward(outcome, fresh, cfg.alpha);
        if (fresh.empty()) {
          ++report.dead_ends;
          tree.nodes[head].terminal = true;
        }
        new_edges = static_cast<int>(fresh.size());
        for (auto& sk : fresh) tree.add_edge(head, std::move(sk));
        break;
      }
    }

    // Backpropagation.
    backpropagate(tree, path, r);
    refresh_exhaustion(tree, path);
    result.trace.push_back(fmt::format("iter {} edge {} depth {} outcome {} reward {:.17g} children {}",
                                       iter, chosen, path.size(), kind, r, new_edges));
    if (best && !cfg.exhaust) break;
  }
  sync_sizes();

  if (best) {
    result.plan = std::move(best);
    return finish();
  }
  bool open = false;
  for (const int e : tree.nodes[0].children) open = open || tree.edges[e].selectable();
  report.no_plan = open ? NoPlanReason::kBudgetExhausted : NoPlanReason::kAllBranchesPruned;
  return finish();
}

}  // namespace mrtamp
