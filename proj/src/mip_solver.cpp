#include <algorithm>
#include <climits>
#include <cstdlib>
#include <map>

#include "mrtamp/mip.hpp"

namespace mrtamp {

namespace {

// Rows in the form sum c_i x_i <= rhs; minimum activity tracked incrementally
// over the free variables.
class Propagator {
 public:
  explicit Propagator(const MipModel& model) : val_(model.num_vars(), -1), var_rows_(model.num_vars()) {
    for (const auto& c : model.constraints) {
      if (c.sense == Sense::kLe || c.sense == Sense::kEq) add_row(c.terms, c.rhs, 1);
      if (c.sense == Sense::kGe || c.sense == Sense::kEq) add_row(c.terms, c.rhs, -1);
    }
  }

  int8_t value(int v) const { return val_[v]; }
  const std::vector<int8_t>& values() const { return val_; }
  size_t trail_size() const { return trail_.size(); }

  /// Fixes v and propagates; false on conflict (state must then be undone).
  bool assign_and_propagate(int v, int8_t value) {
    queue_.clear();
    assign(v, value);
    return propagate();
  }

  bool propagate_all() {
    queue_.clear();
    for (size_t r = 0; r < rows_.size(); ++r) queue_.push_back(static_cast<int>(r));
    return propagate();
  }

  void undo(size_t to) {
    while (trail_.size() > to) {
      const int v = trail_.back();
      trail_.pop_back();
      for (const auto& [r, c] : var_rows_[v]) minact_[r] -= static_cast<long>(c) * val_[v] - std::min(0, c);
      val_[v] = -1;
    }
  }

 private:
  struct Row {
    std::vector<std::pair<int, int>> terms;
    long rhs;
  };

  void add_row(const std::vector<std::pair<int, int>>& terms, int rhs, int sign) {
    Row row{{}, static_cast<long>(sign) * rhs};
    long minact = 0;
    const int idx = static_cast<int>(rows_.size());
    for (const auto& [v, c] : terms) {
      row.terms.emplace_back(v, sign * c);
      minact += std::min(0, sign * c);
      var_rows_[v].emplace_back(idx, sign * c);
    }
    rows_.push_back(std::move(row));
    minact_.push_back(minact);
  }

  void assign(int v, int8_t value) {
    val_[v] = value;
    trail_.push_back(v);
    for (const auto& [r, c] : var_rows_[v]) {
      minact_[r] += static_cast<long>(c) * value - std::min(0, c);
      queue_.push_back(r);
    }
  }

  bool propagate() {
    for (size_t qi = 0; qi < queue_.size(); ++qi) {
      const int r = queue_[qi];
      const Row& row = rows_[r];
      if (minact_[r] > row.rhs) return false;
      for (const auto& [v, c] : row.terms) {
        if (val_[v] >= 0) continue;
        const long slack = row.rhs - minact_[r];
        if (std::abs(c) > slack) assign(v, c > 0 ? 0 : 1);
      }
      if (minact_[r] > row.rhs) return false;
    }
    return true;
  }

  std::vector<Row> rows_;
  std::vector<long> minact_;
  std::vector<int8_t> val_;
  std::vector<std::vector<std::pair<int, int>>> var_rows_;
  std::vector<int> trail_;
  std::vector<int> queue_;
};

class BranchAndBound {
 public:
  BranchAndBound(const MipModel& model, long budget) : model_(model), prop_(model), budget_(budget) {
    // X[1, action] first (try 1), later steps and block indicators after (try 0).
    for (int a = 0; a < model.num_actions(); ++a) order_.push_back({model.action_var(1, a), 1});
    for (int t = 2; t <= model.T; ++t) {
      for (int a = 0; a < model.num_actions(); ++a) order_.push_back({model.action_var(t, a), 0});
    }
    for (int t = 1; t <= model.T; ++t) {
      for (int b = 0; b < model.num_blocks(); ++b) order_.push_back({model.block_var(t, b), 0});
    }
    std::map<ObjectId, int> obj_index;
    for (const ObjectId o : model.objects) obj_index.emplace(o, static_cast<int>(obj_index.size()));
    action_obj_.resize(model.num_actions());
    obj_actions_.resize(obj_index.size());
    for (int a = 0; a < model.num_actions(); ++a) {
      action_obj_[a] = obj_index.at(model.actions[a].object);
      obj_actions_[action_obj_[a]].push_back(a);
    }
    for (const ObjectId o : model.targets) target_objs_.push_back(obj_index.at(o));
    for (int b = 0; b < model.num_blocks(); ++b) {
      block_action_.push_back(model.action_index(model.blocks[b].first));
      block_obj_.push_back(obj_index.at(model.blocks[b].second));
    }
  }

  SolveResult run() {
    SolveResult result;
    if (!prop_.propagate_all()) {
      result.status = SolveStatus::kInfeasible;
      return result;
    }
    root_bound_ = lower_bound();
    dfs();
    result.nodes = nodes_;
    if (aborted_) {
      result.status = SolveStatus::kBudgetExceeded;
      return result;
    }
    if (!found_) {
      result.status = SolveStatus::kInfeasible;
      return result;
    }
    result.status = SolveStatus::kOptimal;
    result.solution = MipSolution{best_, best_value_};
    return result;
  }

 private:
  bool selected(int a) const { return prop_.value(model_.action_var(1, a)) == 1; }

  // Selected actions plus required objects (targets, blockers of selected
  // actions) that still have no selected action.
  int lower_bound() const {
    int ones = 0;
    std::vector<char> covered(obj_actions_.size(), 0), required(obj_actions_.size(), 0);
    for (int a = 0; a < model_.num_actions(); ++a) {
      if (selected(a)) {
        ++ones;
        covered[action_obj_[a]] = 1;
      }
    }
    for (const int o : target_objs_) required[o] = 1;
    for (size_t b = 0; b < block_action_.size(); ++b) {
      if (selected(block_action_[b])) required[block_obj_[b]] = 1;
    }
    int missing = 0;
    for (size_t o = 0; o < required.size(); ++o) missing += required[o] && !covered[o];
    // Every step needs its own action, so at least T actions are selected.
    return std::max(ones + missing, model_.T);
  }

  void dfs() {
    if (aborted_ || done_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    const int bound = lower_bound();
    if (bound >= best_value_ || bound > static_cast<int>(obj_actions_.size())) return;
    const auto next = std::find_if(order_.begin(), order_.end(),
                                   [&](const auto& p) { return prop_.value(p.first) < 0; });
    if (next == order_.end()) {
      best_ = prop_.values();
      found_ = true;
      best_value_ = model_.objective_value(best_);
      if (best_value_ <= root_bound_) done_ = true;
      return;
    }
    const auto [var, first] = *next;
    for (const int8_t value : {first, static_cast<int8_t>(1 - first)}) {
      const size_t mark = prop_.trail_size();
      if (prop_.assign_and_propagate(var, value)) dfs();
      prop_.undo(mark);
      if (aborted_ || done_) return;
    }
  }

  const MipModel& model_;
  Propagator prop_;
  long budget_;
  long nodes_ = 0;
  bool aborted_ = false;
  bool done_ = false;
  bool found_ = false;
  int root_bound_ = 0;
  std::vector<std::pair<int, int8_t>> order_;
  std::vector<int> action_obj_;
  std::vector<std::vector<int>> obj_actions_;
  std::vector<int> target_objs_;
  std::vector<int> block_action_;
  std::vector<int> block_obj_;
  std::vector<int8_t> best_;
  int best_value_ = INT_MAX;
};

}  // namespace

SolveResult solve(const MipModel& model, long node_budget) {
  return BranchAndBound(model, node_budget).run();
}

}  // namespace mrtamp
