#include "mrtamp/bench.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "mrtamp/scene_io.hpp"
#include "mrtamp/validator.hpp"

namespace mrtamp {

MeanStd mean_std(const std::vector<double>& xs) {
  if (xs.empty()) return {};
  double sum = 0.0;
  for (const double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double sq = 0.0;
  for (const double x : xs) sq += (x - mean) * (x - mean);
  return {mean, std::sqrt(sq / static_cast<double>(xs.size() - 1))};
}

namespace {

template <class F>
MeanStd over(const std::vector<TrialResult>& trials, bool successes_only, F get) {
  std::vector<double> xs;
  for (const auto& t : trials) {
    if (!successes_only || t.success) xs.push_back(get(t));
  }
  return mean_std(xs);
}

}  // namespace

double ScenarioResult::success_rate() const {
  if (trials.empty()) return 0.0;
  const auto n = std::count_if(trials.begin(), trials.end(), [](const auto& t) { return t.success; });
  return static_cast<double>(n) / static_cast<double>(trials.size());
}

MeanStd ScenarioResult::planning_time() const {
  return over(trials, false, [](const TrialResult& t) { return t.planning_time; });
}

MeanStd ScenarioResult::makespan() const {
  return over(trials, true, [](const TrialResult& t) { return static_cast<double>(t.makespan); });
}

MeanStd ScenarioResult::motion_cost() const {
  return over(trials, true, [](const TrialResult& t) { return static_cast<double>(t.motion_cost); });
}

ScenarioResult run_scenario(const std::string& name, const Scene& scene, const BenchConfig& cfg) {
  ScenarioResult out;
  out.name = name;
  for (int i = 0; i < cfg.trials; ++i) {
    TrialResult trial;
    trial.seed = cfg.seed_base + static_cast<std::uint64_t>(i);
    PlannerConfig pc = cfg.planner;
    pc.seed = trial.seed;
    try {
      const PlanResult r = plan(scene, pc);
      trial.planning_time = r.report.seconds;
      trial.iterations = r.report.iterations;
      if (r.plan) {
        const auto check = validate_plan(scene, *r.plan);
        if (check.ok()) {
          trial.success = true;
          trial.makespan = r.plan->makespan();
          trial.motion_cost = r.plan->motion_cost();
        } else {
          trial.failure = "invalid plan: " + check.violations.front().message;
        }
      } else {
        trial.failure = to_string(*r.report.no_plan);
      }
    } catch (const std::exception& e) {
      trial.failure = std::string("error: ") + e.what();
    }
    out.trials.push_back(std::move(trial));
  }
  return out;
}

BenchReport run_bench(const std::filesystem::path& dir, const BenchConfig& cfg) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  BenchReport report;
  for (const auto& file : files) {
    const std::string name = file.stem().string();
    try {
      const Scene scene = load_scene_file(file);
      report.scenarios.push_back(run_scenario(name, scene, cfg));
    } catch (const std::exception& e) {
      ScenarioResult failed;
      failed.name = name;
      failed.error = e.what();
      report.scenarios.push_back(std::move(failed));
    }
  }
  return report;
}

std::string BenchReport::table() const {
  std::string out = fmt::format("{:<28} {:>8} {:>16} {:>14} {:>14} {:>8}\n", "scenario", "success",
                                "time [s]", "makespan", "motion cost", "iters");
  for (const auto& s : scenarios) {
    if (!s.error.empty()) {
      out += fmt::format("{:<28} error: {}\n", s.name, s.error);
      continue;
    }
    const auto t = s.planning_time();
    const auto mk = s.makespan();
    const auto mc = s.motion_cost();
    const auto it = over(s.trials, false, [](const TrialResult& r) { return static_cast<double>(r.iterations); });
    out += fmt::format("{:<28} {:>7.0f}% {:>8.3f}±{:<7.3f} {:>6.2f}±{:<7.2f} {:>6.2f}±{:<7.2f} {:>8.1f}\n", s.name,
                       100.0 * s.success_rate(), t.mean, t.stddev, mk.mean, mk.stddev, mc.mean,
                       mc.stddev, it.mean);
  }
  return out;
}

std::string BenchReport::to_json() const {
  nlohmann::json doc{{"scenarios", nlohmann::json::array()}};
  auto stat = [](const MeanStd& m) { return nlohmann::json{{"mean", m.mean}, {"std", m.stddev}}; };
  for (const auto& s : scenarios) {
    nlohmann::json js{{"name", s.name}};
    if (!s.error.empty()) {
      js["error"] = s.error;
      doc["scenarios"].push_back(js);
      continue;
    }
    js["success_rate"] = s.success_rate();
    js["planning_time"] = stat(s.planning_time());
    js["makespan"] = stat(s.makespan());
    js["motion_cost"] = stat(s.motion_cost());
    js["trials"] = nlohmann::json::array();
    for (const auto& t : s.trials) {
      nlohmann::json jt{{"seed", t.seed},
                        {"success", t.success},
                        {"planning_time", t.planning_time},
                        {"iterations", t.iterations}};
      if (t.success) {
        jt["makespan"] = t.makespan;
        jt["motion_cost"] = t.motion_cost;
      } else {
        jt["failure"] = t.failure;
      }
      js["trials"].push_back(jt);
    }
    doc["scenarios"].push_back(js);
  }
  return doc.dump(2) + "\n";
}

}  // namespace mrtamp
