#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mrtamp/search.hpp"

namespace mrtamp {

struct TrialResult {
  std::uint64_t seed = 0;
  bool success = false;
  double planning_time = 0.0;  // seconds
  int makespan = 0;
  int motion_cost = 0;
  int iterations = 0;
  /// no_plan reason, validation failure or exception text; empty on success.
  std::string failure;
};

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
};

/// Sample mean and standard deviation (n - 1); zeros for an empty sample.
MeanStd mean_std(const std::vector<double>& xs);

struct ScenarioResult {
  std::string name;
  std::string error;  // scene loading error; no trials then
  std::vector<TrialResult> trials;

  double success_rate() const;
  MeanStd planning_time() const;
  /// Plan quality over successful trials only.
  MeanStd makespan() const;
  MeanStd motion_cost() const;
};

struct BenchReport {
  std::vector<ScenarioResult> scenarios;

  std::string table() const;
  /// Timings are included; everything else is a function of the seeds.
  std::string to_json() const;
};

struct BenchConfig {
  int trials = 20;
  std::uint64_t seed_base = 0;
  PlannerConfig planner;
};

/// Trial i of a scenario uses seed seed_base + i. Every plan is re-validated
/// before it counts as a success.
ScenarioResult run_scenario(const std::string& name, const Scene& scene, const BenchConfig& cfg);

/// Runs every *.json scene in `dir` in file-name order. Unreadable scenes are
/// recorded and skipped.
BenchReport run_bench(const std::filesystem::path& dir, const BenchConfig& cfg);

}  // namespace mrtamp
