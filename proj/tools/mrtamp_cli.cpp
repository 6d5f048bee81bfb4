// mrtamp: plan, validate, render and benchmark multi-robot rearrangement scenes.
//
// Exit codes: 0 success, 1 I/O, schema or usage error, 2 no plan found,
// 3 plan fails validation.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "mrtamp/bench.hpp"
#include "mrtamp/cmtg.hpp"
#include "mrtamp/mip.hpp"
#include "mrtamp/plan_io.hpp"
#include "mrtamp/predicates.hpp"
#include "mrtamp/render.hpp"
#include "mrtamp/scene_io.hpp"
#include "mrtamp/search.hpp"
#include "mrtamp/validator.hpp"

namespace {

using namespace mrtamp;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoPlan = 2;
constexpr int kExitInvalid = 3;

struct PlanArgs {
  std::string scene;
  std::string out;
  std::string dump_facts;
  std::string dump_cmtg;
  std::string dump_mip;
  std::string trace;
  PlannerConfig cfg;
};

void add_planner_flags(CLI::App* cmd, PlannerConfig& cfg) {
  cmd->add_option("--max-iters", cfg.max_iterations, "MCTS iteration budget")->check(CLI::PositiveNumber);
  cmd->add_option("--time-budget", cfg.time_budget, "wall-clock budget in seconds")->check(CLI::PositiveNumber);
  cmd->add_option("--c", cfg.c, "UCB exploration constant")->check(CLI::NonNegativeNumber);
  cmd->add_option("--alpha", cfg.alpha, "reward weight on moved-object count")->check(CLI::NonNegativeNumber);
  cmd->add_option("--t-max", cfg.t_max, "largest skeleton horizon")->check(CLI::PositiveNumber);
  cmd->add_option("--k-max", cfg.k_max, "skeletons per enumeration")->check(CLI::PositiveNumber);
  cmd->add_flag("--exhaust", cfg.exhaust, "keep searching and return the cheapest plan");
}

int run_plan(const PlanArgs& args) {
  const Scene scene = load_scene_file(args.scene);

  if (!args.dump_facts.empty() || !args.dump_cmtg.empty() || !args.dump_mip.empty()) {
    const FactSet facts = compute_facts(scene);
    if (!args.dump_facts.empty()) write_text_file(args.dump_facts, facts_to_json(facts, scene));
    const Cmtg graph = build_cmtg(unsatisfied_goal_objects(scene), facts, scene, {});
    if (!args.dump_cmtg.empty()) write_text_file(args.dump_cmtg, cmtg_to_text(graph, scene));
    if (!args.dump_mip.empty()) write_text_file(args.dump_mip, write_lp(compile_model(graph, args.cfg.t_max)));
  }

  const PlanResult result = plan(scene, args.cfg);
  if (!args.trace.empty()) {
    std::string text;
    for (const auto& line : result.trace) text += line + "\n";
    write_text_file(args.trace, text);
  }
  if (!result.plan) {
    std::cerr << "no plan: " << to_string(*result.report.no_plan) << "\n" << result.report.to_json();
    return kExitNoPlan;
  }
  const std::string doc = plan_to_json(*result.plan, scene);
  if (args.out.empty()) {
    std::cout << doc;
  } else {
    write_text_file(args.out, doc);
  }
  return kExitOk;
}

int run_validate(const std::string& scene_path, const std::string& plan_path) {
  const Scene scene = load_scene_file(scene_path);
  const ValidationReport report = [&] {
    try {
      return validate_plan(scene, load_plan(read_text_file(plan_path), scene));
    } catch (const PlanStructureError& e) {
      throw SchemaError(e.what());
    }
  }();
  std::cout << report.to_json();
  return report.ok() ? kExitOk : kExitInvalid;
}

int run_render(const std::string& scene_path, const std::string& plan_path, const std::string& svg) {
  const Scene scene = load_scene_file(scene_path);
  std::optional<Plan> p;
  if (!plan_path.empty()) p = load_plan(read_text_file(plan_path), scene);
  const std::string doc = render_svg(scene, p ? &*p : nullptr);
  if (svg.empty()) {
    std::cout << doc;
  } else {
    write_text_file(svg, doc);
  }
  return kExitOk;
}

int run_bench_cmd(const std::string& dir, const BenchConfig& cfg, const std::string& json_out) {
  if (!std::filesystem::is_directory(dir)) throw std::runtime_error(fmt::format("not a directory: '{}'", dir));
  const BenchReport report = run_bench(dir, cfg);
  std::cout << report.table();
  if (!json_out.empty()) write_text_file(json_out, report.to_json());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-robot task and motion planner for tabletop rearrangement"};
  app.require_subcommand(1);

  PlanArgs plan_args;
  auto* plan_cmd = app.add_subcommand("plan", "plan a scene");
  plan_cmd->add_option("scene", plan_args.scene, "scene JSON")->required();
  plan_cmd->add_option("--seed", plan_args.cfg.seed, "random seed");
  add_planner_flags(plan_cmd, plan_args.cfg);
  plan_cmd->add_option("--out", plan_args.out, "plan JSON output (default: stdout)");
  plan_cmd->add_option("--dump-facts", plan_args.dump_facts, "write the symbolic facts as JSON");
  plan_cmd->add_option("--dump-cmtg", plan_args.dump_cmtg, "write the root task graph as text");
  plan_cmd->add_option("--dump-mip", plan_args.dump_mip, "write the root model at --t-max in LP format");
  plan_cmd->add_option("--trace", plan_args.trace, "write one search-trace line per iteration");

  std::string v_scene, v_plan;
  auto* validate_cmd = app.add_subcommand("validate", "check a plan against a scene");
  validate_cmd->add_option("scene", v_scene, "scene JSON")->required();
  validate_cmd->add_option("plan", v_plan, "plan JSON")->required();

  std::string r_scene, r_plan, r_svg;
  auto* render_cmd = app.add_subcommand("render", "draw a scene and optional plan as SVG");
  render_cmd->add_option("scene", r_scene, "scene JSON")->required();
  render_cmd->add_option("plan", r_plan, "plan JSON");
  render_cmd->add_option("--svg", r_svg, "SVG output (default: stdout)");

  std::string b_dir, b_json;
  BenchConfig bench_cfg;
  auto* bench_cmd = app.add_subcommand("bench", "run seeded trials over a directory of scenes");
  bench_cmd->add_option("dir", b_dir, "directory of scene JSON files")->required();
  bench_cmd->add_option("--trials", bench_cfg.trials, "trials per scenario")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed-base", bench_cfg.seed_base, "seed of the first trial");
  bench_cmd->add_option("--json", b_json, "write the report as JSON");
  add_planner_flags(bench_cmd, bench_cfg.planner);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*plan_cmd) return run_plan(plan_args);
    if (*validate_cmd) return run_validate(v_scene, v_plan);
    if (*render_cmd) return run_render(r_scene, r_plan, r_svg);
    if (*bench_cmd) return run_bench_cmd(b_dir, bench_cfg, b_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
