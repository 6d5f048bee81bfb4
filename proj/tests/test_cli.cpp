#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir = fs::temp_directory_path() / ("mrtamp_cli_" + std::to_string(::getpid()));
  Scratch() { fs::create_directories(dir); }
  ~Scratch() { fs::remove_all(dir); }
  fs::path operator/(const std::string& name) const { return dir / name; }
};

/// Runs the CLI with `args`; stdout and stderr go to files in `scratch`.
int cli(const Scratch& scratch, const std::string& args) {
  const std::string cmd = std::string("\"") + MRTAMP_CLI + "\" " + args + " >\"" +
                          (scratch / "out.txt").string() + "\" 2>\"" + (scratch / "err.txt").string() +
                          "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("plan then validate") {
  Scratch s;
  const auto scene = testing::data_path("scenes/pa_small.json");
  REQUIRE(cli(s, "plan " + q(scene) + " --seed 7 --out " + q(s / "plan.json")) == 0);
  REQUIRE(fs::exists(s / "plan.json"));
  CHECK(cli(s, "validate " + q(scene) + " " + q(s / "plan.json")) == 0);
  const auto report = nlohmann::json::parse(testing::read_file(s / "out.txt"));
  CHECK(report.is_object());

  // Same seed, same bytes.
  REQUIRE(cli(s, "plan " + q(scene) + " --seed 7") == 0);
  CHECK(testing::read_file(s / "out.txt") == testing::read_file(s / "plan.json"));

  SUBCASE("moving an object twice fails validation") {
    auto plan = nlohmann::json::parse(testing::read_file(s / "plan.json"));
    plan["steps"].push_back(plan["steps"][0]);
    plan["makespan"] = plan["steps"].size();
    write(s / "twice.json", plan.dump());
    CHECK(cli(s, "validate " + q(scene) + " " + q(s / "twice.json")) == 3);
    CHECK(testing::read_file(s / "out.txt").find("monotonicity") != std::string::npos);
  }
  SUBCASE("rendering") {
    const int steps = nlohmann::json::parse(testing::read_file(s / "plan.json"))["makespan"];
    REQUIRE(cli(s, "render " + q(scene) + " " + q(s / "plan.json") + " --svg " + q(s / "a.svg")) == 0);
    REQUIRE(cli(s, "render " + q(scene) + " " + q(s / "plan.json") + " --svg " + q(s / "b.svg")) == 0);
    const std::string svg = testing::read_file(s / "a.svg");
    CHECK(svg == testing::read_file(s / "b.svg"));
    const auto sc = testing::fixture("scenes/pa_small.json");
    const int entities = static_cast<int>(sc.regions.size() + sc.fixed.size()) + sc.num_objects() +
                         sc.num_robots();
    CHECK(count(svg, "class=\"entity\"") == entities);
    CHECK(count(svg, "class=\"step\"") == steps);
    REQUIRE(cli(s, "render " + q(scene)) == 0);
    CHECK(count(testing::read_file(s / "out.txt"), "class=\"step\"") == 0);
  }
}

TEST_CASE("no plan for an unreachable pocket") {
  Scratch s;
  CHECK(cli(s, "plan " + q(testing::data_path("scenes/unsat_fixed_blocked.json"))) == 2);
  CHECK(testing::read_file(s / "err.txt").find("all branches pruned") != std::string::npos);
}

TEST_CASE("input errors") {
  Scratch s;
  CHECK(cli(s, "plan " + q(s / "missing.json")) == 1);
  CHECK_FALSE(testing::read_file(s / "err.txt").empty());
  write(s / "broken.json", "{\"regions\": [");
  CHECK(cli(s, "plan " + q(s / "broken.json")) == 1);
  CHECK(cli(s, "frobnicate") == 1);
  CHECK(cli(s, "bench " + q(s / "missing_dir")) == 1);
}

TEST_CASE("dumps and bench") {
  Scratch s;
  const auto scene = testing::data_path("bench/02_pick_chain.json");
  REQUIRE(cli(s, "plan " + q(scene) + " --out " + q(s / "p.json") + " --dump-cmtg " + q(s / "g.txt") +
                     " --dump-facts " + q(s / "f.json") + " --dump-mip " + q(s / "m.lp") + " --trace " +
                     q(s / "t.txt")) == 0);
  CHECK(testing::read_file(s / "g.txt") ==
        testing::read_file(fs::path(MRTAMP_GOLDEN_DIR) / "pick_chain_cmtg.txt"));
  CHECK(nlohmann::json::parse(testing::read_file(s / "f.json")).is_array());
  CHECK(testing::read_file(s / "m.lp").find("Subject To") != std::string::npos);
  CHECK(testing::read_file(s / "t.txt").rfind("iter 1 ", 0) == 0);

  fs::create_directories(s / "empty");
  CHECK(cli(s, "bench " + q(s / "empty")) == 0);
  fs::create_directories(s / "one");
  fs::copy_file(testing::data_path("bench/01_unobstructed.json"), s / "one" / "a.json");
  REQUIRE(cli(s, "bench " + q(s / "one") + " --trials 2 --json " + q(s / "bench.json")) == 0);
  const auto doc = nlohmann::json::parse(testing::read_file(s / "bench.json"));
  REQUIRE(doc["scenarios"].size() == 1);
  CHECK(doc["scenarios"][0]["name"] == "a");
  CHECK(doc["scenarios"][0]["success_rate"] == 1.0);
  CHECK(doc["scenarios"][0]["trials"].size() == 2);
}
