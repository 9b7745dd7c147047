#include "doctest.h"

#include <filesystem>
#include <fstream>

#include <sstream>

#include "droneplan/cli.hpp"
#include "json.hpp"
#include "droneplan/corpus.hpp"
#include "droneplan/errors.hpp"
#include "droneplan/planner.hpp"
#include "droneplan/report.hpp"
#include "droneplan/scenario_io.hpp"
#include "test_helpers.hpp"

using namespace droneplan;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("droneplan_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Scenario small_mission() {
  return testkit::ScenarioBuilder()
      .battery(4.5, 45.0)
      .site("s1", 800.0, 0.0)
      .site("s2", 1600.0, 0.0)
      .station("c1", 600.0, 0.0)
      .station("c2", 1800.0, 0.0)
      .build();
}

}  // namespace

TEST_CASE("emitted plan JSON re-ingests and re-validates") {
  const Scenario s = small_mission();
  const auto [plan, report] = find_plan(s);
  const CostMatrix cost = CostMatrix::build(s, plan.speed_mps);
  const std::string text = plan_to_json(s, plan, report);
  const LoadedPlan loaded = plan_from_json(text);
  REQUIRE(loaded.stop_ids.size() == plan.stops.size());
  CHECK(loaded.speed_mps == plan.speed_mps);
  const auto r = check_feasibility(s, cost, loaded.stop_ids, loaded.charge_wh);
  CHECK(r.ok());
}

TEST_CASE("SoC trace CSV carries one row per stop with arrival clocks") {
  const Scenario s = small_mission();
  const auto [plan, report] = find_plan(s);
  (void)report;
  const CostMatrix cost = CostMatrix::build(s, plan.speed_mps);
  const std::string csv = soc_trace_to_csv(s, cost, plan);
  size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == plan.stops.size() + 1);
  CHECK(csv.rfind("stop_index,id,soc_wh,cum_time_s", 0) == 0);
}

TEST_CASE("the SVG map is deterministic and draws every marker kind") {
  const Scenario s = small_mission();
  const auto [plan, report] = find_plan(s);
  (void)report;
  const std::string svg = plan_to_svg(s, plan);
  CHECK(svg == plan_to_svg(s, plan));
  CHECK(svg.find("<circle") != std::string::npos);    // sites
  CHECK(svg.find("<rect x=") != std::string::npos);   // stations
  CHECK(svg.find("<polygon") != std::string::npos);   // base
  CHECK(svg.find("<line") != std::string::npos);      // hops
}

TEST_CASE("plan command writes artifacts and exits cleanly") {
  const auto dir = fresh_dir("cli_plan");
  const Scenario s = small_mission();
  save_scenario(s, dir / "mission.json");
  const int code = run_cli({"plan", "--scenario", (dir / "mission.json").string(),
                            "--out", (dir / "out").string()});
  CHECK(code == 0);
  CHECK(fs::exists(dir / "out" / "mission.plan.json"));
  CHECK(fs::exists(dir / "out" / "mission.soc.csv"));
  CHECK(fs::exists(dir / "out" / "mission.map.svg"));
}

TEST_CASE("malformed inputs exit with code two") {
  const auto dir = fresh_dir("cli_bad");
  write_text_file(dir / "broken.json", "{ not json");
  CHECK(run_cli({"plan", "--scenario", (dir / "broken.json").string(),
                 "--out", dir.string()}) == 2);
  CHECK(run_cli({"plan", "--scenario", (dir / "missing.json").string(),
                 "--out", dir.string()}) == 2);
  CHECK(run_cli({"definitely-not-a-command"}) == 2);
}

TEST_CASE("infeasible scenarios exit with code one") {
  const auto dir = fresh_dir("cli_infeasible");
  auto s = testkit::ScenarioBuilder()
               .battery(0.0, 12.0)
               .site("far", 2000.0, 0.0)
               .station("c1", 0.0, 0.0)
               .build();
  save_scenario(s, dir / "far.json");
  CHECK(run_cli({"plan", "--scenario", (dir / "far.json").string(),
                 "--out", dir.string()}) == 1);
}

TEST_CASE("generated corpora are byte-identical for equal seeds") {
  const auto dir1 = fresh_dir("cli_gen1");
  const auto dir2 = fresh_dir("cli_gen2");
  for (const auto& dir : {dir1, dir2}) {
    CHECK(run_cli({"gen", "--seed", "7", "--count", "3", "--sites", "4",
                   "--stations", "2", "--out", dir.string()}) == 0);
  }
  for (int i = 0; i < 3; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "scenario_%03d.json", i);
    CHECK(read_text_file(dir1 / name) == read_text_file(dir2 / name));
  }
  // Different seeds change the corpus.
  const auto dir3 = fresh_dir("cli_gen3");
  CHECK(run_cli({"gen", "--seed", "8", "--count", "1", "--sites", "4",
                 "--stations", "2", "--out", dir3.string()}) == 0);
  CHECK(read_text_file(dir1 / "scenario_000.json") !=
        read_text_file(dir3 / "scenario_000.json"));
}

TEST_CASE("every generated scenario passes validation and plans cleanly") {
  CorpusParams params;
  params.seed = 99;
  params.count = 8;
  params.sites = 3;
  params.stations = 2;
  const auto corpus = generate_corpus(params);
  for (const auto& s : corpus) {
    CHECK(validate(s).alpha < 1.0);
    const auto exact = plan_exact(s);  // within oracle limits by construction
    CHECK(exact.report.feasible);
  }
}

TEST_CASE("named families write the demo and study scenarios") {
  const auto dir = fresh_dir("cli_family");
  CHECK(run_cli({"gen", "--family", "demo", "--out", dir.string()}) == 0);
  CHECK(fs::exists(dir / "demo.json"));
  CHECK(run_cli({"gen", "--family", "study1", "--out", dir.string()}) == 0);
  for (int i = 1; i <= 8; ++i) {
    CHECK(fs::exists(dir / ("s1c" + std::to_string(i) + ".json")));
  }
  CHECK(run_cli({"gen", "--family", "study2", "--out", dir.string()}) == 0);
  CHECK(fs::exists(dir / "s2c8.json"));
  CHECK(run_cli({"gen", "--family", "nope", "--out", dir.string()}) == 2);
}

TEST_CASE("the shipped demo scenario plans through the CLI") {
  const auto dir = fresh_dir("cli_demo");
  const fs::path demo = fs::path(DRONEPLAN_SCENARIO_DIR) / "demo.json";
  REQUIRE(fs::exists(demo));
  CHECK(run_cli({"plan", "--scenario", demo.string(), "--out", dir.string()}) == 0);
  CHECK(fs::exists(dir / "demo.plan.json"));
  CHECK(fs::exists(dir / "demo.map.svg"));
  // The emitted plan revalidates against the scenario it came from.
  const Scenario s = load_scenario(demo);
  const LoadedPlan plan = plan_from_json(read_text_file(dir / "demo.plan.json"));
  const CostMatrix cost = CostMatrix::build(s, plan.speed_mps);
  CHECK(check_feasibility(s, cost, plan.stop_ids, plan.charge_wh).ok());
}

TEST_CASE("fit command recovers coefficients from synthetic telemetry") {
  const auto dir = fresh_dir("cli_fit");
  std::mt19937_64 rng(71);
  std::vector<MotionSample> samples;
  for (int i = 0; i < 60; ++i) {
    MotionSample m;
    m.v_xy = {testrng::uniform(rng, -12, 12), testrng::uniform(rng, -12, 12)};
    m.a_xy = {testrng::uniform(rng, -2, 2), testrng::uniform(rng, -2, 2)};
    m.v_z = testrng::uniform(rng, 0, 4);
    m.a_z = testrng::uniform(rng, 0, 2);
    m.payload_mass_g = testrng::uniform(rng, 0, 500);
    m.wind_xy = {testrng::uniform(rng, -6, 6), testrng::uniform(rng, -6, 6)};
    m.measured_power_w = estimate_power(dji_matrice_preset(), m);
    samples.push_back(m);
  }
  write_text_file(dir / "flight.csv", telemetry_to_csv(samples));
  CHECK(run_cli({"fit", "--scenario", (dir / "flight.csv").string(), "--out",
                 dir.string()}) == 0);
  // The coefficients file reproduces the generator within 1e-6 relative.
  const std::string out = read_text_file(dir / "flight.coefficients.json");
  const auto fitted = nlohmann::json::parse(out);
  const auto truth = dji_matrice_preset();
  REQUIRE(fitted["beta"].size() == 9);
  for (int i = 0; i < kNumCoefficients; ++i) {
    const double got = fitted["beta"][static_cast<size_t>(i)].get<double>();
    CHECK(std::abs(got - truth.beta[i]) <=
          1e-6 * std::max(1.0, std::abs(truth.beta[i])));
  }
}

TEST_CASE("compare beats the baseline on average over a seeded corpus") {
  const auto corpus_dir = fresh_dir("cli_cmp_mean");
  CHECK(run_cli({"gen", "--seed", "23", "--count", "20", "--sites", "4",
                 "--stations", "3", "--out", corpus_dir.string()}) == 0);
  const auto out = fresh_dir("cli_cmp_mean_out");
  CHECK(run_cli({"compare", "--scenario", corpus_dir.string(), "--out",
                 out.string()}) == 0);
  std::stringstream report(read_text_file(out / "report.csv"));
  std::string line;
  std::getline(report, line);  // header
  double ours = 0.0, bench = 0.0;
  int ours_n = 0, bench_n = 0;
  while (std::getline(report, line)) {
    std::stringstream row(line);
    std::string case_id, algorithm, status, trip;
    std::getline(row, case_id, ',');
    std::getline(row, algorithm, ',');
    std::getline(row, status, ',');
    std::getline(row, trip, ',');
    if (status != "ok") continue;
    if (algorithm == "tour") {
      ours += std::stod(trip);
      ++ours_n;
    } else if (algorithm == "benchmark") {
      bench += std::stod(trip);
      ++bench_n;
    }
  }
  REQUIRE(ours_n == 20);
  REQUIRE(bench_n >= 15);  // occasional greedy dead ends are acceptable
  CHECK(ours / ours_n <= bench / bench_n);
}

TEST_CASE("compare runs a corpus and emits identical reports on reruns") {
  const auto corpus_dir = fresh_dir("cli_cmp_corpus");
  CHECK(run_cli({"gen", "--seed", "11", "--count", "4", "--sites", "3",
                 "--stations", "2", "--out", corpus_dir.string()}) == 0);
  const auto out1 = fresh_dir("cli_cmp_out1");
  const auto out2 = fresh_dir("cli_cmp_out2");
  CHECK(run_cli({"compare", "--scenario", corpus_dir.string(), "--out",
                 out1.string()}) == 0);
  CHECK(run_cli({"compare", "--scenario", corpus_dir.string(), "--out",
                 out2.string()}) == 0);
  const std::string report = read_text_file(out1 / "report.csv");
  CHECK(report == read_text_file(out2 / "report.csv"));
  CHECK(report.rfind("case_id,algorithm,status", 0) == 0);
  CHECK(report.find("scenario_000,tour,ok") != std::string::npos);
  CHECK(report.find("benchmark") != std::string::npos);
}

TEST_CASE("validate command reports alpha per speed") {
  const auto dir = fresh_dir("cli_validate");
  const Scenario s = small_mission();
  save_scenario(s, dir / "mission.json");
  CHECK(run_cli({"validate", "--scenario", (dir / "mission.json").string()}) == 0);
}

TEST_CASE("overrides reshape the mission before planning") {
  const auto dir = fresh_dir("cli_override");
  const Scenario s = small_mission();
  save_scenario(s, dir / "mission.json");
  CHECK(run_cli({"plan", "--scenario", (dir / "mission.json").string(), "--out",
                 (dir / "out").string(), "--wind", "2,3,45,90"}) == 0);
  const LoadedPlan plan =
      plan_from_json(read_text_file(dir / "out" / "mission.plan.json"));
  CHECK(plan.speed_mps == 5.0);
  CHECK(run_cli({"plan", "--scenario", (dir / "mission.json").string(), "--out",
                 (dir / "out").string(), "--wind", "bogus"}) == 2);
}
