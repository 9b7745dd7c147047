#include "droneplan/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "droneplan/corpus.hpp"
#include "droneplan/errors.hpp"
#include "droneplan/planner.hpp"
#include "droneplan/report.hpp"
#include "droneplan/scenario_io.hpp"

namespace droneplan {

namespace {

namespace fs = std::filesystem;

struct CommonOpts {
  std::string scenario_path;
  std::string out_dir = ".";
  std::optional<double> speed_override;
  std::string preset_override;
  std::string wind_override;
};

WindDomain parse_wind_override(const std::string& text) {
  std::stringstream ss(text);
  std::string cell;
  std::vector<double> vals;
  while (std::getline(ss, cell, ',')) {
    try {
      size_t used = 0;
      vals.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw MalformedInputError("--wind expects four numbers 'smin,smax,t1,t2'");
    }
  }
  if (vals.size() != 4) {
    throw MalformedInputError("--wind expects four numbers 'smin,smax,t1,t2'");
  }
  WindDomain w{vals[0], vals[1], vals[2] * kDegToRad, vals[3] * kDegToRad};
  w.validate();
  return w;
}

Scenario load_with_overrides(const CommonOpts& opts) {
  Scenario s = load_scenario(opts.scenario_path);
  if (!opts.preset_override.empty()) {
    const auto coeffs = preset_by_id(opts.preset_override);
    if (!coeffs) {
      throw MalformedInputError("unknown preset '" + opts.preset_override + "'");
    }
    s.preset_id = opts.preset_override;
    s.coefficients = *coeffs;
    s.charge_seconds_per_wh = *preset_charge_seconds_per_wh(opts.preset_override);
  }
  if (opts.speed_override) s.speeds_mps = {*opts.speed_override};
  if (!opts.wind_override.empty()) s.wind = parse_wind_override(opts.wind_override);
  s.validate_structure();
  return s;
}

std::string stem_of(const std::string& path) {
  return fs::path(path).stem().string();
}

void ensure_out_dir(const std::string& dir) {
  if (!dir.empty()) fs::create_directories(dir);
}

void write_plan_artifacts(const Scenario& s, const CostMatrix& cost,
                          const FlightPlan& plan, const PlanReport& report,
                          const fs::path& out_dir, const std::string& stem) {
  write_text_file(out_dir / (stem + ".plan.json"), plan_to_json(s, plan, report));
  write_text_file(out_dir / (stem + ".soc.csv"), soc_trace_to_csv(s, cost, plan));
  write_text_file(out_dir / (stem + ".map.svg"), plan_to_svg(s, plan));
}

void print_plan_summary(const std::string& label, const Scenario& s,
                        const FlightPlan& plan) {
  std::cout << label << ": " << plan.stops.size() << " stops, trip "
            << plan.objective_s() << " s (flight " << plan.totals.flight_s
            << " s, charge " << plan.totals.charge_s << " s), distance "
            << plan.totals.distance_m << " m, battery energy "
            << plan.totals.energy_wh << " Wh, recharge "
            << plan.total_charge_wh() << " Wh commanded over "
            << s.station_indices().size() << " stations\n";
}

int cmd_validate(const CommonOpts& opts) {
  const Scenario s = load_with_overrides(opts);
  for (double speed : s.speeds_mps) {
    const ValidationResult vr = validate(s, speed);
    std::cout << "speed " << speed << " m/s: alpha " << vr.alpha
              << " (usable " << vr.usable_wh << " Wh";
    if (vr.worst_site >= 0) {
      std::cout << ", tightest site " << s.loc(vr.worst_site).id;
    }
    std::cout << ")\n";
  }
  return 0;
}

int cmd_plan(const CommonOpts& opts, bool variable_speed) {
  const Scenario s = load_with_overrides(opts);
  auto [plan, report] = variable_speed && s.speeds_mps.size() > 1
                            ? plan_variable_speed(s)
                            : find_plan(s);
  // Report the trip-time ratio against the exhaustive optimum when the
  // instance is small enough to solve exactly.
  try {
    const ExactResult exact = plan_exact(s, plan.speed_mps);
    if (exact.plan.objective_s() > 0.0) {
      report.ratio_vs_oracle = plan.objective_s() / exact.plan.objective_s();
    }
  } catch (const RefuseToRunError&) {
  }
  const CostMatrix cost = CostMatrix::build(s, plan.speed_mps);
  ensure_out_dir(opts.out_dir);
  write_plan_artifacts(s, cost, plan, report, opts.out_dir, stem_of(opts.scenario_path));
  print_plan_summary("plan", s, plan);
  if (report.ratio_vs_oracle) {
    std::cout << "trip time vs exact optimum: " << *report.ratio_vs_oracle << "\n";
  }
  return 0;
}

int cmd_benchmark(const CommonOpts& opts) {
  const Scenario s = load_with_overrides(opts);
  auto [plan, report] = plan_benchmark(s);
  const CostMatrix cost = CostMatrix::build(s, plan.speed_mps);
  ensure_out_dir(opts.out_dir);
  write_plan_artifacts(s, cost, plan, report, opts.out_dir,
                       stem_of(opts.scenario_path) + ".benchmark");
  print_plan_summary("benchmark", s, plan);
  return 0;
}

int cmd_exact(const CommonOpts& opts) {
  const Scenario s = load_with_overrides(opts);
  const ExactResult exact = plan_exact(s);
  const CostMatrix cost = CostMatrix::build(s, exact.plan.speed_mps);
  ensure_out_dir(opts.out_dir);
  write_plan_artifacts(s, cost, exact.plan, exact.report, opts.out_dir,
                       stem_of(opts.scenario_path) + ".exact");
  print_plan_summary("exact", s, exact.plan);
  std::cout << "full-recharge tour optimum: " << exact.opt_sdfp_wh << " Wh\n";
  try {
    const auto [ours, rep] = find_plan(s);
    (void)rep;
    std::cout << "tour pipeline trip time: " << ours.objective_s()
              << " s (ratio " << ours.objective_s() / exact.plan.objective_s()
              << ")\n";
  } catch (const Error& e) {
    std::cout << "tour pipeline failed: " << e.what() << "\n";
  }
  return 0;
}

int cmd_compare(const CommonOpts& opts) {
  std::vector<std::pair<std::string, fs::path>> cases;
  const fs::path input(opts.scenario_path);
  if (fs::is_directory(input)) {
    for (const auto& entry : fs::directory_iterator(input)) {
      if (entry.path().extension() == ".json") {
        cases.emplace_back(entry.path().stem().string(), entry.path());
      }
    }
    std::sort(cases.begin(), cases.end());
    if (cases.empty()) {
      throw MalformedInputError("no .json scenarios in " + input.string());
    }
  } else {
    cases.emplace_back(stem_of(opts.scenario_path), input);
  }

  ensure_out_dir(opts.out_dir);
  std::vector<ComparisonRow> rows;
  for (const auto& [case_id, path] : cases) {
    CommonOpts case_opts = opts;
    case_opts.scenario_path = path.string();
    const Scenario s = load_with_overrides(case_opts);

    ComparisonRow ours{case_id, "tour", false, "", 0, 0, 0, std::nullopt};
    std::optional<FlightPlan> tour_plan;
    try {
      auto [plan, report] = find_plan(s);
      ours.ok = true;
      ours.trip_time_s = plan.objective_s();
      ours.charge_time_s = plan.totals.charge_s;
      ours.energy_wh = plan.totals.energy_wh;
      ours.ratio_vs_ours = 1.0;
      const CostMatrix cost = CostMatrix::build(s, plan.speed_mps);
      write_plan_artifacts(s, cost, plan, report, opts.out_dir, case_id);
      tour_plan = std::move(plan);
    } catch (const Error& e) {
      ours.error = e.what();
    }
    rows.push_back(ours);

    ComparisonRow bench{case_id, "benchmark", false, "", 0, 0, 0, std::nullopt};
    try {
      auto [plan, report] = plan_benchmark(s);
      (void)report;
      bench.ok = true;
      bench.trip_time_s = plan.objective_s();
      bench.charge_time_s = plan.totals.charge_s;
      bench.energy_wh = plan.totals.energy_wh;
      if (ours.ok && ours.trip_time_s > 0.0) {
        bench.ratio_vs_ours = bench.trip_time_s / ours.trip_time_s;
      }
    } catch (const Error& e) {
      bench.error = e.what();
    }
    rows.push_back(bench);

    try {
      const ExactResult exact = plan_exact(s);
      ComparisonRow ex{case_id, "exact", true, "", exact.plan.objective_s(),
                       exact.plan.totals.charge_s, exact.plan.totals.energy_wh,
                       std::nullopt};
      if (ours.ok && ours.trip_time_s > 0.0) {
        ex.ratio_vs_ours = ex.trip_time_s / ours.trip_time_s;
      }
      rows.push_back(ex);
    } catch (const RefuseToRunError&) {
      // instance too large for the oracle; comparison rows stay ours/benchmark
    } catch (const Error& e) {
      rows.push_back({case_id, "exact", false, e.what(), 0, 0, 0, std::nullopt});
    }
  }
  write_text_file(fs::path(opts.out_dir) / "report.csv", comparison_to_csv(rows));
  std::cout << "compared " << cases.size() << " case(s); report at "
            << (fs::path(opts.out_dir) / "report.csv").string() << "\n";
  return 0;
}

int cmd_fit(const CommonOpts& opts) {
  const auto samples = load_telemetry_csv(opts.scenario_path);
  const FitResult fit = fit_coefficients(samples);
  ensure_out_dir(opts.out_dir);
  const fs::path out = fs::path(opts.out_dir) /
                       (stem_of(opts.scenario_path) + ".coefficients.json");
  write_text_file(out, fit_result_to_json(fit));
  std::cout << "fitted " << samples.size() << " samples, residual "
            << fit.residual_norm_w << " W; coefficients at " << out.string()
            << "\n";
  return 0;
}

int cmd_gen(const std::string& out_dir, uint64_t seed, int count, int sites,
            int stations, const std::string& preset, const std::string& family) {
  ensure_out_dir(out_dir);
  const fs::path dir(out_dir);
  std::vector<NamedScenario> named;
  if (family == "demo") {
    named.push_back({"demo", demo_scenario()});
  } else if (family == "study1") {
    named = study1_family();
  } else if (family == "study2") {
    named = study2_ladder();
  } else if (!family.empty()) {
    throw MalformedInputError("unknown family '" + family +
                              "'; expected demo, study1 or study2");
  }
  if (!named.empty()) {
    for (const auto& [name, scenario] : named) {
      save_scenario(scenario, dir / (name + ".json"));
    }
    std::cout << "wrote " << named.size() << " scenario(s) to " << out_dir << "\n";
    return 0;
  }
  CorpusParams params;
  params.seed = seed;
  params.count = count;
  params.sites = sites;
  params.stations = stations;
  params.preset = preset;
  const auto corpus = generate_corpus(params);
  for (size_t i = 0; i < corpus.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "scenario_%03zu.json", i);
    save_scenario(corpus[i], dir / name);
  }
  std::cout << "wrote " << corpus.size() << " scenario(s) to " << out_dir << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"energy-aware drone tour planning with recharging stops"};
  app.require_subcommand(1);

  CommonOpts opts;
  uint64_t seed = 0;
  int count = 1;
  int sites = 4;
  int stations = 3;
  std::string preset = "3dr-solo";
  std::string family;

  auto add_common = [&](CLI::App* cmd, bool needs_out) {
    cmd->add_option("--scenario", opts.scenario_path, "input path")->required();
    if (needs_out) cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--speed", opts.speed_override, "cruise speed override, m/s");
    cmd->add_option("--preset", opts.preset_override,
                    "drone preset override (3dr-solo, dji-matrice-100)");
    cmd->add_option("--wind", opts.wind_override,
                    "wind domain override 'smin,smax,theta1_deg,theta2_deg'");
  };

  auto* plan_cmd = app.add_subcommand("plan", "plan a mission tour");
  add_common(plan_cmd, true);
  auto* bench_cmd = app.add_subcommand("benchmark", "run the greedy baseline");
  add_common(bench_cmd, true);
  auto* exact_cmd = app.add_subcommand("exact", "exhaustive optimum (small instances)");
  add_common(exact_cmd, true);
  auto* compare_cmd =
      app.add_subcommand("compare", "planner vs baseline over a scenario corpus");
  add_common(compare_cmd, true);
  auto* fit_cmd = app.add_subcommand("fit", "fit power coefficients from telemetry CSV");
  fit_cmd->add_option("--scenario", opts.scenario_path, "telemetry CSV path")
      ->required();
  fit_cmd->add_option("--out", opts.out_dir, "output directory");
  auto* validate_cmd = app.add_subcommand("validate", "check scenario reachability");
  add_common(validate_cmd, false);
  auto* gen_cmd = app.add_subcommand("gen", "generate scenario files");
  gen_cmd->add_option("--out", opts.out_dir, "output directory");
  gen_cmd->add_option("--seed", seed, "corpus seed");
  gen_cmd->add_option("--count", count, "number of scenarios");
  gen_cmd->add_option("--sites", sites, "sites per scenario");
  gen_cmd->add_option("--stations", stations, "stations per scenario");
  gen_cmd->add_option("--preset", preset, "drone preset");
  gen_cmd->add_option("--family", family, "named set: demo, study1 or study2");

  std::vector<const char*> argv{"droneplan"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::cout << app.help();
      return 0;
    }
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  }

  try {
    if (plan_cmd->parsed()) return cmd_plan(opts, true);
    if (bench_cmd->parsed()) return cmd_benchmark(opts);
    if (exact_cmd->parsed()) return cmd_exact(opts);
    if (compare_cmd->parsed()) return cmd_compare(opts);
    if (fit_cmd->parsed()) return cmd_fit(opts);
    if (validate_cmd->parsed()) return cmd_validate(opts);
    if (gen_cmd->parsed()) {
      return cmd_gen(opts.out_dir, seed, count, sites, stations, preset, family);
    }
  } catch (const InfeasibleScenarioError& e) {
    std::cerr << "error: infeasible-scenario: " << e.what() << "\n";
    return 1;
  } catch (const InfeasibleSiteError& e) {
    std::cerr << "error: infeasible-site: " << e.what() << "\n";
    return 1;
  } catch (const CannotFixError& e) {
    std::cerr << "error: infeasible-scenario: " << e.what() << "\n";
    return 1;
  } catch (const BenchmarkFailedError& e) {
    std::cerr << "error: benchmark-failed: " << e.what() << "\n";
    return 1;
  } catch (const NonPhysicalRateError& e) {
    std::cerr << "error: non-physical-rate: " << e.what() << "\n";
    return 1;
  } catch (const MalformedInputError& e) {
    std::cerr << "error: malformed-input: " << e.what() << "\n";
    return 2;
  } catch (const MalformedPlanError& e) {
    std::cerr << "error: malformed-plan: " << e.what() << "\n";
    return 2;
  } catch (const RefuseToRunError& e) {
    std::cerr << "error: refused: " << e.what() << "\n";
    return 2;
  } catch (const GenerationError& e) {
    std::cerr << "error: generation: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace droneplan
