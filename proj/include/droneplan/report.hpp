#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "droneplan/planner.hpp"
#include "droneplan/scenario.hpp"

namespace droneplan {

/// Plan JSON: stops with arrival SoC and charge commands, totals and flags.
/// Output is byte-stable for identical plans.
std::string plan_to_json(const Scenario& s, const FlightPlan& plan,
                         const PlanReport& report);

/// A plan read back from its JSON form, for revalidation.
struct LoadedPlan {
  std::vector<std::string> stop_ids;
  std::vector<double> charge_wh;
  double speed_mps = 0.0;
};
LoadedPlan plan_from_json(const std::string& text);

/// SoC trace CSV with columns stop_index,id,soc_wh,cum_time_s; cumulative
/// time is measured on arrival at each stop.
std::string soc_trace_to_csv(const Scenario& s, const CostMatrix& cost,
                             const FlightPlan& plan);

/// Deterministic SVG map: sites as black points, stations as blue squares,
/// the base as a magenta triangle, hops coloured by departure SoC and
/// numbered in visit order.
std::string plan_to_svg(const Scenario& s, const FlightPlan& plan);

struct ComparisonRow {
  std::string case_id;
  std::string algorithm;  ///< "tour" (ours), "benchmark", "exact"
  bool ok = false;
  std::string error;      ///< single-line diagnostic when !ok
  double trip_time_s = 0.0;
  double charge_time_s = 0.0;
  double energy_wh = 0.0;
  std::optional<double> ratio_vs_ours;
};

/// CSV with one row per (case, algorithm); ratios are trip times normalized
/// by our algorithm's trip time on the same case.
std::string comparison_to_csv(const std::vector<ComparisonRow>& rows);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace droneplan
