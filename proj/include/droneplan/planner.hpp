#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "droneplan/graphkit.hpp"
#include "droneplan/scenario.hpp"

namespace droneplan {

/// Absolute SoC slack used in feasibility comparisons, Wh.
inline double feasibility_eps_wh(const BatteryEnvelope& b) {
  return 1e-9 * std::max(1.0, b.b_max_wh);
}

struct PlanTotals {
  double flight_s = 0.0;
  double charge_s = 0.0;
  double distance_m = 0.0;
  double energy_wh = 0.0;  ///< battery energy drained in flight
};

/// A mission: the visiting order, per-occurrence charge commands, and the
/// resulting state-of-charge trace. stops.front() == stops.back() == base.
struct FlightPlan {
  std::vector<int> stops;
  std::vector<double> charge_wh;  ///< aligned with stops; zero off stations
  std::vector<double> soc_wh;     ///< SoC on arrival at each stop
  double speed_mps = 0.0;
  PlanTotals totals;

  double objective_s() const { return totals.flight_s + totals.charge_s; }
  double total_charge_wh() const;
};

/// Bracket on the optimal-style trip time implied by the plan's distance.
struct CostBounds {
  double lower_s = 0.0;
  double upper_s = 0.0;
  bool charging_case = false;  ///< which of the two regimes applies
};

struct PlanReport {
  double objective_s = 0.0;
  CostBounds bounds;
  double charge_cap_s = 0.0;  ///< upper limit on charging time; meaningful when charging
  bool feasible = false;
  double alpha = 0.0;
  double usable_wh = 0.0;
  double dhat_cost_wh = 0.0;  ///< plan cost in the shortest-path energy metric
  bool matching_exact = true;
  std::optional<double> ratio_vs_oracle;
};

struct SocViolation {
  int index = -1;      ///< stop index where the envelope broke
  double soc_wh = 0.0;
  bool below = true;   ///< false when the ceiling was exceeded
};

struct FeasibilityResult {
  std::vector<double> trace_wh;  ///< arrival SoC per stop (valid prefix on failure)
  std::optional<SocViolation> violation;
  bool ok() const { return !violation.has_value(); }
};

/// SoC recursion over the actual directed hop energies: charge (if any) on
/// arrival at a station, then drain along the next hop. Pure arithmetic;
/// negative or off-station charges are evaluated as given.
FeasibilityResult soc_trace(const BatteryEnvelope& battery, const CostMatrix& cost,
                            std::span<const int> stops,
                            std::span<const double> charge_wh);

/// Validating wrapper: stops and charges must be structurally sound (known
/// locations, charges only at stations and nonnegative, closed at the base).
/// Throws MalformedPlanError otherwise.
FeasibilityResult check_feasibility(const Scenario& s, const CostMatrix& cost,
                                    const FlightPlan& plan);

/// Id-based entry point for externally supplied plans.
FeasibilityResult check_feasibility(const Scenario& s, const CostMatrix& cost,
                                    std::span<const std::string> stop_ids,
                                    std::span<const double> charge_wh);

/// Battery-feasible pairwise distances: the cheapest way between two
/// locations keeping the SoC inside the envelope, possibly relaying through
/// charging stations, plus the witness paths realizing them.
struct MetaDistances {
  int n = 0;
  std::vector<double> d_tilde_wh;          // n*n, +inf when unreachable
  std::vector<std::vector<int>> witness;   // n*n vertex paths, empty if none
  std::vector<int> nearest_station;        // -1 when there are no stations
  std::vector<double> nearest_station_wh;  // shortest-path energy to it

  double dt(int u, int v) const { return d_tilde_wh[static_cast<size_t>(u) * n + v]; }
  const std::vector<int>& path(int u, int v) const {
    return witness[static_cast<size_t>(u) * n + v];
  }
};

/// Per-pair admission rules: direct flight when the shortest-path energy fits
/// inside the usable range less both station reserves, otherwise the cheapest
/// chain of station-to-station legs each within the usable range.
MetaDistances init_distances(const Scenario& s, const graphkit::PathTable& paths);

/// Feasibility under full-recharge semantics: SoC snaps to capacity at every
/// station occurrence and drains by the shortest-path energy of each hop.
bool sdfp_feasible(const Scenario& s, const graphkit::PathTable& paths,
                   std::span<const int> stops);

/// Tour repair: expands tour edges into their witness paths, appends a
/// round trip to the nearest station for every vertex, then greedily drops
/// round trips (in order of first appearance; the result depends on this
/// order) while full-recharge feasibility is preserved.
std::vector<int> fix_plan(const Scenario& s, const CostMatrix& cost,
                          const MetaDistances& meta,
                          const graphkit::PathTable& paths,
                          std::span<const int> tour);

/// fix_plan with an explicit round-trip removal order (vertex indices).
std::vector<int> fix_plan_ordered(const Scenario& s, const CostMatrix& cost,
                                  const MetaDistances& meta,
                                  const graphkit::PathTable& paths,
                                  std::span<const int> tour,
                                  std::span<const int> removal_order);

/// Minimal charge assignment: keeps full recharges before the last station
/// where a deficit remains, places the exact residual there, zeroes the rest.
/// The plan must be feasible when every station visit recharges to full;
/// throws CannotFixError otherwise.
std::vector<double> fix_charge(const Scenario& s, const CostMatrix& cost,
                               std::span<const int> stops);

/// Builds the SoC trace and totals for a stop/charge sequence, verifying
/// feasibility (throws InfeasibleScenarioError on violation).
FlightPlan assemble_plan(const Scenario& s, const CostMatrix& cost,
                         std::span<const int> stops,
                         std::span<const double> charge_wh);

/// Trip-time bracket implied by the plan's distance. It characterizes plans
/// whose charges are minimal for their tour, so it holds for fix_charge
/// output but not for the benchmark's recharge-to-full policy.
CostBounds compute_cost_bounds(const Scenario& s, const CostMatrix& cost,
                               const FlightPlan& plan);

/// compute_cost_bounds plus verification that the achieved objective falls
/// inside the bracket (ContractViolationError otherwise — an implementation
/// bug, not an input error).
CostBounds check_cost_bounds(const Scenario& s, const CostMatrix& cost,
                             const FlightPlan& plan);

/// Cap on total charging seconds implied by the plan's distance.
double charge_time_cap_s(const Scenario& s, const CostMatrix& cost,
                         const FlightPlan& plan);

/// Assembles the verdicts and bound checks for a feasible plan. The bracket
/// is enforced only when the plan carries a minimal charge assignment.
PlanReport make_report(const Scenario& s, const CostMatrix& cost,
                       const graphkit::PathTable& paths, const FlightPlan& plan,
                       const ValidationResult& vr, bool matching_exact,
                       bool minimal_charging = true);

/// End-to-end tour construction: shortest-path energies, battery-feasible
/// meta distances, spanning tree plus odd-vertex matching, Euler walk, tour
/// repair and minimal charging.
std::pair<FlightPlan, PlanReport> find_plan(const Scenario& s, double speed_mps);
std::pair<FlightPlan, PlanReport> find_plan(const Scenario& s);

/// SoC margin above the floor below which the greedy benchmark diverts to a
/// station: the worst-case energy any site needs to reach its nearest station.
double benchmark_threshold_margin_wh(const Scenario& s, const CostMatrix& cost);

/// Greedy baseline: fly to the nearest unvisited site, divert to the nearest
/// station whenever the next leg would land below the diversion threshold,
/// recharge fully at stations. Throws BenchmarkFailedError on dead ends.
std::pair<FlightPlan, PlanReport> plan_benchmark(const Scenario& s, double speed_mps);
std::pair<FlightPlan, PlanReport> plan_benchmark(const Scenario& s);

struct ExactLimits {
  int max_sites = 6;
  int max_stations = 4;
};

struct ExactResult {
  FlightPlan plan;
  PlanReport report;
  double opt_sdfp_wh = 0.0;  ///< optimal full-recharge tour cost in the energy metric
};

/// Exhaustive optimum for small instances via a dominance-pruned label
/// search over (visited sites, location) states; also reports the optimal
/// full-recharge tour cost used by the approximation-ratio checks.
ExactResult plan_exact(const Scenario& s, double speed_mps,
                       const ExactLimits& limits = {});
ExactResult plan_exact(const Scenario& s, const ExactLimits& limits = {});

/// Optimal full-recharge tour cost only (energy metric, Wh).
double opt_sdfp_wh(const Scenario& s, double speed_mps,
                   const ExactLimits& limits = {});

/// Runs the tour pipeline at every speed option and returns the feasible
/// result with the lowest total trip time (ties favour the lower speed).
std::pair<FlightPlan, PlanReport> plan_variable_speed(const Scenario& s);

}  // namespace droneplan
