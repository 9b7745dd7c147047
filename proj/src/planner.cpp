#include "droneplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <list>
#include <numeric>
#include <set>
#include <sstream>

#include "droneplan/errors.hpp"

namespace droneplan {

namespace {

using graphkit::kInf;

// Deterministic nearest-station lookup: smallest energy, lowest index on ties.
void nearest_stations(const Scenario& s, const graphkit::PathTable& paths,
                      std::vector<int>& station, std::vector<double>& energy) {
  const int n = s.size();
  station.assign(n, -1);
  energy.assign(n, 0.0);
  const auto stations = s.station_indices();
  if (stations.empty()) return;
  for (int u = 0; u < n; ++u) {
    double best = kInf;
    int pick = -1;
    for (int st : stations) {
      if (paths.d(u, st) < best) {
        best = paths.d(u, st);
        pick = st;
      }
    }
    station[u] = pick;
    energy[u] = best;
  }
}

}  // namespace

double FlightPlan::total_charge_wh() const {
  return std::accumulate(charge_wh.begin(), charge_wh.end(), 0.0);
}

FeasibilityResult soc_trace(const BatteryEnvelope& battery, const CostMatrix& cost,
                            std::span<const int> stops,
                            std::span<const double> charge_wh) {
  const double eps = feasibility_eps_wh(battery);
  FeasibilityResult r;
  double soc = battery.initial_soc_wh();
  r.trace_wh.push_back(soc);
  for (size_t k = 0; k + 1 < stops.size(); ++k) {
    const double after_charge = soc + battery.eta_c * charge_wh[k];
    if (after_charge > battery.b_max_wh + eps) {
      r.violation = SocViolation{static_cast<int>(k), after_charge, false};
      return r;
    }
    soc = after_charge -
          battery.eta_d * cost.energy_wh(stops[k], stops[k + 1]);
    r.trace_wh.push_back(soc);
    if (soc < battery.b_min_wh - eps) {
      r.violation = SocViolation{static_cast<int>(k + 1), soc, true};
      return r;
    }
    if (soc > battery.b_max_wh + eps) {
      r.violation = SocViolation{static_cast<int>(k + 1), soc, false};
      return r;
    }
  }
  return r;
}

namespace {

void validate_plan_structure(const Scenario& s, std::span<const int> stops,
                             std::span<const double> charge_wh) {
  if (stops.empty()) throw MalformedPlanError("plan has no stops");
  if (stops.size() != charge_wh.size()) {
    throw MalformedPlanError("plan charge list does not match the stop list");
  }
  const int base = s.base_index();
  if (stops.front() != base || stops.back() != base) {
    throw MalformedPlanError("plan must start and end at the base");
  }
  for (size_t k = 0; k < stops.size(); ++k) {
    if (stops[k] < 0 || stops[k] >= s.size()) {
      throw MalformedPlanError("plan references an unknown location index");
    }
    if (charge_wh[k] < 0.0 || !std::isfinite(charge_wh[k])) {
      throw MalformedPlanError("charge commands must be finite and >= 0");
    }
    if (charge_wh[k] > 0.0 && !s.is_station(stops[k])) {
      throw MalformedPlanError("charging commanded away from a station (stop " +
                               std::to_string(k) + ")");
    }
  }
}

}  // namespace

FeasibilityResult check_feasibility(const Scenario& s, const CostMatrix& cost,
                                    const FlightPlan& plan) {
  validate_plan_structure(s, plan.stops, plan.charge_wh);
  return soc_trace(s.battery, cost, plan.stops, plan.charge_wh);
}

FeasibilityResult check_feasibility(const Scenario& s, const CostMatrix& cost,
                                    std::span<const std::string> stop_ids,
                                    std::span<const double> charge_wh) {
  std::vector<int> stops;
  stops.reserve(stop_ids.size());
  for (const auto& id : stop_ids) {
    const int idx = s.index_of(id);
    if (idx < 0) throw MalformedPlanError("plan references unknown location '" + id + "'");
    stops.push_back(idx);
  }
  validate_plan_structure(s, stops, charge_wh);
  return soc_trace(s.battery, cost, stops, charge_wh);
}

MetaDistances init_distances(const Scenario& s, const graphkit::PathTable& paths) {
  const int n = s.size();
  const double usable = s.battery.usable_range_wh();
  const double eps = feasibility_eps_wh(s.battery);
  MetaDistances meta;
  meta.n = n;
  meta.d_tilde_wh.assign(static_cast<size_t>(n) * n, kInf);
  meta.witness.assign(static_cast<size_t>(n) * n, {});
  nearest_stations(s, paths, meta.nearest_station, meta.nearest_station_wh);

  const auto stations = s.station_indices();
  for (int u = 0; u < n; ++u) {
    meta.d_tilde_wh[static_cast<size_t>(u) * n + u] = 0.0;
    meta.witness[static_cast<size_t>(u) * n + u] = {u};
  }

  // Reserve needed at each endpoint to still reach its nearest station.
  auto reserve = [&](int u) {
    return meta.nearest_station[u] >= 0 ? meta.nearest_station_wh[u] : 0.0;
  };

  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      double dt = kInf;
      std::vector<int> path;
      if (paths.d(u, v) <= usable - reserve(u) - reserve(v) + eps) {
        dt = paths.d(u, v);
        path = paths.reconstruct(u, v);
      } else if (!stations.empty()) {
        // Relay graph over the stations plus the two endpoints; legs are
        // admitted only when they leave enough battery to finish the hop.
        std::vector<int> nodes{u, v};
        for (int st : stations) {
          if (st != u && st != v) nodes.push_back(st);
        }
        const int k = static_cast<int>(nodes.size());
        std::vector<double> w(static_cast<size_t>(k) * k, kInf);
        auto admit = [&](int a, int b, double limit) {
          const double d = paths.d(nodes[static_cast<size_t>(a)],
                                   nodes[static_cast<size_t>(b)]);
          if (d <= limit + eps) {
            w[static_cast<size_t>(a) * k + b] = d;
            w[static_cast<size_t>(b) * k + a] = d;
          }
        };
        for (int a = 2; a < k; ++a) {
          admit(0, a, usable - reserve(u));
          admit(1, a, usable - reserve(v));
          for (int b = a + 1; b < k; ++b) admit(a, b, usable);
        }
        if (s.is_station(u)) admit(0, 1, usable - reserve(v));
        else if (s.is_station(v)) admit(0, 1, usable - reserve(u));

        // Dijkstra from u (node 0) to v (node 1), lowest index on ties.
        std::vector<double> dist(static_cast<size_t>(k), kInf);
        std::vector<int> prev(static_cast<size_t>(k), -1);
        std::vector<bool> done(static_cast<size_t>(k), false);
        dist[0] = 0.0;
        for (int round = 0; round < k; ++round) {
          int pick = -1;
          for (int a = 0; a < k; ++a) {
            if (done[static_cast<size_t>(a)] ||
                !std::isfinite(dist[static_cast<size_t>(a)])) {
              continue;
            }
            if (pick < 0 ||
                dist[static_cast<size_t>(a)] <
                    dist[static_cast<size_t>(pick)] - graphkit::kWeightEps) {
              pick = a;
            }
          }
          if (pick < 0) break;
          done[static_cast<size_t>(pick)] = true;
          for (int b = 0; b < k; ++b) {
            const double cand =
                dist[static_cast<size_t>(pick)] + w[static_cast<size_t>(pick) * k + b];
            if (cand < dist[static_cast<size_t>(b)] - graphkit::kWeightEps) {
              dist[static_cast<size_t>(b)] = cand;
              prev[static_cast<size_t>(b)] = pick;
            }
          }
        }
        if (std::isfinite(dist[1])) {
          dt = dist[1];
          std::vector<int> relay;
          for (int cur = 1; cur >= 0; cur = prev[static_cast<size_t>(cur)]) {
            relay.push_back(nodes[static_cast<size_t>(cur)]);
            if (cur == 0) break;
          }
          std::reverse(relay.begin(), relay.end());
          // Expand each relay leg through its shortest-path route.
          path.push_back(relay.front());
          for (size_t i = 0; i + 1 < relay.size(); ++i) {
            const auto leg = paths.reconstruct(relay[i], relay[i + 1]);
            path.insert(path.end(), leg.begin() + 1, leg.end());
          }
        }
      }
      meta.d_tilde_wh[static_cast<size_t>(u) * n + v] = dt;
      meta.d_tilde_wh[static_cast<size_t>(v) * n + u] = dt;
      if (!path.empty()) {
        meta.witness[static_cast<size_t>(u) * n + v] = path;
        std::reverse(path.begin(), path.end());
        meta.witness[static_cast<size_t>(v) * n + u] = std::move(path);
      }
    }
  }
  return meta;
}

bool sdfp_feasible(const Scenario& s, const graphkit::PathTable& paths,
                   std::span<const int> stops) {
  const BatteryEnvelope& battery = s.battery;
  const double eps = feasibility_eps_wh(battery);
  const double drain_cap = battery.b_max_wh - battery.b_min_wh;
  double drained = battery.b_max_wh - battery.initial_soc_wh();  // 0: start full
  for (size_t k = 0; k + 1 < stops.size(); ++k) {
    drained += battery.eta_d * paths.d(stops[k], stops[k + 1]);
    if (drained > drain_cap + eps) return false;
    if (s.is_station(stops[k + 1])) drained = 0.0;
  }
  return true;
}

namespace {

/// Shared body of fix_plan: `order` lists vertices in round-trip removal order.
std::vector<int> fix_plan_impl(const Scenario& s, const MetaDistances& meta,
                               const graphkit::PathTable& paths,
                               std::span<const int> tour,
                               const std::vector<int>& order) {
  // sdfp_feasible drains by shortest-path energy, but a station occurrence
  // must reset the budget only where the plan actually stops, so feasibility
  // is evaluated on the expanded stop list directly.
  auto feasible = [&](const std::list<int>& stops) {
    std::vector<int> v(stops.begin(), stops.end());
    return sdfp_feasible(s, paths, v);
  };

  std::list<int> stops;
  for (size_t i = 0; i < tour.size(); ++i) {
    if (i == 0) {
      stops.push_back(tour[0]);
      continue;
    }
    const auto& leg = meta.path(tour[i - 1], tour[i]);
    if (leg.empty()) {
      throw InfeasibleScenarioError(
          "locations '" + s.loc(tour[i - 1]).id + "' and '" + s.loc(tour[i]).id +
          "' cannot be connected within the battery envelope");
    }
    for (size_t j = 1; j < leg.size(); ++j) stops.push_back(leg[j]);
  }
  // Drop zero-length repeats introduced by path concatenation.
  stops.unique();

  // A protective round trip to the nearest station after every occurrence
  // of every vertex; a walk may revisit a vertex, and an unprotected later
  // occurrence could stretch a leg past one full charge.
  struct RoundTrip {
    int vertex;
    std::list<int>::iterator station, back;
  };
  std::vector<RoundTrip> trips;
  for (auto it = stops.begin(); it != stops.end(); ++it) {
    const int u = *it;
    const int st = meta.nearest_station[static_cast<size_t>(u)];
    if (st < 0 || st == u) continue;
    auto pos = std::next(it);
    auto station_it = stops.insert(pos, st);
    auto back_it = stops.insert(pos, u);
    trips.push_back({u, station_it, back_it});
    it = back_it;  // do not revisit the freshly inserted return stop
  }

  // Dropping a [station, return] pair re-joins vertices that were distinct
  // in the expanded walk, so no adjacent duplicates can appear and the other
  // trips' iterators stay valid.
  auto try_remove = [&](RoundTrip& trip) {
    std::list<int> candidate = stops;
    const auto offset = std::distance(stops.begin(), trip.station);
    const auto first = std::next(candidate.begin(), offset);
    candidate.erase(first, std::next(first, 2));
    if (feasible(candidate)) {
      stops.erase(trip.station);
      stops.erase(trip.back);
      trip.vertex = -1;
      return true;
    }
    return false;
  };
  for (int u : order) {
    for (auto& trip : trips) {
      if (trip.vertex == u) try_remove(trip);
    }
  }

  std::vector<int> out(stops.begin(), stops.end());
  if (!sdfp_feasible(s, paths, out)) {
    throw InfeasibleScenarioError(
        "tour cannot be kept inside the battery envelope even with full "
        "recharges at every station visit");
  }
  return out;
}

}  // namespace

std::vector<int> fix_plan(const Scenario& s, const CostMatrix& cost,
                          const MetaDistances& meta,
                          const graphkit::PathTable& paths,
                          std::span<const int> tour) {
  (void)cost;
  // Removal order: first appearance in the expanded tour.
  std::vector<int> order;
  std::set<int> seen;
  for (int t : tour) {
    if (seen.insert(t).second) order.push_back(t);
  }
  return fix_plan_impl(s, meta, paths, tour, order);
}

std::vector<int> fix_plan_ordered(const Scenario& s, const CostMatrix& cost,
                                  const MetaDistances& meta,
                                  const graphkit::PathTable& paths,
                                  std::span<const int> tour,
                                  std::span<const int> removal_order) {
  (void)cost;
  std::vector<int> order(removal_order.begin(), removal_order.end());
  return fix_plan_impl(s, meta, paths, tour, order);
}

std::vector<double> fix_charge(const Scenario& s, const CostMatrix& cost,
                               std::span<const int> stops) {
  const BatteryEnvelope& bat = s.battery;
  const double x0 = bat.initial_soc_wh();
  const double eps = feasibility_eps_wh(bat);

  // Full-recharge pass: the SoC trace and the charge each station visit
  // would command when filling to capacity.
  std::vector<size_t> station_pos;
  std::vector<double> full_charge;
  double soc = x0;
  double total_drain = 0.0;
  for (size_t k = 0; k + 1 < stops.size(); ++k) {
    if (s.is_station(stops[k])) {
      station_pos.push_back(k);
      full_charge.push_back((bat.b_max_wh - soc) / bat.eta_c);
      soc = bat.b_max_wh;
    }
    const double drain = bat.eta_d * cost.energy_wh(stops[k], stops[k + 1]);
    soc -= drain;
    total_drain += drain;
    if (soc < bat.b_min_wh - eps) {
      throw CannotFixError(
          "plan breaches the SoC floor at stop " + std::to_string(k + 1) +
          " ('" + s.loc(stops[k + 1]).id + "') even with full recharges");
    }
  }
  // A station occurrence at the final stop is not a charging opportunity;
  // no hop follows it, so any charge placed there would be wasted.

  std::vector<double> charges(stops.size(), 0.0);
  const int r = static_cast<int>(station_pos.size());
  const double deficit_wh = bat.b_min_wh - x0 + total_drain;
  for (int j = r; j >= 1; --j) {
    double prior = 0.0;  // charge already banked at earlier station visits
    for (int k = 0; k + 1 < j; ++k) prior += bat.eta_c * full_charge[static_cast<size_t>(k)];
    const double needed = (deficit_wh - prior) / bat.eta_c;
    if (needed > 0.0) {
      charges[station_pos[static_cast<size_t>(j - 1)]] = needed;
      for (int k = 0; k + 1 < j; ++k) {
        charges[station_pos[static_cast<size_t>(k)]] = full_charge[static_cast<size_t>(k)];
      }
      break;
    }
  }
  return charges;
}

FlightPlan assemble_plan(const Scenario& s, const CostMatrix& cost,
                         std::span<const int> stops,
                         std::span<const double> charge_wh) {
  FlightPlan plan;
  plan.stops.assign(stops.begin(), stops.end());
  plan.charge_wh.assign(charge_wh.begin(), charge_wh.end());
  plan.speed_mps = cost.speed_mps();
  const FeasibilityResult fr = soc_trace(s.battery, cost, stops, charge_wh);
  if (!fr.ok()) {
    std::ostringstream msg;
    msg << "plan leaves the SoC envelope at stop " << fr.violation->index
        << " (" << fr.violation->soc_wh << " Wh)";
    throw InfeasibleScenarioError(msg.str());
  }
  plan.soc_wh = fr.trace_wh;
  for (size_t k = 0; k + 1 < stops.size(); ++k) {
    plan.totals.distance_m += cost.distance_m(stops[k], stops[k + 1]);
    plan.totals.energy_wh +=
        s.battery.eta_d * cost.energy_wh(stops[k], stops[k + 1]);
  }
  plan.totals.flight_s = plan.totals.distance_m * cost.seconds_per_meter();
  plan.totals.charge_s = plan.total_charge_wh() * cost.seconds_per_wh();
  return plan;
}

CostBounds compute_cost_bounds(const Scenario& s, const CostMatrix& cost,
                               const FlightPlan& plan) {
  const BatteryEnvelope& bat = s.battery;
  const double c_a = cost.seconds_per_meter();
  const double c_b = cost.seconds_per_wh();
  const double d = plan.totals.distance_m;
  CostBounds b;
  b.charging_case = plan.total_charge_wh() > 0.0;
  if (b.charging_case) {
    const double scale = c_b * bat.eta_d / bat.eta_c;
    const double offset = c_b / bat.eta_c * (bat.b_min_wh - bat.initial_soc_wh());
    b.lower_s = (c_a + cost.cf_lo_wh_per_m() * scale) * d + offset;
    b.upper_s = (c_a + cost.cf_hi_wh_per_m() * scale) * d + offset;
  } else {
    b.lower_s = b.upper_s = c_a * d;
  }
  return b;
}

CostBounds check_cost_bounds(const Scenario& s, const CostMatrix& cost,
                             const FlightPlan& plan) {
  const CostBounds b = compute_cost_bounds(s, cost, plan);
  const double achieved = plan.objective_s();
  const double tol = 1e-9 * std::max(1.0, std::abs(achieved));
  if (achieved < b.lower_s - tol || achieved > b.upper_s + tol) {
    std::ostringstream msg;
    msg << "trip time " << achieved << " s escapes its distance bracket ["
        << b.lower_s << ", " << b.upper_s << "]";
    throw ContractViolationError(msg.str());
  }
  return b;
}

double charge_time_cap_s(const Scenario& s, const CostMatrix& cost,
                         const FlightPlan& plan) {
  const BatteryEnvelope& bat = s.battery;
  const double energy_cap_wh =
      (bat.b_min_wh - bat.initial_soc_wh()) / bat.eta_c +
      cost.cf_hi_wh_per_m() * bat.eta_d / bat.eta_c * plan.totals.distance_m;
  return cost.seconds_per_wh() * energy_cap_wh;
}

PlanReport make_report(const Scenario& s, const CostMatrix& cost,
                       const graphkit::PathTable& paths, const FlightPlan& plan,
                       const ValidationResult& vr, bool matching_exact,
                       bool minimal_charging) {
  PlanReport rep;
  rep.objective_s = plan.objective_s();
  rep.bounds = minimal_charging ? check_cost_bounds(s, cost, plan)
                                : compute_cost_bounds(s, cost, plan);
  rep.charge_cap_s = charge_time_cap_s(s, cost, plan);
  rep.feasible = true;
  rep.alpha = vr.alpha;
  rep.usable_wh = vr.usable_wh;
  for (size_t k = 0; k + 1 < plan.stops.size(); ++k) {
    rep.dhat_cost_wh += paths.d(plan.stops[k], plan.stops[k + 1]);
  }
  rep.matching_exact = matching_exact;
  return rep;
}

std::pair<FlightPlan, PlanReport> find_plan(const Scenario& s, double speed_mps) {
  const ValidationResult vr = validate(s, speed_mps);
  const CostMatrix cost = CostMatrix::build(s, speed_mps);
  const graphkit::PathTable paths = graphkit::all_pairs_shortest(cost.energy_graph());
  const MetaDistances meta = init_distances(s, paths);

  graphkit::WeightedGraph tour_graph(s.size());
  for (int u = 0; u < s.size(); ++u) {
    for (int v = u + 1; v < s.size(); ++v) {
      tour_graph.set_weight(u, v, meta.dt(u, v));
    }
  }

  std::vector<graphkit::Edge> multigraph;
  bool matching_exact = true;
  try {
    const auto mst = graphkit::minimum_spanning_tree(tour_graph);
    std::vector<int> degree(static_cast<size_t>(s.size()), 0);
    multigraph = mst;
    for (const auto& e : mst) {
      ++degree[static_cast<size_t>(e.u)];
      ++degree[static_cast<size_t>(e.v)];
    }
    std::vector<int> odd;
    for (int v = 0; v < s.size(); ++v) {
      if (degree[static_cast<size_t>(v)] % 2 != 0) odd.push_back(v);
    }
    const auto matching = graphkit::min_weight_perfect_matching(tour_graph, odd);
    matching_exact = matching.exact;
    multigraph.insert(multigraph.end(), matching.pairs.begin(),
                      matching.pairs.end());
  } catch (const NoSpanningTreeError&) {
    throw InfeasibleScenarioError(
        "some locations cannot be connected within the battery envelope");
  } catch (const ContractViolationError&) {
    throw InfeasibleScenarioError(
        "odd-degree locations cannot be matched within the battery envelope");
  }

  const auto tour = graphkit::eulerian_tour(s.size(), multigraph, s.base_index());
  const auto stops = fix_plan(s, cost, meta, paths, tour);
  const auto charges = fix_charge(s, cost, stops);
  FlightPlan plan = assemble_plan(s, cost, stops, charges);
  PlanReport rep = make_report(s, cost, paths, plan, vr, matching_exact);
  return {std::move(plan), std::move(rep)};
}

std::pair<FlightPlan, PlanReport> find_plan(const Scenario& s) {
  s.validate_structure();
  return find_plan(s, s.speeds_mps.front());
}

double benchmark_threshold_margin_wh(const Scenario& s, const CostMatrix& cost) {
  const auto stations = s.station_indices();
  if (stations.empty()) return 0.0;
  double margin = 0.0;
  for (int site : s.site_indices()) {
    double nearest = kInf;
    for (int st : stations) {
      nearest = std::min(nearest, cost.distance_m(site, st));
    }
    margin = std::max(margin,
                      s.battery.eta_d * cost.cf_hi_wh_per_m() * nearest);
  }
  return margin;
}

std::pair<FlightPlan, PlanReport> plan_benchmark(const Scenario& s, double speed_mps) {
  const ValidationResult vr = validate(s, speed_mps);
  const CostMatrix cost = CostMatrix::build(s, speed_mps);
  const BatteryEnvelope& bat = s.battery;
  const double eps = feasibility_eps_wh(bat);
  const double threshold = bat.b_min_wh + benchmark_threshold_margin_wh(s, cost);
  const auto stations = s.station_indices();
  const int base = s.base_index();

  std::set<int> unvisited;
  for (int site : s.site_indices()) unvisited.insert(site);

  std::vector<int> stops{base};
  std::vector<double> charges{0.0};
  double soc = bat.initial_soc_wh();
  int pos = base;
  const size_t max_stops =
      4 * (unvisited.size() + 2) * (stations.size() + 2) + 16;
  while (true) {
    if (unvisited.empty() && pos == base && stops.size() > 1) break;
    if (unvisited.empty() && pos == base && s.site_indices().empty()) break;

    // Nearest unvisited site (or home when done), straight-line metric.
    int target = base;
    if (!unvisited.empty()) {
      double best = kInf;
      for (int site : unvisited) {
        const double d = cost.distance_m(pos, site);
        if (d < best || (d == best && site < target)) {
          best = d;
          target = site;
        }
      }
    }

    double arrival = soc - bat.eta_d * cost.energy_wh(pos, target);
    if (arrival < threshold - eps && !stations.empty()) {
      int divert = -1;
      double best = kInf;
      for (int st : stations) {
        const double d = cost.distance_m(pos, st);
        if (d < best || (d == best && st < divert)) {
          best = d;
          divert = st;
        }
      }
      if (divert == pos) {
        throw BenchmarkFailedError(
            "battery cannot hold the diversion threshold even right after a "
            "full recharge at '" + s.loc(pos).id + "'");
      }
      target = divert;
      arrival = soc - bat.eta_d * cost.energy_wh(pos, target);
    }
    if (arrival < bat.b_min_wh - eps) {
      throw BenchmarkFailedError("greedy policy cannot reach '" +
                                 s.loc(target).id + "' without breaching the "
                                 "SoC floor");
    }
    stops.push_back(target);
    if (s.is_station(target)) {
      charges.push_back((bat.b_max_wh - arrival) / bat.eta_c);
      soc = bat.b_max_wh;
    } else {
      charges.push_back(0.0);
      soc = arrival;
      unvisited.erase(target);
    }
    pos = target;
    if (stops.size() > max_stops) {
      throw BenchmarkFailedError("greedy policy is cycling without progress");
    }
  }

  FlightPlan plan = assemble_plan(s, cost, stops, charges);
  const graphkit::PathTable paths = graphkit::all_pairs_shortest(cost.energy_graph());
  PlanReport rep =
      make_report(s, cost, paths, plan, vr, true, /*minimal_charging=*/false);
  return {std::move(plan), std::move(rep)};
}

std::pair<FlightPlan, PlanReport> plan_benchmark(const Scenario& s) {
  s.validate_structure();
  return plan_benchmark(s, s.speeds_mps.front());
}

std::pair<FlightPlan, PlanReport> plan_variable_speed(const Scenario& s) {
  s.validate_structure();
  std::optional<std::pair<FlightPlan, PlanReport>> best;
  std::string failures;
  for (double speed : s.speeds_mps) {
    try {
      auto result = find_plan(s, speed);
      if (!best || result.second.objective_s <
                       best->second.objective_s - 1e-9) {
        best = std::move(result);
      }
    } catch (const Error& e) {
      failures += (failures.empty() ? "" : "; ");
      failures += std::to_string(speed) + " m/s: " + e.what();
    }
  }
  if (!best) {
    throw InfeasibleScenarioError("no speed option admits a feasible plan (" +
                                  failures + ")");
  }
  return std::move(*best);
}

}  // namespace droneplan
