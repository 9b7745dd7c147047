#include <cmath>
#include <cstdint>
#include <queue>
#include <tuple>

#include "droneplan/errors.hpp"
#include "droneplan/planner.hpp"

namespace droneplan {

namespace {

constexpr size_t kLabelCap = 4'000'000;

struct SearchContext {
  const Scenario* s = nullptr;
  const CostMatrix* cost = nullptr;
  const graphkit::PathTable* paths = nullptr;
  std::vector<int> site_bit;  // per location, -1 for non-sites
  unsigned full_mask = 0;
  int base = 0;

  explicit SearchContext(const Scenario& scenario, const CostMatrix& costs,
                         const graphkit::PathTable& table)
      : s(&scenario), cost(&costs), paths(&table) {
    site_bit.assign(static_cast<size_t>(scenario.size()), -1);
    int bit = 0;
    for (int site : scenario.site_indices()) {
      site_bit[static_cast<size_t>(site)] = bit++;
    }
    full_mask = (bit == 0) ? 0u : (1u << bit) - 1u;
    base = scenario.base_index();
  }

  unsigned visit(unsigned mask, int loc) const {
    const int bit = site_bit[static_cast<size_t>(loc)];
    return bit < 0 ? mask : mask | (1u << bit);
  }
};

// Min-heap entries: (key, insertion order, label id). The insertion-order
// component keeps pops deterministic among equal keys.
using HeapEntry = std::tuple<double, uint64_t, uint32_t>;
using Heap = std::priority_queue<HeapEntry, std::vector<HeapEntry>,
                                 std::greater<HeapEntry>>;

/// Optimal tour cost in the shortest-path energy metric under full-recharge
/// SoC semantics. States are (visited-site mask, location) with a Pareto
/// frontier over (cost, SoC).
double search_opt_sdfp(const SearchContext& ctx) {
  struct Label {
    double cost, soc;
    int loc;
    unsigned mask;
  };
  const BatteryEnvelope& bat = ctx.s->battery;
  const double eps = feasibility_eps_wh(bat);
  const int n = ctx.s->size();

  std::vector<Label> arena;
  std::vector<std::vector<uint32_t>> frontier(
      static_cast<size_t>(ctx.full_mask + 1) * n);
  auto state_of = [&](unsigned mask, int loc) -> std::vector<uint32_t>& {
    return frontier[static_cast<size_t>(mask) * n + loc];
  };
  auto try_insert = [&](Label l) -> int {
    auto& f = state_of(l.mask, l.loc);
    for (uint32_t id : f) {
      const Label& o = arena[id];
      if (o.cost <= l.cost && o.soc >= l.soc) return -1;
    }
    std::erase_if(f, [&](uint32_t id) {
      const Label& o = arena[id];
      return l.cost <= o.cost && l.soc >= o.soc;
    });
    if (arena.size() >= kLabelCap) {
      throw RefuseToRunError("exhaustive search exceeded its label budget");
    }
    arena.push_back(l);
    f.push_back(static_cast<uint32_t>(arena.size() - 1));
    return static_cast<int>(arena.size() - 1);
  };

  Heap heap;
  uint64_t seq = 0;
  const int start = try_insert(
      {0.0, bat.initial_soc_wh(), ctx.base, ctx.visit(0u, ctx.base)});
  heap.emplace(0.0, seq++, static_cast<uint32_t>(start));

  while (!heap.empty()) {
    const uint32_t id = std::get<2>(heap.top());
    heap.pop();
    const Label cur = arena[id];
    if (cur.mask == ctx.full_mask && cur.loc == ctx.base) {
      return cur.cost;
    }
    for (int w = 0; w < n; ++w) {
      if (w == cur.loc) continue;
      const double hop = ctx.paths->d(cur.loc, w);
      const double soc_arr = cur.soc - bat.eta_d * hop;
      if (soc_arr < bat.b_min_wh - eps) continue;
      Label nxt;
      nxt.cost = cur.cost + hop;
      nxt.soc = ctx.s->is_station(w) ? bat.b_max_wh : soc_arr;
      nxt.loc = w;
      nxt.mask = ctx.visit(cur.mask, w);
      const int nid = try_insert(nxt);
      if (nid >= 0) heap.emplace(nxt.cost, seq++, static_cast<uint32_t>(nid));
    }
  }
  throw InfeasibleScenarioError(
      "no battery-feasible tour exists under full-recharge semantics");
}

/// Minimum total trip time (flight plus minimal charging). Labels carry the
/// remaining charge-free drain budget and the drain since the last station,
/// so hop costs are exact trip-time increments.
std::vector<int> search_min_time_tour(const SearchContext& ctx) {
  struct Label {
    double time, free_wh, drain_wh;
    int loc;
    unsigned mask;
    int32_t parent;
  };
  const BatteryEnvelope& bat = ctx.s->battery;
  const CostMatrix& cost = *ctx.cost;
  const double eps = feasibility_eps_wh(bat);
  const double drain_cap = bat.b_max_wh - bat.b_min_wh;
  const double charge_rate_s_per_wh = cost.seconds_per_wh() / bat.eta_c;
  const int n = ctx.s->size();

  std::vector<Label> arena;
  std::vector<std::vector<uint32_t>> frontier(
      static_cast<size_t>(ctx.full_mask + 1) * n);
  auto state_of = [&](unsigned mask, int loc) -> std::vector<uint32_t>& {
    return frontier[static_cast<size_t>(mask) * n + loc];
  };
  auto try_insert = [&](Label l) -> int {
    auto& f = state_of(l.mask, l.loc);
    for (uint32_t id : f) {
      const Label& o = arena[id];
      if (o.time <= l.time && o.free_wh >= l.free_wh && o.drain_wh <= l.drain_wh) {
        return -1;
      }
    }
    std::erase_if(f, [&](uint32_t id) {
      const Label& o = arena[id];
      return l.time <= o.time && l.free_wh >= o.free_wh && l.drain_wh <= o.drain_wh;
    });
    if (arena.size() >= kLabelCap) {
      throw RefuseToRunError("exhaustive search exceeded its label budget");
    }
    arena.push_back(l);
    f.push_back(static_cast<uint32_t>(arena.size() - 1));
    return static_cast<int>(arena.size() - 1);
  };

  Heap heap;
  uint64_t seq = 0;
  const int start = try_insert(
      {0.0, drain_cap, 0.0, ctx.base, ctx.visit(0u, ctx.base), -1});
  heap.emplace(0.0, seq++, static_cast<uint32_t>(start));

  while (!heap.empty()) {
    const uint32_t id = std::get<2>(heap.top());
    heap.pop();
    const Label cur = arena[id];
    if (cur.mask == ctx.full_mask && cur.loc == ctx.base) {
      std::vector<int> stops;
      for (int32_t walk = id; walk >= 0; walk = arena[static_cast<size_t>(walk)].parent) {
        stops.push_back(arena[static_cast<size_t>(walk)].loc);
      }
      std::reverse(stops.begin(), stops.end());
      return stops;
    }
    for (int w = 0; w < n; ++w) {
      if (w == cur.loc) continue;
      const double drain = bat.eta_d * cost.energy_wh(cur.loc, w);
      const double drained = cur.drain_wh + drain;
      if (drained > drain_cap + eps) continue;
      const double paid = std::max(0.0, drain - cur.free_wh);
      Label nxt;
      nxt.time = cur.time + cost.tau_s(cur.loc, w) + charge_rate_s_per_wh * paid;
      nxt.free_wh = std::max(0.0, cur.free_wh - drain);
      nxt.drain_wh = ctx.s->is_station(w) ? 0.0 : drained;
      nxt.loc = w;
      nxt.mask = ctx.visit(cur.mask, w);
      nxt.parent = static_cast<int32_t>(id);
      const int nid = try_insert(nxt);
      if (nid >= 0) heap.emplace(nxt.time, seq++, static_cast<uint32_t>(nid));
    }
  }
  throw InfeasibleScenarioError("no battery-feasible tour exists");
}

void enforce_limits(const Scenario& s, const ExactLimits& limits) {
  const int sites = static_cast<int>(s.site_indices().size());
  const int stations = static_cast<int>(s.station_indices().size());
  if (sites > limits.max_sites || stations > limits.max_stations) {
    throw RefuseToRunError(
        "instance exceeds exhaustive-search limits (" + std::to_string(sites) +
        " sites / " + std::to_string(stations) + " stations, limits " +
        std::to_string(limits.max_sites) + "/" +
        std::to_string(limits.max_stations) + ")");
  }
}

}  // namespace

ExactResult plan_exact(const Scenario& s, double speed_mps,
                       const ExactLimits& limits) {
  enforce_limits(s, limits);
  const ValidationResult vr = validate(s, speed_mps);
  const CostMatrix cost = CostMatrix::build(s, speed_mps);
  const graphkit::PathTable paths =
      graphkit::all_pairs_shortest(cost.energy_graph());
  const SearchContext ctx(s, cost, paths);

  ExactResult result;
  result.opt_sdfp_wh = search_opt_sdfp(ctx);
  const auto stops = search_min_time_tour(ctx);
  const auto charges = fix_charge(s, cost, stops);
  result.plan = assemble_plan(s, cost, stops, charges);
  result.report = make_report(s, cost, paths, result.plan, vr, true);
  return result;
}

ExactResult plan_exact(const Scenario& s, const ExactLimits& limits) {
  s.validate_structure();
  return plan_exact(s, s.speeds_mps.front(), limits);
}

double opt_sdfp_wh(const Scenario& s, double speed_mps, const ExactLimits& limits) {
  enforce_limits(s, limits);
  const CostMatrix cost = CostMatrix::build(s, speed_mps);
  const graphkit::PathTable paths =
      graphkit::all_pairs_shortest(cost.energy_graph());
  return search_opt_sdfp(SearchContext(s, cost, paths));
}

}  // namespace droneplan
