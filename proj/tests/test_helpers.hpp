#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "droneplan/scenario.hpp"
#include "test_rng.hpp"

// Independent reference implementations the tests check the library against.
// These deliberately use the most naive correct formulation available.
namespace oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Shortest distance over all simple paths, by exhaustive DFS.
inline double brute_force_shortest(const droneplan::graphkit::WeightedGraph& g,
                                   int from, int to) {
  const int n = g.size();
  std::vector<bool> used(static_cast<size_t>(n), false);
  double best = kInf;
  std::function<void(int, double)> dfs = [&](int v, double acc) {
    if (acc >= best) return;
    if (v == to) {
      best = acc;
      return;
    }
    used[static_cast<size_t>(v)] = true;
    for (int w = 0; w < n; ++w) {
      if (used[static_cast<size_t>(w)] || !std::isfinite(g.weight(v, w)) || w == v)
        continue;
      dfs(w, acc + g.weight(v, w));
    }
    used[static_cast<size_t>(v)] = false;
  };
  dfs(from, 0.0);
  return best;
}

/// Minimum spanning tree weight by enumerating every labelled tree through
/// its Pruefer sequence. Needs a complete finite-weight graph.
inline double brute_force_mst_weight(const droneplan::graphkit::WeightedGraph& g) {
  const int n = g.size();
  if (n == 1) return 0.0;
  if (n == 2) return g.weight(0, 1);
  const int len = n - 2;
  std::vector<int> seq(static_cast<size_t>(len), 0);
  double best = kInf;
  while (true) {
    // Decode the Pruefer sequence into tree edges: repeatedly join the
    // smallest remaining leaf to the next sequence entry.
    std::vector<int> deg(static_cast<size_t>(n), 1);
    for (int v : seq) ++deg[static_cast<size_t>(v)];
    double total = 0.0;
    for (int i = 0; i < len; ++i) {
      int leaf = -1;
      for (int v = 0; v < n; ++v) {
        if (deg[static_cast<size_t>(v)] == 1) {
          leaf = v;
          break;
        }
      }
      const int other = seq[static_cast<size_t>(i)];
      total += g.weight(leaf, other);
      deg[static_cast<size_t>(leaf)] = 0;
      --deg[static_cast<size_t>(other)];
    }
    int a = -1, b = -1;
    for (int v = 0; v < n; ++v) {
      if (deg[static_cast<size_t>(v)] == 1) (a < 0 ? a : b) = v;
    }
    total += g.weight(a, b);
    best = std::min(best, total);
    // Advance to the next sequence in lexicographic order.
    int pos = len - 1;
    while (pos >= 0 && seq[static_cast<size_t>(pos)] == n - 1) {
      seq[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++seq[static_cast<size_t>(pos)];
  }
  return best;
}

/// Minimum perfect-matching weight over all pairings of `subset`.
inline double brute_force_matching_weight(
    const droneplan::graphkit::WeightedGraph& g, std::vector<int> subset) {
  std::sort(subset.begin(), subset.end());
  std::function<double(std::vector<int>&)> rec = [&](std::vector<int>& rest) {
    if (rest.empty()) return 0.0;
    const int first = rest.front();
    double best = kInf;
    for (size_t i = 1; i < rest.size(); ++i) {
      const int partner = rest[i];
      std::vector<int> next;
      for (size_t j = 1; j < rest.size(); ++j) {
        if (j != i) next.push_back(rest[j]);
      }
      best = std::min(best, g.weight(first, partner) + rec(next));
    }
    return best;
  };
  return rec(subset);
}

/// Exact symmetric TSP tour cost (cycle through all vertices) by Held-Karp.
inline double held_karp_tsp(const std::vector<std::vector<double>>& w, int start) {
  const int n = static_cast<int>(w.size());
  if (n <= 1) return 0.0;
  std::vector<int> others;
  for (int v = 0; v < n; ++v) {
    if (v != start) others.push_back(v);
  }
  const int m = static_cast<int>(others.size());
  const size_t full = size_t{1} << m;
  std::vector<std::vector<double>> dp(full,
                                      std::vector<double>(static_cast<size_t>(m), kInf));
  for (int i = 0; i < m; ++i) {
    dp[size_t{1} << i][static_cast<size_t>(i)] =
        w[static_cast<size_t>(start)][static_cast<size_t>(others[static_cast<size_t>(i)])];
  }
  for (size_t mask = 1; mask < full; ++mask) {
    for (int last = 0; last < m; ++last) {
      if (!(mask >> last & 1)) continue;
      const double cur = dp[mask][static_cast<size_t>(last)];
      if (!std::isfinite(cur)) continue;
      for (int nxt = 0; nxt < m; ++nxt) {
        if (mask >> nxt & 1) continue;
        const size_t nm = mask | (size_t{1} << nxt);
        const double cand =
            cur + w[static_cast<size_t>(others[static_cast<size_t>(last)])]
                   [static_cast<size_t>(others[static_cast<size_t>(nxt)])];
        dp[nm][static_cast<size_t>(nxt)] = std::min(dp[nm][static_cast<size_t>(nxt)], cand);
      }
    }
  }
  double best = kInf;
  for (int last = 0; last < m; ++last) {
    best = std::min(best,
                    dp[full - 1][static_cast<size_t>(last)] +
                        w[static_cast<size_t>(others[static_cast<size_t>(last)])]
                         [static_cast<size_t>(start)]);
  }
  return best;
}

}  // namespace oracle

namespace testkit {

/// Minimal single-speed scenario builder used throughout the tests.
struct ScenarioBuilder {
  droneplan::Scenario s;

  ScenarioBuilder() {
    s.preset_id = "3dr-solo";
    s.coefficients = droneplan::solo_preset();
    s.charge_seconds_per_wh = 70.0;
    s.speeds_mps = {5.0};
    s.battery = {0.0, 100.0, 1.0, 1.0};
    s.wind = droneplan::WindDomain::calm();
    s.locations.push_back({"base", droneplan::LocationKind::kBase, {0.0, 0.0}});
  }

  ScenarioBuilder& base(double x, double y) {
    s.locations[0].position_m = {x, y};
    return *this;
  }
  ScenarioBuilder& site(const std::string& id, double x, double y) {
    s.locations.push_back({id, droneplan::LocationKind::kSite, {x, y}});
    return *this;
  }
  ScenarioBuilder& station(const std::string& id, double x, double y) {
    s.locations.push_back({id, droneplan::LocationKind::kStation, {x, y}});
    return *this;
  }
  ScenarioBuilder& battery(double b_min, double b_max, double eta_c = 1.0,
                           double eta_d = 1.0) {
    s.battery = {b_min, b_max, eta_c, eta_d};
    return *this;
  }
  ScenarioBuilder& wind(const droneplan::WindDomain& w) {
    s.wind = w;
    return *this;
  }
  ScenarioBuilder& payload(double grams) {
    s.payload_g = grams;
    return *this;
  }
  ScenarioBuilder& speeds(std::vector<double> v) {
    s.speeds_mps = std::move(v);
    return *this;
  }
  ScenarioBuilder& coefficients(const droneplan::PowerCoefficients& c) {
    s.coefficients = c;
    s.preset_id.clear();
    return *this;
  }
  droneplan::Scenario build() {
    s.validate_structure();
    return s;
  }
};

/// Energy rate of the solo preset in calm air at 5 m/s, Wh per meter.
inline double solo_rate_wh_per_m() { return 85.254 / 3600.0; }

}  // namespace testkit
