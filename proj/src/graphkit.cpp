#include "droneplan/graphkit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "droneplan/errors.hpp"

namespace droneplan::graphkit {

namespace {

// Strictly-less with the shared tolerance: a wins when clearly smaller, or
// when equal within eps and its edge id is lexicographically smaller.
bool less_by_weight_then_id(double wa, int ua, int va, double wb, int ub, int vb) {
  if (wa < wb - kWeightEps) return true;
  if (wb < wa - kWeightEps) return false;
  return std::pair(ua, va) < std::pair(ub, vb);
}

}  // namespace

WeightedGraph::WeightedGraph(int n, double fill) : n_(n) {
  if (n <= 0) throw ContractViolationError("graph needs at least one vertex");
  w_.assign(static_cast<size_t>(n) * n, fill);
  for (int i = 0; i < n; ++i) w_[static_cast<size_t>(i) * n + i] = 0.0;
}

void WeightedGraph::set_weight(int i, int j, double w) {
  if (i == j) {
    if (w != 0.0) throw ContractViolationError("diagonal weights must be zero");
    return;
  }
  w_[static_cast<size_t>(i) * n_ + j] = w;
  w_[static_cast<size_t>(j) * n_ + i] = w;
}

void WeightedGraph::validate() const {
  for (int i = 0; i < n_; ++i) {
    if (weight(i, i) != 0.0)
      throw ContractViolationError("diagonal weights must be zero");
    for (int j = 0; j < n_; ++j) {
      const double w = weight(i, j);
      if (std::isnan(w) || w < 0.0)
        throw ContractViolationError("weights must be nonnegative");
      if (w != weight(j, i))
        throw ContractViolationError("weights must be symmetric");
    }
  }
}

std::vector<int> PathTable::reconstruct(int i, int j) const {
  if (i == j) return {i};
  if (hop(i, j) < 0) return {};
  std::vector<int> path{i};
  int cur = i;
  while (cur != j) {
    cur = hop(cur, j);
    path.push_back(cur);
    if (path.size() > static_cast<size_t>(n) + 1)
      throw ContractViolationError("cyclic next-hop table");
  }
  return path;
}

PathTable all_pairs_shortest(const WeightedGraph& g) {
  g.validate();
  const int n = g.size();
  PathTable t;
  t.n = n;
  t.dist.assign(static_cast<size_t>(n) * n, kInf);
  t.next.assign(static_cast<size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double w = g.weight(i, j);
      if (std::isfinite(w) || i == j) {
        t.dist[static_cast<size_t>(i) * n + j] = (i == j) ? 0.0 : w;
        t.next[static_cast<size_t>(i) * n + j] = j;
      }
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      const double dik = t.d(i, k);
      if (!std::isfinite(dik)) continue;
      for (int j = 0; j < n; ++j) {
        const double cand = dik + t.d(k, j);
        if (cand < t.d(i, j) - kWeightEps) {
          t.dist[static_cast<size_t>(i) * n + j] = cand;
          t.next[static_cast<size_t>(i) * n + j] = t.hop(i, k);
        }
      }
    }
  }
  return t;
}

std::vector<Edge> minimum_spanning_tree(const WeightedGraph& g) {
  g.validate();
  const int n = g.size();
  std::vector<bool> in_tree(n, false);
  std::vector<double> best(n, kInf);
  std::vector<int> parent(n, -1);
  in_tree[0] = true;
  for (int j = 1; j < n; ++j) {
    best[j] = g.weight(0, j);
    parent[j] = std::isfinite(best[j]) ? 0 : -1;
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(n) - 1);
  for (int step = 1; step < n; ++step) {
    int pick = -1;
    for (int j = 0; j < n; ++j) {
      if (in_tree[j] || !std::isfinite(best[j])) continue;
      if (pick < 0 ||
          less_by_weight_then_id(best[j], std::min(parent[j], j),
                                 std::max(parent[j], j), best[pick],
                                 std::min(parent[pick], pick),
                                 std::max(parent[pick], pick))) {
        pick = j;
      }
    }
    if (pick < 0)
      throw NoSpanningTreeError("graph is disconnected; no spanning tree");
    in_tree[pick] = true;
    edges.push_back({std::min(parent[pick], pick), std::max(parent[pick], pick)});
    for (int j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const double w = g.weight(pick, j);
      if (!std::isfinite(w)) continue;
      if (parent[j] < 0 ||
          less_by_weight_then_id(w, std::min(pick, j), std::max(pick, j),
                                 best[j], std::min(parent[j], j),
                                 std::max(parent[j], j))) {
        best[j] = w;
        parent[j] = pick;
      }
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  return edges;
}

namespace {

Matching matching_exact_dp(const WeightedGraph& g, const std::vector<int>& sub) {
  const int k = static_cast<int>(sub.size());
  const size_t full = size_t{1} << k;
  std::vector<double> dp(full, kInf);
  std::vector<int> choice(full, -1);  // partner of the lowest set bit
  dp[0] = 0.0;
  for (size_t mask = 1; mask < full; ++mask) {
    const int i = std::countr_zero(mask);
    if ((std::popcount(mask) & 1) != 0) continue;
    for (int j = i + 1; j < k; ++j) {
      if (!(mask >> j & 1)) continue;
      const double w = g.weight(sub[i], sub[j]);
      if (!std::isfinite(w)) continue;
      const size_t rest = mask & ~(size_t{1} << i) & ~(size_t{1} << j);
      if (!std::isfinite(dp[rest])) continue;
      const double cand = dp[rest] + w;
      if (cand < dp[mask] - kWeightEps) {
        dp[mask] = cand;
        choice[mask] = j;
      }
    }
  }
  if (!std::isfinite(dp[full - 1]))
    throw ContractViolationError("matching subset has unreachable pairs");
  Matching m;
  m.exact = true;
  size_t mask = full - 1;
  while (mask) {
    const int i = std::countr_zero(mask);
    const int j = choice[mask];
    m.pairs.push_back({std::min(sub[i], sub[j]), std::max(sub[i], sub[j])});
    m.total_weight += g.weight(sub[i], sub[j]);
    mask &= ~(size_t{1} << i) & ~(size_t{1} << j);
  }
  std::sort(m.pairs.begin(), m.pairs.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  return m;
}

Matching matching_greedy(const WeightedGraph& g, const std::vector<int>& sub) {
  const int k = static_cast<int>(sub.size());
  std::vector<bool> used(k, false);
  std::vector<std::pair<int, int>> pairs;  // indices into sub
  for (int round = 0; round < k / 2; ++round) {
    int bi = -1, bj = -1;
    for (int i = 0; i < k; ++i) {
      if (used[i]) continue;
      for (int j = i + 1; j < k; ++j) {
        if (used[j]) continue;
        const double w = g.weight(sub[i], sub[j]);
        if (!std::isfinite(w)) continue;
        if (bi < 0 || less_by_weight_then_id(w, sub[i], sub[j],
                                             g.weight(sub[bi], sub[bj]),
                                             sub[bi], sub[bj])) {
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0)
      throw ContractViolationError("matching subset has unreachable pairs");
    used[bi] = used[bj] = true;
    pairs.emplace_back(bi, bj);
  }
  // Pairwise swap improvement until stable.
  bool improved = true;
  int guard = k * k + 16;
  while (improved && guard-- > 0) {
    improved = false;
    for (size_t a = 0; a < pairs.size() && !improved; ++a) {
      for (size_t b = a + 1; b < pairs.size() && !improved; ++b) {
        auto [a1, a2] = pairs[a];
        auto [b1, b2] = pairs[b];
        const double cur =
            g.weight(sub[a1], sub[a2]) + g.weight(sub[b1], sub[b2]);
        const double alt1 =
            g.weight(sub[a1], sub[b1]) + g.weight(sub[a2], sub[b2]);
        const double alt2 =
            g.weight(sub[a1], sub[b2]) + g.weight(sub[a2], sub[b1]);
        if (alt1 < cur - kWeightEps && alt1 <= alt2 + kWeightEps) {
          pairs[a] = {a1, b1};
          pairs[b] = {a2, b2};
          improved = true;
        } else if (alt2 < cur - kWeightEps) {
          pairs[a] = {a1, b2};
          pairs[b] = {a2, b1};
          improved = true;
        }
      }
    }
  }
  Matching m;
  m.exact = false;
  for (auto [i, j] : pairs) {
    m.pairs.push_back({std::min(sub[i], sub[j]), std::max(sub[i], sub[j])});
    m.total_weight += g.weight(sub[i], sub[j]);
  }
  std::sort(m.pairs.begin(), m.pairs.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  return m;
}

}  // namespace

Matching min_weight_perfect_matching(const WeightedGraph& g,
                                     const std::vector<int>& subset,
                                     int exact_limit) {
  if (subset.size() % 2 != 0) {
    throw ContractViolationError("perfect matching needs an even vertex count, got " +
                                 std::to_string(subset.size()));
  }
  std::vector<int> sub = subset;
  std::sort(sub.begin(), sub.end());
  for (int v : sub) {
    if (v < 0 || v >= g.size())
      throw ContractViolationError("matching subset vertex out of range");
  }
  if (sub.empty()) return Matching{};
  if (static_cast<int>(sub.size()) <= exact_limit) {
    return matching_exact_dp(g, sub);
  }
  return matching_greedy(g, sub);
}

std::vector<int> eulerian_tour(int n, const std::vector<Edge>& edges, int start) {
  if (start < 0 || start >= n)
    throw ContractViolationError("eulerian start vertex out of range");
  // Adjacency with explicit edge slots so parallel edges are each used once.
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbour, edge id)
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    const auto& [u, v] = edges[static_cast<size_t>(e)];
    if (u < 0 || u >= n || v < 0 || v >= n || u == v)
      throw ContractViolationError("bad multigraph edge");
    adj[u].emplace_back(v, e);
    adj[v].emplace_back(u, e);
  }
  for (int v = 0; v < n; ++v) {
    if (adj[v].size() % 2 != 0)
      throw NotEulerianError("vertex " + std::to_string(v) + " has odd degree");
    std::sort(adj[v].begin(), adj[v].end());
  }
  if (edges.empty()) return {start};
  if (adj[start].empty())
    throw NotEulerianError("start vertex touches no edge");

  std::vector<bool> used(edges.size(), false);
  std::vector<size_t> cursor(n, 0);
  std::vector<int> stack{start};
  std::vector<int> tour;
  while (!stack.empty()) {
    const int v = stack.back();
    auto& c = cursor[static_cast<size_t>(v)];
    while (c < adj[v].size() && used[static_cast<size_t>(adj[v][c].second)]) ++c;
    if (c == adj[v].size()) {
      tour.push_back(v);
      stack.pop_back();
    } else {
      used[static_cast<size_t>(adj[v][c].second)] = true;
      stack.push_back(adj[v][c].first);
    }
  }
  if (tour.size() != edges.size() + 1)
    throw NotEulerianError("edge multiset is not connected");
  std::reverse(tour.begin(), tour.end());
  return tour;
}

}  // namespace droneplan::graphkit
