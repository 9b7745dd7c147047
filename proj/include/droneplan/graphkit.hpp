#pragma once

#include <limits>
#include <utility>
#include <vector>

namespace droneplan::graphkit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Weight comparison tolerance below which ties fall through to lexicographic
/// edge ids, keeping plans reproducible across platforms.
inline constexpr double kWeightEps = 1e-12;

/// Dense symmetric weighted graph. Entries may be +inf (absent edge).
class WeightedGraph {
public:
  WeightedGraph(int n, double fill = kInf);

  int size() const { return n_; }
  double weight(int i, int j) const { return w_[static_cast<size_t>(i) * n_ + j]; }
  /// Sets both (i,j) and (j,i). Diagonal writes must be zero.
  void set_weight(int i, int j, double w);

  /// Throws ContractViolationError on negative weights, a nonzero diagonal,
  /// or non-finite entries other than +inf.
  void validate() const;

private:
  int n_;
  std::vector<double> w_;
};

/// All-pairs shortest distances plus a next-hop table for path reconstruction.
struct PathTable {
  int n = 0;
  std::vector<double> dist;  // n*n
  std::vector<int> next;     // n*n, first hop of the shortest i->j path, -1 if none

  double d(int i, int j) const { return dist[static_cast<size_t>(i) * n + j]; }
  int hop(int i, int j) const { return next[static_cast<size_t>(i) * n + j]; }

  /// Vertex sequence i..j along the stored shortest path. Empty if unreachable.
  std::vector<int> reconstruct(int i, int j) const;
};

/// Floyd-Warshall over the dense graph. Ties favour the path found first
/// (fewer, lower-numbered intermediate vertices); unreachable pairs stay +inf.
PathTable all_pairs_shortest(const WeightedGraph& g);

/// Undirected edge, endpoints ordered u < v.
struct Edge {
  int u = 0;
  int v = 0;
  bool operator==(const Edge&) const = default;
};

/// Prim's algorithm with eps-then-lexicographic tie-breaking. Throws
/// NoSpanningTreeError when the finite-weight graph is disconnected.
std::vector<Edge> minimum_spanning_tree(const WeightedGraph& g);

struct Matching {
  std::vector<Edge> pairs;
  bool exact = true;     ///< false when the greedy fallback was used
  double total_weight = 0.0;
};

inline constexpr int kExactMatchingLimit = 18;

/// Minimum-weight perfect matching on an even-sized vertex subset. Exact via
/// bitmask DP for subsets up to exact_limit vertices; larger subsets fall
/// back to greedy pairing plus pairwise-swap improvement and report
/// exact = false.
Matching min_weight_perfect_matching(const WeightedGraph& g,
                                     const std::vector<int>& subset,
                                     int exact_limit = kExactMatchingLimit);

/// Closed walk through every multigraph edge exactly once, starting and
/// ending at `start`, choosing the lowest-numbered neighbour first. Throws
/// NotEulerianError on odd degrees or a disconnected edge support.
std::vector<int> eulerian_tour(int n, const std::vector<Edge>& edges, int start);

}  // namespace droneplan::graphkit
