#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "vrp/errors.hpp"
#include "vrp/model.hpp"

namespace vrp {

struct Edge {
  int u = 0;
  int v = 0;
  double w = 0.0;
};

using EdgeList = std::vector<Edge>;

struct Tour {
  std::vector<int> order;  // starts at the depot (or the subset's start vertex)
  double length = 0.0;
};

inline double tour_length(const std::vector<int>& order,
                          const DistanceMatrix& matrix) {
  if (order.size() <= 1) return 0.0;
  double len = 0.0;
  for (std::size_t t = 0; t + 1 < order.size(); ++t)
    len += matrix.at(order[t], order[t + 1]);
  len += matrix.at(order.back(), order.front());
  return len;
}

// Prim's algorithm on the complete graph over `subset`. Ties broken by
// ascending (parent, vertex) so the tree is deterministic.
inline EdgeList minimum_spanning_tree(const std::vector<int>& subset,
                                      const DistanceMatrix& matrix) {
  if (subset.empty()) throw std::invalid_argument("empty vertex subset");
  std::vector<int> verts = subset;
  std::sort(verts.begin(), verts.end());

  EdgeList tree;
  std::set<int> in_tree{verts.front()};
  std::map<int, std::pair<double, int>> best;  // vertex -> (dist, parent)
  for (std::size_t k = 1; k < verts.size(); ++k)
    best[verts[k]] = {matrix.at(verts.front(), verts[k]), verts.front()};

  while (!best.empty()) {
    int pick = -1;
    double pick_w = std::numeric_limits<double>::infinity();
    int pick_parent = -1;
    for (const auto& [v, dp] : best) {
      auto [w, parent] = dp;
      if (w < pick_w ||
          (w == pick_w && (parent < pick_parent ||
                           (parent == pick_parent && v < pick)))) {
        pick = v;
        pick_w = w;
        pick_parent = parent;
      }
    }
    tree.push_back({std::min(pick_parent, pick), std::max(pick_parent, pick), pick_w});
    in_tree.insert(pick);
    best.erase(pick);
    for (auto& [v, dp] : best) {
      double w = matrix.at(pick, v);
      if (w < dp.first) dp = {w, pick};
    }
  }
  return tree;
}

// Vertices of odd degree in the tree; the handshake lemma guarantees the
// result has even cardinality.
inline std::vector<int> odd_degree_vertices(const EdgeList& tree) {
  std::map<int, int> degree;
  for (const Edge& e : tree) {
    ++degree[e.u];
    ++degree[e.v];
  }
  std::vector<int> odd;
  for (const auto& [v, d] : degree)
    if (d % 2 == 1) odd.push_back(v);
  if (odd.size() % 2 != 0)
    throw InvariantError("odd-degree vertex set has odd cardinality");
  return odd;
}

inline constexpr std::size_t kMatchingLimit = 16;

// Exact minimum-weight perfect matching by dynamic programming over
// subsets, O(2^k * k). The 3/2 guarantee needs an exact matching, so
// inputs beyond the DP budget are rejected rather than approximated.
inline std::vector<std::pair<int, int>> min_weight_perfect_matching(
    const std::vector<int>& odd_set, const DistanceMatrix& matrix) {
  std::vector<int> verts = odd_set;
  std::sort(verts.begin(), verts.end());
  const std::size_t k = verts.size();
  if (k % 2 != 0)
    throw std::invalid_argument("perfect matching needs an even vertex count");
  if (k == 0) return {};
  if (k > kMatchingLimit)
    throw SizeLimitError("odd-degree set of size " + std::to_string(k) +
                         " exceeds the exact matching limit of " +
                         std::to_string(kMatchingLimit) +
                         "; tighten clustering parameters");

  const std::uint32_t full = (1u << k) - 1u;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dp(full + 1u, inf);
  std::vector<int> partner(full + 1u, -1);  // mate chosen for the lowest bit
  dp[0] = 0.0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    int a = 0;
    while (!(mask & (1u << a))) ++a;
    for (int b = a + 1; b < static_cast<int>(k); ++b) {
      if (!(mask & (1u << b))) continue;
      std::uint32_t rest = mask & ~(1u << a) & ~(1u << b);
      double cand = dp[rest] + matrix.at(verts[a], verts[b]);
      if (cand < dp[mask]) {
        dp[mask] = cand;
        partner[mask] = b;
      }
    }
  }

  std::vector<std::pair<int, int>> pairs;
  std::uint32_t mask = full;
  while (mask) {
    int a = 0;
    while (!(mask & (1u << a))) ++a;
    int b = partner[mask];
    pairs.emplace_back(verts[a], verts[b]);
    mask &= ~(1u << a) & ~(1u << b);
  }
  return pairs;
}

inline double matching_weight(const std::vector<std::pair<int, int>>& pairs,
                              const DistanceMatrix& matrix) {
  double w = 0.0;
  for (const auto& [u, v] : pairs) w += matrix.at(u, v);
  return w;
}

// Hierholzer's algorithm on the multigraph union of tree and matching
// edges. Every vertex has even degree there, so a circuit through every
// edge exists; the walk starts and ends at `start`.
inline std::vector<int> eulerian_circuit(const EdgeList& tree,
                                         const std::vector<std::pair<int, int>>& matching,
                                         int start) {
  struct MultiEdge {
    int u, v;
    bool used = false;
  };
  std::vector<MultiEdge> edges;
  for (const Edge& e : tree) edges.push_back({e.u, e.v});
  for (const auto& [u, v] : matching) edges.push_back({u, v});

  std::map<int, std::vector<int>> incident;  // vertex -> edge indices
  for (std::size_t idx = 0; idx < edges.size(); ++idx) {
    incident[edges[idx].u].push_back(static_cast<int>(idx));
    incident[edges[idx].v].push_back(static_cast<int>(idx));
  }
  for (const auto& [v, inc] : incident)
    if (inc.size() % 2 != 0)
      throw InvariantError("vertex " + std::to_string(v) +
                           " has odd degree in the Euler multigraph");
  if (!incident.count(start) && !edges.empty())
    throw std::invalid_argument("start vertex not in multigraph");
  if (edges.empty()) return {start};

  std::map<int, std::size_t> cursor;
  std::vector<int> stack{start};
  std::vector<int> walk;
  while (!stack.empty()) {
    int v = stack.back();
    auto& inc = incident[v];
    std::size_t& cur = cursor[v];
    while (cur < inc.size() && edges[inc[cur]].used) ++cur;
    if (cur == inc.size()) {
      walk.push_back(v);
      stack.pop_back();
    } else {
      MultiEdge& e = edges[inc[cur]];
      e.used = true;
      stack.push_back(e.u == v ? e.v : e.u);
    }
  }
  std::reverse(walk.begin(), walk.end());
  return walk;
}

// Keeps the first occurrence of each vertex in the closed walk and closes
// the cycle; by the triangle inequality this never lengthens the walk.
inline Tour shortcut(const std::vector<int>& walk, const DistanceMatrix& matrix) {
  if (walk.empty()) throw std::invalid_argument("empty walk");
  Tour tour;
  std::set<int> seen;
  for (int v : walk)
    if (seen.insert(v).second) tour.order.push_back(v);
  tour.length = tour_length(tour.order, matrix);
  return tour;
}

inline constexpr std::size_t kBruteForceTspLimit = 11;

// Exact TSP oracle: enumerates all orders of the non-start vertices in
// lexicographic order, keeping strictly better tours, so the optimum with
// the lexicographically smallest order wins.
inline Tour brute_force_tsp(const std::vector<int>& subset,
                            const DistanceMatrix& matrix) {
  if (subset.empty()) throw std::invalid_argument("empty vertex subset");
  if (subset.size() > kBruteForceTspLimit)
    throw SizeLimitError("brute-force TSP limited to " +
                         std::to_string(kBruteForceTspLimit) + " vertices, got " +
                         std::to_string(subset.size()));
  std::vector<int> verts = subset;
  std::sort(verts.begin(), verts.end());
  const std::size_t k = verts.size();

  // Dense local cost table; id-keyed lookups are too slow inside the
  // factorial loop.
  std::vector<double> cost(k * k, 0.0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      cost[a * k + b] = matrix.at(verts[a], verts[b]);

  std::vector<std::size_t> rest;
  for (std::size_t i = 1; i < k; ++i) rest.push_back(i);

  Tour best;
  best.order = {verts.front()};
  best.length = 0.0;
  if (k == 1) return best;

  best.length = std::numeric_limits<double>::infinity();
  do {
    double len = cost[rest.front()];  // depot (local 0) to first
    std::size_t prev = rest.front();
    for (std::size_t t = 1; t < rest.size(); ++t) {
      len += cost[prev * k + rest[t]];
      prev = rest[t];
    }
    len += cost[prev * k];  // back to depot
    if (len < best.length - kTol) {
      best.length = len;
      best.order.resize(1);
      for (std::size_t idx : rest) best.order.push_back(verts[idx]);
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

// Full Christofides pipeline over `subset` (which must contain the depot,
// id 0): MST, odd set, exact matching, Euler circuit, shortcut. Subsets
// of one or two vertices are returned directly.
inline Tour christofides_tour(const std::vector<int>& subset,
                              const DistanceMatrix& matrix) {
  if (subset.empty()) throw std::invalid_argument("empty vertex subset");
  if (std::find(subset.begin(), subset.end(), 0) == subset.end())
    throw std::invalid_argument("subset must contain the depot");
  std::vector<int> verts = subset;
  std::sort(verts.begin(), verts.end());

  if (verts.size() <= 2) {
    Tour tour;
    tour.order = verts;  // depot first (id 0 sorts lowest)
    tour.length = tour_length(tour.order, matrix);
    return tour;
  }

  EdgeList tree = minimum_spanning_tree(verts, matrix);
  std::vector<int> odd = odd_degree_vertices(tree);
  auto matching = min_weight_perfect_matching(odd, matrix);
  std::vector<int> walk = eulerian_circuit(tree, matching, 0);
  return shortcut(walk, matrix);
}

}  // namespace vrp
