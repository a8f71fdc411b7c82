#pragma once

// Test-side oracles and instance generators. Everything here is written
// independently of the library code it checks: Dijkstra recomputes what
// Floyd-Warshall produced, and the exhaustive k-center search below shares
// no code with optimal_bruteforce.

#include "fairkc/metric.hpp"
#include "fairkc/rng.hpp"

#include <Eigen/Dense>

#include <limits>
#include <queue>
#include <vector>

namespace testsupport {

/// Single-source shortest paths over 1-indexed edges, binary-heap Dijkstra.
inline std::vector<double> dijkstra(int n,
                                    const std::vector<fairkc::GraphEdge>& edges,
                                    int source) {
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const auto& e : edges) {
    if (e.u == e.v) continue;
    adj[e.u - 1].push_back({e.v - 1, e.cost});
    adj[e.v - 1].push_back({e.u - 1, e.cost});
  }
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  dist[source] = 0.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  heap.push({0.0, source});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const auto& [v, w] : adj[u]) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        heap.push({dist[v], v});
      }
    }
  }
  return dist;
}

/// Uniform random points in the unit square (or cube for dim > 2).
inline Eigen::MatrixXd random_points(fairkc::Rng& rng, int n, int dim = 2) {
  Eigen::MatrixXd points(n, dim);
  for (int i = 0; i < n; ++i) {
    for (int d = 0; d < dim; ++d) {
      points(i, d) = rng.uniform_unit();
    }
  }
  return points;
}

/// Radius of a fixed center set under nearest-center assignment.
inline double center_set_radius(const fairkc::MetricSpace& space,
                                const std::vector<int>& centers) {
  double worst = 0.0;
  for (int p = 0; p < space.size(); ++p) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const int c : centers) {
      nearest = std::min(nearest, space.distance(p, c));
    }
    worst = std::max(worst, nearest);
  }
  return worst;
}

/// Exhaustive optimal k-center radius via plain recursion; no pruning, no
/// shared code with the library's brute-force solver.
inline void enumerate_radius(const fairkc::MetricSpace& space, int k,
                             int next, std::vector<int>& chosen,
                             double& best) {
  if (static_cast<int>(chosen.size()) == k) {
    best = std::min(best, center_set_radius(space, chosen));
    return;
  }
  if (space.size() - next < k - static_cast<int>(chosen.size())) return;
  for (int c = next; c < space.size(); ++c) {
    chosen.push_back(c);
    enumerate_radius(space, k, c + 1, chosen, best);
    chosen.pop_back();
  }
}

inline double exhaustive_optimal_radius(const fairkc::MetricSpace& space,
                                        int k) {
  std::vector<int> chosen;
  double best = std::numeric_limits<double>::infinity();
  enumerate_radius(space, k, 0, chosen, best);
  return best;
}

}  // namespace testsupport
