#include "fairkc/unfair.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>

namespace fairkc {

namespace {

void check_k(const MetricSpace& space, int k) {
  if (k < 1 || k > space.size()) {
    throw std::invalid_argument("k must be in [1, n]; got k=" +
                                std::to_string(k) + " with n=" +
                                std::to_string(space.size()));
  }
}

void check_point(const MetricSpace& space, int p, const char* what) {
  if (p < 0 || p >= space.size()) {
    throw std::invalid_argument(std::string(what) + " index " +
                                std::to_string(p) + " out of range");
  }
}

}  // namespace

Clustering assign_to_nearest(const MetricSpace& space,
                             const std::vector<int>& centers) {
  if (centers.empty()) {
    throw std::invalid_argument("assign_to_nearest: empty center list");
  }
  std::unordered_set<int> seen;
  for (int c : centers) {
    check_point(space, c, "center");
    if (!seen.insert(c).second) {
      throw std::invalid_argument("assign_to_nearest: duplicate center " +
                                  std::to_string(c));
    }
  }

  const int n = space.size();
  const int k = static_cast<int>(centers.size());
  Clustering result;
  result.centers = centers;
  result.assignment.assign(n, -1);

  // Centers are pinned to their own cluster; everyone else goes to the
  // nearest center, ties to the lowest cluster index.
  for (int i = 0; i < k; ++i) {
    result.assignment[centers[i]] = i;
  }
  for (int p = 0; p < n; ++p) {
    if (result.assignment[p] >= 0) continue;
    int best = 0;
    double best_d = space.distance(p, centers[0]);
    for (int i = 1; i < k; ++i) {
      const double d = space.distance(p, centers[i]);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    result.assignment[p] = best;
  }

  result.cluster_radii.assign(k, 0.0);
  for (int p = 0; p < n; ++p) {
    const int c = result.assignment[p];
    result.cluster_radii[c] =
        std::max(result.cluster_radii[c], space.distance(p, centers[c]));
  }
  result.max_radius = 0.0;
  for (double r : result.cluster_radii) {
    result.max_radius = std::max(result.max_radius, r);
  }
  return result;
}

Clustering gonzalez(const MetricSpace& space, int k, int start) {
  check_k(space, k);
  check_point(space, start, "start");

  const int n = space.size();
  std::vector<int> centers;
  centers.reserve(k);
  centers.push_back(start);

  // min_dist[p] = distance from p to the current center set
  Eigen::VectorXd min_dist = space.distances().col(start);
  for (int round = 1; round < k; ++round) {
    int farthest = 0;
    double far_d = min_dist[0];
    for (int p = 1; p < n; ++p) {
      if (min_dist[p] > far_d) {
        far_d = min_dist[p];
        farthest = p;
      }
    }
    centers.push_back(farthest);
    min_dist = min_dist.cwiseMin(space.distances().col(farthest));
  }
  return assign_to_nearest(space, centers);
}

Clustering gonzalez_best_start(const MetricSpace& space, int k, int threads) {
  check_k(space, k);
  const int n = space.size();
  threads = std::clamp(threads, 1, n);

  struct Best {
    double radius = std::numeric_limits<double>::infinity();
    int start = -1;
  };
  std::vector<Best> local(threads);

  auto run_range = [&](int worker, int first, int last) {
    Best& best = local[worker];
    for (int s = first; s < last; ++s) {
      const Clustering c = gonzalez(space, k, s);
      if (c.max_radius < best.radius) {
        best.radius = c.max_radius;
        best.start = s;
      }
    }
  };

  if (threads == 1) {
    run_range(0, 0, n);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (n + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const int first = std::min(n, w * chunk);
      const int last = std::min(n, first + chunk);
      pool.emplace_back(run_range, w, first, last);
    }
    for (auto& t : pool) t.join();
  }

  // Workers own ascending start ranges, so scanning them in order with a
  // strict improvement keeps the lowest start index on radius ties.
  Best winner;
  for (const Best& b : local) {
    if (b.start >= 0 && b.radius < winner.radius) {
      winner = b;
    }
  }
  return gonzalez(space, k, winner.start);
}

namespace {

// Distance of the (k+1)-th farthest-first insertion. The first k+1 traversal
// points are pairwise at least this far apart, so any r below half of it
// admits no dominating set of size k in the bottleneck graph at all.
double packing_lower_bound(const MetricSpace& space, int k) {
  const int n = space.size();
  if (k + 1 > n) return 0.0;
  Eigen::VectorXd min_dist = space.distances().col(0);
  double insertion = 0.0;
  for (int round = 1; round <= k; ++round) {
    int farthest = 0;
    insertion = min_dist[0];
    for (int p = 1; p < n; ++p) {
      if (min_dist[p] > insertion) {
        insertion = min_dist[p];
        farthest = p;
      }
    }
    min_dist = min_dist.cwiseMin(space.distances().col(farthest));
  }
  return insertion / 2.0;
}

}  // namespace

Clustering scr(const MetricSpace& space, int k) {
  check_k(space, k);
  const int n = space.size();
  const Eigen::MatrixXd& dist = space.distances();

  // Pairs sorted by distance drive the candidate scan; per-vertex neighbor
  // lists sorted by distance make each closed neighborhood a prefix.
  struct Pair {
    double distance;
    int u, v;
  };
  std::vector<Pair> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int j = 0; j < n; ++j) {
    for (int i = j + 1; i < n; ++i) {
      pairs.push_back({dist(i, j), i, j});
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const Pair& a, const Pair& b) { return a.distance < b.distance; });

  std::vector<std::vector<int>> neighbors_by_distance(n);
  for (int v = 0; v < n; ++v) {
    std::vector<int>& order = neighbors_by_distance[v];
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    const double* col = dist.col(v).data();
    std::sort(order.begin(), order.end(),
              [col](int a, int b) { return col[a] < col[b]; });
  }

  // prefix_len[v] = |closed neighborhood of v| at the current radius.
  // prefix_count is its histogram, used to bound the best possible greedy
  // coverage (sum of the k largest neighborhoods) in O(k) per candidate.
  std::vector<int> prefix_len(n, 1);
  std::vector<int> prefix_count(n + 1, 0);
  prefix_count[1] = n;
  int max_prefix = 1;

  auto top_k_coverage = [&]() {
    long long sum = 0;
    int need = k;
    for (int value = max_prefix; value >= 1 && need > 0; --value) {
      const int take = std::min(prefix_count[value], need);
      sum += static_cast<long long>(take) * value;
      need -= take;
    }
    return sum;
  };

  const double min_useful_radius = packing_lower_bound(space, k);

  std::vector<int> cover_count(n);
  std::vector<char> covered(n);
  std::vector<int> selected;

  // Greedy dominating set of the bottleneck graph at the current radius:
  // repeatedly take the vertex covering the most still-uncovered vertices in
  // its closed neighborhood (ties to the lowest index). Returns false when
  // more than k vertices would be needed.
  auto greedy_dominates = [&]() {
    std::copy(prefix_len.begin(), prefix_len.end(), cover_count.begin());
    std::fill(covered.begin(), covered.end(), 0);
    selected.clear();
    int uncovered = n;
    while (uncovered > 0) {
      if (static_cast<int>(selected.size()) == k) return false;
      int pick = 0;
      for (int v = 1; v < n; ++v) {
        if (cover_count[v] > cover_count[pick]) pick = v;
      }
      selected.push_back(pick);
      const std::vector<int>& reach = neighbors_by_distance[pick];
      for (int i = 0; i < prefix_len[pick]; ++i) {
        const int u = reach[i];
        if (covered[u]) continue;
        covered[u] = 1;
        --uncovered;
        const std::vector<int>& back = neighbors_by_distance[u];
        for (int j = 0; j < prefix_len[u]; ++j) {
          --cover_count[back[j]];
        }
      }
    }
    return true;
  };

  // Increasing scan over the distinct distance values (r = 0 first). Radii
  // that provably cannot work are skipped without running the greedy: below
  // the packing bound no k-vertex dominating set exists, and k picks can
  // never cover n vertices while the k largest neighborhoods sum below n.
  std::size_t next_pair = 0;
  double radius = 0.0;
  while (true) {
    while (next_pair < pairs.size() && pairs[next_pair].distance == radius) {
      for (const int endpoint : {pairs[next_pair].u, pairs[next_pair].v}) {
        --prefix_count[prefix_len[endpoint]];
        ++prefix_count[++prefix_len[endpoint]];
        max_prefix = std::max(max_prefix, prefix_len[endpoint]);
      }
      ++next_pair;
    }
    if (radius >= min_useful_radius && top_k_coverage() >= n &&
        greedy_dominates()) {
      return assign_to_nearest(space, selected);
    }
    if (next_pair == pairs.size()) break;
    radius = pairs[next_pair].distance;
  }

  // The largest distance dominates everything from any single vertex, so the
  // scan above always terminates before reaching this point.
  throw std::logic_error("scr: no feasible candidate radius");
}

Clustering optimal_bruteforce(const MetricSpace& space, int k) {
  check_k(space, k);
  const int n = space.size();

  double combos = 1.0;
  for (int i = 0; i < k; ++i) {
    combos *= static_cast<double>(n - i) / (i + 1);
    if (combos > 1e7) {
      throw std::invalid_argument(
          "optimal_bruteforce: C(n, k) exceeds 10^7; instance too large");
    }
  }

  const Eigen::MatrixXd& dist = space.distances();
  std::vector<int> combo(k);
  for (int i = 0; i < k; ++i) combo[i] = i;

  std::vector<int> best_centers;
  double best_radius = std::numeric_limits<double>::infinity();

  auto radius_of = [&](const std::vector<int>& centers, double cutoff) {
    double worst = 0.0;
    for (int p = 0; p < n; ++p) {
      double nearest = dist(p, centers[0]);
      for (int i = 1; i < k; ++i) {
        nearest = std::min(nearest, dist(p, centers[i]));
      }
      worst = std::max(worst, nearest);
      if (worst >= cutoff) return worst;  // cannot strictly improve
    }
    return worst;
  };

  while (true) {
    const double r = radius_of(combo, best_radius);
    if (r < best_radius) {
      best_radius = r;
      best_centers = combo;
    }
    int i = k - 1;
    while (i >= 0 && combo[i] == n - k + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }
  return assign_to_nearest(space, best_centers);
}

void validate_clustering(const MetricSpace& space, const Clustering& c) {
  const int n = space.size();
  const int k = c.cluster_count();
  if (k == 0 || k > n) {
    throw std::invalid_argument("clustering: bad cluster count");
  }
  if (static_cast<int>(c.assignment.size()) != n) {
    throw std::invalid_argument("clustering: assignment size != n");
  }
  if (static_cast<int>(c.cluster_radii.size()) != k) {
    throw std::invalid_argument("clustering: radius vector size != k");
  }
  std::unordered_set<int> seen;
  for (int i = 0; i < k; ++i) {
    check_point(space, c.centers[i], "center");
    if (!seen.insert(c.centers[i]).second) {
      throw std::invalid_argument("clustering: duplicate center");
    }
    if (c.assignment[c.centers[i]] != i) {
      throw std::invalid_argument(
          "clustering: center not assigned to its own cluster");
    }
  }
  std::vector<double> radii(k, 0.0);
  for (int p = 0; p < n; ++p) {
    const int a = c.assignment[p];
    if (a < 0 || a >= k) {
      throw std::invalid_argument("clustering: assignment out of range");
    }
    radii[a] = std::max(radii[a], space.distance(p, c.centers[a]));
  }
  double max_radius = 0.0;
  for (int i = 0; i < k; ++i) {
    if (radii[i] != c.cluster_radii[i]) {
      throw std::invalid_argument("clustering: stored radius mismatch");
    }
    max_radius = std::max(max_radius, radii[i]);
  }
  if (max_radius != c.max_radius) {
    throw std::invalid_argument("clustering: stored max radius mismatch");
  }
}

Clustering run_base_algorithm(const MetricSpace& space, int k,
                              BaseAlgorithm algorithm, int threads) {
  switch (algorithm) {
    case BaseAlgorithm::Gonz1:
      return gonzalez(space, k, 0);
    case BaseAlgorithm::GonzPlus:
      return gonzalez_best_start(space, k, threads);
    case BaseAlgorithm::Scr:
      return scr(space, k);
    case BaseAlgorithm::BruteForce:
      return optimal_bruteforce(space, k);
  }
  throw std::logic_error("run_base_algorithm: unknown algorithm");
}

std::string algorithm_name(BaseAlgorithm algorithm) {
  switch (algorithm) {
    case BaseAlgorithm::Gonz1:
      return "gonz1";
    case BaseAlgorithm::GonzPlus:
      return "gonzplus";
    case BaseAlgorithm::Scr:
      return "scr";
    case BaseAlgorithm::BruteForce:
      return "bruteforce";
  }
  throw std::logic_error("algorithm_name: unknown algorithm");
}

BaseAlgorithm parse_algorithm(const std::string& name) {
  if (name == "gonz1") return BaseAlgorithm::Gonz1;
  if (name == "gonzplus") return BaseAlgorithm::GonzPlus;
  if (name == "scr") return BaseAlgorithm::Scr;
  if (name == "bruteforce") return BaseAlgorithm::BruteForce;
  throw std::invalid_argument("unknown algorithm: " + name);
}

}  // namespace fairkc
