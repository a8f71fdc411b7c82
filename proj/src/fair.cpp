#include "fairkc/fair.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fairkc {

int ExpandedClustering::nonempty_count() const {
  int count = 0;
  for (const auto& members : clusters) {
    count += !members.empty();
  }
  return count;
}

double exponential_from_uniform(double lambda, double unit) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("exponential rate must be positive");
  }
  return -std::log(unit) / lambda;
}

double sample_expansion(double lambda, Rng& rng) {
  return exponential_from_uniform(lambda, rng.uniform_open_closed());
}

ExpandedClustering fair_assign_prevalidated(const MetricSpace& space,
                                            const Clustering& base,
                                            const FairConfig& config,
                                            Rng& rng) {
  const int n = space.size();
  const int k = base.cluster_count();
  const Eigen::MatrixXd& dist = space.distances();

  // R = 0 (k = n on distinct points) degenerates cleanly: lambda is +inf and
  // every draw comes out 0, so clusters capture only co-located points.
  const double lambda = 1.0 / (config.psi * base.max_radius);

  ExpandedClustering out;
  out.order.resize(k);
  std::iota(out.order.begin(), out.order.end(), 0);
  if (config.order_policy == OrderPolicy::UniformRandom) {
    rng.shuffle(out.order);
  }

  out.draws.assign(k, 0.0);
  out.clusters.assign(k, {});
  out.final_centers.assign(k, -1);
  out.final_radii.assign(k, 0.0);
  out.assignment.assign(n, -1);
  out.max_radius = 0.0;

  std::vector<char> clustered(n, 0);
  for (const int cluster : out.order) {
    const int center = base.centers[cluster];
    const double draw = sample_expansion(lambda, rng);
    out.draws[cluster] = draw;
    const double reach = base.cluster_radii[cluster] + draw;
    const bool center_was_free = !clustered[center];

    std::vector<int>& members = out.clusters[cluster];
    const double* center_col = dist.col(center).data();
    for (int p = 0; p < n; ++p) {
      if (!clustered[p] && center_col[p] <= reach) {
        clustered[p] = 1;
        members.push_back(p);
        out.assignment[p] = cluster;
      }
    }
    if (members.empty()) continue;

    int final_center = center;
    if (!center_was_free) {
      // The original center already belongs to an earlier cluster; promote
      // the member whose cluster radius would be smallest.
      double best_radius = std::numeric_limits<double>::infinity();
      for (const int candidate : members) {
        const double* cand_col = dist.col(candidate).data();
        double radius = 0.0;
        for (const int m : members) {
          radius = std::max(radius, cand_col[m]);
        }
        if (radius < best_radius) {
          best_radius = radius;
          final_center = candidate;
        }
      }
    }
    out.final_centers[cluster] = final_center;

    const double* final_col = dist.col(final_center).data();
    double radius = 0.0;
    for (const int m : members) {
      radius = std::max(radius, final_col[m]);
    }
    out.final_radii[cluster] = radius;
    out.max_radius = std::max(out.max_radius, radius);
  }

  return out;
}

ExpandedClustering fair_assign(const MetricSpace& space,
                               const Clustering& base,
                               const FairConfig& config, Rng& rng) {
  if (!(config.psi > 0.0)) {
    throw std::invalid_argument("fair_assign: psi must be positive");
  }
  validate_clustering(space, base);
  return fair_assign_prevalidated(space, base, config, rng);
}

ExpandedClustering fair_solve(const MetricSpace& space, int k,
                              BaseAlgorithm base_algorithm,
                              const FairConfig& config) {
  const Clustering base = run_base_algorithm(space, k, base_algorithm);
  Rng rng(config.rng_seed);
  return fair_assign(space, base, config, rng);
}

Clustering to_clustering(const ExpandedClustering& expanded) {
  Clustering c;
  std::vector<int> compact(expanded.clusters.size(), -1);
  for (std::size_t i = 0; i < expanded.clusters.size(); ++i) {
    if (expanded.clusters[i].empty()) continue;
    compact[i] = c.cluster_count();
    c.centers.push_back(expanded.final_centers[i]);
    c.cluster_radii.push_back(expanded.final_radii[i]);
  }
  c.assignment.resize(expanded.assignment.size());
  for (std::size_t p = 0; p < expanded.assignment.size(); ++p) {
    c.assignment[p] = compact[expanded.assignment[p]];
  }
  c.max_radius = expanded.max_radius;
  return c;
}

void validate_expansion(const MetricSpace& space, const Clustering& base,
                        const ExpandedClustering& expanded) {
  const int n = space.size();
  const int k = base.cluster_count();
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("expansion: " + what);
  };

  if (static_cast<int>(expanded.order.size()) != k ||
      static_cast<int>(expanded.draws.size()) != k ||
      static_cast<int>(expanded.clusters.size()) != k ||
      static_cast<int>(expanded.final_centers.size()) != k ||
      static_cast<int>(expanded.final_radii.size()) != k ||
      static_cast<int>(expanded.assignment.size()) != n) {
    fail("field sizes inconsistent with base clustering");
  }

  std::vector<char> order_seen(k, 0);
  for (int id : expanded.order) {
    if (id < 0 || id >= k || order_seen[id]) fail("order is not a permutation");
    order_seen[id] = 1;
  }
  for (double x : expanded.draws) {
    if (!(x >= 0.0)) fail("negative expansion draw");
  }

  // Position of each cluster in the processing order.
  std::vector<int> position(k);
  for (int pos = 0; pos < k; ++pos) {
    position[expanded.order[pos]] = pos;
  }

  std::vector<char> member_seen(n, 0);
  int member_total = 0;
  for (int cluster = 0; cluster < k; ++cluster) {
    const auto& members = expanded.clusters[cluster];
    if (members.empty()) {
      if (expanded.final_centers[cluster] != -1 ||
          expanded.final_radii[cluster] != 0.0) {
        fail("empty cluster carries a center or radius");
      }
      continue;
    }

    const int final_center = expanded.final_centers[cluster];
    if (final_center < 0 || final_center >= n) fail("final center invalid");
    const double reach =
        base.cluster_radii[cluster] + expanded.draws[cluster];
    double radius = 0.0;
    for (const int p : members) {
      if (p < 0 || p >= n || member_seen[p]) fail("membership not exclusive");
      member_seen[p] = 1;
      ++member_total;
      if (expanded.assignment[p] != cluster) fail("assignment mismatch");
      if (space.distance(base.centers[cluster], p) > reach) {
        fail("member outside the expanded capture radius");
      }
      for (int other = 0; other < k; ++other) {
        if (position[other] < position[cluster] &&
            space.distance(base.centers[other], p) <=
                base.cluster_radii[other] + expanded.draws[other]) {
          fail("member reachable by an earlier cluster");
        }
      }
      radius = std::max(radius, space.distance(final_center, p));
    }
    if (radius != expanded.final_radii[cluster]) {
      fail("stored final radius mismatch");
    }
    if (radius > 2.0 * reach) {
      fail("final radius exceeds twice the capture radius");
    }
  }
  if (member_total != n) fail("some points left unclustered");

  double max_radius = 0.0;
  for (double r : expanded.final_radii) max_radius = std::max(max_radius, r);
  if (max_radius != expanded.max_radius) fail("stored max radius mismatch");
}

}  // namespace fairkc
