#pragma once

#include "fairkc/metric.hpp"

#include <string>
#include <vector>

namespace fairkc {

/// A classical k-center solution: ordered centers, nearest-style assignment,
/// and radii recomputable from the assignment.
struct Clustering {
  std::vector<int> centers;        // point index of each cluster's center
  std::vector<int> assignment;     // cluster index per point
  std::vector<double> cluster_radii;
  double max_radius = 0.0;

  int cluster_count() const { return static_cast<int>(centers.size()); }
};

/// Assigns every point to its nearest center, ties broken toward the lowest
/// cluster index. Centers always belong to their own cluster. Radii are
/// computed from the resulting assignment.
Clustering assign_to_nearest(const MetricSpace& space,
                             const std::vector<int>& centers);

/// Gonzalez farthest-first traversal from a fixed start point. Each new
/// center is the point farthest from the current center set (ties to the
/// lowest index); the final assignment is nearest-center.
Clustering gonzalez(const MetricSpace& space, int k, int start);

/// Runs gonzalez from every start point and keeps the solution with the
/// smallest max radius, ties to the lowest start index. May fan work out
/// across threads; the result is independent of the schedule.
Clustering gonzalez_best_start(const MetricSpace& space, int k,
                               int threads = 1);

/// Scr dominating-set heuristic. Candidate radii are the sorted distinct
/// distance values; for each candidate r in increasing order a dominating
/// set of the bottleneck graph (edges at distance <= r) is built greedily by
/// repeatedly taking the vertex covering the most still-uncovered vertices
/// in its closed neighborhood (ties to the lowest index). The first r whose
/// dominating set has size <= k wins.
Clustering scr(const MetricSpace& space, int k);

/// Exhaustive optimum over all k-subsets of points as centers. Guarded to
/// C(n, k) <= 10^7; intended as a desk-scale oracle.
Clustering optimal_bruteforce(const MetricSpace& space, int k);

/// Throws std::invalid_argument when the clustering is not a consistent
/// solution over the space (bad sizes, centers not self-assigned, radii that
/// do not match the assignment).
void validate_clustering(const MetricSpace& space, const Clustering& c);

enum class BaseAlgorithm { Gonz1, GonzPlus, Scr, BruteForce };

Clustering run_base_algorithm(const MetricSpace& space, int k,
                              BaseAlgorithm algorithm, int threads = 1);

std::string algorithm_name(BaseAlgorithm algorithm);
BaseAlgorithm parse_algorithm(const std::string& name);

}  // namespace fairkc
