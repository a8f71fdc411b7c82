#pragma once

#include <Eigen/Dense>

#include <vector>

namespace fairkc {

/// Weighted undirected edge with 1-indexed endpoints, as found in OR-Lib
/// style instance files. Endpoints are converted to 0-based indices when a
/// metric space is built.
struct GraphEdge {
  int u = 0;
  int v = 0;
  double cost = 0.0;
};

/// A finite metric space over points 0..n-1 with a dense symmetric distance
/// matrix. Immutable after construction; concurrent reads are safe.
class MetricSpace {
 public:
  MetricSpace() = default;  // empty space; fill via the build_* functions

  int size() const { return static_cast<int>(distances_.rows()); }

  double distance(int u, int v) const { return distances_(u, v); }

  const Eigen::MatrixXd& distances() const { return distances_; }

  /// Point coordinates (one row per point) when built from Euclidean data;
  /// empty for graph-built spaces.
  bool has_coordinates() const { return coordinates_.rows() > 0; }
  const Eigen::MatrixXd& coordinates() const { return coordinates_; }

  friend MetricSpace build_euclidean(const Eigen::MatrixXd& points);
  friend MetricSpace build_from_graph(int vertex_count,
                                      const std::vector<GraphEdge>& edges);

 private:
  Eigen::MatrixXd distances_;
  Eigen::MatrixXd coordinates_;
};

/// Builds a metric space from Euclidean points, one per row. Distances are
/// the L2 norms of coordinate differences.
MetricSpace build_euclidean(const Eigen::MatrixXd& points);

/// Convenience overload for ragged input; rejects mixed dimensions.
MetricSpace build_euclidean(const std::vector<std::vector<double>>& points);

/// Builds a metric space from a connected weighted graph; distances are
/// all-pairs shortest paths (Floyd-Warshall). Edge endpoints are 1-indexed
/// and costs must be positive. Throws if the graph is disconnected.
MetricSpace build_from_graph(int vertex_count,
                             const std::vector<GraphEdge>& edges);

/// Exact max pairwise distance over a non-empty member set; 0 for singletons.
double diameter(const MetricSpace& space, const std::vector<int>& members);

/// A subset of points together with its exact diameter.
struct Community {
  std::vector<int> members;
  double diameter = 0.0;
};

Community make_community(const MetricSpace& space, std::vector<int> members);

}  // namespace fairkc
