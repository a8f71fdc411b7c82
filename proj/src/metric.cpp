#include "fairkc/metric.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fairkc {

MetricSpace build_euclidean(const Eigen::MatrixXd& points) {
  const Eigen::Index n = points.rows();
  if (n == 0) {
    throw std::invalid_argument("build_euclidean: empty point set");
  }

  MetricSpace space;
  space.coordinates_ = points;
  space.distances_.setZero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = (points.row(i) - points.row(j)).norm();
      space.distances_(i, j) = d;
      space.distances_(j, i) = d;
    }
  }
  return space;
}

MetricSpace build_euclidean(const std::vector<std::vector<double>>& points) {
  if (points.empty()) {
    throw std::invalid_argument("build_euclidean: empty point set");
  }
  const std::size_t dim = points.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(points.size()),
                    static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) {
      throw std::invalid_argument(
          "build_euclidean: point " + std::to_string(i) + " has dimension " +
          std::to_string(points[i].size()) + ", expected " +
          std::to_string(dim));
    }
    for (std::size_t j = 0; j < dim; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          points[i][j];
    }
  }
  return build_euclidean(m);
}

MetricSpace build_from_graph(int vertex_count,
                             const std::vector<GraphEdge>& edges) {
  if (vertex_count < 1) {
    throw std::invalid_argument("build_from_graph: vertex count must be >= 1");
  }
  const double inf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd dist =
      Eigen::MatrixXd::Constant(vertex_count, vertex_count, inf);
  dist.diagonal().setZero();

  for (const GraphEdge& e : edges) {
    if (e.u < 1 || e.u > vertex_count || e.v < 1 || e.v > vertex_count) {
      throw std::invalid_argument("build_from_graph: edge endpoint (" +
                                  std::to_string(e.u) + ", " +
                                  std::to_string(e.v) +
                                  ") outside [1, " +
                                  std::to_string(vertex_count) + "]");
    }
    if (!(e.cost > 0.0)) {
      throw std::invalid_argument("build_from_graph: non-positive edge cost");
    }
    if (e.u == e.v) {
      continue;  // self-loops cannot shorten any path
    }
    const int u = e.u - 1;
    const int v = e.v - 1;
    if (e.cost < dist(u, v)) {
      dist(u, v) = e.cost;
      dist(v, u) = e.cost;
    }
  }

  // Floyd-Warshall, relaxed column-wise so each update is a contiguous
  // vectorized min. Symmetry is preserved exactly: the (i,j) and (j,i)
  // relaxations add the same two values.
  Eigen::VectorXd via(vertex_count);
  for (int mid = 0; mid < vertex_count; ++mid) {
    via = dist.col(mid);
    for (int j = 0; j < vertex_count; ++j) {
      if (j == mid) continue;
      dist.col(j) =
          dist.col(j).cwiseMin((via.array() + dist(mid, j)).matrix());
    }
  }

  if (!dist.allFinite()) {
    throw std::invalid_argument(
        "build_from_graph: graph is disconnected (unreachable vertex pairs)");
  }

  MetricSpace space;
  space.distances_ = std::move(dist);
  return space;
}

double diameter(const MetricSpace& space, const std::vector<int>& members) {
  if (members.empty()) {
    throw std::invalid_argument("diameter: empty member set");
  }
  double best = 0.0;
  for (std::size_t a = 0; a < members.size(); ++a) {
    const int u = members[a];
    if (u < 0 || u >= space.size()) {
      throw std::invalid_argument("diameter: member index out of range");
    }
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      best = std::max(best, space.distance(u, members[b]));
    }
  }
  return best;
}

Community make_community(const MetricSpace& space, std::vector<int> members) {
  Community community;
  community.diameter = diameter(space, members);
  community.members = std::move(members);
  return community;
}

}  // namespace fairkc
