#include "fairkc/unfair.hpp"

#include "support.hpp"

#include <doctest.h>

#include <vector>

using namespace fairkc;

namespace {

MetricSpace line_space(const std::vector<double>& coords) {
  std::vector<std::vector<double>> points;
  for (const double c : coords) points.push_back({c});
  return build_euclidean(points);
}

const MetricSpace kLine = line_space({0.0, 1.0, 10.0, 11.0});

}  // namespace

TEST_CASE("assign_to_nearest basics") {
  const Clustering c = assign_to_nearest(kLine, {0, 3});
  CHECK(c.assignment == std::vector<int>{0, 0, 1, 1});
  CHECK(c.max_radius == 1.0);
  validate_clustering(kLine, c);

  // Centers everywhere: all radii zero.
  const Clustering all = assign_to_nearest(kLine, {0, 1, 2, 3});
  CHECK(all.max_radius == 0.0);
  for (const double r : all.cluster_radii) CHECK(r == 0.0);

  // Equidistant point goes to the lower cluster index.
  const MetricSpace mid = line_space({0.0, 1.0, 2.0});
  const Clustering tie = assign_to_nearest(mid, {0, 2});
  CHECK(tie.assignment[1] == 0);

  CHECK_THROWS_AS(assign_to_nearest(kLine, {}), std::invalid_argument);
  CHECK_THROWS_AS(assign_to_nearest(kLine, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(assign_to_nearest(kLine, {0, 9}), std::invalid_argument);
}

TEST_CASE("gonzalez farthest-first traversal") {
  const Clustering two = gonzalez(kLine, 2, 0);
  CHECK(two.centers == std::vector<int>{0, 3});  // farthest from 0 is 11
  CHECK(two.max_radius == 1.0);

  const Clustering one = gonzalez(kLine, 1, 0);
  CHECK(one.centers == std::vector<int>{0});
  CHECK(one.max_radius == 11.0);

  const Clustering all = gonzalez(kLine, 4, 0);
  CHECK(all.max_radius == 0.0);

  CHECK_THROWS_AS(gonzalez(kLine, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(gonzalez(kLine, 5, 0), std::invalid_argument);
  CHECK_THROWS_AS(gonzalez(kLine, 2, 4), std::invalid_argument);
}

TEST_CASE("gonzalez_best_start never loses to the fixed start") {
  const Clustering best = gonzalez_best_start(kLine, 2);
  CHECK(best.max_radius == 1.0);
  CHECK(gonzalez_best_start(kLine, 4).max_radius == 0.0);

  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    const MetricSpace space =
        build_euclidean(testsupport::random_points(rng, 14));
    for (const int k : {2, 3}) {
      const double from_zero = gonzalez(space, k, 0).max_radius;
      const double best_of_all = gonzalez_best_start(space, k).max_radius;
      CHECK(best_of_all <= from_zero);
      // Threaded runs must return the identical solution.
      const Clustering threaded = gonzalez_best_start(space, k, 4);
      CHECK(threaded.centers == gonzalez_best_start(space, k).centers);
    }
  }
}

TEST_CASE("scr finds the small line optimum") {
  const Clustering c = scr(kLine, 2);
  CHECK(c.max_radius == 1.0);
  CHECK(scr(kLine, 4).max_radius == 0.0);  // r = 0 dominates vertex-wise
}

namespace {

// Literal transcription of the scr scheme, with none of the scan shortcuts:
// every distinct distance value in increasing order, full greedy each time.
// Used to pin the optimized implementation to the stated algorithm.
std::vector<int> scr_reference_centers(const MetricSpace& space, int k) {
  const int n = space.size();
  std::vector<double> candidates{0.0};
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      candidates.push_back(space.distance(u, v));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  for (const double r : candidates) {
    std::vector<char> covered(n, 0);
    std::vector<int> selected;
    int uncovered = n;
    while (uncovered > 0 && static_cast<int>(selected.size()) < k) {
      int pick = -1, pick_score = -1;
      for (int v = 0; v < n; ++v) {
        int score = 0;
        for (int u = 0; u < n; ++u) {
          score += !covered[u] && space.distance(u, v) <= r;
        }
        if (score > pick_score) {
          pick_score = score;
          pick = v;
        }
      }
      selected.push_back(pick);
      for (int u = 0; u < n; ++u) {
        if (!covered[u] && space.distance(u, pick) <= r) {
          covered[u] = 1;
          --uncovered;
        }
      }
    }
    if (uncovered == 0) return selected;
  }
  return {};
}

}  // namespace

TEST_CASE("scr matches a literal reference implementation") {
  Rng rng(4242);
  for (int i = 0; i < 40; ++i) {
    const int n = 8 + static_cast<int>(rng.below(17));  // 8..24
    const int k = 1 + static_cast<int>(rng.below(5));   // 1..5
    Eigen::MatrixXd points = testsupport::random_points(rng, n);
    if (i % 4 == 0) {
      // Snap to a coarse grid so co-located points and tied distances occur.
      points = (points.array() * 3.0).round() / 3.0;
    }
    const MetricSpace space = build_euclidean(points);
    CHECK(scr(space, k).centers ==
          scr_reference_centers(space, std::min(k, n)));
  }
}

TEST_CASE("scr handles co-located points at radius zero") {
  const MetricSpace space = line_space({0.0, 0.0, 5.0});
  const Clustering c = scr(space, 2);
  CHECK(c.max_radius == 0.0);
  CHECK(c.centers == std::vector<int>{0, 2});
}

TEST_CASE("optimal_bruteforce matches hand results") {
  CHECK(optimal_bruteforce(kLine, 2).max_radius == 1.0);
  CHECK(optimal_bruteforce(kLine, 4).max_radius == 0.0);
  CHECK(optimal_bruteforce(line_space({0.0, 10.0}), 1).max_radius == 10.0);

  Rng rng(1);
  const MetricSpace big = build_euclidean(testsupport::random_points(rng, 80));
  CHECK_THROWS_AS(optimal_bruteforce(big, 10), std::invalid_argument);
}

TEST_CASE("solver outputs are consistent and deterministic") {
  Rng rng(77);
  for (int i = 0; i < 20; ++i) {
    const MetricSpace space =
        build_euclidean(testsupport::random_points(rng, 12));
    for (const int k : {1, 2, 3}) {
      const Clustering g = gonzalez(space, k, 0);
      const Clustering plus = gonzalez_best_start(space, k);
      const Clustering s = scr(space, k);
      const Clustering opt = optimal_bruteforce(space, k);
      for (const Clustering* c : {&g, &plus, &s, &opt}) {
        validate_clustering(space, *c);
      }

      // Determinism: identical inputs, identical outputs.
      CHECK(gonzalez(space, k, 0).centers == g.centers);
      CHECK(scr(space, k).centers == s.centers);

      // The exact optimum lower-bounds every solver.
      CHECK(opt.max_radius <= g.max_radius);
      CHECK(opt.max_radius <= plus.max_radius);
      CHECK(opt.max_radius <= s.max_radius);
    }
  }
}

TEST_CASE("gonzalez stays within twice the optimum on random instances") {
  Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    const int n = 6 + static_cast<int>(rng.below(7));  // 6..12
    const int k = 1 + static_cast<int>(rng.below(3));  // 1..3
    const MetricSpace space =
        build_euclidean(testsupport::random_points(rng, n));
    const double optimal = optimal_bruteforce(space, k).max_radius;
    const double greedy = gonzalez(space, k, 0).max_radius;
    const double heuristic = scr(space, k).max_radius;
    CHECK(greedy <= 2.0 * optimal);
    CHECK(heuristic >= optimal);
  }
}

TEST_CASE("algorithm names round-trip") {
  for (const auto algorithm :
       {BaseAlgorithm::Gonz1, BaseAlgorithm::GonzPlus, BaseAlgorithm::Scr,
        BaseAlgorithm::BruteForce}) {
    CHECK(parse_algorithm(algorithm_name(algorithm)) == algorithm);
  }
  CHECK_THROWS_AS(parse_algorithm("kmeans"), std::invalid_argument);
}
