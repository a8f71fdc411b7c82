#pragma once

#include "fairkc/metric.hpp"
#include "fairkc/rng.hpp"
#include "fairkc/unfair.hpp"

namespace fairkc {

enum class OrderPolicy {
  Given,          // process base clusters in their stored order
  UniformRandom,  // uniformly random permutation per run
};

/// Parameters of the randomized expansion. The exponential rate is derived
/// per base clustering as lambda = 1 / (psi * R), with R the base max radius.
struct FairConfig {
  double psi = 1.0;
  OrderPolicy order_policy = OrderPolicy::UniformRandom;
  std::uint64_t rng_seed = 0;
};

/// One realization of the randomized expansion of a base clustering.
/// Clusters are indexed by their base cluster id; `order` records the
/// processing sequence. A cluster that captured no points is empty: it has
/// no members, no final center (-1), and radius 0.
struct ExpandedClustering {
  std::vector<int> order;                  // processing order of base ids
  std::vector<double> draws;               // expansion X_i per base id
  std::vector<std::vector<int>> clusters;  // members per base id
  std::vector<int> final_centers;          // per base id; -1 when empty
  std::vector<double> final_radii;         // per base id; 0 when empty
  std::vector<int> assignment;             // per point: owning base id
  double max_radius = 0.0;

  int nonempty_count() const;
};

/// Inverse-transform exponential: X = -ln(u) / lambda for u in (0, 1].
double exponential_from_uniform(double lambda, double unit);

/// Draws one expansion from Exp(lambda) using the stream's (0, 1] uniform.
double sample_expansion(double lambda, Rng& rng);

/// Randomized expansion of a base clustering: clusters are processed in
/// `order`, each grabbing every still-unclustered point within R_i + X_i of
/// its original center. If the original center was taken by an earlier
/// cluster, the captured member minimizing the resulting radius becomes the
/// new center (ties to the lowest point index).
ExpandedClustering fair_assign(const MetricSpace& space,
                               const Clustering& base,
                               const FairConfig& config, Rng& rng);

/// fair_assign without revalidating inputs every call; for trial loops that
/// checked the base clustering and psi once up front.
ExpandedClustering fair_assign_prevalidated(const MetricSpace& space,
                                            const Clustering& base,
                                            const FairConfig& config,
                                            Rng& rng);

/// Convenience composition: run the chosen classical solver, then expand its
/// output with a stream seeded from config.rng_seed.
ExpandedClustering fair_solve(const MetricSpace& space, int k,
                              BaseAlgorithm base_algorithm,
                              const FairConfig& config);

/// Compacts the non-empty expanded clusters into a plain Clustering (centers
/// in base-id order); partition-level statistics are unchanged.
Clustering to_clustering(const ExpandedClustering& expanded);

/// Throws std::invalid_argument when a realization violates the structural
/// guarantees of the expansion: exclusive membership, capture within
/// R_i + X_i, exclusion from all earlier clusters, and final radius at most
/// 2 (R_i + X_i).
void validate_expansion(const MetricSpace& space, const Clustering& base,
                        const ExpandedClustering& expanded);

}  // namespace fairkc
