#pragma once

#include "fairkc/fair.hpp"

#include <array>
#include <cstdint>
#include <optional>

namespace fairkc {

/// A pair scored against the separation target. Pairs with zero distance are
/// tracked (their separation count must stay 0) but never enter ratios.
struct TrackedPair {
  int u = 0;
  int v = 0;
  double distance = 0.0;
};

/// Knobs of the trial harness. reference_radius is the shared target scale
/// (the Scr radius in the benchmark protocol): it caps the tracked pairs and
/// sets the community ball radius reference_radius / community_divisor.
struct EvalParams {
  double reference_radius = 0.0;
  double community_divisor = 4.0;
  int threads = 1;
  std::uint64_t first_trial_index = 0;
};

/// Aggregated statistics over independent expansion trials. Counters are
/// additive, so ensembles from consecutive trial-index ranges merge exactly.
struct TrialEnsemble {
  std::uint64_t trial_count = 0;
  double reference_radius = 0.0;
  double community_radius = 0.0;

  std::vector<TrackedPair> pairs;                // all pairs with d <= R_ref
  std::vector<std::uint64_t> separation_counts;  // per tracked pair

  std::vector<Community> communities;        // ball around every point
  std::vector<std::uint64_t> fragment_sums;  // per community: sum of counts
  // per community: trials fragmented into more than t clusters, t = 1, 2, 3
  std::array<std::vector<std::uint64_t>, 3> fragment_exceed;

  std::vector<double> trial_max_radii;  // in trial order
};

/// Runs `trials` independent expansions of the base clustering, one derived
/// RNG stream per (master_seed, trial_index). The result is bit-identical
/// for equal inputs regardless of params.threads.
TrialEnsemble run_trials(const MetricSpace& space, const Clustering& base,
                         const FairConfig& config, std::uint64_t trials,
                         std::uint64_t master_seed, const EvalParams& params);

/// Adds the counts of `extra` into `into`. The ensembles must describe the
/// same tracked pairs and communities; `extra` is treated as the trials that
/// followed `into`.
void merge_ensembles(TrialEnsemble& into, const TrialEnsemble& extra);

struct PairStats {
  int u = 0;
  int v = 0;
  double distance = 0.0;
  double probability = 0.0;  // empirical separation frequency
  double ratio = 0.0;        // probability / (distance / R_ref)
};

struct PairwiseReport {
  std::vector<PairStats> pairs;  // tracked pairs with positive distance
  double max_ratio = 0.0;
  int argmax_u = -1;
  int argmax_v = -1;
  std::uint64_t zero_distance_pairs = 0;
  std::uint64_t zero_distance_separations = 0;
};

PairwiseReport pairwise_fairness(const TrialEnsemble& ensemble);

struct CommunityStats {
  int center_point = -1;
  double mean_fragments = 1.0;
  std::array<double, 3> exceed_frequency{};  // freq of > t clusters, t = 1..3
};

struct CommunityReport {
  std::vector<CommunityStats> communities;
  double max_mean = 0.0;
  int argmax_center = -1;
};

CommunityReport community_preservation(const TrialEnsemble& ensemble);

struct RadiusReport {
  double mean_max_radius = 0.0;
  std::optional<double> ratio_to_optimum;    // absent without a known optimum
  std::optional<double> ratio_to_reference;  // absent when R_ref is 0
};

RadiusReport radius_stats(const TrialEnsemble& ensemble,
                          std::optional<double> known_optimum = std::nullopt);

struct DeterministicEval {
  PairwiseReport pairwise;
  CommunityReport community;
  RadiusReport radius;
};

/// Scores a single deterministic clustering as a one-trial ensemble:
/// separation indicators instead of frequencies, fragment counts from the
/// one realization.
DeterministicEval evaluate_deterministic(
    const MetricSpace& space, const Clustering& clustering,
    double reference_radius, double community_divisor = 4.0,
    std::optional<double> known_optimum = std::nullopt);

/// The community family of the benchmark protocol: the closed ball of the
/// given radius around every point.
std::vector<Community> point_communities(const MetricSpace& space,
                                         double radius);

/// All pairs with d(u, v) <= cap, including co-located pairs.
std::vector<TrackedPair> tracked_pairs(const MetricSpace& space, double cap);

}  // namespace fairkc
