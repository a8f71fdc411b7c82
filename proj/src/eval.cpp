#include "fairkc/eval.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace fairkc {

std::vector<TrackedPair> tracked_pairs(const MetricSpace& space, double cap) {
  std::vector<TrackedPair> pairs;
  const int n = space.size();
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double d = space.distance(u, v);
      if (d <= cap) {
        pairs.push_back({u, v, d});
      }
    }
  }
  return pairs;
}

std::vector<Community> point_communities(const MetricSpace& space,
                                         double radius) {
  const int n = space.size();
  std::vector<Community> communities;
  communities.reserve(n);
  for (int p = 0; p < n; ++p) {
    std::vector<int> members;
    for (int u = 0; u < n; ++u) {
      if (space.distance(p, u) <= radius) {
        members.push_back(u);
      }
    }
    communities.push_back(make_community(space, std::move(members)));
  }
  return communities;
}

namespace {

struct Counters {
  std::vector<std::uint64_t> separations;
  std::vector<std::uint64_t> fragment_sums;
  std::array<std::vector<std::uint64_t>, 3> fragment_exceed;

  explicit Counters(std::size_t pair_count, std::size_t community_count)
      : separations(pair_count, 0), fragment_sums(community_count, 0) {
    for (auto& v : fragment_exceed) v.assign(community_count, 0);
  }

  void add(const Counters& other) {
    for (std::size_t i = 0; i < separations.size(); ++i) {
      separations[i] += other.separations[i];
    }
    for (std::size_t i = 0; i < fragment_sums.size(); ++i) {
      fragment_sums[i] += other.fragment_sums[i];
    }
    for (int t = 0; t < 3; ++t) {
      for (std::size_t i = 0; i < fragment_exceed[t].size(); ++i) {
        fragment_exceed[t][i] += other.fragment_exceed[t][i];
      }
    }
  }
};

// Tallies one realized partition (cluster id per point) into the counters.
// `mark`/`epoch` implement an O(|members|) distinct-count scratchpad.
void tally_partition(const std::vector<int>& cluster_of,
                     const std::vector<TrackedPair>& pairs,
                     const std::vector<Community>& communities,
                     Counters& counters, std::vector<std::uint64_t>& mark,
                     std::uint64_t& epoch) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    counters.separations[i] +=
        cluster_of[pairs[i].u] != cluster_of[pairs[i].v];
  }
  for (std::size_t c = 0; c < communities.size(); ++c) {
    ++epoch;
    std::uint64_t fragments = 0;
    for (const int member : communities[c].members) {
      const int id = cluster_of[member];
      if (mark[id] != epoch) {
        mark[id] = epoch;
        ++fragments;
      }
    }
    counters.fragment_sums[c] += fragments;
    for (int t = 1; t <= 3; ++t) {
      counters.fragment_exceed[t - 1][c] += fragments > std::uint64_t(t);
    }
  }
}

}  // namespace

TrialEnsemble run_trials(const MetricSpace& space, const Clustering& base,
                         const FairConfig& config, std::uint64_t trials,
                         std::uint64_t master_seed, const EvalParams& params) {
  if (trials < 1) {
    throw std::invalid_argument("run_trials: need at least one trial");
  }
  if (!(params.reference_radius >= 0.0)) {
    throw std::invalid_argument("run_trials: negative reference radius");
  }
  if (!(params.community_divisor > 0.0)) {
    throw std::invalid_argument("run_trials: community divisor must be > 0");
  }
  validate_clustering(space, base);

  TrialEnsemble ensemble;
  ensemble.trial_count = trials;
  ensemble.reference_radius = params.reference_radius;
  ensemble.community_radius =
      params.reference_radius / params.community_divisor;
  ensemble.pairs = tracked_pairs(space, params.reference_radius);
  ensemble.communities = point_communities(space, ensemble.community_radius);
  ensemble.trial_max_radii.assign(trials, 0.0);

  const int k = base.cluster_count();
  const std::uint64_t first = params.first_trial_index;

  if (!(config.psi > 0.0)) {
    throw std::invalid_argument("run_trials: psi must be positive");
  }
  auto run_range = [&](std::uint64_t begin, std::uint64_t end,
                       Counters& counters) {
    std::vector<std::uint64_t> mark(k, 0);
    std::uint64_t epoch = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      Rng rng = Rng::for_trial(master_seed, first + t);
      const ExpandedClustering expanded =
          fair_assign_prevalidated(space, base, config, rng);
      ensemble.trial_max_radii[t] = expanded.max_radius;
      tally_partition(expanded.assignment, ensemble.pairs,
                      ensemble.communities, counters, mark, epoch);
    }
  };

  const int threads =
      static_cast<int>(std::min<std::uint64_t>(std::max(params.threads, 1),
                                               trials));
  std::vector<Counters> partials(
      threads, Counters(ensemble.pairs.size(), ensemble.communities.size()));
  if (threads == 1) {
    run_range(0, trials, partials[0]);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (trials + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const std::uint64_t begin = std::min<std::uint64_t>(w * chunk, trials);
      const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, trials);
      pool.emplace_back(run_range, begin, end, std::ref(partials[w]));
    }
    for (auto& t : pool) t.join();
  }

  // Counter merging is plain integer addition, so the totals cannot depend
  // on the thread schedule.
  Counters total(ensemble.pairs.size(), ensemble.communities.size());
  for (const Counters& partial : partials) {
    total.add(partial);
  }
  ensemble.separation_counts = std::move(total.separations);
  ensemble.fragment_sums = std::move(total.fragment_sums);
  ensemble.fragment_exceed = std::move(total.fragment_exceed);
  return ensemble;
}

void merge_ensembles(TrialEnsemble& into, const TrialEnsemble& extra) {
  if (into.reference_radius != extra.reference_radius ||
      into.community_radius != extra.community_radius ||
      into.pairs.size() != extra.pairs.size() ||
      into.communities.size() != extra.communities.size()) {
    throw std::invalid_argument("merge_ensembles: incompatible ensembles");
  }
  for (std::size_t i = 0; i < into.pairs.size(); ++i) {
    if (into.pairs[i].u != extra.pairs[i].u ||
        into.pairs[i].v != extra.pairs[i].v) {
      throw std::invalid_argument("merge_ensembles: tracked pairs differ");
    }
    into.separation_counts[i] += extra.separation_counts[i];
  }
  for (std::size_t c = 0; c < into.communities.size(); ++c) {
    into.fragment_sums[c] += extra.fragment_sums[c];
    for (int t = 0; t < 3; ++t) {
      into.fragment_exceed[t][c] += extra.fragment_exceed[t][c];
    }
  }
  into.trial_max_radii.insert(into.trial_max_radii.end(),
                              extra.trial_max_radii.begin(),
                              extra.trial_max_radii.end());
  into.trial_count += extra.trial_count;
}

PairwiseReport pairwise_fairness(const TrialEnsemble& ensemble) {
  if (ensemble.trial_count == 0) {
    throw std::invalid_argument("pairwise_fairness: empty ensemble");
  }
  PairwiseReport report;
  const double trials = static_cast<double>(ensemble.trial_count);
  for (std::size_t i = 0; i < ensemble.pairs.size(); ++i) {
    const TrackedPair& pair = ensemble.pairs[i];
    if (pair.distance == 0.0) {
      ++report.zero_distance_pairs;
      report.zero_distance_separations += ensemble.separation_counts[i];
      continue;
    }
    PairStats stats;
    stats.u = pair.u;
    stats.v = pair.v;
    stats.distance = pair.distance;
    stats.probability =
        static_cast<double>(ensemble.separation_counts[i]) / trials;
    stats.ratio =
        stats.probability * ensemble.reference_radius / pair.distance;
    if (stats.ratio > report.max_ratio) {
      report.max_ratio = stats.ratio;
      report.argmax_u = pair.u;
      report.argmax_v = pair.v;
    }
    report.pairs.push_back(stats);
  }
  return report;
}

CommunityReport community_preservation(const TrialEnsemble& ensemble) {
  if (ensemble.trial_count == 0) {
    throw std::invalid_argument("community_preservation: empty ensemble");
  }
  CommunityReport report;
  const double trials = static_cast<double>(ensemble.trial_count);
  report.communities.reserve(ensemble.communities.size());
  for (std::size_t c = 0; c < ensemble.communities.size(); ++c) {
    CommunityStats stats;
    stats.center_point = static_cast<int>(c);
    stats.mean_fragments =
        static_cast<double>(ensemble.fragment_sums[c]) / trials;
    for (int t = 0; t < 3; ++t) {
      stats.exceed_frequency[t] =
          static_cast<double>(ensemble.fragment_exceed[t][c]) / trials;
    }
    if (stats.mean_fragments > report.max_mean) {
      report.max_mean = stats.mean_fragments;
      report.argmax_center = stats.center_point;
    }
    report.communities.push_back(stats);
  }
  return report;
}

RadiusReport radius_stats(const TrialEnsemble& ensemble,
                          std::optional<double> known_optimum) {
  if (ensemble.trial_count == 0) {
    throw std::invalid_argument("radius_stats: empty ensemble");
  }
  RadiusReport report;
  double sum = 0.0;
  for (const double r : ensemble.trial_max_radii) sum += r;
  report.mean_max_radius = sum / static_cast<double>(ensemble.trial_count);
  if (known_optimum.has_value()) {
    if (*known_optimum == 0.0) {
      throw std::invalid_argument("radius_stats: zero optimum denominator");
    }
    report.ratio_to_optimum = report.mean_max_radius / *known_optimum;
  }
  if (ensemble.reference_radius > 0.0) {
    report.ratio_to_reference =
        report.mean_max_radius / ensemble.reference_radius;
  }
  return report;
}

DeterministicEval evaluate_deterministic(const MetricSpace& space,
                                         const Clustering& clustering,
                                         double reference_radius,
                                         double community_divisor,
                                         std::optional<double> known_optimum) {
  if (!(community_divisor > 0.0)) {
    throw std::invalid_argument(
        "evaluate_deterministic: community divisor must be > 0");
  }
  validate_clustering(space, clustering);

  // A deterministic solution is a one-trial ensemble whose frequencies are
  // 0/1 indicators.
  TrialEnsemble single;
  single.trial_count = 1;
  single.reference_radius = reference_radius;
  single.community_radius = reference_radius / community_divisor;
  single.pairs = tracked_pairs(space, reference_radius);
  single.communities = point_communities(space, single.community_radius);
  single.separation_counts.assign(single.pairs.size(), 0);
  single.fragment_sums.assign(single.communities.size(), 0);
  for (auto& v : single.fragment_exceed) {
    v.assign(single.communities.size(), 0);
  }
  single.trial_max_radii = {clustering.max_radius};

  Counters counters(single.pairs.size(), single.communities.size());
  std::vector<std::uint64_t> mark(clustering.cluster_count(), 0);
  std::uint64_t epoch = 0;
  tally_partition(clustering.assignment, single.pairs, single.communities,
                  counters, mark, epoch);
  single.separation_counts = std::move(counters.separations);
  single.fragment_sums = std::move(counters.fragment_sums);
  single.fragment_exceed = std::move(counters.fragment_exceed);

  DeterministicEval result;
  result.pairwise = pairwise_fairness(single);
  result.community = community_preservation(single);
  result.radius = radius_stats(single, known_optimum);
  return result;
}

}  // namespace fairkc
