// Generates a family of synthetic p-median benchmark instances in the
// OR-Lib text format: random points in a 100 x 100 square, a random spanning
// tree for connectivity, extra random edges up to average degree 4, and
// integer edge costs rounded from the Euclidean lengths. The (n, k) profile
// follows the classic 40-instance suite (n = 100..900, k = 5..200).

#include "fairkc/rng.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace {

struct Profile {
  int n;
  int k;
};

// n and k of pmed1..pmed40.
const std::vector<Profile> kProfiles = {
    {100, 5},  {100, 10}, {100, 10}, {100, 20}, {100, 33},
    {200, 5},  {200, 10}, {200, 20}, {200, 40}, {200, 67},
    {300, 5},  {300, 10}, {300, 30}, {300, 60}, {300, 100},
    {400, 5},  {400, 10}, {400, 40}, {400, 80}, {400, 133},
    {500, 5},  {500, 10}, {500, 50}, {500, 100}, {500, 167},
    {600, 5},  {600, 10}, {600, 60}, {600, 120}, {600, 200},
    {700, 5},  {700, 10}, {700, 70}, {700, 140},
    {800, 5},  {800, 10}, {800, 80},
    {900, 5},  {900, 10}, {900, 90},
};

void write_instance(const std::filesystem::path& path, int n, int k,
                    fairkc::Rng& rng) {
  std::vector<double> x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x[i] = rng.uniform_unit() * 100.0;
    y[i] = rng.uniform_unit() * 100.0;
  }
  auto cost = [&](int u, int v) {
    const double d = std::hypot(x[u] - x[v], y[u] - y[v]);
    return std::max<long long>(1, std::llround(d));
  };

  std::set<std::pair<int, int>> present;
  std::vector<std::pair<int, int>> edges;
  auto add_edge = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    if (u == v || !present.emplace(u, v).second) return false;
    edges.emplace_back(u, v);
    return true;
  };

  // Random spanning tree keeps the instance connected; extra edges bring the
  // average degree up to 4 like the original suite.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  for (int i = 1; i < n; ++i) {
    add_edge(order[i], order[static_cast<int>(rng.below(i))]);
  }
  const int target_edges = 2 * n;
  while (static_cast<int>(edges.size()) < target_edges) {
    add_edge(static_cast<int>(rng.below(n)), static_cast<int>(rng.below(n)));
  }

  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << n << ' ' << edges.size() << ' ' << k << '\n';
  for (const auto& [u, v] : edges) {
    out << u + 1 << ' ' << v + 1 << ' ' << cost(u, v) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic OR-Lib style p-median instance generator"};
  std::string out_dir;
  std::uint64_t seed = 424242;
  int count = static_cast<int>(kProfiles.size());
  app.add_option("--out-dir", out_dir, "Directory for pmed1..pmedN")
      ->required();
  app.add_option("--seed", seed, "Generator seed");
  app.add_option("--count", count, "How many instances to emit")
      ->check(CLI::Range(1, static_cast<int>(kProfiles.size())));
  CLI11_PARSE(app, argc, argv);

  try {
    std::filesystem::create_directories(out_dir);
    for (int i = 0; i < count; ++i) {
      // One independent stream per instance so --count does not reshuffle
      // the later files.
      fairkc::Rng rng = fairkc::Rng::for_trial(seed, i);
      const auto path =
          std::filesystem::path(out_dir) / ("pmed" + std::to_string(i + 1));
      write_instance(path, kProfiles[i].n, kProfiles[i].k, rng);
    }
  } catch (const std::exception& e) {
    std::cerr << "pmed_synth: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
