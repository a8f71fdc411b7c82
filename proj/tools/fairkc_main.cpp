// Command-line surface: classical k-center solves, Monte-Carlo fairness
// evaluation of the randomized expansion, and benchmark sweeps. Only report
// data is written to stdout; progress goes to stderr, so output can be piped.

#include "fairkc/eval.hpp"
#include "fairkc/fair.hpp"
#include "fairkc/io.hpp"
#include "fairkc/metric.hpp"
#include "fairkc/unfair.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace fairkc;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string input;
  std::string format = "pmed";
  std::vector<std::string> columns;
  std::string normalize = "minmax";
  std::optional<int> sample;
  std::uint64_t sample_seed = 0;
  std::optional<int> k;
  std::string algorithm = "scr";
  std::vector<double> lambda_scales;
  std::optional<double> psi;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  double community_divisor = 4.0;
  std::string optima_path;
  std::string out_path;
  std::string out_format = "csv";
  int threads = 1;
};

void add_input_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--input", opt.input, "Instance file (or directory for bench)")
      ->required();
  cmd->add_option("--format", opt.format, "Input format")
      ->check(CLI::IsMember({"pmed", "csv"}));
  cmd->add_option("--columns", opt.columns,
                  "CSV columns to use as coordinates")
      ->delimiter(',');
  cmd->add_option("--normalize", opt.normalize, "CSV column normalization")
      ->check(CLI::IsMember({"minmax", "zscore", "none"}));
  cmd->add_option("--sample", opt.sample,
                  "Sample this many CSV rows without replacement");
  cmd->add_option("--sample-seed", opt.sample_seed, "Seed for --sample");
}

void add_output_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--optima", opt.optima_path,
                  "Sidecar CSV of known optimal radii (name,radius)");
  cmd->add_option("--out", opt.out_path, "Report destination (default stdout)");
  cmd->add_option("--out-format", opt.out_format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}));
}

NormalizeMethod parse_normalize(const std::string& name) {
  if (name == "minmax") return NormalizeMethod::MinMax;
  if (name == "zscore") return NormalizeMethod::ZScore;
  return NormalizeMethod::None;
}

struct LoadedInstance {
  std::string name;
  MetricSpace space;
  std::optional<int> file_k;  // pmed instances carry their own k
};

LoadedInstance load_instance(const CommonOptions& opt,
                             const std::filesystem::path& path) {
  LoadedInstance loaded{path.stem().string(), MetricSpace(), std::nullopt};
  if (opt.format == "pmed") {
    const PmedInstance instance = load_pmed(path);
    loaded.space = to_metric_space(instance);
    loaded.file_k = instance.center_count;
  } else {
    if (opt.columns.empty()) {
      throw UsageError("--columns is required for csv input");
    }
    NormalizationSpec spec = normalization(parse_normalize(opt.normalize));
    const Eigen::MatrixXd points =
        load_points_csv(path, opt.columns, spec, opt.sample, opt.sample_seed);
    loaded.space = build_euclidean(points);
  }
  return loaded;
}

int resolve_k(const CommonOptions& opt, const LoadedInstance& instance) {
  if (opt.k) return *opt.k;
  if (instance.file_k) return *instance.file_k;
  throw UsageError("--k is required for csv input");
}

std::map<std::string, double> load_optima(const CommonOptions& opt) {
  if (opt.optima_path.empty()) return {};
  return load_known_optima(opt.optima_path);
}

std::optional<double> optimum_for(const std::map<std::string, double>& optima,
                                  const std::string& instance) {
  const auto it = optima.find(instance);
  if (it == optima.end()) return std::nullopt;
  if (it->second == 0.0) {
    throw UsageError("known optimum for " + instance + " is zero");
  }
  return it->second;
}

void emit_report(const CommonOptions& opt, const std::vector<ReportRow>& rows) {
  const ReportFormat format =
      opt.out_format == "json" ? ReportFormat::Json : ReportFormat::Csv;
  if (opt.out_path.empty()) {
    write_report(rows, format, std::cout);
  } else {
    write_report(rows, format, std::filesystem::path(opt.out_path));
  }
}

std::vector<double> resolve_lambda_scales(const CommonOptions& opt) {
  if (opt.psi && !opt.lambda_scales.empty()) {
    throw UsageError("give either --psi or --lambda-scale, not both");
  }
  if (opt.psi) {
    if (!(*opt.psi > 0.0)) throw UsageError("--psi must be positive");
    return {1.0 / *opt.psi};
  }
  if (opt.lambda_scales.empty()) return {1.0, 4.0, 16.0};
  for (double s : opt.lambda_scales) {
    if (!(s > 0.0)) throw UsageError("--lambda-scale must be positive");
  }
  return opt.lambda_scales;
}

// Distinct trial seed per report row, derived from the master seed and the
// row's identity so reruns with one flag changed stay reproducible.
std::uint64_t run_seed(std::uint64_t master, const std::string& instance,
                       const std::string& algorithm, int k, double scale) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix_byte = [&h](unsigned char b) {
    h ^= b;
    h *= 1099511628211ULL;
  };
  for (const char c : instance) mix_byte(static_cast<unsigned char>(c));
  mix_byte('|');
  for (const char c : algorithm) mix_byte(static_cast<unsigned char>(c));
  mix_byte('|');
  for (int i = 0; i < 4; ++i) mix_byte(static_cast<unsigned char>(k >> (8 * i)));
  const auto scale_bits = static_cast<std::uint64_t>(scale * 4096.0);
  for (int i = 0; i < 8; ++i) {
    mix_byte(static_cast<unsigned char>(scale_bits >> (8 * i)));
  }
  return hash64(hash64(master) ^ h);
}

ReportRow deterministic_row(const MetricSpace& space, const Clustering& c,
                            const std::string& instance,
                            const std::string& algorithm, int k,
                            double scr_radius, std::optional<double> optimum,
                            double community_divisor, std::uint64_t seed) {
  const DeterministicEval eval = evaluate_deterministic(
      space, c, scr_radius, community_divisor, optimum);
  ReportRow row;
  row.instance = instance;
  row.algorithm = algorithm;
  row.k = k;
  row.mean_max_radius = c.max_radius;
  row.radius_ratio_opt = eval.radius.ratio_to_optimum;
  row.radius_ratio_scr = eval.radius.ratio_to_reference;
  row.max_pair_ratio = eval.pairwise.max_ratio;
  row.max_community_mean = eval.community.max_mean;
  row.trials = 1;
  row.seed = seed;
  return row;
}

std::vector<ReportRow> fair_rows(const MetricSpace& space,
                                 const Clustering& base,
                                 const std::string& instance,
                                 const std::string& base_name, int k,
                                 double scr_radius,
                                 std::optional<double> optimum,
                                 const CommonOptions& opt) {
  const std::vector<double> scales = resolve_lambda_scales(opt);
  const std::string algorithm =
      base_name == "scr" ? "fair" : "fair-" + base_name;

  std::vector<ReportRow> rows;
  for (const double scale : scales) {
    FairConfig config;
    config.psi = 1.0 / scale;
    config.order_policy = OrderPolicy::UniformRandom;

    EvalParams params;
    params.reference_radius = scr_radius;
    params.community_divisor = opt.community_divisor;
    params.threads = opt.threads;

    const TrialEnsemble ensemble =
        run_trials(space, base, config, opt.trials,
                   run_seed(opt.seed, instance, algorithm, k, scale), params);
    const PairwiseReport pairwise = pairwise_fairness(ensemble);
    const CommunityReport community = community_preservation(ensemble);
    const RadiusReport radius = radius_stats(ensemble, optimum);

    ReportRow row;
    row.instance = instance;
    row.algorithm = algorithm;
    row.k = k;
    row.lambda_scale = scale;
    row.mean_max_radius = radius.mean_max_radius;
    row.radius_ratio_opt = radius.ratio_to_optimum;
    row.radius_ratio_scr = radius.ratio_to_reference;
    row.max_pair_ratio = pairwise.max_ratio;
    row.max_community_mean = community.max_mean;
    row.trials = ensemble.trial_count;
    row.seed = opt.seed;
    std::cerr << "[" << instance << "] fair lambda_scale=" << scale
              << " mean_max_radius=" << row.mean_max_radius
              << " max_pair_ratio=" << row.max_pair_ratio << '\n';
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_solve(const CommonOptions& opt) {
  const LoadedInstance instance = load_instance(opt, opt.input);
  const int k = resolve_k(opt, instance);
  const BaseAlgorithm algorithm = parse_algorithm(opt.algorithm);
  const Clustering solution =
      run_base_algorithm(instance.space, k, algorithm, opt.threads);

  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", solution.max_radius);
  std::cout << buffer << '\n';

  if (!opt.out_path.empty()) {
    const Clustering& reference = algorithm == BaseAlgorithm::Scr
                                      ? solution
                                      : scr(instance.space, k);
    const auto optima = load_optima(opt);
    emit_report(opt, {deterministic_row(
                         instance.space, solution, instance.name,
                         opt.algorithm, k, reference.max_radius,
                         optimum_for(optima, instance.name),
                         opt.community_divisor, opt.seed)});
  }
  return 0;
}

int cmd_fair_eval(const CommonOptions& opt) {
  if (opt.trials < 1) throw UsageError("--trials must be >= 1");
  const LoadedInstance instance = load_instance(opt, opt.input);
  const int k = resolve_k(opt, instance);

  const BaseAlgorithm base_algorithm = parse_algorithm(opt.algorithm);
  const Clustering base =
      run_base_algorithm(instance.space, k, base_algorithm, opt.threads);
  const Clustering& reference =
      base_algorithm == BaseAlgorithm::Scr ? base : scr(instance.space, k);
  std::cerr << "[" << instance.name << "] base " << opt.algorithm
            << " radius=" << base.max_radius
            << " scr radius=" << reference.max_radius << '\n';

  const auto optima = load_optima(opt);
  emit_report(opt,
              fair_rows(instance.space, base, instance.name, opt.algorithm, k,
                        reference.max_radius,
                        optimum_for(optima, instance.name), opt));
  return 0;
}

// pmed1 < pmed2 < ... < pmed10: compare digit runs numerically. Runs are
// compared as digit strings (leading zeros stripped) so arbitrarily long
// numbers cannot overflow.
bool natural_less(const std::string& a, const std::string& b) {
  auto digit_run = [](const std::string& s, std::size_t from) {
    std::size_t end = from;
    while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end])))
      ++end;
    std::size_t start = from;
    while (start + 1 < end && s[start] == '0') ++start;
    return std::pair<std::size_t, std::size_t>{start, end};
  };
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) &&
        std::isdigit(static_cast<unsigned char>(b[j]))) {
      const auto [ai, ae] = digit_run(a, i);
      const auto [bi, be] = digit_run(b, j);
      if (ae - ai != be - bi) return ae - ai < be - bi;
      const int cmp = a.compare(ai, ae - ai, b, bi, be - bi);
      if (cmp != 0) return cmp < 0;
      i = ae;
      j = be;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

int cmd_bench(const CommonOptions& opt, const std::vector<std::string>& algos,
              bool include_fair, const std::string& k_range) {
  if (opt.trials < 1) throw UsageError("--trials must be >= 1");
  const auto optima = load_optima(opt);
  std::vector<ReportRow> rows;

  auto bench_one = [&](const LoadedInstance& instance, int k,
                       const std::vector<std::string>& unfair_set) {
    const std::optional<double> optimum = optimum_for(optima, instance.name);
    const Clustering reference = scr(instance.space, k);
    std::cerr << "[" << instance.name << "] k=" << k
              << " scr radius=" << reference.max_radius << '\n';

    for (const std::string& name : unfair_set) {
      const BaseAlgorithm algorithm = parse_algorithm(name);
      const Clustering solution =
          algorithm == BaseAlgorithm::Scr
              ? reference
              : run_base_algorithm(instance.space, k, algorithm, opt.threads);
      rows.push_back(deterministic_row(instance.space, solution, instance.name,
                                       name, k, reference.max_radius, optimum,
                                       opt.community_divisor, opt.seed));
    }
    if (include_fair) {
      const auto fair = fair_rows(instance.space, reference, instance.name,
                                  "scr", k, reference.max_radius, optimum,
                                  opt);
      rows.insert(rows.end(), fair.begin(), fair.end());
    }
  };

  if (opt.format == "pmed") {
    if (!k_range.empty()) {
      throw UsageError("--k-range applies to csv input; pmed files carry k");
    }
    if (!std::filesystem::is_directory(opt.input)) {
      throw UsageError("pmed bench expects --input to be a directory");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(opt.input)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    if (files.empty()) {
      throw UsageError("no instance files in " + opt.input);
    }
    std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
      return natural_less(a.filename().string(), b.filename().string());
    });
    const std::vector<std::string> unfair_set =
        algos.empty() ? std::vector<std::string>{"gonz1", "gonzplus", "scr"}
                      : algos;
    for (const auto& file : files) {
      const LoadedInstance instance = load_instance(opt, file);
      bench_one(instance, resolve_k(opt, instance), unfair_set);
    }
  } else {
    std::vector<int> k_values;
    if (!k_range.empty()) {
      const auto colon = k_range.find(':');
      int first = 0, last = -1;
      try {
        first = std::stoi(k_range.substr(0, colon));
        last = colon == std::string::npos
                   ? first
                   : std::stoi(k_range.substr(colon + 1));
      } catch (const std::exception&) {
        throw UsageError("--k-range expects first:last");
      }
      if (first < 1 || last < first) {
        throw UsageError("--k-range expects 1 <= first <= last");
      }
      for (int k = first; k <= last; ++k) k_values.push_back(k);
    } else if (opt.k) {
      k_values.push_back(*opt.k);
    } else {
      throw UsageError("csv bench needs --k or --k-range");
    }

    const LoadedInstance instance = load_instance(opt, opt.input);
    const std::vector<std::string> unfair_set =
        algos.empty() ? std::vector<std::string>{"scr"} : algos;
    for (const int k : k_values) {
      bench_one(instance, k, unfair_set);
    }
  }

  emit_report(opt, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pairwise-fair, community-preserving k-center clustering"};
  app.require_subcommand(1);

  CommonOptions solve_opt, eval_opt, bench_opt;
  std::string k_range;
  std::vector<std::string> bench_algos;
  bool bench_fair = true;

  CLI::App* solve = app.add_subcommand(
      "solve", "Run one classical k-center solver and print its radius");
  add_input_flags(solve, solve_opt);
  solve->add_option("--k", solve_opt.k, "Number of centers");
  solve->add_option("--algorithm", solve_opt.algorithm,
                    "gonz1|gonzplus|scr|bruteforce");
  solve->add_option("--threads", solve_opt.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  solve->add_option("--community-divisor", solve_opt.community_divisor,
                    "Community ball radius divisor")
      ->check(CLI::PositiveNumber);
  add_output_flags(solve, solve_opt);

  CLI::App* fair_eval = app.add_subcommand(
      "fair-eval", "Monte-Carlo evaluation of the fair expansion");
  add_input_flags(fair_eval, eval_opt);
  fair_eval->add_option("--k", eval_opt.k, "Number of centers");
  fair_eval->add_option("--algorithm", eval_opt.algorithm,
                        "Base solver for the expansion");
  fair_eval->add_option("--lambda-scale", eval_opt.lambda_scales,
                        "Rate multiplier of 1/R_scr (repeatable)");
  fair_eval->add_option("--psi", eval_opt.psi,
                        "Expansion constant (alternative to --lambda-scale)");
  fair_eval->add_option("--trials", eval_opt.trials, "Trials per setting");
  fair_eval->add_option("--seed", eval_opt.seed, "Master seed");
  fair_eval->add_option("--community-divisor", eval_opt.community_divisor,
                        "Community ball radius divisor")
      ->check(CLI::PositiveNumber);
  fair_eval->add_option("--threads", eval_opt.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  add_output_flags(fair_eval, eval_opt);

  CLI::App* bench = app.add_subcommand(
      "bench", "Sweep instances / k values and emit a consolidated report");
  add_input_flags(bench, bench_opt);
  bench->add_option("--k", bench_opt.k, "Single k (csv input)");
  bench->add_option("--k-range", k_range, "k sweep as first:last (csv input)");
  bench->add_option("--algorithm", bench_algos,
                    "Unfair algorithms to include (repeatable)");
  bench->add_flag("--fair,!--no-fair", bench_fair,
                  "Include fair expansion rows (default on)");
  bench->add_option("--lambda-scale", bench_opt.lambda_scales,
                    "Rate multiplier of 1/R_scr (repeatable)");
  bench->add_option("--psi", bench_opt.psi,
                    "Expansion constant (alternative to --lambda-scale)");
  bench->add_option("--trials", bench_opt.trials, "Trials per fair setting");
  bench->add_option("--seed", bench_opt.seed, "Master seed");
  bench->add_option("--community-divisor", bench_opt.community_divisor,
                    "Community ball radius divisor")
      ->check(CLI::PositiveNumber);
  bench->add_option("--threads", bench_opt.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  add_output_flags(bench, bench_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_opt);
    if (fair_eval->parsed()) return cmd_fair_eval(eval_opt);
    return cmd_bench(bench_opt, bench_algos, bench_fair, k_range);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
