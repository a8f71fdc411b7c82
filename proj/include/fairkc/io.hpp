#pragma once

#include "fairkc/metric.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fairkc {

/// File-level problem: unreadable or unwritable destination.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed content in an otherwise readable file.
struct ParseError : IoError {
  using IoError::IoError;
};

/// An OR-Lib p-median instance: "n m p" record followed by m records
/// "u v cost" with 1-indexed endpoints and positive integer costs.
struct PmedInstance {
  int vertex_count = 0;
  int edge_count = 0;
  int center_count = 0;  // the format's "p"
  std::vector<GraphEdge> edges;
};

PmedInstance parse_pmed(std::istream& in);
PmedInstance parse_pmed(const std::string& text);
PmedInstance load_pmed(const std::filesystem::path& path);

/// Shortest-path metric over the instance's graph.
MetricSpace to_metric_space(const PmedInstance& instance);

enum class NormalizeMethod { MinMax, ZScore, None };

/// Fitted per-column transform. MinMax maps the fitting range onto [0, 1];
/// degenerate (constant) columns map to 0, encoded as scale = 0.
struct ColumnScaler {
  NormalizeMethod method = NormalizeMethod::MinMax;
  double offset = 0.0;
  double scale = 1.0;

  double apply(double x) const {
    return scale == 0.0 ? 0.0 : (x - offset) / scale;
  }
};

/// Per-column normalization choice plus the parameters fitted on the last
/// dataset it was applied to. A single method entry broadcasts to every
/// column; empty defaults to MinMax everywhere.
struct NormalizationSpec {
  std::vector<NormalizeMethod> methods;
  std::vector<ColumnScaler> fitted;
};

NormalizationSpec normalization(NormalizeMethod method);

/// Fits spec.methods column-wise on `data` (filling spec.fitted) and returns
/// the transformed copy.
Eigen::MatrixXd fit_and_apply(NormalizationSpec& spec,
                              const Eigen::MatrixXd& data);

/// Reads the named numeric columns from a headered CSV file, skipping rows
/// whose selected cells are missing or non-numeric; normalization is fitted
/// on everything parsed, then an optional uniform sample without replacement
/// is drawn with the given seed. Returns one point per row.
Eigen::MatrixXd load_points_csv(const std::filesystem::path& path,
                                const std::vector<std::string>& columns,
                                NormalizationSpec& spec,
                                std::optional<int> sample_size = std::nullopt,
                                std::uint64_t seed = 0);

/// Sidecar of externally known optimal radii: "name,radius" per line.
std::map<std::string, double> load_known_optima(
    const std::filesystem::path& path);

/// One report line: an algorithm scored on one instance at one parameter
/// setting. Optional fields are written as empty CSV cells / JSON nulls.
struct ReportRow {
  std::string instance;
  std::string algorithm;
  int k = 0;
  std::optional<double> lambda_scale;  // multiplier of 1/R_scr; fair runs only
  double mean_max_radius = 0.0;
  std::optional<double> radius_ratio_opt;
  std::optional<double> radius_ratio_scr;
  double max_pair_ratio = 0.0;
  double max_community_mean = 0.0;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
};

enum class ReportFormat { Csv, Json };

/// Rounds to `digits` significant decimal digits; the canonical value every
/// report writer emits.
double round_sig(double x, int digits = 6);

void write_report(const std::vector<ReportRow>& rows, ReportFormat format,
                  std::ostream& out);
void write_report(const std::vector<ReportRow>& rows, ReportFormat format,
                  const std::filesystem::path& path);

std::vector<ReportRow> read_report_json(std::istream& in);

}  // namespace fairkc
