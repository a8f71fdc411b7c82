#include "fairkc/io.hpp"

#include "fairkc/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace fairkc {

namespace {

int parse_int_token(const std::string& token, const char* what) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw ParseError(std::string("pmed: non-integer ") + what + " '" + token +
                     "'");
  }
}

int read_int(std::istream& in, const char* what) {
  std::string token;
  if (!(in >> token)) {
    throw ParseError(std::string("pmed: missing ") + what);
  }
  return parse_int_token(token, what);
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  char* end = nullptr;
  const double value = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

PmedInstance parse_pmed(std::istream& in) {
  PmedInstance instance;
  instance.vertex_count = read_int(in, "vertex count");
  instance.edge_count = read_int(in, "edge count");
  instance.center_count = read_int(in, "center count");
  if (instance.vertex_count < 1) {
    throw ParseError("pmed: vertex count must be >= 1");
  }
  if (instance.edge_count < 0) {
    throw ParseError("pmed: negative edge count");
  }
  if (instance.center_count < 1) {
    throw ParseError("pmed: center count must be >= 1");
  }

  instance.edges.reserve(instance.edge_count);
  for (int i = 0; i < instance.edge_count; ++i) {
    std::string token;
    if (!(in >> token)) {
      throw ParseError("pmed: expected " + std::to_string(instance.edge_count) +
                       " edges, found " + std::to_string(i));
    }
    GraphEdge edge;
    edge.u = parse_int_token(token, "edge endpoint");
    edge.v = read_int(in, "edge endpoint");
    edge.cost = read_int(in, "edge cost");
    if (edge.u < 1 || edge.u > instance.vertex_count || edge.v < 1 ||
        edge.v > instance.vertex_count) {
      throw ParseError("pmed: edge endpoint out of range in edge " +
                       std::to_string(i + 1));
    }
    if (edge.cost <= 0) {
      throw ParseError("pmed: non-positive cost in edge " +
                       std::to_string(i + 1));
    }
    instance.edges.push_back(edge);
  }

  std::string extra;
  if (in >> extra) {
    throw ParseError("pmed: trailing data after " +
                     std::to_string(instance.edge_count) + " edges: '" +
                     extra + "'");
  }
  return instance;
}

PmedInstance parse_pmed(const std::string& text) {
  std::istringstream in(text);
  return parse_pmed(in);
}

PmedInstance load_pmed(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  try {
    return parse_pmed(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

MetricSpace to_metric_space(const PmedInstance& instance) {
  return build_from_graph(instance.vertex_count, instance.edges);
}

NormalizationSpec normalization(NormalizeMethod method) {
  NormalizationSpec spec;
  spec.methods = {method};
  return spec;
}

Eigen::MatrixXd fit_and_apply(NormalizationSpec& spec,
                              const Eigen::MatrixXd& data) {
  const Eigen::Index cols = data.cols();
  if (spec.methods.size() > 1 &&
      spec.methods.size() != static_cast<std::size_t>(cols)) {
    throw std::invalid_argument(
        "normalization: method count does not match column count");
  }
  auto method_for = [&](Eigen::Index c) {
    if (spec.methods.empty()) return NormalizeMethod::MinMax;
    if (spec.methods.size() == 1) return spec.methods.front();
    return spec.methods[static_cast<std::size_t>(c)];
  };

  spec.fitted.assign(cols, {});
  Eigen::MatrixXd out(data.rows(), cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    ColumnScaler& scaler = spec.fitted[static_cast<std::size_t>(c)];
    scaler.method = method_for(c);
    switch (scaler.method) {
      case NormalizeMethod::MinMax: {
        scaler.offset = data.col(c).minCoeff();
        scaler.scale = data.col(c).maxCoeff() - scaler.offset;
        break;
      }
      case NormalizeMethod::ZScore: {
        scaler.offset = data.col(c).mean();
        const double variance =
            (data.col(c).array() - scaler.offset).square().mean();
        scaler.scale = std::sqrt(variance);
        break;
      }
      case NormalizeMethod::None: {
        scaler.offset = 0.0;
        scaler.scale = 1.0;
        break;
      }
    }
    for (Eigen::Index r = 0; r < data.rows(); ++r) {
      out(r, c) = scaler.apply(data(r, c));
    }
  }
  return out;
}

Eigen::MatrixXd load_points_csv(const std::filesystem::path& path,
                                const std::vector<std::string>& columns,
                                NormalizationSpec& spec,
                                std::optional<int> sample_size,
                                std::uint64_t seed) {
  if (columns.empty()) {
    throw std::invalid_argument("load_points_csv: no columns requested");
  }
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }

  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(path.string() + ": missing header line");
  }
  const std::vector<std::string> header = split_csv_line(line);
  std::vector<std::size_t> indices;
  for (const std::string& name : columns) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw ParseError(path.string() + ": column '" + name +
                       "' not found in header");
    }
    indices.push_back(static_cast<std::size_t>(it - header.begin()));
  }

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    std::vector<double> row;
    row.reserve(indices.size());
    bool usable = true;
    for (const std::size_t idx : indices) {
      const std::optional<double> value =
          idx < cells.size() ? parse_number(cells[idx]) : std::nullopt;
      if (!value) {
        usable = false;  // missing value in a selected column: skip the row
        break;
      }
      row.push_back(*value);
    }
    if (usable) rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw ParseError(path.string() + ": no parseable rows");
  }

  Eigen::MatrixXd data(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(columns.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c];
    }
  }
  data = fit_and_apply(spec, data);

  if (!sample_size.has_value()) {
    return data;
  }
  const int want = *sample_size;
  if (want < 1 || want > data.rows()) {
    throw std::invalid_argument(
        "load_points_csv: sample size " + std::to_string(want) +
        " not in [1, " + std::to_string(data.rows()) + "]");
  }

  // Partial Fisher-Yates: the first `want` slots end up holding a uniform
  // sample without replacement.
  std::vector<Eigen::Index> order(data.rows());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (int i = 0; i < want; ++i) {
    const auto j =
        i + static_cast<Eigen::Index>(rng.below(order.size() - i));
    std::swap(order[i], order[j]);
  }
  Eigen::MatrixXd sample(want, data.cols());
  for (int i = 0; i < want; ++i) {
    sample.row(i) = data.row(order[i]);
  }
  return sample;
}

std::map<std::string, double> load_known_optima(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::map<std::string, double> optima;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    const std::optional<double> radius =
        cells.size() == 2 ? parse_number(cells[1]) : std::nullopt;
    if (cells.size() != 2 || cells[0].empty() || !radius) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected 'name,radius'");
    }
    if (!optima.emplace(cells[0], *radius).second) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": duplicate instance '" + cells[0] + "'");
    }
  }
  return optima;
}

double round_sig(double x, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", digits, x);
  return std::strtod(buffer, nullptr);
}

namespace {

constexpr const char* kCsvHeader =
    "instance,algorithm,k,lambda_scale,mean_max_radius,radius_ratio_opt,"
    "radius_ratio_scr,max_pair_ratio,max_community_mean,trials,seed";

std::string csv_number(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", x);
  return buffer;
}

std::string csv_optional(const std::optional<double>& x) {
  return x ? csv_number(*x) : std::string();
}

nlohmann::json json_optional(const std::optional<double>& x) {
  return x ? nlohmann::json(round_sig(*x)) : nlohmann::json(nullptr);
}

void write_csv(const std::vector<ReportRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const ReportRow& row : rows) {
    out << row.instance << ',' << row.algorithm << ',' << row.k << ','
        << csv_optional(row.lambda_scale) << ','
        << csv_number(row.mean_max_radius) << ','
        << csv_optional(row.radius_ratio_opt) << ','
        << csv_optional(row.radius_ratio_scr) << ','
        << csv_number(row.max_pair_ratio) << ','
        << csv_number(row.max_community_mean) << ',' << row.trials << ','
        << row.seed << '\n';
  }
}

void write_json(const std::vector<ReportRow>& rows, std::ostream& out) {
  nlohmann::json doc = nlohmann::json::array();
  for (const ReportRow& row : rows) {
    doc.push_back({{"instance", row.instance},
                   {"algorithm", row.algorithm},
                   {"k", row.k},
                   {"lambda_scale", json_optional(row.lambda_scale)},
                   {"mean_max_radius", round_sig(row.mean_max_radius)},
                   {"radius_ratio_opt", json_optional(row.radius_ratio_opt)},
                   {"radius_ratio_scr", json_optional(row.radius_ratio_scr)},
                   {"max_pair_ratio", round_sig(row.max_pair_ratio)},
                   {"max_community_mean", round_sig(row.max_community_mean)},
                   {"trials", row.trials},
                   {"seed", row.seed}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace

void write_report(const std::vector<ReportRow>& rows, ReportFormat format,
                  std::ostream& out) {
  if (format == ReportFormat::Csv) {
    write_csv(rows, out);
  } else {
    write_json(rows, out);
  }
  if (!out) {
    throw IoError("report write failed");
  }
}

void write_report(const std::vector<ReportRow>& rows, ReportFormat format,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  write_report(rows, format, out);
}

std::vector<ReportRow> read_report_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report json: ") + e.what());
  }
  if (!doc.is_array()) {
    throw ParseError("report json: expected a top-level array");
  }
  auto optional_field = [](const nlohmann::json& obj,
                           const char* key) -> std::optional<double> {
    const auto& value = obj.at(key);
    if (value.is_null()) return std::nullopt;
    return value.get<double>();
  };
  std::vector<ReportRow> rows;
  try {
    for (const auto& obj : doc) {
      ReportRow row;
      row.instance = obj.at("instance").get<std::string>();
      row.algorithm = obj.at("algorithm").get<std::string>();
      row.k = obj.at("k").get<int>();
      row.lambda_scale = optional_field(obj, "lambda_scale");
      row.mean_max_radius = obj.at("mean_max_radius").get<double>();
      row.radius_ratio_opt = optional_field(obj, "radius_ratio_opt");
      row.radius_ratio_scr = optional_field(obj, "radius_ratio_scr");
      row.max_pair_ratio = obj.at("max_pair_ratio").get<double>();
      row.max_community_mean = obj.at("max_community_mean").get<double>();
      row.trials = obj.at("trials").get<std::uint64_t>();
      row.seed = obj.at("seed").get<std::uint64_t>();
      rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report json: ") + e.what());
  }
  return rows;
}

}  // namespace fairkc
