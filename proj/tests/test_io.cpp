#include "fairkc/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fairkc;

namespace {

// Scratch file that cleans up after itself.
struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name, const std::string& contents)
      : path(std::filesystem::temp_directory_path() / name) {
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("pmed parsing accepts the documented format") {
  const PmedInstance instance = parse_pmed("4 3 2\n1 2 5\n2 3 5\n3 4 5\n");
  CHECK(instance.vertex_count == 4);
  CHECK(instance.edge_count == 3);
  CHECK(instance.center_count == 2);
  REQUIRE(instance.edges.size() == 3);
  CHECK(instance.edges[1].u == 2);
  CHECK(instance.edges[1].v == 3);
  CHECK(instance.edges[1].cost == 5.0);

  // Arbitrary whitespace is fine.
  const PmedInstance spaced = parse_pmed("4 3 2 1 2 5\n2 3 5   3 4 5");
  CHECK(spaced.edges.size() == 3);
}

TEST_CASE("pmed parsing rejects malformed input") {
  CHECK_THROWS_WITH_AS(parse_pmed("4 3 2\n1 2 5\n"),
                       "pmed: expected 3 edges, found 1", ParseError);
  CHECK_THROWS_AS(parse_pmed(""), ParseError);
  CHECK_THROWS_AS(parse_pmed("4 3 x\n1 2 5\n2 3 5\n3 4 5\n"), ParseError);
  CHECK_THROWS_AS(parse_pmed("4 3 2\n1 9 5\n2 3 5\n3 4 5\n"), ParseError);
  CHECK_THROWS_AS(parse_pmed("4 3 2\n1 2 0\n2 3 5\n3 4 5\n"), ParseError);
  CHECK_THROWS_AS(parse_pmed("4 3 2\n1 2 5\n2 3 5\n3 4 5\n9\n"), ParseError);
  CHECK_THROWS_AS(load_pmed("/nonexistent/pmed999"), IoError);
}

TEST_CASE("bundled fixture: pmed1 has the published profile") {
  const PmedInstance instance =
      load_pmed(std::filesystem::path(FAIRKC_DATA_DIR) / "pmed1");
  CHECK(instance.vertex_count == 100);
  CHECK(instance.center_count == 5);
  const MetricSpace space = to_metric_space(instance);
  CHECK(space.size() == 100);
}

TEST_CASE("minmax normalization maps onto [0, 1] and is idempotent") {
  Eigen::MatrixXd data(3, 2);
  data << 10, 7,
          20, 7,
          30, 7;
  NormalizationSpec spec = normalization(NormalizeMethod::MinMax);
  const Eigen::MatrixXd scaled = fit_and_apply(spec, data);
  CHECK(scaled(0, 0) == 0.0);
  CHECK(scaled(1, 0) == 0.5);
  CHECK(scaled(2, 0) == 1.0);
  // Constant column degenerates to zero.
  for (int r = 0; r < 3; ++r) CHECK(scaled(r, 1) == 0.0);

  NormalizationSpec again = normalization(NormalizeMethod::MinMax);
  const Eigen::MatrixXd rescaled = fit_and_apply(again, scaled);
  CHECK(rescaled == scaled);
}

TEST_CASE("zscore normalization centers and scales") {
  Eigen::MatrixXd data(4, 1);
  data << 2, 4, 6, 8;
  NormalizationSpec spec = normalization(NormalizeMethod::ZScore);
  const Eigen::MatrixXd scaled = fit_and_apply(spec, data);
  CHECK(scaled.col(0).mean() == doctest::Approx(0.0));
  CHECK(scaled(3, 0) == doctest::Approx(1.3416407865));
}

TEST_CASE("csv loading selects, skips, normalizes and samples") {
  const TempFile csv(
      "fairkc_test_points.csv",
      "age, education-num ,hours-per-week,label\n"
      "20,10,40,x\n"
      "30,?,40,y\n"     // missing education-num: skipped
      "40,12,50,z\n"
      "60,14,,w\n"      // missing hours: skipped
      "50,16,60,v\n");

  NormalizationSpec spec = normalization(NormalizeMethod::MinMax);
  const Eigen::MatrixXd points = load_points_csv(
      csv.path, {"age", "education-num", "hours-per-week"}, spec);
  REQUIRE(points.rows() == 3);
  REQUIRE(points.cols() == 3);
  CHECK(points.minCoeff() >= 0.0);
  CHECK(points.maxCoeff() <= 1.0);
  CHECK(points(0, 0) == 0.0);   // age 20 of range [20, 50]
  CHECK(points(2, 0) == 1.0);   // age 50

  // Sampling without replacement returns the requested number of rows.
  NormalizationSpec spec2 = normalization(NormalizeMethod::MinMax);
  const Eigen::MatrixXd sampled = load_points_csv(
      csv.path, {"age", "education-num", "hours-per-week"}, spec2, 2, 8);
  CHECK(sampled.rows() == 2);
  NormalizationSpec spec3 = normalization(NormalizeMethod::MinMax);
  const Eigen::MatrixXd sampled_again = load_points_csv(
      csv.path, {"age", "education-num", "hours-per-week"}, spec3, 2, 8);
  CHECK(sampled == sampled_again);

  CHECK_THROWS_AS(
      load_points_csv(csv.path, {"age", "wage"}, spec),
      ParseError);
  CHECK_THROWS_AS(load_points_csv(csv.path, {"age"}, spec, 99),
                  std::invalid_argument);
  CHECK_THROWS_AS(load_points_csv(csv.path, {"label"}, spec), ParseError);
}

TEST_CASE("a thousand-point sample lands in the unit cube") {
  // Same shape as the adult protocol: three numeric columns among others,
  // some unusable rows, sample 1000 of what parses.
  std::ostringstream body;
  body << "workclass,age,education-num,capital-gain,hours-per-week\n";
  for (int i = 0; i < 1500; ++i) {
    if (i % 97 == 0) {
      body << "private," << (18 + i % 60) << ",?,0," << (20 + i % 50) << "\n";
    } else {
      body << "private," << (18 + i % 60) << "," << (1 + i % 16) << ",0,"
           << (20 + i % 50) << "\n";
    }
  }
  const TempFile csv("fairkc_adultlike.csv", body.str());

  NormalizationSpec spec = normalization(NormalizeMethod::MinMax);
  const Eigen::MatrixXd points = load_points_csv(
      csv.path, {"age", "education-num", "hours-per-week"}, spec, 1000, 11);
  CHECK(points.rows() == 1000);
  CHECK(points.cols() == 3);
  CHECK(points.minCoeff() >= 0.0);
  CHECK(points.maxCoeff() <= 1.0);
}

TEST_CASE("known optima sidecar") {
  const TempFile good("fairkc_optima.csv", "pmed1,127\npmed2,98\n");
  const auto optima = load_known_optima(good.path);
  CHECK(optima.size() == 2);
  CHECK(optima.at("pmed1") == 127.0);

  const TempFile empty("fairkc_optima_empty.csv", "");
  CHECK(load_known_optima(empty.path).empty());

  const TempFile dup("fairkc_optima_dup.csv", "pmed1,127\npmed1,126\n");
  CHECK_THROWS_AS(load_known_optima(dup.path), ParseError);

  const TempFile bad("fairkc_optima_bad.csv", "pmed1\n");
  CHECK_THROWS_AS(load_known_optima(bad.path), ParseError);
}

TEST_CASE("report writers: csv and json agree, json round-trips") {
  std::vector<ReportRow> rows;
  ReportRow fair;
  fair.instance = "pmed1";
  fair.algorithm = "fair";
  fair.k = 5;
  fair.lambda_scale = 4.0;
  fair.mean_max_radius = 213.61828182845;
  fair.radius_ratio_opt = std::nullopt;
  fair.radius_ratio_scr = 1.7654321012345;
  fair.max_pair_ratio = 0.70477123456;
  fair.max_community_mean = 1.16951234567;
  fair.trials = 10000;
  fair.seed = 1234567890123456789ULL;
  rows.push_back(fair);

  ReportRow det;
  det.instance = "pmed1";
  det.algorithm = "scr";
  det.k = 5;
  det.mean_max_radius = 121.0;
  det.radius_ratio_scr = 1.0;
  det.max_pair_ratio = 11.0;
  det.max_community_mean = 3.0;
  det.trials = 1;
  rows.push_back(det);

  std::ostringstream json_out;
  write_report(rows, ReportFormat::Json, json_out);
  std::istringstream json_in(json_out.str());
  const std::vector<ReportRow> parsed = read_report_json(json_in);

  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].instance == rows[i].instance);
    CHECK(parsed[i].algorithm == rows[i].algorithm);
    CHECK(parsed[i].k == rows[i].k);
    CHECK(parsed[i].lambda_scale == rows[i].lambda_scale);
    CHECK(parsed[i].mean_max_radius == round_sig(rows[i].mean_max_radius));
    CHECK(parsed[i].radius_ratio_opt.has_value() ==
          rows[i].radius_ratio_opt.has_value());
    CHECK(parsed[i].max_pair_ratio == round_sig(rows[i].max_pair_ratio));
    CHECK(parsed[i].max_community_mean ==
          round_sig(rows[i].max_community_mean));
    CHECK(parsed[i].trials == rows[i].trials);
    CHECK(parsed[i].seed == rows[i].seed);
  }

  // CSV and JSON must agree field for field.
  std::ostringstream csv_out;
  write_report(rows, ReportFormat::Csv, csv_out);
  std::istringstream csv_in(csv_out.str());
  std::string header, line;
  std::getline(csv_in, header);
  CHECK(header ==
        "instance,algorithm,k,lambda_scale,mean_max_radius,radius_ratio_opt,"
        "radius_ratio_scr,max_pair_ratio,max_community_mean,trials,seed");
  for (const ReportRow& row : parsed) {
    REQUIRE(std::getline(csv_in, line));
    std::vector<std::string> cells;
    std::stringstream splitter(line);
    std::string cell;
    while (std::getline(splitter, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 11);
    CHECK(cells[0] == row.instance);
    CHECK(cells[1] == row.algorithm);
    CHECK(std::stoi(cells[2]) == row.k);
    if (row.lambda_scale) {
      CHECK(std::stod(cells[3]) == *row.lambda_scale);
    } else {
      CHECK(cells[3].empty());
    }
    CHECK(std::stod(cells[4]) == row.mean_max_radius);
    if (row.radius_ratio_opt) {
      CHECK(std::stod(cells[5]) == *row.radius_ratio_opt);
    } else {
      CHECK(cells[5].empty());
    }
    CHECK(std::stod(cells[7]) == row.max_pair_ratio);
    CHECK(std::stod(cells[8]) == row.max_community_mean);
    CHECK(std::stoull(cells[9]) == row.trials);
    CHECK(std::stoull(cells[10]) == row.seed);
  }

  // Empty report: header only.
  std::ostringstream empty_out;
  write_report({}, ReportFormat::Csv, empty_out);
  CHECK(empty_out.str() == header + "\n");
}

TEST_CASE("round_sig keeps six significant digits") {
  CHECK(round_sig(0.18126924692201818) == 0.181269);
  CHECK(round_sig(213.61828182845) == 213.618);
  CHECK(round_sig(127.0) == 127.0);
  CHECK(round_sig(0.0) == 0.0);
}
