#pragma once

// Experiment commands behind the CLI. Each returns a ResultRecord whose CSV rendering is a
// pure function of the RunConfig: worker count and wall-clock never reach the output.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "randap/field.hpp"

namespace randap {

struct RunConfig {
  std::string command;
  std::int64_t p = 3;
  std::string n = "2";        // single value or list ("4,6,8" / "4:8")
  std::string big_n = "1024,2048,4096,8192,16384";
  std::string sizes;          // K list
  std::string size_fractions; // K as fractions of (n+1 choose 2)
  std::string rates;          // c list for the Bernoulli finite-field model
  unsigned k = 3;
  std::optional<Index> r;
  std::string model = "uniform:c=10";
  double eps = 0.1;
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  std::string mode = "exhaustive";
  std::string set_file;
  std::string difference_file;
  std::string domain;
  std::uint64_t samples = 4096;
  double slack = 11.0;
  std::uint64_t budget = std::uint64_t{1} << 24;
  std::string out;
  unsigned threads = 1;  // not echoed: results are independent of it
};

struct ResultRecord {
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  nlohmann::ordered_json summary;

  /// '#' config block, header row, data rows, then '# summary' lines.
  std::string csv() const;
};

/// Floats with 12 significant digits.
std::string format_real(double x);

std::vector<std::int64_t> parse_int_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

ResultRecord run_gauss_sum(const RunConfig& config);
ResultRecord run_adversary(const RunConfig& config);
ResultRecord run_threshold_scan(const RunConfig& config);
ResultRecord run_dual(const RunConfig& config);
ResultRecord run_concentration(const RunConfig& config);
ResultRecord run_census(const RunConfig& config);

}  // namespace randap
