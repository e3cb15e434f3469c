// Copyright 2026 The qforecast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qforecast::data {

/// Hourly observations, one row per customer and one column per hour.
struct TimeSeriesDataset {
  Eigen::MatrixXd values;
  std::vector<std::string> ids;

  int customers() const { return static_cast<int>(values.rows()); }
  int hours() const { return static_cast<int>(values.cols()); }
  /// Throws std::invalid_argument on non-finite values, id count mismatch, or duplicate ids.
  void validate() const;
  /// Row index of a customer id; throws std::out_of_range when absent.
  int index_of(std::string_view id) const;
};

/// Parameters of the synthetic smart-meter generator.
///
/// Each customer is base * max(0, 1 + swing * (loading * shared + (1 - loading) * noise * own))
/// where `shared` is a daily two-harmonic profile plus a per-cluster AR(1)
/// factor, and `own` is an idiosyncratic AR(1) process with occasional peak
/// events. The loading therefore dials pairwise correlation from ~0 to 1 within
/// a cluster.
struct SyntheticSpec {
  int customers = 103;
  int hours = 24 * 60;
  int clusters = 3;
  double loading = 0.85;
  double noise = 1.0;
  double daily_amplitude = 1.0;
  double factor_scale = 1.0;  // standard deviation of the cluster factor
  double cluster_ar = 0.5;
  double idio_ar = 0.5;
  double peak_probability = 0.03;
  double peak_scale = 2.0;
  double base_level = 1.0;
  double swing = 0.35;

  void validate() const;
};

nlohmann::json to_json(const SyntheticSpec& spec);
SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j);

TimeSeriesDataset generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

/// CSV parse failure with 1-based location (column 0 when not cell-specific).
class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& source, int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Header row of customer ids, then one row of comma-separated values per hour.
TimeSeriesDataset parse_csv(std::istream& in, const std::string& source = "<stream>");
TimeSeriesDataset load_csv(const std::filesystem::path& path);
/// Writes shortest round-trip decimal representations, so load_csv(save_csv(d)) == d bit-exactly.
void write_csv(std::ostream& out, const TimeSeriesDataset& ds);
void save_csv(const TimeSeriesDataset& ds, const std::filesystem::path& path);
/// Provenance sidecar: ids, seed and generator parameters.
void save_metadata(const std::filesystem::path& path, const TimeSeriesDataset& ds, const nlohmann::json& provenance);

double pearson(std::span<const double> a, std::span<const double> b);

struct CorrelationMatrix {
  Eigen::MatrixXd r;               // unit diagonal; zero off-diagonal for flagged rows
  std::vector<int> zero_variance;  // customers whose series is constant
};

/// Throws std::invalid_argument when fewer than three hours are available.
CorrelationMatrix pairwise_correlations(const TimeSeriesDataset& ds);

enum class SubsetRole { Group, Triplet, Utility };
std::string to_string(SubsetRole role);
SubsetRole subset_role_from_string(std::string_view s);

struct SubsetSpec {
  SubsetRole role = SubsetRole::Group;
  std::string name;
  std::vector<int> members;  // dataset row indices
  std::vector<std::string> ids;

  void validate(const TimeSeriesDataset& ds) const;
};

/// Greedy construction: start from the most correlated pair, then repeatedly add
/// the customer with the largest mean correlation to the current set. Ties go
/// to the smaller index.
SubsetSpec select_correlated_subset(const TimeSeriesDataset& ds, int size, SubsetRole role = SubsetRole::Group);

/// Fixed groups/triplets defined over positions (1-based) of a ranked 15-customer base:
/// group_a {1,2,4,8,11}, group_b {3,7,9,10,15}, group_c {1,2,3,4,5},
/// triplet_a {4,8,11}, triplet_b {1,2,4}, triplet_c {1,4,11}.
SubsetSpec named_subset(std::string_view name, const SubsetSpec& base15);
std::vector<std::string> named_subset_names();

/// Per-series min-max scaling fitted on a training block.
struct Normalization {
  Eigen::VectorXd min;
  Eigen::VectorXd scale;  // max - min, or 1 for constant series

  static Normalization fit(const Eigen::MatrixXd& train);
  Eigen::MatrixXd apply(const Eigen::MatrixXd& raw) const;
  Eigen::MatrixXd invert(const Eigen::MatrixXd& normalized) const;
};

struct WindowOptions {
  int train_len = 15;
  int horizon = 5;
  int stride = 1;
  int first_origin = 0;
  int max_windows = 0;  // 0 keeps every window

  void validate() const;
};

/// One train/test split. Normalization statistics come from the train block only.
struct WindowSplit {
  int origin = 0;
  int train_len = 0;
  int horizon = 0;
  std::vector<int> streams;
  Eigen::MatrixXd train_raw;  // streams x train_len
  Eigen::MatrixXd test_raw;   // streams x horizon
  Normalization norm;
  Eigen::MatrixXd train;
  Eigen::MatrixXd test;
  std::string hash;  // content hash of the raw block and its placement
};

std::string window_hash(const WindowSplit& w);

/// Throws std::invalid_argument when the series is shorter than train_len + horizon.
std::vector<WindowSplit> rolling_windows(const TimeSeriesDataset& ds, std::span<const int> streams,
                                         const WindowOptions& options = {});

}  // namespace qforecast::data
