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

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "qforecast/bench/experiment.hpp"

namespace qforecast::bench {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Aggregates of one model across all windows.
struct ModelSummary {
  std::string model;
  Eigen::MatrixXd mae;  // customers x horizon, averaged over windows
  Eigen::MatrixXd mse;
  std::vector<double> window_mae;
  std::vector<double> window_mse;
  std::vector<double> window_relative_error;
  double mean_mae = 0.0;
  double std_mae = 0.0;
  double mean_mse = 0.0;
  double mean_relative_error = 0.0;
  int windows_beating_naive = -1;  // -1 when no naive model ran
};

std::vector<ModelSummary> summarize_models(const ExperimentReport& report);

nlohmann::json report_to_json(const ExperimentReport& report);
/// Inverse of report_to_json; derived sections are recomputed rather than read.
ExperimentReport report_from_json(const nlohmann::json& j);

/// (file name, CSV text) for every table the report supports. Wall-clock time never appears here.
std::vector<std::pair<std::string, std::string>> render_tables(const ExperimentReport& report);

/// Writes report.json and every table into `dir`. Throws std::runtime_error naming the path on I/O failure.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);
void write_tables(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace qforecast::bench
