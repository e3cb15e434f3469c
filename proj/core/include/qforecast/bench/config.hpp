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

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qforecast/baselines.hpp"
#include "qforecast/data.hpp"
#include "qforecast/diagnostics.hpp"
#include "qforecast/kqrc.hpp"
#include "qforecast/qgp/forecast.hpp"

namespace qforecast::bench {

enum class ExperimentKind { KqrcTriplet, QgpGroup, QgpUtility, QubitScaling, Diagnostics, Baselines };
std::string to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(std::string_view s);

/// Invalid configuration, reported with a JSON field path such as `$.windows.train`.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : std::invalid_argument(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct DatasetSource {
  enum class Kind { Synthetic, Csv };
  Kind kind = Kind::Synthetic;
  data::SyntheticSpec synthetic;
  std::string path;  // CSV file when kind == Csv
};

/// Exactly one of name, ids or correlated selects the customers.
struct SubsetSelection {
  std::string name;              // named subset over the ranked base
  std::vector<std::string> ids;  // explicit customer ids
  int correlated = 0;            // greedy correlated subset of this size
  int base_size = 15;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::KqrcTriplet;
  std::string name = "experiment";
  std::uint64_t seed = 1;  // synthetic data seed
  DatasetSource dataset;
  SubsetSelection subset{"triplet_b", {}, 0, 15};
  data::WindowOptions windows{15, 5, 53, 0, 5};
  kqrc::ReservoirConfig kqrc;
  qgp::QgpConfig qgp;
  baselines::EsnConfig esn;
  baselines::LmcConfig lmc;
  diagnostics::ScalingOptions diagnostics;
  std::vector<int> scaling_qubits{2, 3, 4, 5};
  int utility_customers = 100;
  std::string pattern_subset = "group_a";
  /// Models run by kqrc_triplet, qgp_group and baselines; the other kinds fix their own model set.
  std::vector<std::string> models{"naive", "esn", "lmc", "kqrc", "qgp"};
  std::string output = "out";
  std::size_t workers = 0;
};

/// Default configuration for an experiment kind.
ExperimentConfig default_config(ExperimentKind kind);

/// Unknown fields, wrong types and out-of-range values throw ConfigError.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& cfg);

/// Command-line overrides applied after parsing, then revalidated.
void apply_overrides(ExperimentConfig& cfg, std::optional<std::uint64_t> seed, std::optional<std::string> out,
                     std::optional<std::string> backend);

void validate(const ExperimentConfig& cfg);

}  // namespace qforecast::bench
