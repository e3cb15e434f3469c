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

#include "qforecast/bench/config.hpp"

#include <algorithm>
#include <fstream>

namespace qforecast::bench {
namespace {

using nlohmann::json;

const std::vector<std::string> kModels{"naive", "esn", "lmc", "kqrc", "qgp"};

void check_type(const json& v, const json& def, const std::string& path);

void check_object(const json& j, const json& def, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!def.contains(key)) throw ConfigError(path + "." + key, "unknown field");
    check_type(value, def.at(key), path + "." + key);
  }
}

void check_type(const json& v, const json& def, const std::string& path) {
  if (def.is_object()) {
    check_object(v, def, path);
  } else if (def.is_boolean()) {
    if (!v.is_boolean()) throw ConfigError(path, "expected a boolean");
  } else if (def.is_string()) {
    if (!v.is_string()) throw ConfigError(path, "expected a string");
  } else if (def.is_number_unsigned()) {
    if (!v.is_number_unsigned()) throw ConfigError(path, "expected a non-negative integer");
  } else if (def.is_number_integer()) {
    if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  } else if (def.is_number_float()) {
    if (!v.is_number()) throw ConfigError(path, "expected a number");
  } else if (def.is_array()) {
    if (!v.is_array()) throw ConfigError(path, "expected an array");
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string item = path + "[" + std::to_string(i) + "]";
      if (!def.empty()) {
        check_type(v[i], def[0], item);
      } else if (!v[i].is_number()) {
        throw ConfigError(item, "expected a number");
      }
    }
  }
}

// Runs a section parser, attaching the section path to any failure.
template <typename Fn>
auto section(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const json::exception& e) {
    throw ConfigError(path, e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError(path, e.what());
  }
}

json windows_json(const data::WindowOptions& w) {
  return {{"train", w.train_len}, {"horizon", w.horizon}, {"stride", w.stride}, {"start", w.first_origin},
          {"count", w.max_windows}};
}

json subset_json(const SubsetSelection& s) {
  return {{"name", s.name}, {"ids", s.ids}, {"correlated", s.correlated}, {"base_size", s.base_size}};
}

json dataset_json(const DatasetSource& d) {
  return {{"source", d.kind == DatasetSource::Kind::Synthetic ? "synthetic" : "csv"},
          {"path", d.path},
          {"synthetic", data::to_json(d.synthetic)}};
}

}  // namespace

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::KqrcTriplet: return "kqrc_triplet";
    case ExperimentKind::QgpGroup: return "qgp_group";
    case ExperimentKind::QgpUtility: return "qgp_utility";
    case ExperimentKind::QubitScaling: return "qubit_scaling";
    case ExperimentKind::Diagnostics: return "diagnostics";
    case ExperimentKind::Baselines: return "baselines";
  }
  return "?";
}

ExperimentKind experiment_kind_from_string(std::string_view s) {
  for (auto k : {ExperimentKind::KqrcTriplet, ExperimentKind::QgpGroup, ExperimentKind::QgpUtility,
                 ExperimentKind::QubitScaling, ExperimentKind::Diagnostics, ExperimentKind::Baselines}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown experiment '" + std::string(s) +
                              "' (expected kqrc_triplet, qgp_group, qgp_utility, qubit_scaling, diagnostics or baselines)");
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  c.name = to_string(kind);
  switch (kind) {
    case ExperimentKind::KqrcTriplet:
      c.subset = {"triplet_b", {}, 0, 15};
      c.models = {"naive", "kqrc"};
      break;
    case ExperimentKind::QubitScaling:
    case ExperimentKind::Baselines: c.subset = {"triplet_b", {}, 0, 15}; break;
    case ExperimentKind::QgpGroup:
      c.subset = {"group_a", {}, 0, 15};
      c.models = {"naive", "qgp"};
      break;
    case ExperimentKind::Diagnostics: c.subset = {"group_a", {}, 0, 15}; break;
    case ExperimentKind::QgpUtility:
      c.subset = {"", {}, c.utility_customers, 15};
      c.qgp.sim.backend = qgp::Backend::Mps;
      break;
  }
  return c;
}

json to_json(const ExperimentConfig& c) {
  return {{"experiment", to_string(c.kind)},
          {"name", c.name},
          {"seed", c.seed},
          {"dataset", dataset_json(c.dataset)},
          {"subset", subset_json(c.subset)},
          {"windows", windows_json(c.windows)},
          {"kqrc", kqrc::to_json(c.kqrc)},
          {"qgp", qgp::to_json(c.qgp)},
          {"esn", baselines::to_json(c.esn)},
          {"lmc", baselines::to_json(c.lmc)},
          {"diagnostics", diagnostics::to_json(c.diagnostics)},
          {"qubit_scaling", {{"qubits", c.scaling_qubits}}},
          {"utility", {{"customers", c.utility_customers}, {"pattern_subset", c.pattern_subset}}},
          {"models", c.models},
          {"output", c.output},
          {"workers", c.workers}};
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("$", "configuration must be a JSON object");
  if (!j.contains("experiment")) throw ConfigError("$.experiment", "required field is missing");
  if (!j.at("experiment").is_string()) throw ConfigError("$.experiment", "expected a string");
  const ExperimentKind kind =
      section("$.experiment", [&] { return experiment_kind_from_string(j.at("experiment").get<std::string>()); });
  ExperimentConfig c = default_config(kind);
  check_object(j, to_json(c), "$");

  c.name = j.value("name", c.name);
  c.seed = j.value("seed", c.seed);
  c.output = j.value("output", c.output);
  c.workers = j.value("workers", c.workers);
  if (j.contains("dataset")) {
    const json& d = j.at("dataset");
    const std::string source = d.value("source", std::string("synthetic"));
    if (source == "synthetic") {
      c.dataset.kind = DatasetSource::Kind::Synthetic;
    } else if (source == "csv") {
      c.dataset.kind = DatasetSource::Kind::Csv;
    } else {
      throw ConfigError("$.dataset.source", "expected 'synthetic' or 'csv'");
    }
    c.dataset.path = d.value("path", c.dataset.path);
    if (d.contains("synthetic")) {
      c.dataset.synthetic = section("$.dataset.synthetic", [&] { return data::synthetic_spec_from_json(d.at("synthetic")); });
    }
  }
  if (j.contains("subset")) {
    const json& s = j.at("subset");
    // Selecting one mode clears the kind's default selector.
    if (s.contains("name") || s.contains("ids") || s.contains("correlated")) c.subset = {"", {}, 0, c.subset.base_size};
    c.subset.name = s.value("name", c.subset.name);
    c.subset.ids = s.value("ids", c.subset.ids);
    c.subset.correlated = s.value("correlated", c.subset.correlated);
    c.subset.base_size = s.value("base_size", c.subset.base_size);
  }
  if (j.contains("windows")) {
    const json& w = j.at("windows");
    c.windows.train_len = w.value("train", c.windows.train_len);
    c.windows.horizon = w.value("horizon", c.windows.horizon);
    c.windows.stride = w.value("stride", c.windows.stride);
    c.windows.first_origin = w.value("start", c.windows.first_origin);
    c.windows.max_windows = w.value("count", c.windows.max_windows);
  }
  if (j.contains("kqrc")) {
    json merged = kqrc::to_json(c.kqrc);
    merged.update(j.at("kqrc"));
    c.kqrc = section("$.kqrc", [&] { return kqrc::reservoir_config_from_json(merged); });
  }
  if (j.contains("qgp")) {
    json merged = qgp::to_json(c.qgp);
    merged.update(j.at("qgp"), true);
    c.qgp = section("$.qgp", [&] { return qgp::qgp_config_from_json(merged); });
  }
  if (j.contains("esn")) c.esn = section("$.esn", [&] { return baselines::esn_config_from_json(j.at("esn")); });
  if (j.contains("lmc")) c.lmc = section("$.lmc", [&] { return baselines::lmc_config_from_json(j.at("lmc")); });
  if (j.contains("diagnostics")) {
    c.diagnostics = section("$.diagnostics", [&] { return diagnostics::scaling_options_from_json(j.at("diagnostics")); });
  }
  if (j.contains("qubit_scaling")) c.scaling_qubits = j.at("qubit_scaling").value("qubits", c.scaling_qubits);
  if (j.contains("utility")) {
    c.utility_customers = j.at("utility").value("customers", c.utility_customers);
    c.pattern_subset = j.at("utility").value("pattern_subset", c.pattern_subset);
    if (kind == ExperimentKind::QgpUtility && !j.contains("subset")) c.subset.correlated = c.utility_customers;
  }
  c.models = j.value("models", c.models);
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", "malformed JSON in '" + path.string() + "': " + e.what());
  }
  return parse_config(j);
}

void validate(const ExperimentConfig& c) {
  if (c.name.empty()) throw ConfigError("$.name", "must not be empty");
  if (c.output.empty()) throw ConfigError("$.output", "must not be empty");
  if (c.dataset.kind == DatasetSource::Kind::Csv && c.dataset.path.empty()) {
    throw ConfigError("$.dataset.path", "required when source is 'csv'");
  }
  section("$.dataset.synthetic", [&] { c.dataset.synthetic.validate(); return 0; });

  const int selectors = (c.subset.name.empty() ? 0 : 1) + (c.subset.ids.empty() ? 0 : 1) + (c.subset.correlated > 0 ? 1 : 0);
  if (selectors != 1) throw ConfigError("$.subset", "set exactly one of name, ids or correlated");
  if (c.subset.correlated < 0) throw ConfigError("$.subset.correlated", "must be >= 0");
  if (c.subset.base_size < 1) throw ConfigError("$.subset.base_size", "must be >= 1");
  if (!c.subset.name.empty()) {
    const auto names = data::named_subset_names();
    if (std::find(names.begin(), names.end(), c.subset.name) == names.end()) {
      throw ConfigError("$.subset.name", "unknown subset '" + c.subset.name + "'");
    }
  }
  section("$.windows", [&] { c.windows.validate(); return 0; });
  section("$.kqrc", [&] { c.kqrc.validate(); return 0; });
  section("$.qgp", [&] { c.qgp.validate(); return 0; });
  section("$.esn", [&] { c.esn.validate(); return 0; });
  section("$.lmc", [&] { c.lmc.validate(); return 0; });
  section("$.diagnostics", [&] { c.diagnostics.validate(); return 0; });
  for (std::size_t i = 0; i < c.scaling_qubits.size(); ++i) {
    if (c.scaling_qubits[i] < 2 || c.scaling_qubits[i] > 8) {
      throw ConfigError("$.qubit_scaling.qubits[" + std::to_string(i) + "]", "must lie in [2, 8]");
    }
  }
  if (c.scaling_qubits.empty()) throw ConfigError("$.qubit_scaling.qubits", "must not be empty");
  if (c.utility_customers < 2) throw ConfigError("$.utility.customers", "must be >= 2");
  if (c.pattern_subset.rfind("group_", 0) != 0) throw ConfigError("$.utility.pattern_subset", "must name a group subset");
  if (c.models.empty()) throw ConfigError("$.models", "must not be empty");
  for (std::size_t i = 0; i < c.models.size(); ++i) {
    if (std::find(kModels.begin(), kModels.end(), c.models[i]) == kModels.end()) {
      throw ConfigError("$.models[" + std::to_string(i) + "]", "unknown model '" + c.models[i] + "'");
    }
  }
  const auto requires_model = [&](const char* name) {
    if (std::find(c.models.begin(), c.models.end(), name) == c.models.end()) {
      throw ConfigError("$.models", std::string("experiment ") + to_string(c.kind) + " needs model '" + name + "'");
    }
  };
  if (c.kind == ExperimentKind::KqrcTriplet) requires_model("kqrc");
  if (c.kind == ExperimentKind::QgpGroup) requires_model("qgp");
}

void apply_overrides(ExperimentConfig& cfg, std::optional<std::uint64_t> seed, std::optional<std::string> out,
                     std::optional<std::string> backend) {
  if (seed) cfg.seed = *seed;
  if (out) cfg.output = *out;
  if (backend) cfg.qgp.sim.backend = section("--backend", [&] { return qgp::backend_from_string(*backend); });
  validate(cfg);
}

}  // namespace qforecast::bench
