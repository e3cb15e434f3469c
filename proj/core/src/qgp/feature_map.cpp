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

#include "qforecast/qgp/feature_map.hpp"

#include <cmath>
#include <stdexcept>

#include "qforecast/random.hpp"

namespace qforecast::qgp {

std::string to_string(Backend b) { return b == Backend::Dense ? "dense" : "mps"; }

Backend backend_from_string(std::string_view s) {
  if (s == "dense") return Backend::Dense;
  if (s == "mps") return Backend::Mps;
  throw std::invalid_argument("unknown backend '" + std::string(s) + "' (expected dense or mps)");
}

void FeatureMapParams::validate() const {
  if (n_qubits < 2) throw std::invalid_argument("feature map needs at least 2 qubits");
  if (static_cast<int>(theta.size()) != n_qubits) {
    throw std::invalid_argument("feature map has " + std::to_string(theta.size()) + " angles for " +
                                std::to_string(n_qubits) + " qubits");
  }
  if (locality != 1 && locality != 2) throw std::invalid_argument("locality must be 1 or 2");
  if (!std::isfinite(angle_scale)) throw std::invalid_argument("angle_scale must be finite");
}

FeatureMapParams FeatureMapParams::zeros(int n_qubits) {
  FeatureMapParams p;
  p.n_qubits = n_qubits;
  p.theta.assign(static_cast<std::size_t>(std::max(n_qubits, 0)), 0.0);
  return p;
}

FeatureMapParams FeatureMapParams::random(int n_qubits, std::uint64_t seed, double range) {
  FeatureMapParams p = zeros(n_qubits);
  Rng rng(seed);
  for (auto& t : p.theta) t = rng.uniform(-range, range);
  return p;
}

FeatureMapParams FeatureMapParams::tiled(const FeatureMapParams& pattern, int n_qubits) {
  pattern.validate();
  FeatureMapParams p = pattern;
  p.n_qubits = n_qubits;
  p.theta.resize(static_cast<std::size_t>(n_qubits));
  for (int i = 0; i < n_qubits; ++i) {
    p.theta[static_cast<std::size_t>(i)] = pattern.theta[static_cast<std::size_t>(i % pattern.n_qubits)];
  }
  return p;
}

nlohmann::json to_json(const FeatureMapParams& p) {
  return {{"n_qubits", p.n_qubits}, {"theta", p.theta}, {"angle_scale", p.angle_scale}, {"locality", p.locality}};
}

FeatureMapParams feature_map_params_from_json(const nlohmann::json& j) {
  FeatureMapParams p;
  p.n_qubits = j.at("n_qubits").get<int>();
  p.theta = j.value("theta", std::vector<double>(static_cast<std::size_t>(std::max(p.n_qubits, 0)), 0.0));
  p.angle_scale = j.value("angle_scale", p.angle_scale);
  p.locality = j.value("locality", p.locality);
  p.validate();
  return p;
}

sim::Circuit build_feature_map(std::span<const double> x, const FeatureMapParams& params) {
  params.validate();
  const int n = params.n_qubits;
  if (static_cast<int>(x.size()) != n) {
    throw std::invalid_argument("feature map expects " + std::to_string(n) + " inputs, got " +
                                std::to_string(x.size()));
  }
  const double a = params.angle_scale;
  sim::Circuit c(n);
  for (int q = 0; q < n; ++q) c.add(sim::Gate::h(q));
  for (int q = 0; q < n; ++q) c.add(sim::Gate::ry(q, a * x[static_cast<std::size_t>(q)]));
  for (int q = 0; q + 1 < n; ++q) c.add(sim::Gate::cnot(q, q + 1));
  for (int q = 0; q < n; ++q) c.add(sim::Gate::rx(q, a * x[static_cast<std::size_t>(q)]));
  for (int q = 0; q + 1 < n; ++q) c.add(sim::Gate::cnot(q, q + 1));
  for (int q = 0; q < n; ++q) c.add(sim::Gate::ry(q, params.theta[static_cast<std::size_t>(q)]));
  return c;
}

std::vector<std::vector<int>> coupled_subsets(int n_qubits, int locality) {
  if (n_qubits < 2) throw std::invalid_argument("coupled_subsets: need at least 2 qubits");
  std::vector<std::vector<int>> out;
  if (locality == 1) {
    for (int q = 0; q < n_qubits; ++q) out.push_back({q});
  } else if (locality == 2) {
    for (int q = 0; q + 1 < n_qubits; ++q) out.push_back({q, q + 1});
  } else {
    throw std::invalid_argument("coupled_subsets: locality must be 1 or 2");
  }
  return out;
}

}  // namespace qforecast::qgp
