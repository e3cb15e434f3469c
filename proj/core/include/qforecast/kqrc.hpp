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
#include <nlohmann/json.hpp>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qforecast/bench/metrics.hpp"
#include "qforecast/data.hpp"
#include "qforecast/sim/circuit.hpp"
#include "qforecast/sim/ops.hpp"
#include "qforecast/sim/state.hpp"

namespace qforecast::kqrc {

/// Shot count meaning "use exact probabilities".
inline constexpr std::uint64_t kExactShots = 0;

/// How run_reservoir propagates the system state between timesteps.
///
/// Dense runs the full ancilla construction of step(). Dephased uses the fact
/// that the CNOT readout leaves the system diagonal in the computational basis,
/// so only the probability vector needs to be carried forward. Auto picks
/// Dephased whenever the inter-stream couplers are basis permutations.
enum class Propagation { Auto, Dense, Dephased };

std::string to_string(Propagation p);
Propagation propagation_from_string(std::string_view s);

struct ReservoirConfig {
  int n_streams = 3;
  int qubits_per_stream = 4;
  bool cross_stream_entanglement = true;
  double encoding_angle_scale = std::numbers::pi;
  std::uint64_t reservoir_seed = 7;
  double gamma = 10.0;
  double lambda = 1e-3;
  std::uint64_t shots = kExactShots;
  std::uint64_t shot_seed = 0;
  bool center_targets = true;
  Propagation propagation = Propagation::Auto;

  int system_qubits() const { return n_streams * qubits_per_stream; }
  /// Throws std::invalid_argument when S < 1, n_q < 2, gamma <= 0 or lambda <= 0.
  void validate() const;
};

nlohmann::json to_json(const ReservoirConfig& cfg);
/// Missing keys keep their defaults.
ReservoirConfig reservoir_config_from_json(const nlohmann::json& j);

/// Per stream: RX and RZ on every qubit, a brickwork CNOT block (even pairs,
/// then odd pairs), then RY on every qubit. Angles are a * x_s.
/// Throws std::invalid_argument when |x| != S or a value lies outside [0, 1] by more than 0.05.
sim::Circuit build_encoding_circuit(std::span<const double> x, const ReservoirConfig& cfg);

/// Seeded RX/RY/RZ layer and a CNOT ring per stream, then one CNOT from the
/// last qubit of stream s to the first qubit of stream s+1 when cross-stream
/// entanglement is enabled.
sim::Circuit build_reservoir_circuit(const ReservoirConfig& cfg);

struct ReservoirState {
  sim::QuantumState rho;
  int t = 0;

  static ReservoirState initial(const ReservoirConfig& cfg);
};

/// Joint ancilla distribution; bit j belongs to the ancilla paired with system qubit j.
struct AncillaDistribution {
  sim::ProbabilityVector probs;
  int t = 0;
};

struct StepResult {
  ReservoirState next;
  AncillaDistribution dist;
};

/// One timestep of the repeated-measurement recurrence on the dense
/// system-plus-ancilla register. Needs 2 * S * n_q <= 14.
StepResult step(const ReservoirState& state, std::span<const double> x, const ReservoirConfig& cfg);

/// Marginal over the ancillas of stream s (0-based); length 2^n_q.
sim::ProbabilityVector marginalize_stream(const AncillaDistribution& dist, int s, const ReservoirConfig& cfg);

struct FeatureMatrix {
  Eigen::MatrixXd rows;  // T x 2^n_q
  int stream = 0;

  int timesteps() const { return static_cast<int>(rows.rows()); }
};

/// Runs T timesteps from |0...0> over `series` (S x T, normalized values).
std::vector<FeatureMatrix> run_reservoir(const Eigen::MatrixXd& series, const ReservoirConfig& cfg);

/// K(i, j) = exp(-gamma * |a_i - b_j|^2).
Eigen::MatrixXd rbf_kernel(const Eigen::MatrixXd& fa, const Eigen::MatrixXd& fb, double gamma);

struct RidgeReadout {
  Eigen::VectorXd beta;
  Eigen::MatrixXd train_features;  // empty when fitted from a kernel alone
  double gamma = 0.0;
  double lambda = 0.0;
  double offset = 0.0;  // added to every prediction
};

/// beta = (K + lambda I)^{-1} y by Cholesky. Throws on dimension mismatch,
/// lambda <= 0, or a failed factorization.
RidgeReadout krr_fit(const Eigen::MatrixXd& k_train, const Eigen::VectorXd& y, double lambda);
/// K_test * beta + offset.
Eigen::VectorXd krr_predict(const RidgeReadout& readout, const Eigen::MatrixXd& k_test);

/// RBF readout fitted on feature rows, optionally on mean-centered targets.
RidgeReadout fit_rbf_readout(const Eigen::MatrixXd& features, const Eigen::VectorXd& y, double gamma, double lambda,
                             bool center_targets);
Eigen::VectorXd predict_rbf_readout(const RidgeReadout& readout, const Eigen::MatrixXd& features);

/// Direct multi-horizon regression: for offset h, row t of `features` is paired
/// with series[t + h]; the prediction is made from the last row.
Eigen::VectorXd direct_forecast(const Eigen::MatrixXd& features, const Eigen::VectorXd& series, int horizon,
                                double gamma, double lambda, bool center_targets);

/// Forecasts and metrics for one window, all in normalized units.
struct ForecastResult {
  Eigen::MatrixXd predictions;  // streams x horizon
  Eigen::MatrixXd truth;
  Eigen::MatrixXd persistence;
  bench::Metrics metrics;
  bench::Metrics persistence_metrics;
};

/// Naive persistence: the last training value for every horizon.
Eigen::MatrixXd persistence_forecast(const data::WindowSplit& window);

ForecastResult forecast(const data::WindowSplit& window, const ReservoirConfig& cfg);

}  // namespace qforecast::kqrc
