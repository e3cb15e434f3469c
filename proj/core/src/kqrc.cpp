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

#include "qforecast/kqrc.hpp"

#include <cmath>
#include <stdexcept>

#include "qforecast/linalg.hpp"
#include "qforecast/random.hpp"

namespace qforecast::kqrc {
namespace {

constexpr double kInputSlack = 0.05;

sim::Circuit encoding_block(double x, int nq, double scale) {
  sim::Circuit c(nq);
  const double angle = scale * x;
  for (int q = 0; q < nq; ++q) {
    c.add(sim::Gate::rx(q, angle));
    c.add(sim::Gate::rz(q, angle));
  }
  for (int q = 0; q + 1 < nq; q += 2) c.add(sim::Gate::cnot(q, q + 1));
  for (int q = 1; q + 1 < nq; q += 2) c.add(sim::Gate::cnot(q, q + 1));
  for (int q = 0; q < nq; ++q) c.add(sim::Gate::ry(q, angle));
  return c;
}

sim::Circuit intra_block(int nq, std::uint64_t seed, int stream) {
  sim::Circuit c(nq);
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(stream)));
  const double two_pi = 2.0 * std::numbers::pi;
  for (int q = 0; q < nq; ++q) {
    c.add(sim::Gate::rx(q, rng.uniform(0.0, two_pi)));
    c.add(sim::Gate::ry(q, rng.uniform(0.0, two_pi)));
    c.add(sim::Gate::rz(q, rng.uniform(0.0, two_pi)));
  }
  for (int q = 0; q + 1 < nq; ++q) c.add(sim::Gate::cnot(q, q + 1));
  if (nq > 2) c.add(sim::Gate::cnot(nq - 1, 0));
  return c;
}

void check_inputs(std::span<const double> x, const ReservoirConfig& cfg) {
  if (static_cast<int>(x.size()) != cfg.n_streams) {
    throw std::invalid_argument("encoding expects " + std::to_string(cfg.n_streams) + " stream values, got " +
                                std::to_string(x.size()));
  }
  for (double v : x) {
    if (!(v >= -kInputSlack && v <= 1.0 + kInputSlack)) {
      throw std::invalid_argument("encoding input " + std::to_string(v) + " is not normalized to [0, 1]");
    }
  }
}

// Inter-stream gates of the reservoir, on the full system register.
std::vector<sim::Gate> inter_gates(const ReservoirConfig& cfg) {
  std::vector<sim::Gate> out;
  if (!cfg.cross_stream_entanglement) return out;
  const int nq = cfg.qubits_per_stream;
  for (int s = 0; s + 1 < cfg.n_streams; ++s) out.push_back(sim::Gate::cnot((s + 1) * nq - 1, (s + 1) * nq));
  return out;
}

sim::ProbabilityVector maybe_sample(const sim::ProbabilityVector& exact, const ReservoirConfig& cfg, int t) {
  if (cfg.shots == kExactShots) return exact;
  return sim::sample_distribution(exact, cfg.shots, derive_seed(cfg.shot_seed, static_cast<std::uint64_t>(t)));
}

// |<a|V|b>|^2 for the single-stream encoding plus intra-stream reservoir.
Eigen::MatrixXd stream_transition(double x, int stream, const ReservoirConfig& cfg) {
  const int nq = cfg.qubits_per_stream;
  sim::Circuit c = encoding_block(x, nq, cfg.encoding_angle_scale);
  c.append(intra_block(nq, cfg.reservoir_seed, stream));
  const int dim = 1 << nq;
  Eigen::MatrixXd t(dim, dim);
  for (int b = 0; b < dim; ++b) {
    const auto out = sim::run_circuit(c, sim::QuantumState::basis(nq, static_cast<std::uint64_t>(b)));
    t.col(b) = out.amplitudes().cwiseAbs2();
  }
  return t;
}

// Image of each basis index under a sequence of basis-permutation gates.
std::vector<std::uint32_t> basis_permutation(const std::vector<sim::Gate>& gates, int n) {
  std::vector<std::uint32_t> image(std::size_t{1} << n);
  for (std::uint32_t b = 0; b < image.size(); ++b) {
    std::uint32_t v = b;
    for (const auto& g : gates) {
      if (g.kind() == sim::GateKind::X) {
        v ^= 1u << g.target(0);
      } else if ((v >> g.target(0)) & 1u) {
        v ^= 1u << g.target(1);
      }
    }
    image[b] = v;
  }
  return image;
}

std::vector<FeatureMatrix> empty_features(const ReservoirConfig& cfg, int t_len) {
  std::vector<FeatureMatrix> f(static_cast<std::size_t>(cfg.n_streams));
  for (int s = 0; s < cfg.n_streams; ++s) {
    f[static_cast<std::size_t>(s)].stream = s;
    f[static_cast<std::size_t>(s)].rows.resize(t_len, 1 << cfg.qubits_per_stream);
  }
  return f;
}

std::vector<FeatureMatrix> run_dense(const Eigen::MatrixXd& series, const ReservoirConfig& cfg) {
  auto features = empty_features(cfg, static_cast<int>(series.cols()));
  ReservoirState state = ReservoirState::initial(cfg);
  std::vector<double> x(static_cast<std::size_t>(cfg.n_streams));
  for (Eigen::Index t = 0; t < series.cols(); ++t) {
    for (int s = 0; s < cfg.n_streams; ++s) x[static_cast<std::size_t>(s)] = series(s, t);
    auto result = step(state, x, cfg);
    for (int s = 0; s < cfg.n_streams; ++s) {
      features[static_cast<std::size_t>(s)].rows.row(t) = marginalize_stream(result.dist, s, cfg).transpose();
    }
    state = std::move(result.next);
  }
  return features;
}

std::vector<FeatureMatrix> run_dephased(const Eigen::MatrixXd& series, const ReservoirConfig& cfg) {
  const int n = cfg.system_qubits();
  const int nq = cfg.qubits_per_stream;
  const Eigen::Index sub = Eigen::Index{1} << nq;
  const Eigen::Index dim = Eigen::Index{1} << n;
  const auto image = basis_permutation(inter_gates(cfg), n);
  auto features = empty_features(cfg, static_cast<int>(series.cols()));

  Eigen::VectorXd p = Eigen::VectorXd::Zero(dim);
  p(0) = 1.0;
  Eigen::VectorXd scratch(dim);
  Eigen::VectorXd block(sub);
  for (Eigen::Index t = 0; t < series.cols(); ++t) {
    const Eigen::VectorXd column = series.col(t);
    check_inputs(std::span<const double>(column.data(), static_cast<std::size_t>(column.size())), cfg);
    for (int s = 0; s < cfg.n_streams; ++s) {
      const Eigen::MatrixXd tr = stream_transition(series(s, t), s, cfg);
      const Eigen::Index low = Eigen::Index{1} << (s * nq);
      const Eigen::Index high = dim / (low * sub);
      for (Eigen::Index h = 0; h < high; ++h) {
        for (Eigen::Index l = 0; l < low; ++l) {
          const Eigen::Index base = l + h * low * sub;
          for (Eigen::Index m = 0; m < sub; ++m) block(m) = p(base + m * low);
          const Eigen::VectorXd mapped = tr * block;
          for (Eigen::Index m = 0; m < sub; ++m) p(base + m * low) = mapped(m);
        }
      }
    }
    for (Eigen::Index b = 0; b < dim; ++b) scratch(image[static_cast<std::size_t>(b)]) = p(b);
    p.swap(scratch);
    p = p.cwiseMax(0.0);
    p /= p.sum();
    AncillaDistribution dist{maybe_sample(p, cfg, static_cast<int>(t)), static_cast<int>(t) + 1};
    for (int s = 0; s < cfg.n_streams; ++s) {
      features[static_cast<std::size_t>(s)].rows.row(t) = marginalize_stream(dist, s, cfg).transpose();
    }
  }
  return features;
}

}  // namespace

std::string to_string(Propagation p) {
  switch (p) {
    case Propagation::Auto: return "auto";
    case Propagation::Dense: return "dense";
    case Propagation::Dephased: return "dephased";
  }
  return "?";
}

Propagation propagation_from_string(std::string_view s) {
  if (s == "auto") return Propagation::Auto;
  if (s == "dense") return Propagation::Dense;
  if (s == "dephased") return Propagation::Dephased;
  throw std::invalid_argument("unknown propagation '" + std::string(s) + "'");
}

void ReservoirConfig::validate() const {
  if (n_streams < 1) throw std::invalid_argument("n_streams must be >= 1");
  if (qubits_per_stream < 2) throw std::invalid_argument("qubits_per_stream must be >= 2");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  if (!std::isfinite(encoding_angle_scale)) throw std::invalid_argument("encoding_angle_scale must be finite");
  if (system_qubits() > 24) throw std::invalid_argument("n_streams * qubits_per_stream must be <= 24");
}

nlohmann::json to_json(const ReservoirConfig& c) {
  return {{"n_streams", c.n_streams},
          {"qubits_per_stream", c.qubits_per_stream},
          {"cross_stream_entanglement", c.cross_stream_entanglement},
          {"encoding_angle_scale", c.encoding_angle_scale},
          {"reservoir_seed", c.reservoir_seed},
          {"gamma", c.gamma},
          {"lambda", c.lambda},
          {"shots", c.shots},
          {"shot_seed", c.shot_seed},
          {"center_targets", c.center_targets},
          {"propagation", to_string(c.propagation)}};
}

ReservoirConfig reservoir_config_from_json(const nlohmann::json& j) {
  ReservoirConfig c;
  c.n_streams = j.value("n_streams", c.n_streams);
  c.qubits_per_stream = j.value("qubits_per_stream", c.qubits_per_stream);
  c.cross_stream_entanglement = j.value("cross_stream_entanglement", c.cross_stream_entanglement);
  c.encoding_angle_scale = j.value("encoding_angle_scale", c.encoding_angle_scale);
  c.reservoir_seed = j.value("reservoir_seed", c.reservoir_seed);
  c.gamma = j.value("gamma", c.gamma);
  c.lambda = j.value("lambda", c.lambda);
  c.shots = j.value("shots", c.shots);
  c.shot_seed = j.value("shot_seed", c.shot_seed);
  c.center_targets = j.value("center_targets", c.center_targets);
  if (j.contains("propagation")) c.propagation = propagation_from_string(j.at("propagation").get<std::string>());
  return c;
}

sim::Circuit build_encoding_circuit(std::span<const double> x, const ReservoirConfig& cfg) {
  cfg.validate();
  check_inputs(x, cfg);
  const int nq = cfg.qubits_per_stream;
  sim::Circuit c(cfg.system_qubits());
  for (int s = 0; s < cfg.n_streams; ++s) {
    c.append(encoding_block(x[static_cast<std::size_t>(s)], nq, cfg.encoding_angle_scale), s * nq);
  }
  return c;
}

sim::Circuit build_reservoir_circuit(const ReservoirConfig& cfg) {
  cfg.validate();
  const int nq = cfg.qubits_per_stream;
  sim::Circuit c(cfg.system_qubits());
  for (int s = 0; s < cfg.n_streams; ++s) c.append(intra_block(nq, cfg.reservoir_seed, s), s * nq);
  for (const auto& g : inter_gates(cfg)) c.add(g);
  return c;
}

ReservoirState ReservoirState::initial(const ReservoirConfig& cfg) {
  cfg.validate();
  if (cfg.system_qubits() > sim::kMaxDensityQubits) {
    throw std::invalid_argument("system register of " + std::to_string(cfg.system_qubits()) +
                                " qubits exceeds the density-matrix cap");
  }
  return {sim::QuantumState::zero(cfg.system_qubits(), sim::Representation::DensityMatrix), 0};
}

StepResult step(const ReservoirState& state, std::span<const double> x, const ReservoirConfig& cfg) {
  cfg.validate();
  const int n = cfg.system_qubits();
  if (state.rho.n_qubits() != n) {
    throw std::invalid_argument("reservoir state has " + std::to_string(state.rho.n_qubits()) + " qubits, expected " +
                                std::to_string(n));
  }
  if (2 * n > sim::kMaxDensityQubits) {
    throw std::invalid_argument("dense step needs " + std::to_string(2 * n) +
                                " qubits with ancillas, above the density-matrix cap");
  }
  sim::Circuit evolve = build_encoding_circuit(x, cfg);
  evolve.append(build_reservoir_circuit(cfg));
  sim::QuantumState rho = sim::run_circuit(evolve, state.rho.to_density());

  sim::QuantumState joint = rho.tensor(sim::QuantumState::zero(n, sim::Representation::DensityMatrix));
  for (int q = 0; q < n; ++q) sim::apply_gate_inplace(joint, sim::Gate::cnot(q, n + q));

  std::vector<int> system(static_cast<std::size_t>(n));
  std::vector<int> ancillas(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    system[static_cast<std::size_t>(q)] = q;
    ancillas[static_cast<std::size_t>(q)] = n + q;
  }
  const sim::ProbabilityVector exact = sim::computational_distribution(joint, ancillas);
  StepResult out{{sim::partial_trace(joint, system), state.t + 1},
                 {maybe_sample(exact, cfg, state.t), state.t + 1}};
  return out;
}

sim::ProbabilityVector marginalize_stream(const AncillaDistribution& dist, int s, const ReservoirConfig& cfg) {
  if (s < 0 || s >= cfg.n_streams) {
    throw std::out_of_range("stream index " + std::to_string(s) + " outside [0, " + std::to_string(cfg.n_streams) +
                            ")");
  }
  const int nq = cfg.qubits_per_stream;
  if (dist.probs.size() != (Eigen::Index{1} << cfg.system_qubits())) {
    throw std::invalid_argument("ancilla distribution length does not match the configuration");
  }
  const std::uint64_t mask = (std::uint64_t{1} << nq) - 1;
  sim::ProbabilityVector out = sim::ProbabilityVector::Zero(Eigen::Index{1} << nq);
  for (Eigen::Index b = 0; b < dist.probs.size(); ++b) {
    out(static_cast<Eigen::Index>((static_cast<std::uint64_t>(b) >> (s * nq)) & mask)) += dist.probs(b);
  }
  return out;
}

std::vector<FeatureMatrix> run_reservoir(const Eigen::MatrixXd& series, const ReservoirConfig& cfg) {
  cfg.validate();
  if (series.rows() != cfg.n_streams) {
    throw std::invalid_argument("series has " + std::to_string(series.rows()) + " streams, config expects " +
                                std::to_string(cfg.n_streams));
  }
  if (series.cols() < 1) throw std::invalid_argument("series must contain at least one timestep");
  bool dephasable = true;
  for (const auto& g : inter_gates(cfg)) dephasable = dephasable && g.is_basis_permutation();
  switch (cfg.propagation) {
    case Propagation::Dense: return run_dense(series, cfg);
    case Propagation::Dephased:
      if (!dephasable) throw std::invalid_argument("dephased propagation needs permutation couplers");
      return run_dephased(series, cfg);
    case Propagation::Auto: break;
  }
  return dephasable ? run_dephased(series, cfg) : run_dense(series, cfg);
}

Eigen::MatrixXd rbf_kernel(const Eigen::MatrixXd& fa, const Eigen::MatrixXd& fb, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("rbf_kernel: gamma must be > 0");
  if (fa.cols() != fb.cols()) throw std::invalid_argument("rbf_kernel: feature widths differ");
  Eigen::MatrixXd k(fa.rows(), fb.rows());
  for (Eigen::Index i = 0; i < fa.rows(); ++i) {
    for (Eigen::Index j = 0; j < fb.rows(); ++j) k(i, j) = std::exp(-gamma * (fa.row(i) - fb.row(j)).squaredNorm());
  }
  return k;
}

RidgeReadout krr_fit(const Eigen::MatrixXd& k_train, const Eigen::VectorXd& y, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("krr_fit: lambda must be > 0");
  if (k_train.rows() != k_train.cols()) throw std::invalid_argument("krr_fit: kernel matrix is not square");
  if (k_train.rows() != y.size()) throw std::invalid_argument("krr_fit: target length does not match kernel");
  Eigen::MatrixXd a = k_train;
  a.diagonal().array() += lambda;
  const auto llt = linalg::cholesky(a, "krr_fit: K + lambda I");
  RidgeReadout r;
  r.lambda = lambda;
  r.beta = llt.solve(y);
  for (int refine = 0; refine < 2; ++refine) {
    const Eigen::VectorXd residual = y - a * r.beta;
    if (residual.norm() <= 1e-12 * std::max(1.0, y.norm())) break;
    r.beta += llt.solve(residual);
  }
  return r;
}

Eigen::VectorXd krr_predict(const RidgeReadout& readout, const Eigen::MatrixXd& k_test) {
  if (k_test.cols() != readout.beta.size()) {
    throw std::invalid_argument("krr_predict: test kernel has " + std::to_string(k_test.cols()) + " columns, expected " +
                                std::to_string(readout.beta.size()));
  }
  return (k_test * readout.beta).array() + readout.offset;
}

RidgeReadout fit_rbf_readout(const Eigen::MatrixXd& features, const Eigen::VectorXd& y, double gamma, double lambda,
                             bool center_targets) {
  const double offset = center_targets && y.size() > 0 ? y.mean() : 0.0;
  RidgeReadout r = krr_fit(rbf_kernel(features, features, gamma), y.array() - offset, lambda);
  r.train_features = features;
  r.gamma = gamma;
  r.offset = offset;
  return r;
}

Eigen::VectorXd predict_rbf_readout(const RidgeReadout& readout, const Eigen::MatrixXd& features) {
  return krr_predict(readout, rbf_kernel(features, readout.train_features, readout.gamma));
}

Eigen::VectorXd direct_forecast(const Eigen::MatrixXd& features, const Eigen::VectorXd& series, int horizon,
                                double gamma, double lambda, bool center_targets) {
  const auto t_len = static_cast<int>(features.rows());
  if (series.size() != t_len) throw std::invalid_argument("direct_forecast: feature rows and series length differ");
  if (horizon < 1 || horizon >= t_len) {
    throw std::invalid_argument("direct_forecast: horizon " + std::to_string(horizon) + " needs more than " +
                                std::to_string(horizon) + " training steps, have " + std::to_string(t_len));
  }
  Eigen::VectorXd out(horizon);
  const Eigen::MatrixXd last = features.bottomRows(1);
  for (int h = 1; h <= horizon; ++h) {
    const int rows = t_len - h;
    const auto readout = fit_rbf_readout(features.topRows(rows), series.segment(h, rows), gamma, lambda, center_targets);
    out(h - 1) = predict_rbf_readout(readout, last)(0);
  }
  return out;
}

Eigen::MatrixXd persistence_forecast(const data::WindowSplit& window) {
  Eigen::MatrixXd out(window.train.rows(), window.horizon);
  for (Eigen::Index s = 0; s < window.train.rows(); ++s) out.row(s).setConstant(window.train(s, window.train.cols() - 1));
  return out;
}

ForecastResult forecast(const data::WindowSplit& window, const ReservoirConfig& cfg) {
  cfg.validate();
  const auto features = run_reservoir(window.train, cfg);
  ForecastResult r;
  r.predictions.resize(cfg.n_streams, window.horizon);
  for (int s = 0; s < cfg.n_streams; ++s) {
    r.predictions.row(s) = direct_forecast(features[static_cast<std::size_t>(s)].rows, window.train.row(s).transpose(),
                                           window.horizon, cfg.gamma, cfg.lambda, cfg.center_targets)
                               .transpose();
  }
  r.truth = window.test;
  r.persistence = persistence_forecast(window);
  r.metrics = bench::compute_metrics(r.predictions, r.truth);
  r.persistence_metrics = bench::compute_metrics(r.persistence, r.truth);
  return r;
}

}  // namespace qforecast::kqrc
