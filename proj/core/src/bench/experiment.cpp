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

#include "qforecast/bench/experiment.hpp"

#include <chrono>
#include <functional>
#include <memory>

#include "qforecast/baselines.hpp"
#include "qforecast/kqrc.hpp"
#include "qforecast/parallel.hpp"
#include "qforecast/qgp/forecast.hpp"

namespace qforecast::bench {
namespace {

struct CellOutput {
  Eigen::MatrixXd predictions;
  nlohmann::json info = nlohmann::json::object();
  std::vector<double> loss;
};

CellOutput plain(Eigen::MatrixXd predictions) { return {std::move(predictions), nlohmann::json::object(), {}}; }

using CellFn = std::function<CellOutput(const data::WindowSplit&, int)>;

struct ModelRun {
  std::string name;
  CellFn fn;
};

CellOutput kqrc_cell(const data::WindowSplit& w, kqrc::ReservoirConfig cfg) {
  cfg.n_streams = static_cast<int>(w.streams.size());
  return {kqrc::forecast(w, cfg).predictions, nlohmann::json::object(), {}};
}

CellOutput qgp_cell(const data::WindowSplit& w, const qgp::QgpConfig& cfg) {
  const auto r = qgp::qgp_forecast(w, cfg);
  CellOutput out{r.predictions, nlohmann::json::object(), r.training.loss_trace};
  out.info["theta"] = r.training.params.theta;
  out.info["noise"] = r.training.noise;
  out.info["variance"] = std::vector<double>(r.variance.data(), r.variance.data() + r.variance.size());
  out.info["max_variance_clamp"] = r.max_variance_clamp;
  return out;
}

ModelRun baseline_model(const std::string& name, const ExperimentConfig& cfg) {
  if (name == "naive") return {name, [](const data::WindowSplit& w, int) { return plain(baselines::naive_persistence(w)); }};
  if (name == "esn") {
    return {name, [esn = cfg.esn](const data::WindowSplit& w, int) {
              return plain(baselines::esn_krr_forecast(w, esn).predictions);
            }};
  }
  if (name == "lmc") {
    return {name, [lmc = cfg.lmc](const data::WindowSplit& w, int) {
              return plain(baselines::mogp_fit_predict(w, lmc).predictions);
            }};
  }
  if (name == "kqrc") return {name, [k = cfg.kqrc](const data::WindowSplit& w, int) { return kqrc_cell(w, k); }};
  return {name, [q = cfg.qgp](const data::WindowSplit& w, int) { return qgp_cell(w, q); }};
}

}  // namespace

data::TimeSeriesDataset load_dataset(const ExperimentConfig& cfg) {
  if (cfg.dataset.kind == DatasetSource::Kind::Csv) return data::load_csv(cfg.dataset.path);
  return data::generate_synthetic(cfg.dataset.synthetic, cfg.seed);
}

data::SubsetSpec resolve_subset(const data::TimeSeriesDataset& ds, const ExperimentConfig& cfg) {
  const auto& s = cfg.subset;
  if (!s.name.empty()) {
    if (s.base_size > ds.customers()) {
      throw ConfigError("$.subset.base_size", "dataset has only " + std::to_string(ds.customers()) + " customers");
    }
    const auto base = data::select_correlated_subset(ds, s.base_size);
    try {
      return data::named_subset(s.name, base);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("$.subset", e.what());
    }
  }
  if (!s.ids.empty()) {
    data::SubsetSpec out;
    out.name = "custom";
    for (std::size_t i = 0; i < s.ids.size(); ++i) {
      try {
        out.members.push_back(ds.index_of(s.ids[i]));
      } catch (const std::out_of_range& e) {
        throw ConfigError("$.subset.ids[" + std::to_string(i) + "]", e.what());
      }
      out.ids.push_back(s.ids[i]);
    }
    try {
      out.validate(ds);
    } catch (const std::exception& e) {
      throw ConfigError("$.subset.ids", e.what());
    }
    return out;
  }
  if (s.correlated > ds.customers()) {
    throw ConfigError("$.subset.correlated", "dataset has only " + std::to_string(ds.customers()) + " customers");
  }
  return data::select_correlated_subset(ds, s.correlated);
}

void diagnostics_samples(const data::TimeSeriesDataset& ds, const data::SubsetSpec& subset, Eigen::MatrixXd& inputs,
                         Eigen::VectorXd& targets) {
  const auto k = static_cast<Eigen::Index>(subset.members.size());
  const Eigen::Index t_len = ds.hours();
  Eigen::MatrixXd raw(k, t_len);
  for (Eigen::Index i = 0; i < k; ++i) raw.row(i) = ds.values.row(subset.members[static_cast<std::size_t>(i)]);
  const auto norm = data::Normalization::fit(raw);
  const Eigen::MatrixXd scaled = norm.apply(raw);
  inputs = scaled.leftCols(t_len - 1).transpose();
  targets = scaled.rightCols(t_len - 1).colwise().mean().transpose();
}

ExperimentReport run_experiment(const ExperimentConfig& input) {
  validate(input);
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.config = input;
  ExperimentConfig& cfg = report.config;

  const auto ds = load_dataset(cfg);
  const auto subset = resolve_subset(ds, cfg);
  for (int m : subset.members) report.customer_ids.push_back(ds.ids[static_cast<std::size_t>(m)]);
  const std::size_t workers = cfg.workers == 0 ? default_workers() : cfg.workers;

  if (cfg.kind == ExperimentKind::Diagnostics) {
    Eigen::MatrixXd inputs;
    Eigen::VectorXd targets;
    diagnostics_samples(ds, subset, inputs, targets);
    auto opts = cfg.diagnostics;
    opts.workers = workers;
    report.diagnostics = diagnostics::scaling_study(inputs, targets, opts);
    report.notes.push_back("quantum kernel: fidelity kernel of the qgp feature map; classical length scales by median distance");
    report.notes.push_back("inverse regularizer 1e-10 * trace / N applied only below that eigenvalue; see max_epsilon");
    report.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  }

  const auto windows = data::rolling_windows(ds, subset.members, cfg.windows);
  for (std::size_t i = 0; i < windows.size(); ++i) {
    report.windows.push_back({static_cast<int>(i), windows[i].origin, windows[i].hash, windows[i].train.cwiseAbs().mean()});
  }
  cfg.kqrc.n_streams = static_cast<int>(subset.members.size());

  std::vector<ModelRun> runs;
  switch (cfg.kind) {
    case ExperimentKind::KqrcTriplet:
    case ExperimentKind::QgpGroup:
    case ExperimentKind::Baselines:
      for (const auto& m : cfg.models) runs.push_back(baseline_model(m, cfg));
      break;
    case ExperimentKind::QubitScaling:
      for (int nq : cfg.scaling_qubits) {
        for (bool ent : {false, true}) {
          kqrc::ReservoirConfig k = cfg.kqrc;
          k.qubits_per_stream = nq;
          k.cross_stream_entanglement = ent;
          runs.push_back({"kqrc_q" + std::to_string(nq) + (ent ? "_ent" : "_noent"),
                          [k](const data::WindowSplit& w, int) { return kqrc_cell(w, k); }});
        }
      }
      runs.push_back(baseline_model("naive", cfg));
      break;
    case ExperimentKind::QgpUtility: {
      const auto base = data::select_correlated_subset(ds, cfg.subset.base_size);
      const auto pattern = data::named_subset(cfg.pattern_subset, base);
      auto pattern_windows = std::make_shared<std::vector<data::WindowSplit>>(
          data::rolling_windows(ds, pattern.members, cfg.windows));
      report.notes.push_back("theta trained per window on " + cfg.pattern_subset + " and tiled across " +
                             std::to_string(subset.members.size()) + " qubits");
      runs.push_back({"qgp", [q = cfg.qgp, pattern_windows](const data::WindowSplit& w, int index) {
                        const auto trained = qgp::qgp_forecast((*pattern_windows)[static_cast<std::size_t>(index)], q);
                        qgp::QgpConfig applied = q;
                        applied.train = false;
                        applied.theta = trained.training.params.theta;
                        applied.trainer.init_noise = trained.training.noise;
                        CellOutput out = qgp_cell(w, applied);
                        out.loss = trained.training.loss_trace;
                        return out;
                      }});
      runs.push_back(baseline_model("naive", cfg));
      break;
    }
    case ExperimentKind::Diagnostics: break;
  }

  const std::size_t n_windows = windows.size();
  std::vector<CellOutput> cells(runs.size() * n_windows);
  parallel_for(cells.size(), workers, [&](std::size_t c) {
    const std::size_t w = c % n_windows;
    cells[c] = runs[c / n_windows].fn(windows[w], static_cast<int>(w));
  });

  for (std::size_t r = 0; r < runs.size(); ++r) {
    report.models.push_back(runs[r].name);
    for (std::size_t w = 0; w < n_windows; ++w) {
      CellOutput& cell = cells[r * n_windows + w];
      report.results.push_back({runs[r].name, static_cast<int>(w), cell.predictions, windows[w].test, cell.info});
      if (!cell.loss.empty()) report.loss_traces.push_back({runs[r].name, static_cast<int>(w), cell.loss});
    }
  }

  if (cfg.kind == ExperimentKind::QubitScaling) {
    for (const auto& run : runs) {
      if (run.name == "naive") continue;
      ScalingPoint p;
      p.n_qubits = std::stoi(run.name.substr(6));
      p.entangled = run.name.ends_with("_ent");
      for (const auto& res : report.results) {
        if (res.model != run.name) continue;
        const double mae = (res.predictions - res.truth).cwiseAbs().mean();
        p.mean_mae += mae / static_cast<double>(n_windows);
        p.mean_relative_error += mae / report.windows[static_cast<std::size_t>(res.window)].mean_abs_train /
                                 static_cast<double>(n_windows);
      }
      report.qubit_scaling.push_back(p);
    }
    report.notes.push_back("relative error: window MAE divided by the mean absolute normalized training value; reference 0.30");
  }
  report.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace qforecast::bench
