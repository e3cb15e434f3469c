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

#include "qforecast/bench/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qforecast/bench/metrics.hpp"

namespace qforecast::bench {
namespace {

using nlohmann::json;

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j.at(0).size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j.at(static_cast<std::size_t>(i)).size()) != cols) {
      throw std::invalid_argument("report: ragged matrix");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = j.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(c)).get<double>();
  }
  return m;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

const std::array<std::string, 5> kKernelNames{"rbf", "laplacian", "rational_quadratic", "matern", "quantum_fidelity"};

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

std::vector<ModelSummary> summarize_models(const ExperimentReport& report) {
  std::vector<ModelSummary> out;
  for (const auto& model : report.models) {
    ModelSummary s;
    s.model = model;
    int count = 0;
    for (const auto& r : report.results) {
      if (r.model != model) continue;
      const Metrics m = compute_metrics(r.predictions, r.truth);
      if (count == 0) {
        s.mae = Eigen::MatrixXd::Zero(m.abs_error.rows(), m.abs_error.cols());
        s.mse = s.mae;
      }
      s.mae += m.abs_error;
      s.mse += m.sq_error;
      s.window_mae.push_back(m.mae);
      s.window_mse.push_back(m.mse);
      s.window_relative_error.push_back(m.mae / report.windows.at(static_cast<std::size_t>(r.window)).mean_abs_train);
      ++count;
    }
    if (count == 0) continue;
    s.mae /= count;
    s.mse /= count;
    for (std::size_t w = 0; w < s.window_mae.size(); ++w) {
      s.mean_mae += s.window_mae[w] / count;
      s.mean_mse += s.window_mse[w] / count;
      s.mean_relative_error += s.window_relative_error[w] / count;
    }
    double ss = 0.0;
    for (double v : s.window_mae) ss += (v - s.mean_mae) * (v - s.mean_mae);
    s.std_mae = count > 1 ? std::sqrt(ss / (count - 1)) : 0.0;
    out.push_back(std::move(s));
  }
  const ModelSummary* naive = nullptr;
  for (const auto& s : out) {
    if (s.model == "naive") naive = &s;
  }
  if (naive != nullptr) {
    for (auto& s : out) {
      s.windows_beating_naive = 0;
      for (std::size_t w = 0; w < s.window_mae.size() && w < naive->window_mae.size(); ++w) {
        if (s.window_mae[w] < naive->window_mae[w]) ++s.windows_beating_naive;
      }
    }
  }
  return out;
}

json report_to_json(const ExperimentReport& r) {
  json j;
  j["config"] = to_json(r.config);
  j["customers"] = r.customer_ids;
  j["windows"] = json::array();
  for (const auto& w : r.windows) {
    j["windows"].push_back({{"index", w.index}, {"origin", w.origin}, {"hash", w.hash}, {"mean_abs_train", w.mean_abs_train}});
  }
  j["models"] = r.models;
  j["results"] = json::array();
  for (const auto& res : r.results) {
    j["results"].push_back({{"model", res.model},
                            {"window", res.window},
                            {"predictions", matrix_json(res.predictions)},
                            {"truth", matrix_json(res.truth)},
                            {"info", res.info}});
  }
  j["loss_traces"] = json::array();
  for (const auto& t : r.loss_traces) j["loss_traces"].push_back({{"model", t.model}, {"window", t.window}, {"values", t.values}});
  j["diagnostics"] = json::array();
  for (const auto& d : r.diagnostics) {
    j["diagnostics"].push_back({{"n", d.n},
                                {"repetition", d.repetition},
                                {"seed", d.seed},
                                {"g", d.g},
                                {"kappa", d.kappa},
                                {"max_epsilon", d.max_epsilon}});
  }
  j["qubit_scaling"] = json::array();
  for (const auto& p : r.qubit_scaling) {
    j["qubit_scaling"].push_back({{"n_qubits", p.n_qubits},
                                  {"entangled", p.entangled},
                                  {"mean_relative_error", p.mean_relative_error},
                                  {"mean_mae", p.mean_mae}});
  }
  j["summary"] = json::array();
  for (const auto& s : summarize_models(r)) {
    j["summary"].push_back({{"model", s.model},
                            {"mae", s.mean_mae},
                            {"mae_std", s.std_mae},
                            {"mse", s.mean_mse},
                            {"relative_error", s.mean_relative_error},
                            {"windows_beating_naive", s.windows_beating_naive}});
  }
  j["notes"] = r.notes;
  j["wall_clock_seconds"] = r.wall_clock_seconds;
  return j;
}

ExperimentReport report_from_json(const json& j) {
  ExperimentReport r;
  r.config = parse_config(j.at("config"));
  r.customer_ids = j.at("customers").get<std::vector<std::string>>();
  for (const auto& w : j.at("windows")) {
    r.windows.push_back({w.at("index").get<int>(), w.at("origin").get<int>(), w.at("hash").get<std::string>(),
                         w.at("mean_abs_train").get<double>()});
  }
  r.models = j.at("models").get<std::vector<std::string>>();
  for (const auto& res : j.at("results")) {
    r.results.push_back({res.at("model").get<std::string>(), res.at("window").get<int>(),
                         matrix_from_json(res.at("predictions")), matrix_from_json(res.at("truth")), res.value("info", json::object())});
  }
  for (const auto& t : j.at("loss_traces")) {
    r.loss_traces.push_back({t.at("model").get<std::string>(), t.at("window").get<int>(), t.at("values").get<std::vector<double>>()});
  }
  for (const auto& d : j.at("diagnostics")) {
    diagnostics::DiagnosticsRecord rec;
    rec.n = d.at("n").get<int>();
    rec.repetition = d.at("repetition").get<int>();
    rec.seed = d.at("seed").get<std::uint64_t>();
    rec.g = d.at("g").get<std::array<double, 4>>();
    rec.kappa = d.at("kappa").get<std::array<double, 5>>();
    rec.max_epsilon = d.at("max_epsilon").get<double>();
    r.diagnostics.push_back(rec);
  }
  for (const auto& p : j.at("qubit_scaling")) {
    r.qubit_scaling.push_back({p.at("n_qubits").get<int>(), p.at("entangled").get<bool>(),
                               p.at("mean_relative_error").get<double>(), p.at("mean_mae").get<double>()});
  }
  r.notes = j.value("notes", std::vector<std::string>{});
  r.wall_clock_seconds = j.value("wall_clock_seconds", 0.0);
  return r;
}

std::vector<std::pair<std::string, std::string>> render_tables(const ExperimentReport& r) {
  std::vector<std::pair<std::string, std::string>> files;
  const auto f = format_double;

  if (!r.results.empty()) {
    const auto summaries = summarize_models(r);
    std::ostringstream metrics, windows, tiers, horizon, bench;
    metrics << "model,customer,horizon,mae,mse\n";
    windows << "model,window,origin,hash,mae,mse,relative_error\n";
    tiers << "model,tier,count,share_percent,avg_mae,avg_mse\n";
    horizon << "model,horizon,mae,mse\n";
    bench << "model,mae,mae_std,mse,relative_error,windows_beating_naive\n";
    for (const auto& s : summaries) {
      for (Eigen::Index c = 0; c < s.mae.rows(); ++c) {
        const std::string id = static_cast<std::size_t>(c) < r.customer_ids.size() ? r.customer_ids[static_cast<std::size_t>(c)]
                                                                                    : std::to_string(c);
        for (Eigen::Index h = 0; h < s.mae.cols(); ++h) {
          metrics << s.model << ',' << id << ',' << h + 1 << ',' << f(s.mae(c, h)) << ',' << f(s.mse(c, h)) << '\n';
        }
      }
      for (std::size_t w = 0; w < s.window_mae.size(); ++w) {
        windows << s.model << ',' << w << ',' << r.windows[w].origin << ',' << r.windows[w].hash << ',' << f(s.window_mae[w])
                << ',' << f(s.window_mse[w]) << ',' << f(s.window_relative_error[w]) << '\n';
      }
      std::vector<double> cust_mae(static_cast<std::size_t>(s.mae.rows()));
      std::vector<double> cust_mse(cust_mae.size());
      for (Eigen::Index c = 0; c < s.mae.rows(); ++c) {
        cust_mae[static_cast<std::size_t>(c)] = s.mae.row(c).mean();
        cust_mse[static_cast<std::size_t>(c)] = s.mse.row(c).mean();
      }
      for (const auto& row : tier_classify(cust_mae, cust_mse)) {
        tiers << s.model << ',' << to_string(row.tier) << ',' << row.count << ',' << f(row.share_percent) << ','
              << f(row.avg_mae) << ',' << f(row.avg_mse) << '\n';
      }
      for (Eigen::Index h = 0; h < s.mae.cols(); ++h) {
        horizon << s.model << ',' << h + 1 << ',' << f(s.mae.col(h).mean()) << ',' << f(s.mse.col(h).mean()) << '\n';
      }
      bench << s.model << ',' << f(s.mean_mae) << ',' << f(s.std_mae) << ',' << f(s.mean_mse) << ','
            << f(s.mean_relative_error) << ',' << s.windows_beating_naive << '\n';
    }
    files.emplace_back("metrics.csv", metrics.str());
    files.emplace_back("window_metrics.csv", windows.str());
    files.emplace_back("tiers.csv", tiers.str());
    files.emplace_back("fig4_horizon_mae.csv", horizon.str());
    files.emplace_back("fig5_benchmark.csv", bench.str());
  }
  if (!r.qubit_scaling.empty()) {
    std::ostringstream os;
    os << "n_qubits,entangled,mean_relative_error,mean_mae,reference\n";
    for (const auto& p : r.qubit_scaling) {
      os << p.n_qubits << ',' << (p.entangled ? 1 : 0) << ',' << f(p.mean_relative_error) << ',' << f(p.mean_mae) << ",0.3\n";
    }
    files.emplace_back("fig7_qubit_scaling.csv", os.str());
  }
  if (!r.diagnostics.empty()) {
    std::ostringstream os;
    os << "n,sqrt_n,kernel,g_mean,g_std,kappa_mean,kappa_std\n";
    for (const auto& row : diagnostics::summarize(r.diagnostics)) {
      for (std::size_t k = 0; k < 5; ++k) {
        os << row.n << ',' << f(std::sqrt(static_cast<double>(row.n))) << ',' << kKernelNames[k] << ',';
        if (k < 4) {
          os << f(row.g_mean[k]) << ',' << f(row.g_std[k]);
        } else {
          os << ',';
        }
        os << ',' << f(row.kappa_mean[k]) << ',' << f(row.kappa_std[k]) << '\n';
      }
    }
    files.emplace_back("fig3_scaling.csv", os.str());
    std::ostringstream rec;
    rec << "n,repetition,seed,kernel,g,kappa,max_epsilon\n";
    for (const auto& d : r.diagnostics) {
      for (std::size_t k = 0; k < 5; ++k) {
        rec << d.n << ',' << d.repetition << ',' << d.seed << ',' << kKernelNames[k] << ',' << (k < 4 ? f(d.g[k]) : "")
            << ',' << f(d.kappa[k]) << ',' << f(d.max_epsilon) << '\n';
      }
    }
    files.emplace_back("diagnostics_records.csv", rec.str());
  }
  if (!r.loss_traces.empty()) {
    std::ostringstream os;
    os << "model,window,iteration,loss\n";
    for (const auto& t : r.loss_traces) {
      for (std::size_t i = 0; i < t.values.size(); ++i) os << t.model << ',' << t.window << ',' << i << ',' << f(t.values[i]) << '\n';
    }
    files.emplace_back("loss_trace.csv", os.str());
  }
  return files;
}

void write_tables(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
  for (const auto& [name, text] : render_tables(report)) write_file(dir / name, text);
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  write_tables(report, dir);
  write_file(dir / "report.json", report_to_json(report).dump(2) + "\n");
}

}  // namespace qforecast::bench
