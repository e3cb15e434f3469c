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

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qforecast/bench/config.hpp"
#include "qforecast/bench/experiment.hpp"
#include "qforecast/bench/report.hpp"
#include "qforecast/data.hpp"

namespace {

namespace bench = qforecast::bench;
namespace data = qforecast::data;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct Common {
  std::string input;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> backend;
};

void add_common(CLI::App* cmd, Common& c, const std::string& input_help) {
  cmd->add_option("input", c.input, input_help)->required();
  cmd->add_option("--seed", c.seed, "Override the data seed");
  cmd->add_option("--out", c.out, "Output directory");
  cmd->add_option("--backend", c.backend, "Quantum kernel backend")->check(CLI::IsMember({"dense", "mps"}));
}

void print_summary(const bench::ExperimentReport& report) {
  for (const auto& s : bench::summarize_models(report)) {
    std::cout << s.model << ": mae " << bench::format_double(s.mean_mae) << ", relative error "
              << bench::format_double(s.mean_relative_error);
    if (s.windows_beating_naive >= 0 && s.model != "naive") {
      std::cout << ", beats naive on " << s.windows_beating_naive << "/" << s.window_mae.size() << " windows";
    }
    std::cout << '\n';
  }
  for (const auto& p : report.qubit_scaling) {
    std::cout << "n_q " << p.n_qubits << (p.entangled ? " entangled" : " separate") << ": relative error "
              << bench::format_double(p.mean_relative_error) << '\n';
  }
  for (const auto& row : qforecast::diagnostics::summarize(report.diagnostics)) {
    std::cout << "N " << row.n << ": g(laplacian) " << bench::format_double(row.g_mean[1]) << '\n';
  }
}

int cmd_generate(const Common& c) {
  auto cfg = bench::load_config(c.input);
  bench::apply_overrides(cfg, c.seed, c.out, c.backend);
  if (cfg.dataset.kind != bench::DatasetSource::Kind::Synthetic) {
    throw bench::ConfigError("$.dataset.source", "generate needs a synthetic dataset source");
  }
  const auto ds = data::generate_synthetic(cfg.dataset.synthetic, cfg.seed);
  const std::filesystem::path dir(cfg.output);
  std::filesystem::create_directories(dir);
  data::save_csv(ds, dir / "dataset.csv");
  data::save_metadata(dir / "dataset.meta.json", ds,
                      {{"seed", cfg.seed}, {"generator", data::to_json(cfg.dataset.synthetic)}});
  std::cout << "wrote " << ds.customers() << " customers x " << ds.hours() << " hours to " << (dir / "dataset.csv").string()
            << '\n';
  return kExitOk;
}

int cmd_run(const Common& c) {
  auto cfg = bench::load_config(c.input);
  bench::apply_overrides(cfg, c.seed, c.out, c.backend);
  const auto report = bench::run_experiment(cfg);
  bench::write_report(report, cfg.output);
  print_summary(report);
  std::cout << "report written to " << cfg.output << '\n';
  return kExitOk;
}

int cmd_report(const Common& c) {
  std::ifstream in(c.input);
  if (!in) throw std::runtime_error("cannot open report '" + c.input + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw bench::ConfigError("$", std::string("malformed report: ") + e.what());
  }
  bench::ExperimentReport report;
  try {
    report = bench::report_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw bench::ConfigError("$", std::string("incomplete report: ") + e.what());
  }
  if (c.seed || c.backend) std::cerr << "note: --seed and --backend do not change an existing report\n";
  const std::filesystem::path dir =
      c.out ? std::filesystem::path(*c.out) : std::filesystem::path(c.input).parent_path();
  bench::write_tables(report, dir.empty() ? std::filesystem::path(".") : dir);
  print_summary(report);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-classical multi-output load forecasting experiments"};
  app.require_subcommand(1);
  Common generate, run, report;
  auto* g = app.add_subcommand("generate", "Write a synthetic dataset described by a config");
  add_common(g, generate, "Experiment config (JSON)");
  auto* r = app.add_subcommand("run", "Run an experiment config and write report.json plus CSV tables");
  add_common(r, run, "Experiment config (JSON)");
  auto* p = app.add_subcommand("report", "Re-emit CSV tables from an existing report.json");
  add_common(p, report, "report.json from a previous run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (g->parsed()) return cmd_generate(generate);
    if (r->parsed()) return cmd_run(run);
    return cmd_report(report);
  } catch (const bench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const data::CsvError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
