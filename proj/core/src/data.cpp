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

#include "qforecast/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "qforecast/random.hpp"

namespace qforecast::data {
namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("failed to format value");
  return std::string(buf, end);
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos
                                                                                          : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

void TimeSeriesDataset::validate() const {
  if (static_cast<std::size_t>(values.rows()) != ids.size()) {
    throw std::invalid_argument("dataset has " + std::to_string(values.rows()) + " series but " +
                                std::to_string(ids.size()) + " ids");
  }
  if (!values.allFinite()) throw std::invalid_argument("dataset contains non-finite values");
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) throw std::invalid_argument("duplicate customer id '" + id + "'");
  }
}

int TimeSeriesDataset::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == id) return static_cast<int>(i);
  }
  throw std::out_of_range("customer id '" + std::string(id) + "' not in dataset");
}

void SyntheticSpec::validate() const {
  if (customers < 1) throw std::invalid_argument("synthetic.customers must be >= 1");
  if (hours < 20) throw std::invalid_argument("synthetic.hours must be >= 20");
  if (clusters < 1) throw std::invalid_argument("synthetic.clusters must be >= 1");
  if (loading < 0.0 || loading > 1.0) throw std::invalid_argument("synthetic.loading must lie in [0, 1]");
  if (noise < 0.0) throw std::invalid_argument("synthetic.noise must be >= 0");
  if (factor_scale < 0.0) throw std::invalid_argument("synthetic.factor_scale must be >= 0");
  if (std::abs(cluster_ar) >= 1.0 || std::abs(idio_ar) >= 1.0) {
    throw std::invalid_argument("synthetic AR coefficients must lie in (-1, 1)");
  }
  if (peak_probability < 0.0 || peak_probability > 1.0) {
    throw std::invalid_argument("synthetic.peak_probability must lie in [0, 1]");
  }
  if (base_level <= 0.0 || swing <= 0.0) throw std::invalid_argument("synthetic base_level and swing must be > 0");
}

nlohmann::json to_json(const SyntheticSpec& s) {
  return {{"customers", s.customers},         {"hours", s.hours},
          {"clusters", s.clusters},           {"loading", s.loading},
          {"noise", s.noise},                 {"daily_amplitude", s.daily_amplitude},
          {"factor_scale", s.factor_scale},   {"cluster_ar", s.cluster_ar},
          {"idio_ar", s.idio_ar},
          {"peak_probability", s.peak_probability}, {"peak_scale", s.peak_scale},
          {"base_level", s.base_level},       {"swing", s.swing}};
}

SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j) {
  SyntheticSpec s;
  s.customers = j.value("customers", s.customers);
  s.hours = j.value("hours", s.hours);
  s.clusters = j.value("clusters", s.clusters);
  s.loading = j.value("loading", s.loading);
  s.noise = j.value("noise", s.noise);
  s.daily_amplitude = j.value("daily_amplitude", s.daily_amplitude);
  s.factor_scale = j.value("factor_scale", s.factor_scale);
  s.cluster_ar = j.value("cluster_ar", s.cluster_ar);
  s.idio_ar = j.value("idio_ar", s.idio_ar);
  s.peak_probability = j.value("peak_probability", s.peak_probability);
  s.peak_scale = j.value("peak_scale", s.peak_scale);
  s.base_level = j.value("base_level", s.base_level);
  s.swing = j.value("swing", s.swing);
  return s;
}

TimeSeriesDataset generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
  spec.validate();
  const int n = spec.customers;
  const int t_len = spec.hours;
  Rng rng(seed);

  // Cluster factors: stationary unit-variance AR(1).
  Eigen::MatrixXd factors(spec.clusters, t_len);
  const double fc = std::sqrt(1.0 - spec.cluster_ar * spec.cluster_ar);
  for (int c = 0; c < spec.clusters; ++c) {
    double f = rng.normal();
    for (int t = 0; t < t_len; ++t) {
      factors(c, t) = f;
      f = spec.cluster_ar * f + fc * rng.normal();
    }
  }

  TimeSeriesDataset ds;
  ds.values.resize(n, t_len);
  ds.ids.reserve(static_cast<std::size_t>(n));
  const double fi = std::sqrt(1.0 - spec.idio_ar * spec.idio_ar);
  for (int s = 0; s < n; ++s) {
    ds.ids.push_back("C" + std::to_string(s + 1));
    const int cluster = s % spec.clusters;
    const double base = spec.base_level * (1.0 + 0.3 * spec.noise * rng.uniform(-1.0, 1.0));
    double g = rng.normal();
    double peak = 0.0;
    int peak_left = 0;
    for (int t = 0; t < t_len; ++t) {
      const double hour = 2.0 * std::numbers::pi * (t % 24) / 24.0;
      const double daily = spec.daily_amplitude * (std::sin(hour - std::numbers::pi / 2.0) + 0.5 * std::sin(2.0 * hour));
      const double shared = daily + spec.factor_scale * factors(cluster, t);
      if (peak_left == 0 && rng.uniform() < spec.peak_probability) {
        peak = spec.peak_scale * rng.uniform(0.5, 1.5);
        peak_left = 1 + static_cast<int>(rng.index(3));
      }
      const double own = g + (peak_left > 0 ? peak : 0.0);
      if (peak_left > 0) --peak_left;
      const double signal = spec.loading * shared + (1.0 - spec.loading) * spec.noise * own;
      ds.values(s, t) = base * std::max(0.0, 1.0 + spec.swing * signal);
      g = spec.idio_ar * g + fi * rng.normal();
    }
  }
  return ds;
}

CsvError::CsvError(const std::string& source, int line, int column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + (column > 0 ? ":" + std::to_string(column) : "") +
                         ": " + message),
      line_(line),
      column_(column) {}

TimeSeriesDataset parse_csv(std::istream& in, const std::string& source) {
  std::string line;
  int line_no = 0;
  std::vector<std::string> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      ids = split_commas(line);
      break;
    }
  }
  if (ids.empty()) throw CsvError(source, line_no, 0, "missing header row of customer ids");
  for (std::size_t c = 0; c < ids.size(); ++c) {
    if (ids[c].empty()) throw CsvError(source, line_no, static_cast<int>(c + 1), "empty customer id in header");
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != ids.size()) {
      throw CsvError(source, line_no, 0,
                     "ragged row: expected " + std::to_string(ids.size()) + " fields, got " +
                         std::to_string(cells.size()));
    }
    std::vector<double> row(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string& cell = cells[c];
      if (cell.empty()) {
        throw CsvError(source, line_no, static_cast<int>(c + 1), "missing value for customer '" + ids[c] + "'");
      }
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      if (*first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, row[c]);
      if (ec != std::errc() || ptr != last || !std::isfinite(row[c])) {
        throw CsvError(source, line_no, static_cast<int>(c + 1), "cannot parse '" + cell + "' as a number");
      }
    }
    rows.push_back(std::move(row));
  }
  TimeSeriesDataset ds;
  ds.ids = ids;
  ds.values.resize(static_cast<Eigen::Index>(ids.size()), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t t = 0; t < rows.size(); ++t) {
    for (std::size_t c = 0; c < ids.size(); ++c) {
      ds.values(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(t)) = rows[t][c];
    }
  }
  try {
    ds.validate();
  } catch (const std::invalid_argument& e) {
    throw CsvError(source, 1, 0, e.what());
  }
  return ds;
}

TimeSeriesDataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset '" + path.string() + "'");
  return parse_csv(in, path.string());
}

void write_csv(std::ostream& out, const TimeSeriesDataset& ds) {
  ds.validate();
  for (std::size_t c = 0; c < ds.ids.size(); ++c) out << (c ? "," : "") << ds.ids[c];
  out << '\n';
  for (int t = 0; t < ds.hours(); ++t) {
    for (int c = 0; c < ds.customers(); ++c) out << (c ? "," : "") << format_double(ds.values(c, t));
    out << '\n';
  }
}

void save_csv(const TimeSeriesDataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset '" + path.string() + "'");
  write_csv(out, ds);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void save_metadata(const std::filesystem::path& path, const TimeSeriesDataset& ds, const nlohmann::json& provenance) {
  nlohmann::json j = provenance;
  j["ids"] = ds.ids;
  j["customers"] = ds.customers();
  j["hours"] = ds.hours();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write metadata '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("pearson: need equal lengths >= 2");
  const auto n = static_cast<double>(a.size());
  double ma = 0.0;
  double mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

CorrelationMatrix pairwise_correlations(const TimeSeriesDataset& ds) {
  if (ds.hours() < 3) throw std::invalid_argument("pairwise_correlations: need at least 3 hours");
  const int n = ds.customers();
  Eigen::MatrixXd centered = ds.values.colwise() - ds.values.rowwise().mean();
  Eigen::VectorXd norms = centered.rowwise().norm();
  CorrelationMatrix out;
  out.r = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    if (norms(i) == 0.0) out.zero_variance.push_back(i);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double r = 0.0;
      if (norms(i) > 0.0 && norms(j) > 0.0) {
        r = std::clamp(centered.row(i).dot(centered.row(j)) / (norms(i) * norms(j)), -1.0, 1.0);
      }
      out.r(i, j) = r;
      out.r(j, i) = r;
    }
  }
  return out;
}

std::string to_string(SubsetRole role) {
  switch (role) {
    case SubsetRole::Group: return "group";
    case SubsetRole::Triplet: return "triplet";
    case SubsetRole::Utility: return "utility";
  }
  return "?";
}

SubsetRole subset_role_from_string(std::string_view s) {
  if (s == "group") return SubsetRole::Group;
  if (s == "triplet") return SubsetRole::Triplet;
  if (s == "utility") return SubsetRole::Utility;
  throw std::invalid_argument("unknown subset role '" + std::string(s) + "'");
}

void SubsetSpec::validate(const TimeSeriesDataset& ds) const {
  if (members.empty()) throw std::invalid_argument("subset '" + name + "' is empty");
  std::set<int> seen;
  for (int m : members) {
    if (m < 0 || m >= ds.customers()) {
      throw std::out_of_range("subset '" + name + "' member " + std::to_string(m) + " not in dataset");
    }
    if (!seen.insert(m).second) throw std::invalid_argument("subset '" + name + "' repeats member " + std::to_string(m));
  }
}

SubsetSpec select_correlated_subset(const TimeSeriesDataset& ds, int size, SubsetRole role) {
  const int n = ds.customers();
  if (size < 1 || size > n) {
    throw std::invalid_argument("select_correlated_subset: size " + std::to_string(size) + " outside [1, " +
                                std::to_string(n) + "]");
  }
  SubsetSpec out;
  out.role = role;
  out.name = "correlated_" + std::to_string(size);
  if (size == n) {
    for (int i = 0; i < n; ++i) out.members.push_back(i);
  } else {
    const Eigen::MatrixXd r = pairwise_correlations(ds).r;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    if (size == 1) {
      out.members.push_back(0);
    } else {
      int bi = 0;
      int bj = 1;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (r(i, j) > r(bi, bj)) {
            bi = i;
            bj = j;
          }
        }
      }
      out.members = {bi, bj};
      used[static_cast<std::size_t>(bi)] = used[static_cast<std::size_t>(bj)] = true;
    }
    while (static_cast<int>(out.members.size()) < size) {
      int best = -1;
      double best_mean = -2.0;
      for (int c = 0; c < n; ++c) {
        if (used[static_cast<std::size_t>(c)]) continue;
        double mean = 0.0;
        for (int m : out.members) mean += r(c, m);
        mean /= static_cast<double>(out.members.size());
        if (mean > best_mean) {
          best_mean = mean;
          best = c;
        }
      }
      out.members.push_back(best);
      used[static_cast<std::size_t>(best)] = true;
    }
  }
  for (int m : out.members) out.ids.push_back(ds.ids[static_cast<std::size_t>(m)]);
  return out;
}

namespace {
struct NamedPositions {
  std::string_view name;
  SubsetRole role;
  std::vector<int> positions;
};

const std::vector<NamedPositions>& named_positions() {
  static const std::vector<NamedPositions> table = {
      {"group_a", SubsetRole::Group, {1, 2, 4, 8, 11}},   {"group_b", SubsetRole::Group, {3, 7, 9, 10, 15}},
      {"group_c", SubsetRole::Group, {1, 2, 3, 4, 5}},    {"triplet_a", SubsetRole::Triplet, {4, 8, 11}},
      {"triplet_b", SubsetRole::Triplet, {1, 2, 4}},      {"triplet_c", SubsetRole::Triplet, {1, 4, 11}},
  };
  return table;
}
}  // namespace

std::vector<std::string> named_subset_names() {
  std::vector<std::string> names;
  for (const auto& e : named_positions()) names.emplace_back(e.name);
  return names;
}

SubsetSpec named_subset(std::string_view name, const SubsetSpec& base15) {
  for (const auto& e : named_positions()) {
    if (e.name != name) continue;
    SubsetSpec out;
    out.role = e.role;
    out.name = std::string(name);
    for (int pos : e.positions) {
      if (pos > static_cast<int>(base15.members.size())) {
        throw std::invalid_argument("subset '" + out.name + "' needs a base of at least " + std::to_string(pos) +
                                    " customers");
      }
      out.members.push_back(base15.members[static_cast<std::size_t>(pos - 1)]);
      if (!base15.ids.empty()) out.ids.push_back(base15.ids[static_cast<std::size_t>(pos - 1)]);
    }
    return out;
  }
  throw std::invalid_argument("unknown subset name '" + std::string(name) + "'");
}

Normalization Normalization::fit(const Eigen::MatrixXd& train) {
  if (train.cols() == 0) throw std::invalid_argument("Normalization::fit: empty training block");
  Normalization n;
  n.min = train.rowwise().minCoeff();
  n.scale = train.rowwise().maxCoeff() - n.min;
  for (Eigen::Index i = 0; i < n.scale.size(); ++i) {
    if (!(n.scale(i) > 0.0)) n.scale(i) = 1.0;
  }
  return n;
}

Eigen::MatrixXd Normalization::apply(const Eigen::MatrixXd& raw) const {
  return (raw.colwise() - min).array().colwise() / scale.array();
}

Eigen::MatrixXd Normalization::invert(const Eigen::MatrixXd& normalized) const {
  return (normalized.array().colwise() * scale.array()).matrix().colwise() + min;
}

void WindowOptions::validate() const {
  if (train_len < 1) throw std::invalid_argument("windows.train must be >= 1");
  if (horizon < 1) throw std::invalid_argument("windows.horizon must be >= 1");
  if (stride < 1) throw std::invalid_argument("windows.stride must be >= 1");
  if (first_origin < 0) throw std::invalid_argument("windows.start must be >= 0");
  if (max_windows < 0) throw std::invalid_argument("windows.count must be >= 0");
}

std::string window_hash(const WindowSplit& w) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* p, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::int64_t header[3] = {w.origin, w.train_len, w.horizon};
  mix(header, sizeof(header));
  for (int s : w.streams) {
    const std::int64_t v = s;
    mix(&v, sizeof(v));
  }
  mix(w.train_raw.data(), sizeof(double) * static_cast<std::size_t>(w.train_raw.size()));
  mix(w.test_raw.data(), sizeof(double) * static_cast<std::size_t>(w.test_raw.size()));
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::vector<WindowSplit> rolling_windows(const TimeSeriesDataset& ds, std::span<const int> streams,
                                         const WindowOptions& options) {
  options.validate();
  if (streams.empty()) throw std::invalid_argument("rolling_windows: no streams selected");
  const int need = options.train_len + options.horizon;
  if (ds.hours() - options.first_origin < need) {
    throw std::invalid_argument("rolling_windows: " + std::to_string(ds.hours()) + " hours (start " +
                                std::to_string(options.first_origin) + ") cannot hold a " +
                                std::to_string(options.train_len) + "+" + std::to_string(options.horizon) +
                                " window");
  }
  const auto s_count = static_cast<Eigen::Index>(streams.size());
  std::vector<WindowSplit> out;
  for (int origin = options.first_origin; origin + need <= ds.hours(); origin += options.stride) {
    if (options.max_windows > 0 && static_cast<int>(out.size()) == options.max_windows) break;
    WindowSplit w;
    w.origin = origin;
    w.train_len = options.train_len;
    w.horizon = options.horizon;
    w.streams.assign(streams.begin(), streams.end());
    w.train_raw.resize(s_count, options.train_len);
    w.test_raw.resize(s_count, options.horizon);
    for (Eigen::Index s = 0; s < s_count; ++s) {
      const int row = streams[static_cast<std::size_t>(s)];
      if (row < 0 || row >= ds.customers()) throw std::out_of_range("rolling_windows: stream outside dataset");
      w.train_raw.row(s) = ds.values.row(row).segment(origin, options.train_len);
      w.test_raw.row(s) = ds.values.row(row).segment(origin + options.train_len, options.horizon);
    }
    w.norm = Normalization::fit(w.train_raw);
    w.train = w.norm.apply(w.train_raw);
    w.test = w.norm.apply(w.test_raw);
    w.hash = window_hash(w);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace qforecast::data
