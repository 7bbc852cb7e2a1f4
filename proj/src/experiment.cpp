// Copyright 2026 The clockpress Authors
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

#include "clockpress/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "clockpress/channels.hpp"
#include "clockpress/clockstate.hpp"
#include "clockpress/oracle.hpp"
#include "clockpress/parallel.hpp"
#include "clockpress/repkit.hpp"

namespace clockpress::experiment {
namespace {

struct PresetName {
  Preset preset;
  const char* name;
};

constexpr PresetName kPresets[] = {
    {Preset::error_scan, "error-scan"},
    {Preset::memory_scan, "memory-scan"},
    {Preset::bound_compare, "bound-compare"},
    {Preset::converse, "converse"},
    {Preset::oracle_verify, "oracle-verify"},
    {Preset::projection_basis_diagnostic, "projection-basis-diagnostic"},
};

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& key, const std::string& value) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("empty entry in list for key '" + key + "'");
    items.push_back(item);
  }
  if (items.empty()) throw ConfigError("key '" + key + "' needs at least one value");
  return items;
}

double parse_real(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': '" + text + "' is not a real number");
  }
}

long long parse_integer(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': '" + text + "' is not an integer");
  }
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("key '" + key + "': '" + text + "' is not a boolean");
}

void apply(ExperimentConfig& config, const std::string& key, const std::string& value) {
  if (key == "n") {
    config.n_list.clear();
    for (const auto& item : split_list(key, value)) {
      const long long n = parse_integer(key, item);
      if (n < 1 || n > 1000000) throw ConfigError("key 'n': " + item + " is out of range");
      config.n_list.push_back(static_cast<int>(n));
    }
  } else if (key == "p") {
    config.p_list.clear();
    for (const auto& item : split_list(key, value)) config.p_list.push_back(parse_real(key, item));
  } else if (key == "s") {
    config.s_list.clear();
    for (const auto& item : split_list(key, value)) config.s_list.push_back(parse_real(key, item));
  } else if (key == "x") {
    config.x = parse_real(key, value);
  } else if (key == "mode") {
    try {
      config.mode = parse_mode(value);
    } catch (const std::exception&) {
      throw ConfigError("key 'mode': '" + value + "' is not known|unknown");
    }
  } else if (key == "t_grid") {
    std::vector<double> grid;
    for (const auto& item : split_list(key, value)) grid.push_back(parse_real(key, item));
    config.t_grid = grid;
  } else if (key == "seed") {
    const long long seed = parse_integer(key, value);
    if (seed < 0) throw ConfigError("key 'seed' must be non-negative");
    config.seed = static_cast<std::uint64_t>(seed);
  } else if (key == "out") {
    config.output_path = value;
  } else if (key == "threads") {
    const long long threads = parse_integer(key, value);
    if (threads < 1 || threads > 1024) throw ConfigError("key 'threads' must be in 1..1024");
    config.threads = static_cast<int>(threads);
  } else if (key == "restrict_tail") {
    config.restrict_tail = parse_bool(key, value);
  } else if (key == "width_exponent") {
    config.width_exponent = parse_real(key, value);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void validate(const ExperimentConfig& config) {
  if (config.n_list.empty()) throw ConfigError("key 'n' is required");
  if (!std::is_sorted(config.n_list.begin(), config.n_list.end()))
    throw ConfigError("key 'n' must be sorted ascending");
  for (double p : config.p_list)
    if (!(p > 0.5 && p <= 1.0)) throw ConfigError("key 'p': values must lie in (1/2, 1]");
  for (double s : config.s_list)
    if (!(s > 0.0 && s < 1.0)) throw ConfigError("key 's': values must lie in (0, 1)");
  if (!(config.x > 0.0 && config.x < 0.5)) throw ConfigError("key 'x' must lie in (0, 1/2)");
  if (!(config.width_exponent > 0.0 && config.width_exponent < 0.5))
    throw ConfigError("key 'width_exponent' must lie in (0, 1/2)");
  if (config.t_grid) {
    if (config.t_grid->empty()) throw ConfigError("key 't_grid' needs at least one value");
    for (double t : *config.t_grid)
      if (!(t >= 0.0 && t < 2.0 * M_PI)) throw ConfigError("key 't_grid': values must lie in [0, 2 pi)");
  }
  const bool needs_partition =
      config.mode == Mode::unknown &&
      (config.preset == Preset::error_scan || config.preset == Preset::memory_scan ||
       config.preset == Preset::bound_compare || config.preset == Preset::oracle_verify);
  if (needs_partition) {
    for (int n : config.n_list) {
      try {
        make_partition(n, config.x);
      } catch (const std::exception& e) {
        throw ConfigError("n = " + std::to_string(n) + ": " + e.what());
      }
    }
  }
}

struct Point {
  int n;
  double p;
  double s;
};

std::vector<Point> sweep_points(const ExperimentConfig& config) {
  std::vector<Point> points;
  for (int n : config.n_list)
    for (double p : config.p_list)
      for (double s : config.s_list) points.push_back({n, p, s});
  return points;
}

ResultRow base_row(const ExperimentConfig& config, const Point& point) {
  ResultRow row;
  row.preset = to_string(config.preset);
  row.n = point.n;
  row.p = point.p;
  row.s = point.s;
  row.x = config.x;
  row.mode = to_string(config.mode);
  row.lemma2_bound = error_bound(point.n, point.p);
  return row;
}

void fill_from_report(ResultRow& row, const ErrorReport& report, double x) {
  row.epsilon = report.epsilon;
  row.epsilon_tail_bound = report.epsilon_upper;
  const MemoryReport memory = memory_report(report.record, x);
  row.qubits_exact = memory.qubits_exact;
  row.qubits_bound = memory.qubit_bound;
  row.cbits_exact = memory.cbits_exact;
  row.quantum_dim = report.record.quantum_dim;
  row.classical_count = report.record.classical_count;
}

ErrorOptions error_options(const ExperimentConfig& config) {
  ErrorOptions options;
  if (config.t_grid) options.t_grid = *config.t_grid;
  options.restrict_tail = config.restrict_tail;
  options.threads = 1;  // parallelism is spent on sweep points
  return options;
}

std::string describe(const Point& point) {
  char buffer[96];
  std::snprintf(buffer, sizeof buffer, "n=%d p=%.12g s=%.12g", point.n, point.p, point.s);
  return buffer;
}

std::string format_real(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12g", v);
  return buffer;
}

// Projection error of the reference block when the window is applied in a
// rotated basis: the block is conjugated into that basis, projected with the
// usual rule and conjugated back.
double projection_error_in_basis(const CMatrix& block, Spin j, double s, const RMatrix& basis) {
  const CMatrix rotated = basis.transpose().cast<Complex>() * block * basis.cast<Complex>();
  const CMatrix projected = channels::frequency_projection(j, s, rotated);
  const CMatrix back = basis.cast<Complex>() * projected * basis.transpose().cast<Complex>();
  return 0.5 * hermitian_trace_norm(back - block);
}

CMatrix random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  CMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

struct PointResult {
  std::vector<ResultRow> rows;
  std::vector<std::string> diagnostics;
  bool failure = false;
};

constexpr double kOracleBlockTol = 1e-9;
constexpr double kOracleWeightTol = 1e-10;
constexpr double kOraclePipelineTol = 1e-8;

PointResult run_oracle_point(const ExperimentConfig& config, const Point& point) {
  PointResult result;
  ResultRow row = base_row(config, point);
  for (double t : {0.0, 1.1}) {
    const ClockParams params{point.n, point.s, point.p, t};
    const auto blocks = oracle::oracle_blocks(params);
    const BlockState state = build_block_state(params);
    for (const auto& ob : blocks) {
      const Block* fast = state.find(ob.j);
      const double q = fast ? fast->weight : 0.0;
      if (std::abs(q - ob.q) > kOracleWeightTol) {
        result.failure = true;
        result.diagnostics.push_back(describe(point) + " J=" + to_string(ob.j) +
                                     ": q_J mismatch " + format_real(q) + " vs " + format_real(ob.q));
      }
      if (!fast || ob.q < 1e-300) continue;
      const double diff = (fast->op.dense() - ob.block).cwiseAbs().maxCoeff();
      if (diff > kOracleBlockTol) {
        result.failure = true;
        result.diagnostics.push_back(describe(point) + " J=" + to_string(ob.j) +
                                     ": block mismatch " + format_real(diff));
      }
    }
  }
  const ClockParams params{point.n, point.s, point.p, 0.0};
  const oracle::PipelineResult reference = oracle::oracle_pipeline(params, config.mode, config.x);
  ErrorOptions options = error_options(config);
  options.t_grid = {0.0};
  const ErrorReport report = compression_error(params, config.mode, config.x, options);
  if (std::abs(report.epsilon - reference.epsilon) > kOraclePipelineTol) {
    result.failure = true;
    result.diagnostics.push_back(describe(point) + ": pipeline error " + format_real(report.epsilon) +
                                 " vs oracle " + format_real(reference.epsilon));
  }
  fill_from_report(row, report, config.x);
  result.rows.push_back(row);
  return result;
}

// Channel comparison against the explicit cloner and partial trace, seeded
// from the config so that reruns see the same inputs.
std::vector<std::string> oracle_channel_check(std::uint64_t seed) {
  std::vector<std::string> failures;
  std::mt19937_64 rng(seed);
  for (int tj = 1; tj <= 6; ++tj) {
    for (int tk = 1; tk <= 6; ++tk) {
      const Spin J(tj), K(tk);
      const CMatrix in = random_density(J.dim(), rng);
      const double diff =
          (channels::convert(J, K, in) - oracle::oracle_convert(J, K, in)).cwiseAbs().maxCoeff();
      if (diff > 1e-9) {
        failures.push_back("convert J=" + to_string(J) + " K=" + to_string(K) + " mismatch " +
                           format_real(diff));
      }
    }
  }
  return failures;
}

PointResult run_point(const ExperimentConfig& config, const Point& point) {
  PointResult result;
  const ClockParams params{point.n, point.s, point.p, 0.0};
  switch (config.preset) {
    case Preset::error_scan:
    case Preset::memory_scan:
    case Preset::bound_compare: {
      ResultRow row = base_row(config, point);
      const ErrorReport report = compression_error(params, config.mode, config.x, error_options(config));
      fill_from_report(row, report, config.x);
      if (config.preset == Preset::bound_compare && report.epsilon > 3.0 * row.lemma2_bound) {
        result.diagnostics.push_back(describe(point) + ": epsilon " + format_real(report.epsilon) +
                                     " exceeds 3 x bound " + format_real(3.0 * row.lemma2_bound));
      }
      result.rows.push_back(row);
      break;
    }
    case Preset::converse: {
      ResultRow row = base_row(config, point);
      row.mode = to_string(Mode::known);
      const ErrorReport report = starved_report(params, config.width_exponent, error_options(config));
      fill_from_report(row, report, config.x);
      result.rows.push_back(row);
      break;
    }
    case Preset::oracle_verify:
      return run_oracle_point(config, point);
    case Preset::projection_basis_diagnostic: {
      const Spin j = known_reference_spin(point.n, point.p);
      const CMatrix block = rho_pJ(point.p, j, point.s);
      const RMatrix identity = RMatrix::Identity(j.dim(), j.dim());
      const RMatrix s_basis = repkit::wigner_d(j, repkit::rotation_angle(point.s));
      const struct {
        const char* label;
        const RMatrix* basis;
      } variants[] = {{"z-basis", &identity}, {"s-basis", &s_basis}};
      for (const auto& variant : variants) {
        ResultRow row = base_row(config, point);
        row.mode = variant.label;
        row.epsilon = projection_error_in_basis(block, j, point.s, *variant.basis);
        row.epsilon_tail_bound = row.epsilon;
        row.lemma2_bound = channels::projection_error_bound(j, point.p);
        const channels::Window window = channels::make_window(j, point.s);
        row.quantum_dim = window.size();
        row.qubits_exact = std::log2(static_cast<double>(window.size()));
        row.qubits_bound = 0.5 * std::log2(point.n) + std::log2(std::log2(point.n)) + 1.0;
        row.classical_count = 1;
        result.rows.push_back(row);
      }
      break;
    }
  }
  return result;
}

}  // namespace

std::string to_string(Preset preset) {
  for (const auto& entry : kPresets)
    if (entry.preset == preset) return entry.name;
  return "?";
}

Preset parse_preset(const std::string& name) {
  for (const auto& entry : kPresets)
    if (name == entry.name) return entry.preset;
  throw ConfigError("unknown preset '" + name + "'");
}

KeyValues read_key_values(std::istream& in) {
  KeyValues entries;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_number) + ": empty key");
    entries.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return entries;
}

ExperimentConfig parse_config(Preset preset, const KeyValues& file, const KeyValues& flags) {
  ExperimentConfig config;
  config.preset = preset;
  for (const auto& [key, value] : file) apply(config, key, value);
  for (const auto& [key, value] : flags) apply(config, key, value);
  validate(config);
  return config;
}

RunOutcome run(const ExperimentConfig& config) {
  const std::vector<Point> points = sweep_points(config);
  if (config.preset == Preset::oracle_verify) {
    for (const Point& point : points) {
      if (point.n > oracle::kMaxBlockQubits)
        throw oracle::SizeRefusal("oracle-verify supports n <= " +
                                  std::to_string(oracle::kMaxBlockQubits) + ", got n = " +
                                  std::to_string(point.n));
    }
  }

  std::vector<PointResult> results(points.size());
  parallel_for(points.size(), config.threads, [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    results[i] = run_point(config, points[i]);
    const std::chrono::duration<double, std::milli> elapsed =
        std::chrono::steady_clock::now() - start;
    for (ResultRow& row : results[i].rows) row.runtime_ms = elapsed.count();
  });

  RunOutcome outcome;
  for (PointResult& result : results) {
    for (ResultRow& row : result.rows) outcome.rows.push_back(std::move(row));
    for (std::string& line : result.diagnostics) outcome.diagnostics.push_back(std::move(line));
    outcome.tolerance_failure = outcome.tolerance_failure || result.failure;
  }
  if (config.preset == Preset::oracle_verify) {
    for (std::string& line : oracle_channel_check(config.seed)) {
      outcome.diagnostics.push_back(std::move(line));
      outcome.tolerance_failure = true;
    }
  }
  return outcome;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool include_runtime) {
  out << kCsvVersionLine << '\n';
  out << "preset,n,p,s,x,mode,epsilon,epsilon_tail_bound,lemma2_bound,qubits_exact,"
         "qubits_bound,cbits_exact,quantum_dim,classical_count";
  if (include_runtime) out << ",runtime_ms";
  out << '\n';
  for (const ResultRow& row : rows) {
    out << row.preset << ',' << row.n << ',' << format_real(row.p) << ',' << format_real(row.s)
        << ',' << format_real(row.x) << ',' << row.mode << ',' << format_real(row.epsilon) << ','
        << format_real(row.epsilon_tail_bound) << ',' << format_real(row.lemma2_bound) << ','
        << format_real(row.qubits_exact) << ',' << format_real(row.qubits_bound) << ','
        << format_real(row.cbits_exact) << ',' << row.quantum_dim << ',' << row.classical_count;
    if (include_runtime) out << ',' << format_real(row.runtime_ms);
    out << '\n';
  }
}

}  // namespace clockpress::experiment
