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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clockpress/compressor.hpp"

namespace clockpress::experiment {

enum class Preset {
  error_scan,
  memory_scan,
  bound_compare,
  converse,
  oracle_verify,
  projection_basis_diagnostic,
};

std::string to_string(Preset preset);
Preset parse_preset(const std::string& name);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  Preset preset = Preset::error_scan;
  std::vector<int> n_list;
  std::vector<double> p_list{1.0};
  std::vector<double> s_list{0.5};
  double x = 0.1;
  Mode mode = Mode::unknown;
  std::optional<std::vector<double>> t_grid;
  std::uint64_t seed = 1;
  std::string output_path = "-";
  bool restrict_tail = true;
  int threads = 1;
  double width_exponent = 0.3;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Reads a flat `key = value` file; blank lines and `#` comments are ignored.
KeyValues read_key_values(std::istream& in);

/// Builds a config from file entries, then flag entries (flags win). Unknown
/// keys and out-of-domain values raise ConfigError.
ExperimentConfig parse_config(Preset preset, const KeyValues& file, const KeyValues& flags);

struct ResultRow {
  std::string preset;
  int n = 0;
  double p = 0.0;
  double s = 0.0;
  double x = 0.0;
  std::string mode;
  double epsilon = 0.0;
  double epsilon_tail_bound = 0.0;
  double lemma2_bound = 0.0;
  double qubits_exact = 0.0;
  double qubits_bound = 0.0;
  double cbits_exact = 0.0;
  int quantum_dim = 0;
  int classical_count = 0;
  double runtime_ms = 0.0;
};

struct RunOutcome {
  std::vector<ResultRow> rows;
  std::vector<std::string> diagnostics;
  bool tolerance_failure = false;
};

/// Runs every sweep point of the preset; rows come back in config order.
/// Throws oracle::SizeRefusal for oracle presets beyond their size limits.
RunOutcome run(const ExperimentConfig& config);

inline constexpr const char* kCsvVersionLine = "# clockpress-csv v1";

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool include_runtime = true);

}  // namespace clockpress::experiment
