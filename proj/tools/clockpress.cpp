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

// Command-line experiment runner.
//
//   clockpress <preset> [--config FILE] [--n LIST] [--p LIST] [--s LIST] [--x X]
//              [--mode known|unknown] [--out FILE] [--seed INT] [--threads INT]
//
// Exit codes: 0 success, 1 config error, 2 size refusal, 3 oracle tolerance failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "clockpress/experiment.hpp"
#include "clockpress/oracle.hpp"

namespace {

namespace ex = clockpress::experiment;

constexpr int kExitConfig = 1;
constexpr int kExitSizeRefusal = 2;
constexpr int kExitTolerance = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qubit-clock compression experiments"};
  std::string preset_name;
  std::string config_path;
  struct Flag {
    const char* option;
    const char* key;
    const char* help;
    std::optional<std::string> value;
  };
  Flag flags[] = {
      {"--n", "n", "Comma-separated copy numbers (ascending)", {}},
      {"--p", "p", "Comma-separated spectra in (1/2, 1]", {}},
      {"--s", "s", "Comma-separated overlaps in (0, 1)", {}},
      {"--x", "x", "Partition exponent in (0, 1/2)", {}},
      {"--mode", "mode", "known|unknown", {}},
      {"--out", "out", "Output CSV path ('-' for stdout)", {}},
      {"--seed", "seed", "Seed for randomized checks", {}},
      {"--threads", "threads", "Sweep points run in parallel", {}},
      {"--t-grid", "t_grid", "Comma-separated evolution times", {}},
      {"--restrict-tail", "restrict_tail", "Restrict large-n sums to the bulk (true|false)", {}},
      {"--width-exponent", "width_exponent", "Window exponent w for the converse preset", {}},
  };
  app.add_option("preset", preset_name,
                 "error-scan | memory-scan | bound-compare | converse | oracle-verify | "
                 "projection-basis-diagnostic")
      ->required();
  app.add_option("--config", config_path, "Flat key = value config file");
  for (Flag& flag : flags) app.add_option(flag.option, flag.value, flag.help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  ex::ExperimentConfig config;
  try {
    ex::KeyValues file_entries;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ex::ConfigError("cannot open config file '" + config_path + "'");
      file_entries = ex::read_key_values(in);
    }
    ex::KeyValues flag_entries;
    for (const Flag& flag : flags)
      if (flag.value) flag_entries.emplace_back(flag.key, *flag.value);
    config = ex::parse_config(ex::parse_preset(preset_name), file_entries, flag_entries);
  } catch (const ex::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  ex::RunOutcome outcome;
  try {
    outcome = ex::run(config);
  } catch (const clockpress::oracle::SizeRefusal& e) {
    std::cerr << "size refusal: " << e.what() << '\n';
    return kExitSizeRefusal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (config.output_path == "-") {
    ex::write_csv(std::cout, outcome.rows);
  } else {
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "config error: cannot write '" << config.output_path << "'\n";
      return kExitConfig;
    }
    ex::write_csv(out, outcome.rows);
  }
  for (const std::string& line : outcome.diagnostics) std::cerr << "diagnostic: " << line << '\n';
  return outcome.tolerance_failure ? kExitTolerance : 0;
}
