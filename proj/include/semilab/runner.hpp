/*
 * Copyright 2026 The semilab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace semilab {

/// Invalid configuration: the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { Examples, Exhaust, Suite };

ExperimentKind experiment_kind_from_name(const std::string& name);
std::string to_string(ExperimentKind kind);

/// One experiment of a batch. Fields irrelevant to the kind are ignored;
/// unset optional fields take kind-specific defaults (see docs/config_schema.md).
struct ExperimentConfig {
  std::string name;
  ExperimentKind kind = ExperimentKind::Exhaust;

  // exhaust
  std::string field = "ou";
  std::vector<double> diffusion;  // polynomial field only
  std::vector<double> drift;      // polynomial field only
  int dimension = 1;
  std::optional<double> h;
  std::vector<double> radii{2.0, 4.0, 6.0, 8.0};
  std::optional<std::vector<double>> compact;  // [lo, hi] interval
  std::vector<double> lambdas{1.0};
  std::vector<double> times;
  double tolerance = 1e-3;

  // examples
  std::string family = "radial_d3";
  std::vector<double> inner_radii{1.0};
  std::vector<int> orders;  // 0 encodes the unweighted limit n = infinity
  std::optional<double> extent;

  // suite
  std::uint64_t seed = 7;
  std::string fixtures;  // JSON fixture file; empty = built-in defaults
  bool builtin = true;
};

struct RunConfig {
  std::string output_dir = "lab_out";
  std::vector<ExperimentConfig> experiments;
};

/// Parses and validates a configuration document; throws ConfigError with a
/// field path (or line/column for syntax errors).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Command-line overrides, applied to every experiment.
struct Overrides {
  std::optional<std::vector<double>> lambdas;
  std::optional<std::vector<double>> radii;
  std::optional<std::vector<double>> times;
  std::optional<std::vector<double>> inner_radii;
  std::optional<std::vector<int>> orders;
  std::optional<std::string> field;
  std::optional<std::string> family;
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> h;
};

void apply_overrides(RunConfig& config, const Overrides& overrides);

/// Re-checks every invariant of the configuration (after overrides).
void validate(const RunConfig& config);

inline constexpr int kExitPass = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitCheckFailed = 2;
inline constexpr int kExitNumerical = 3;

struct ExperimentOutcome {
  std::string name;
  int exit_code = kExitPass;
  std::string message;
  std::vector<std::string> files;
};

/// Runs every experiment (concurrently) into <output_dir>/<name>/ and returns
/// the per-experiment outcomes in configuration order.
std::vector<ExperimentOutcome> run_experiments(const RunConfig& config);

/// First configuration/IO error, else first numerical failure, else 2 if any
/// check failed, else 0.
int combined_exit_code(const std::vector<ExperimentOutcome>& outcomes);

/// Formats a double with 17 significant digits ("inf"/"nan" for non-finite).
std::string format_number(double value);

}  // namespace semilab
