// Copyright 2026 The qstab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qstab::cli {

enum class Experiment { kFig1a, kFig1b, kFig2, kOsc, kMarkov, kAlphaSweep, kBoundsTable };

std::string_view experiment_name(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);
const std::vector<Experiment>& all_experiments();

/// Every tunable of every experiment. Each experiment reads the subset it
/// needs; the rest are still echoed into the CSV header.
struct ExperimentConfig {
  Experiment experiment = Experiment::kFig1a;
  double j = 100.0;
  double beta = 3.0;
  double p = 0.0;
  double tau = 1.0;
  double epsilon = 0.01;
  double alpha = 0.0;
  double theta = 0.0;  // polar angle of the initial coherent state
  double phi = 0.0;    // azimuth of the initial coherent state
  double d = 1.0;      // qubit amplitude on |0>, first environment
  double d_prime = 1.0;
  std::size_t n_kicks = 1000;
  std::size_t grid = 32;  // phi points (fig1b) or a-grid points (bounds-table)
  std::vector<double> c;  // oscillator amplitudes
  std::vector<double> c_prime;
  std::vector<double> alphas;  // alpha-sweep values
  double threshold = 0.95;
};

/// Defaults for one experiment, matching the captioned figure setups.
ExperimentConfig default_config(Experiment e);

/// Names accepted by apply_setting, in the order they are written to CSV
/// headers.
const std::vector<std::string>& config_keys();

/// Parses a real: a decimal literal, "pi", "sqrt(x)", or products and
/// quotients of those ("pi/2", "1/sqrt(2)", "2*pi").
double parse_real(std::string_view text);

std::vector<double> parse_real_list(std::string_view text);

/// Sets one field by key. Throws ValidationError on an unknown key or a
/// malformed value.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Reads `key = value` lines; blank lines and `#` comments are skipped.
/// Throws std::runtime_error (with the path) when the file cannot be read.
void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

/// Range checks that do not depend on running the physics.
void validate(const ExperimentConfig& cfg);

/// (key, rendered value) for every key in config_keys().
std::vector<std::pair<std::string, std::string>> describe(const ExperimentConfig& cfg);

}  // namespace qstab::cli
