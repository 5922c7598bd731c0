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

// Experiment runners. Each validates its config, runs the physics and
// returns the CSV table; nothing here touches the filesystem.

#include <cstdint>

#include "qstab/config.hpp"
#include "qstab/csv.hpp"

namespace qstab::cli {

/// Value written in the alpha-sweep column when the threshold is never
/// crossed within n_kicks.
inline constexpr std::int64_t kNeverCrossed = -1;

CsvTable run_fig1a(const ExperimentConfig& cfg);
CsvTable run_fig1b(const ExperimentConfig& cfg);
CsvTable run_fig2(const ExperimentConfig& cfg);
CsvTable run_osc(const ExperimentConfig& cfg);
CsvTable run_markov(const ExperimentConfig& cfg);
CsvTable run_alpha_sweep(const ExperimentConfig& cfg);
CsvTable run_bounds_table(const ExperimentConfig& cfg);

/// Dispatches on cfg.experiment.
CsvTable run_experiment(const ExperimentConfig& cfg);

}  // namespace qstab::cli
