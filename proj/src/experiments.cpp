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

#include "qstab/experiments.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qstab/dynamics.hpp"
#include "qstab/env.hpp"
#include "qstab/parallel.hpp"
#include "qstab/spin.hpp"

namespace qstab::cli {
namespace {

CsvTable new_table(const ExperimentConfig& cfg, std::vector<std::string> columns) {
  CsvTable t;
  t.header_comments.push_back(std::string("qstab ") + QSTAB_VERSION);
  t.header_comments.push_back("experiment = " + std::string(experiment_name(cfg.experiment)));
  for (const auto& [key, value] : describe(cfg)) t.header_comments.push_back(key + " = " + value);
  t.columns = std::move(columns);
  return t;
}

spin::KickedTopParams top_params(const ExperimentConfig& cfg) {
  spin::KickedTopParams params;
  params.j = spin::SpinJ::from_double(cfg.j);
  params.beta = cfg.beta;
  params.p = cfg.p;
  params.tau = cfg.tau;
  params.validate();
  return params;
}

StateVector initial_state(const ExperimentConfig& cfg) {
  return spin::spin_coherent_state(spin::SpinJ::from_double(cfg.j), cfg.theta, cfg.phi);
}

std::vector<Complex> to_complex(const std::vector<double>& xs) {
  return {xs.begin(), xs.end()};
}

std::int64_t as_cell(std::size_t n) { return static_cast<std::int64_t>(n); }

}  // namespace

CsvTable run_fig1a(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto params = top_params(cfg);
  const auto series =
      dynamics::perturbed_fidelity_series(params, cfg.epsilon, initial_state(cfg), cfg.n_kicks);
  CsvTable t = new_table(cfg, {"kick", "fidelity"});
  for (std::size_t n = 0; n < series.fidelity.size(); ++n) {
    t.add_row({as_cell(n), series.fidelity[n]});
  }
  t.footer_comments.push_back("min_fidelity = " + format_real(series.min_after_start()));
  return t;
}

CsvTable run_fig1b(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto params = top_params(cfg);
  std::vector<double> grid(cfg.grid);
  for (std::size_t i = 0; i < cfg.grid; ++i) {
    grid[i] = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(cfg.grid);
  }
  const auto scan = dynamics::min_fidelity_scan(params, cfg.epsilon, cfg.theta, grid, cfg.n_kicks);
  CsvTable t = new_table(cfg, {"phi", "min_fidelity"});
  std::size_t below = 0;
  for (const auto& pt : scan) {
    t.add_row({pt.phi, pt.min_fidelity});
    if (pt.min_fidelity < 0.1) ++below;
  }
  t.footer_comments.push_back("points_below_0.1 = " + std::to_string(below) + "/" +
                              std::to_string(scan.size()));
  return t;
}

CsvTable run_fig2(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto params = top_params(cfg);
  const auto qubit = env::QubitEnv::pure(cfg.alpha, cfg.beta, cfg.d);
  const auto qubit_prime = env::QubitEnv::pure(cfg.alpha, cfg.beta, cfg.d_prime);
  const auto series =
      dynamics::coupled_fidelity_series(qubit, qubit_prime, params, initial_state(cfg), cfg.n_kicks);
  const double bound = *series.bound;

  CsvTable t = new_table(cfg, {"kick", "fidelity", "bound"});
  for (std::size_t n = 0; n < series.fidelity.size(); ++n) {
    t.add_row({as_cell(n), series.fidelity[n], bound});
  }
  const auto spectrum = env::qubit_branches(qubit);
  t.footer_comments.push_back("min_fidelity = " + format_real(series.min_after_start()));
  t.footer_comments.push_back("pair_bound = " +
                              format_real(env::bound_qubit_pair(qubit.a(), qubit_prime.a())));
  t.footer_comments.push_back("beta_eff = " + format_real(env::effective_beta(spectrum)));
  t.footer_comments.push_back("std_beta_eff = " + format_real(env::std_beta(spectrum)));
  return t;
}

CsvTable run_osc(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto params = top_params(cfg);
  const env::OscillatorEnv osc(cfg.alpha, cfg.beta, to_complex(cfg.c));
  const env::OscillatorEnv osc_prime(cfg.alpha, cfg.beta, to_complex(cfg.c_prime));
  const auto result =
      dynamics::oscillator_fidelity_series(osc, osc_prime, params, initial_state(cfg), cfg.n_kicks);
  const double min_bound = *result.series.bound;

  CsvTable t = new_table(cfg, {"kick", "fidelity", "min_bound", "sum_reference"});
  for (std::size_t n = 0; n < result.series.fidelity.size(); ++n) {
    t.add_row({as_cell(n), result.series.fidelity[n], min_bound, result.sum_reference});
  }
  const auto spectrum = env::oscillator_branches(osc);
  t.footer_comments.push_back("min_fidelity = " + format_real(result.series.min_after_start()));
  t.footer_comments.push_back("beta_eff = " + format_real(env::effective_beta(spectrum)));
  t.footer_comments.push_back("std_beta_eff = " + format_real(env::std_beta(spectrum)));
  return t;
}

CsvTable run_markov(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto params = top_params(cfg);
  const StateVector psi0 = initial_state(cfg);
  const double a = cfg.d * cfg.d;
  const double a_prime = cfg.d_prime * cfg.d_prime;
  const auto markov =
      dynamics::markovian_fidelity_series(a, a_prime, params, cfg.alpha, psi0, cfg.n_kicks);
  const auto branch =
      dynamics::coupled_fidelity_series(cfg.d, cfg.d_prime, params, cfg.alpha, psi0, cfg.n_kicks);

  CsvTable t = new_table(cfg, {"kick", "markov_fidelity", "markov_bound", "nonmarkov_fidelity",
                               "nonmarkov_bound"});
  for (std::size_t n = 0; n <= cfg.n_kicks; ++n) {
    t.add_row({as_cell(n), markov.series.fidelity[n], markov.markov_bound[n], branch.fidelity[n],
               markov.nonmarkov_bound});
  }
  const auto crossing = markov.series.first_below(markov.nonmarkov_bound);
  t.footer_comments.push_back("first_kick_markov_below_nonmarkov_bound = " +
                              (crossing ? std::to_string(*crossing) : std::string("none")));
  t.footer_comments.push_back("min_nonmarkov_fidelity = " + format_real(branch.min_after_start()));
  return t;
}

CsvTable run_alpha_sweep(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto params = top_params(cfg);
  const StateVector psi0 = initial_state(cfg);
  std::vector<std::int64_t> first(cfg.alphas.size(), kNeverCrossed);
  parallel_for(cfg.alphas.size(), [&](std::size_t i) {
    const auto series =
        dynamics::coupled_fidelity_series(cfg.d, cfg.d_prime, params, cfg.alphas[i], psi0, cfg.n_kicks);
    if (const auto n = series.first_below(cfg.threshold)) first[i] = as_cell(*n);
  });
  CsvTable t = new_table(cfg, {"alpha", "first_kick_below"});
  for (std::size_t i = 0; i < cfg.alphas.size(); ++i) t.add_row({cfg.alphas[i], first[i]});
  t.footer_comments.push_back("never_crossed_sentinel = " + std::to_string(kNeverCrossed));
  return t;
}

CsvTable run_bounds_table(const ExperimentConfig& cfg) {
  validate(cfg);
  const int steps = static_cast<int>(cfg.n_kicks);
  CsvTable t = new_table(cfg, {"a", "a_prime", "pair_bound", "worstcase_bound", "markov_n_bound"});
  const double last = static_cast<double>(cfg.grid - 1);
  for (std::size_t i = 0; i < cfg.grid; ++i) {
    const double a = static_cast<double>(i) / last;
    for (std::size_t k = 0; k < cfg.grid; ++k) {
      const double a_prime = static_cast<double>(k) / last;
      t.add_row({a, a_prime, env::bound_qubit_pair(a, a_prime), env::bound_qubit_worstcase(a),
                 env::bound_markovian(a, a_prime, steps)});
    }
  }
  t.footer_comments.push_back("markov_steps = " + std::to_string(steps));
  return t;
}

CsvTable run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::kFig1a: return run_fig1a(cfg);
    case Experiment::kFig1b: return run_fig1b(cfg);
    case Experiment::kFig2: return run_fig2(cfg);
    case Experiment::kOsc: return run_osc(cfg);
    case Experiment::kMarkov: return run_markov(cfg);
    case Experiment::kAlphaSweep: return run_alpha_sweep(cfg);
    case Experiment::kBoundsTable: return run_bounds_table(cfg);
  }
  throw ValidationError("unknown experiment");
}

}  // namespace qstab::cli
