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

/*
 * Time evolution of the kicked top and the fidelity series built on it.
 *
 * Three evolution paths live here:
 *
 *   - pure-state evolution at two nearby beta values (classical
 *     perturbation of the control parameter),
 *   - branch evolution: one pure state per environment eigenvalue, mixed
 *     with the environment populations (quantized control parameter),
 *   - dense density-matrix evolution, either of the full qubit + top space
 *     (cross-check for the branch path) or of the per-kick resampled
 *     mixed-unitary channel (Markovian comparison).
 *
 * Every series is indexed by kick number 0..n, with index 0 the shared
 * initial state.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qstab/env.hpp"
#include "qstab/numkit.hpp"
#include "qstab/spin.hpp"

namespace qstab::dynamics {

struct FidelitySeries {
  std::vector<double> fidelity;  // fidelity[n] after n kicks
  std::optional<double> bound;   // constant lower bound, if one applies
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t kicks() const { return fidelity.empty() ? 0 : fidelity.size() - 1; }
  /// Minimum over kicks 1..n (kick 0 when n = 0).
  double min_after_start() const;
  /// First kick n >= 1 with fidelity[n] < threshold.
  std::optional<std::size_t> first_below(double threshold) const;
};

struct WeightedState {
  double weight;
  StateVector state;
};

/// Mixture sum_k w_k |psi_k><psi_k| kept in factored form.
class BranchEnsemble {
 public:
  /// Weights nonnegative summing to 1 within 1e-12; all states the same dim.
  explicit BranchEnsemble(std::vector<WeightedState> branches);

  const std::vector<WeightedState>& branches() const { return branches_; }
  std::size_t dim() const { return branches_.front().state.dim(); }

  DensityMatrix reduced_state() const;

  /// Same states, different weights (e.g. a second environment state over
  /// the same environment spectrum).
  BranchEnsemble reweighted(const std::vector<double>& weights) const;

 private:
  std::vector<WeightedState> branches_;
};

/// Uhlmann fidelity of two mixtures, evaluated on the span of their branch
/// vectors. Exact; cost depends on the number of branches, not on dim.
double ensemble_fidelity(const BranchEnsemble& lhs, const BranchEnsemble& rhs);

/// Same value via full reduced density matrices (reference path).
double ensemble_fidelity_dense(const BranchEnsemble& lhs, const BranchEnsemble& rhs);

/// Steps every branch of a spectrum through the kicked top, branch k with
/// beta replaced by lambda_k.
class BranchPropagator {
 public:
  BranchPropagator(const env::BranchSpectrum& spectrum, const spin::KickedTopParams& params,
                   const StateVector& psi0);

  const BranchEnsemble& current() const { return ensemble_; }
  std::size_t kick() const { return kick_; }
  void step();

 private:
  std::vector<ComplexMatrix> unitaries_;
  BranchEnsemble ensemble_;
  std::size_t kick_ = 0;
};

/// Ensembles after 0..n_kicks kicks.
std::vector<BranchEnsemble> evolve_branches(const env::BranchSpectrum& spectrum,
                                            const spin::KickedTopParams& params,
                                            const StateVector& psi0, std::size_t n_kicks);

/// Reduced top states from dense evolution of (rho_qubit (x) |psi0><psi0|)
/// under coupled_kick_unitary; kicks 0..n_kicks.
std::vector<DensityMatrix> coupled_space_reduced_states(const env::QubitEnv& qubit,
                                                        const spin::KickedTopParams& params,
                                                        const StateVector& psi0,
                                                        std::size_t n_kicks);

/// |<psi0| (U^dagger)^n (U_eps)^n |psi0>| with U at beta and U_eps at
/// beta + epsilon. No bound.
FidelitySeries perturbed_fidelity_series(const spin::KickedTopParams& params, double epsilon,
                                         const StateVector& psi0, std::size_t n_kicks);

struct ScanPoint {
  double phi;
  double min_fidelity;
};

/// For each phi, the minimum of perturbed_fidelity_series over kicks
/// 1..n_kicks starting from |theta, phi>. Grid points run in parallel;
/// output order follows phi_grid.
std::vector<ScanPoint> min_fidelity_scan(const spin::KickedTopParams& params, double epsilon,
                                         double theta, const std::vector<double>& phi_grid,
                                         std::size_t n_kicks);

/// Fidelity of the reduced top states for two qubit environments sharing
/// alpha and beta. The environment's beta replaces params.beta. Bound is
/// min(sqrt a, sqrt(1 - a)) of the first environment.
FidelitySeries coupled_fidelity_series(const env::QubitEnv& qubit,
                                       const env::QubitEnv& qubit_prime,
                                       const spin::KickedTopParams& params,
                                       const StateVector& psi0, std::size_t n_kicks);

/// Pure qubit environments d|0> + sqrt(1-|d|^2)|1>, with beta = params.beta.
FidelitySeries coupled_fidelity_series(Complex d, Complex d_prime,
                                       const spin::KickedTopParams& params, double alpha,
                                       const StateVector& psi0, std::size_t n_kicks);

struct OscillatorSeries {
  FidelitySeries series;         // bound = min_k |c_k|
  double sum_reference;          // sum_k |c_k| |c'_k|
  std::vector<double> deviation; // fidelity[n] - sum_reference
};

OscillatorSeries oscillator_fidelity_series(const env::OscillatorEnv& osc,
                                            const env::OscillatorEnv& osc_prime,
                                            const spin::KickedTopParams& params,
                                            const StateVector& psi0, std::size_t n_kicks);

struct MarkovianSeries {
  FidelitySeries series;              // iterated-channel fidelity
  std::vector<double> markov_bound;   // bound_markovian(a, a', n); 1 at n = 0
  double nonmarkov_bound;             // bound_qubit_pair(a, a')
};

/// Both states evolve under rho -> a U+ rho U+^dagger + (1 - a) U- rho U-^dagger
/// (resp. a'), applied afresh each kick, with U+- the top at beta +- alpha.
MarkovianSeries markovian_fidelity_series(double a, double a_prime,
                                          const spin::KickedTopParams& params, double alpha,
                                          const StateVector& psi0, std::size_t n_kicks);

}  // namespace qstab::dynamics
