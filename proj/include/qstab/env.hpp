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
 * Environments that carry a quantized control parameter.
 *
 * The system Hamiltonian couples as H_env (x) H_sys. If the environment
 * starts in a state with populations w_k over eigenvalues lambda_k of
 * H_env, the system's reduced state is the mixture sum_k w_k |psi_k><psi_k|
 * where psi_k evolves with the control parameter set to lambda_k. That
 * (lambda_k, w_k) list is a BranchSpectrum; both environment models reduce
 * to one.
 *
 * This header also holds the closed-form fidelity lower bounds those
 * mixtures obey.
 */

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qstab/numkit.hpp"

namespace qstab::env {

struct Branch {
  double lambda;  // effective control-parameter value
  double weight;
};

class BranchSpectrum {
 public:
  /// Throws ValidationError on negative weights or weights not summing to 1
  /// within 1e-12.
  explicit BranchSpectrum(std::vector<Branch> branches);

  const std::vector<Branch>& branches() const { return branches_; }
  std::size_t size() const { return branches_.size(); }

 private:
  std::vector<Branch> branches_;
};

/// Qubit with H = alpha sz + beta 1, state [[a, b], [b*, 1-a]].
class QubitEnv {
 public:
  QubitEnv(double alpha, double beta, double a, Complex b = 0.0);

  /// Pure state d|0> + sqrt(1 - |d|^2)|1>.
  static QubitEnv pure(double alpha, double beta, Complex d);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double a() const { return a_; }
  Complex b() const { return b_; }

  ComplexMatrix density() const;

 private:
  double alpha_;
  double beta_;
  double a_;
  Complex b_;
};

/// Truncated oscillator with H = beta 1 + alpha (n + 1/2), pure state
/// sum_k c_k |k>.
class OscillatorEnv {
 public:
  OscillatorEnv(double alpha, double beta, std::vector<Complex> amplitudes);

  /// Equal superposition over the first l levels.
  static OscillatorEnv equal_superposition(double alpha, double beta, std::size_t l);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  const std::vector<Complex>& amplitudes() const { return c_; }
  std::size_t levels() const { return c_.size(); }

 private:
  double alpha_;
  double beta_;
  std::vector<Complex> c_;
};

/// (beta + alpha, a), (beta - alpha, 1 - a). Does not depend on b.
BranchSpectrum qubit_branches(const QubitEnv& env);

/// (beta + alpha (k + 1/2), |c_k|^2) for k = 0..l-1.
BranchSpectrum oscillator_branches(const OscillatorEnv& env);

/// <H_env> = sum_k w_k lambda_k.
double effective_beta(const BranchSpectrum& spectrum);

/// Standard deviation of H_env in the environment state.
double std_beta(const BranchSpectrum& spectrum);

// Closed-form fidelity bounds -------------------------------------------

/// sqrt(a a') + sqrt((1-a)(1-a')), the concavity bound for two qubit
/// environments with populations a and a'.
double bound_qubit_pair(double a, double a_prime);

/// min(sqrt a, sqrt(1-a)); holds for every a'. Peaks at 1/sqrt(2) for a = 1/2.
double bound_qubit_worstcase(double a);

struct OscillatorBound {
  double sum_bound;  // sum_k |c_k| |c'_k|
  double min_bound;  // min_k |c_k|
};

OscillatorBound bound_oscillator(const std::vector<Complex>& c,
                                 const std::vector<Complex>& c_prime);

/// bound_qubit_pair(a, a')^n: what survives if the same mixture is
/// re-sampled at each of n steps.
double bound_markovian(double a, double a_prime, int n);

}  // namespace qstab::env
