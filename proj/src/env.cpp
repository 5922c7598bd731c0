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

#include "qstab/env.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qstab::env {
namespace {

constexpr double kWeightSumTol = 1e-12;
// |b|^2 <= a(1-a) is checked with this slack so that states built from
// amplitudes (b = d sqrt(1-|d|^2)) are accepted despite rounding.
constexpr double kCoherenceSlack = 1e-12;

void require_population(double a, const char* name) {
  if (!std::isfinite(a) || a < 0.0 || a > 1.0) {
    std::ostringstream msg;
    msg << name << " must lie in [0, 1] (got " << a << ")";
    throw ValidationError(msg.str());
  }
}

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) {
    std::ostringstream msg;
    msg << name << " must be finite";
    throw ValidationError(msg.str());
  }
}

double norm_sq(const std::vector<Complex>& c) {
  double s = 0.0;
  for (const auto& x : c) s += std::norm(x);
  return s;
}

void require_normalized(const std::vector<Complex>& c, const char* name) {
  if (c.empty()) {
    std::ostringstream msg;
    msg << name << ": amplitude list is empty";
    throw ValidationError(msg.str());
  }
  for (const auto& x : c) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      std::ostringstream msg;
      msg << name << ": non-finite amplitude";
      throw ValidationError(msg.str());
    }
  }
  const double s = norm_sq(c);
  if (std::abs(s - 1.0) > kWeightSumTol) {
    std::ostringstream msg;
    msg << name << ": amplitudes are not normalized (sum |c_k|^2 = " << s << ")";
    throw ValidationError(msg.str());
  }
}

}  // namespace

BranchSpectrum::BranchSpectrum(std::vector<Branch> branches) : branches_(std::move(branches)) {
  if (branches_.empty()) throw ValidationError("BranchSpectrum: no branches");
  double total = 0.0;
  for (const auto& br : branches_) {
    if (!std::isfinite(br.lambda) || !std::isfinite(br.weight)) {
      throw ValidationError("BranchSpectrum: non-finite entry");
    }
    if (br.weight < 0.0) {
      std::ostringstream msg;
      msg << "BranchSpectrum: negative weight " << br.weight;
      throw ValidationError(msg.str());
    }
    total += br.weight;
  }
  if (std::abs(total - 1.0) > kWeightSumTol) {
    std::ostringstream msg;
    msg << "BranchSpectrum: weights sum to " << total << ", not 1";
    throw ValidationError(msg.str());
  }
}

QubitEnv::QubitEnv(double alpha, double beta, double a, Complex b)
    : alpha_(alpha), beta_(beta), a_(a), b_(b) {
  require_finite(alpha, "alpha");
  require_finite(beta, "beta");
  require_population(a, "qubit population a");
  if (!std::isfinite(b.real()) || !std::isfinite(b.imag())) {
    throw ValidationError("qubit coherence b must be finite");
  }
  if (std::norm(b) > a * (1.0 - a) + kCoherenceSlack) {
    std::ostringstream msg;
    msg << "qubit state is not positive semidefinite: |b|^2 = " << std::norm(b)
        << " exceeds a(1-a) = " << a * (1.0 - a);
    throw ValidationError(msg.str());
  }
}

QubitEnv QubitEnv::pure(double alpha, double beta, Complex d) {
  const double a = std::norm(d);
  if (!std::isfinite(a) || a > 1.0 + kWeightSumTol) {
    std::ostringstream msg;
    msg << "qubit amplitude must satisfy |d| <= 1 (got |d| = " << std::abs(d) << ")";
    throw ValidationError(msg.str());
  }
  const double pop = std::min(a, 1.0);
  const double rest = std::sqrt(1.0 - pop);
  return QubitEnv(alpha, beta, pop, d * rest);
}

ComplexMatrix QubitEnv::density() const {
  ComplexMatrix rho(2, 2);
  rho << a_, b_, std::conj(b_), 1.0 - a_;
  return rho;
}

OscillatorEnv::OscillatorEnv(double alpha, double beta, std::vector<Complex> amplitudes)
    : alpha_(alpha), beta_(beta), c_(std::move(amplitudes)) {
  require_finite(alpha, "alpha");
  require_finite(beta, "beta");
  require_normalized(c_, "OscillatorEnv");
}

OscillatorEnv OscillatorEnv::equal_superposition(double alpha, double beta, std::size_t l) {
  if (l == 0) throw ValidationError("OscillatorEnv: need at least one level");
  return OscillatorEnv(alpha, beta,
                       std::vector<Complex>(l, Complex(1.0 / std::sqrt(static_cast<double>(l)))));
}

BranchSpectrum qubit_branches(const QubitEnv& env) {
  return BranchSpectrum({{env.beta() + env.alpha(), env.a()},
                         {env.beta() - env.alpha(), 1.0 - env.a()}});
}

BranchSpectrum oscillator_branches(const OscillatorEnv& env) {
  std::vector<Branch> out;
  out.reserve(env.levels());
  for (std::size_t k = 0; k < env.levels(); ++k) {
    out.push_back({env.beta() + env.alpha() * (static_cast<double>(k) + 0.5),
                   std::norm(env.amplitudes()[k])});
  }
  return BranchSpectrum(std::move(out));
}

double effective_beta(const BranchSpectrum& spectrum) {
  double mean = 0.0;
  for (const auto& br : spectrum.branches()) mean += br.weight * br.lambda;
  return mean;
}

double std_beta(const BranchSpectrum& spectrum) {
  // Central second moment; equal to <l^2> - <l>^2 but without the
  // cancellation when the spread is small against the mean.
  const double mean = effective_beta(spectrum);
  double var = 0.0;
  for (const auto& br : spectrum.branches()) {
    const double dev = br.lambda - mean;
    var += br.weight * dev * dev;
  }
  return std::sqrt(std::max(var, 0.0));
}

double bound_qubit_pair(double a, double a_prime) {
  require_population(a, "a");
  require_population(a_prime, "a'");
  const double value = std::sqrt(a * a_prime) + std::sqrt((1.0 - a) * (1.0 - a_prime));
  return std::min(value, 1.0);
}

double bound_qubit_worstcase(double a) {
  require_population(a, "a");
  return std::min(std::sqrt(a), std::sqrt(1.0 - a));
}

OscillatorBound bound_oscillator(const std::vector<Complex>& c,
                                 const std::vector<Complex>& c_prime) {
  if (c.size() != c_prime.size()) {
    std::ostringstream msg;
    msg << "bound_oscillator: amplitude lists differ in length (" << c.size() << " vs "
        << c_prime.size() << ")";
    throw ValidationError(msg.str());
  }
  require_normalized(c, "bound_oscillator c");
  require_normalized(c_prime, "bound_oscillator c'");
  OscillatorBound out{0.0, INFINITY};
  for (std::size_t k = 0; k < c.size(); ++k) {
    out.sum_bound += std::abs(c[k]) * std::abs(c_prime[k]);
    out.min_bound = std::min(out.min_bound, std::abs(c[k]));
  }
  out.sum_bound = std::min(out.sum_bound, 1.0);
  return out;
}

double bound_markovian(double a, double a_prime, int n) {
  if (n < 1) {
    std::ostringstream msg;
    msg << "bound_markovian: step count must be >= 1 (got " << n << ")";
    throw ValidationError(msg.str());
  }
  return std::pow(bound_qubit_pair(a, a_prime), n);
}

}  // namespace qstab::env
