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

#include "qstab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qstab/parallel.hpp"

namespace qstab::dynamics {
namespace {

constexpr double kWeightSumTol = 1e-12;

std::string fmt_num(double x) {
  std::ostringstream out;
  out.precision(12);
  out << x;
  return out.str();
}

void require_dim(const spin::KickedTopParams& params, const StateVector& psi0,
                 const char* where) {
  if (psi0.dim() != params.j.dim()) {
    std::ostringstream msg;
    msg << where << ": initial state has dimension " << psi0.dim() << " but spin j = "
        << params.j.value() << " needs " << params.j.dim();
    throw ValidationError(msg.str());
  }
}

void add_top_metadata(FidelitySeries& s, const spin::KickedTopParams& params) {
  s.metadata.emplace_back("j", fmt_num(params.j.value()));
  s.metadata.emplace_back("beta", fmt_num(params.beta));
  s.metadata.emplace_back("p", fmt_num(params.p));
  s.metadata.emplace_back("tau", fmt_num(params.tau));
}

}  // namespace

double FidelitySeries::min_after_start() const {
  if (fidelity.empty()) throw ValidationError("FidelitySeries: empty series");
  if (fidelity.size() == 1) return fidelity.front();
  return *std::min_element(fidelity.begin() + 1, fidelity.end());
}

std::optional<std::size_t> FidelitySeries::first_below(double threshold) const {
  for (std::size_t n = 1; n < fidelity.size(); ++n) {
    if (fidelity[n] < threshold) return n;
  }
  return std::nullopt;
}

BranchEnsemble::BranchEnsemble(std::vector<WeightedState> branches)
    : branches_(std::move(branches)) {
  if (branches_.empty()) throw ValidationError("BranchEnsemble: no branches");
  double total = 0.0;
  for (const auto& br : branches_) {
    if (!std::isfinite(br.weight) || br.weight < 0.0) {
      throw ValidationError("BranchEnsemble: weights must be finite and nonnegative");
    }
    if (br.state.dim() != branches_.front().state.dim()) {
      throw ValidationError("BranchEnsemble: branch states differ in dimension");
    }
    total += br.weight;
  }
  if (std::abs(total - 1.0) > kWeightSumTol) {
    std::ostringstream msg;
    msg << "BranchEnsemble: weights sum to " << total << ", not 1";
    throw ValidationError(msg.str());
  }
}

DensityMatrix BranchEnsemble::reduced_state() const {
  const auto n = static_cast<Eigen::Index>(dim());
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (const auto& br : branches_) {
    const ComplexVector& v = br.state.amplitudes();
    rho.noalias() += br.weight * (v * v.adjoint());
  }
  return DensityMatrix(std::move(rho));
}

BranchEnsemble BranchEnsemble::reweighted(const std::vector<double>& weights) const {
  if (weights.size() != branches_.size()) {
    throw ValidationError("BranchEnsemble::reweighted: weight count does not match branches");
  }
  std::vector<WeightedState> out;
  out.reserve(branches_.size());
  for (std::size_t k = 0; k < branches_.size(); ++k) {
    out.push_back({weights[k], branches_[k].state});
  }
  return BranchEnsemble(std::move(out));
}

double ensemble_fidelity(const BranchEnsemble& lhs, const BranchEnsemble& rhs) {
  if (lhs.dim() != rhs.dim()) {
    throw ValidationError("ensemble_fidelity: ensembles act on different dimensions");
  }
  // Stack the populated branch vectors as columns of A. With the Gram matrix
  // G = A^dagger A = V L V^dagger, B = L^{1/2} V^dagger satisfies A = Q B for
  // an isometry Q, so both mixtures A W A^dagger are isometric images of the
  // small matrices B W B^dagger and have the same fidelity.
  std::vector<const ComplexVector*> columns;
  std::vector<double> w_lhs;
  std::vector<double> w_rhs;
  for (const auto& br : lhs.branches()) {
    if (br.weight > 0.0) {
      columns.push_back(&br.state.amplitudes());
      w_lhs.push_back(br.weight);
      w_rhs.push_back(0.0);
    }
  }
  for (const auto& br : rhs.branches()) {
    if (br.weight > 0.0) {
      columns.push_back(&br.state.amplitudes());
      w_lhs.push_back(0.0);
      w_rhs.push_back(br.weight);
    }
  }
  const auto m = static_cast<Eigen::Index>(columns.size());
  ComplexMatrix a(static_cast<Eigen::Index>(lhs.dim()), m);
  for (Eigen::Index k = 0; k < m; ++k) a.col(k) = *columns[static_cast<std::size_t>(k)];

  const ComplexMatrix gram = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver((gram + gram.adjoint()) * 0.5);
  const RealVector roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix b = roots.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();

  auto project = [&](const std::vector<double>& w) {
    RealVector wv = Eigen::Map<const RealVector>(w.data(), m);
    ComplexMatrix small = b * wv.cast<Complex>().asDiagonal() * b.adjoint();
    // Unit trace holds analytically (sum_k w_k |psi_k|^2 = 1); rescale
    // away the rounding in the Gram entries.
    small /= small.trace().real();
    return DensityMatrix(std::move(small));
  };
  return numkit::uhlmann_fidelity(project(w_lhs), project(w_rhs));
}

double ensemble_fidelity_dense(const BranchEnsemble& lhs, const BranchEnsemble& rhs) {
  return numkit::uhlmann_fidelity(lhs.reduced_state(), rhs.reduced_state());
}

namespace {

BranchEnsemble initial_ensemble(const env::BranchSpectrum& spectrum, const StateVector& psi0) {
  std::vector<WeightedState> out;
  out.reserve(spectrum.size());
  for (const auto& br : spectrum.branches()) out.push_back({br.weight, psi0});
  return BranchEnsemble(std::move(out));
}

}  // namespace

BranchPropagator::BranchPropagator(const env::BranchSpectrum& spectrum,
                                   const spin::KickedTopParams& params, const StateVector& psi0)
    : ensemble_(initial_ensemble(spectrum, psi0)) {
  require_dim(params, psi0, "BranchPropagator");
  unitaries_.reserve(spectrum.size());
  for (const auto& br : spectrum.branches()) {
    unitaries_.push_back(spin::kicked_top_unitary(params.with_beta(br.lambda)));
  }
}

void BranchPropagator::step() {
  std::vector<WeightedState> next;
  next.reserve(unitaries_.size());
  const auto& current = ensemble_.branches();
  for (std::size_t k = 0; k < unitaries_.size(); ++k) {
    next.push_back({current[k].weight, current[k].state.evolved(unitaries_[k])});
  }
  ensemble_ = BranchEnsemble(std::move(next));
  ++kick_;
}

std::vector<BranchEnsemble> evolve_branches(const env::BranchSpectrum& spectrum,
                                            const spin::KickedTopParams& params,
                                            const StateVector& psi0, std::size_t n_kicks) {
  BranchPropagator prop(spectrum, params, psi0);
  std::vector<BranchEnsemble> out;
  out.reserve(n_kicks + 1);
  out.push_back(prop.current());
  for (std::size_t n = 0; n < n_kicks; ++n) {
    prop.step();
    out.push_back(prop.current());
  }
  return out;
}

std::vector<DensityMatrix> coupled_space_reduced_states(const env::QubitEnv& qubit,
                                                        const spin::KickedTopParams& params,
                                                        const StateVector& psi0,
                                                        std::size_t n_kicks) {
  require_dim(params, psi0, "coupled_space_reduced_states");
  const std::size_t dim_top = params.j.dim();
  // H_env = alpha sz + beta 1, so the top sees beta from the environment.
  const ComplexMatrix u = spin::coupled_kick_unitary(params.with_beta(qubit.beta()), qubit.alpha());
  const ComplexVector& v = psi0.amplitudes();
  ComplexMatrix rho = numkit::kron(qubit.density(), v * v.adjoint());

  std::vector<DensityMatrix> out;
  out.reserve(n_kicks + 1);
  out.push_back(numkit::partial_trace_first(DensityMatrix(rho), 2, dim_top));
  for (std::size_t n = 0; n < n_kicks; ++n) {
    rho = u * rho * u.adjoint();
    out.push_back(numkit::partial_trace_first(DensityMatrix(rho), 2, dim_top));
  }
  return out;
}

FidelitySeries perturbed_fidelity_series(const spin::KickedTopParams& params, double epsilon,
                                         const StateVector& psi0, std::size_t n_kicks) {
  require_dim(params, psi0, "perturbed_fidelity_series");
  if (!std::isfinite(epsilon)) throw ValidationError("perturbed_fidelity_series: epsilon must be finite");
  const ComplexMatrix u = spin::kicked_top_unitary(params);
  const ComplexMatrix u_eps = spin::kicked_top_unitary(params.with_beta(params.beta + epsilon));

  FidelitySeries s;
  add_top_metadata(s, params);
  s.metadata.emplace_back("epsilon", fmt_num(epsilon));
  s.fidelity.reserve(n_kicks + 1);
  s.fidelity.push_back(1.0);
  StateVector psi = psi0;
  StateVector psi_eps = psi0;
  for (std::size_t n = 0; n < n_kicks; ++n) {
    psi = psi.evolved(u);
    psi_eps = psi_eps.evolved(u_eps);
    s.fidelity.push_back(std::abs(psi.inner(psi_eps)));
  }
  return s;
}

std::vector<ScanPoint> min_fidelity_scan(const spin::KickedTopParams& params, double epsilon,
                                         double theta, const std::vector<double>& phi_grid,
                                         std::size_t n_kicks) {
  if (n_kicks < 1) throw ValidationError("min_fidelity_scan: need at least one kick");
  params.validate();
  // Warm the shared operator cache before fanning out.
  (void)spin::cached_spin_operators(params.j);
  std::vector<ScanPoint> out(phi_grid.size());
  parallel_for(phi_grid.size(), [&](std::size_t i) {
    const StateVector psi0 = spin::spin_coherent_state(params.j, theta, phi_grid[i]);
    out[i] = {phi_grid[i], perturbed_fidelity_series(params, epsilon, psi0, n_kicks).min_after_start()};
  });
  return out;
}

FidelitySeries coupled_fidelity_series(const env::QubitEnv& qubit,
                                       const env::QubitEnv& qubit_prime,
                                       const spin::KickedTopParams& params,
                                       const StateVector& psi0, std::size_t n_kicks) {
  if (qubit.alpha() != qubit_prime.alpha() || qubit.beta() != qubit_prime.beta()) {
    throw ValidationError(
        "coupled_fidelity_series: both environments must share the same alpha and beta");
  }
  BranchPropagator prop(env::qubit_branches(qubit), params, psi0);
  const std::vector<double> weights_prime{qubit_prime.a(), 1.0 - qubit_prime.a()};

  FidelitySeries s;
  s.bound = env::bound_qubit_worstcase(qubit.a());
  add_top_metadata(s, params);
  s.metadata.emplace_back("alpha", fmt_num(qubit.alpha()));
  s.metadata.emplace_back("env_beta", fmt_num(qubit.beta()));
  s.metadata.emplace_back("a", fmt_num(qubit.a()));
  s.metadata.emplace_back("a_prime", fmt_num(qubit_prime.a()));
  s.metadata.emplace_back("pair_bound", fmt_num(env::bound_qubit_pair(qubit.a(), qubit_prime.a())));
  s.fidelity.reserve(n_kicks + 1);
  for (std::size_t n = 0; n <= n_kicks; ++n) {
    if (n > 0) prop.step();
    const BranchEnsemble& e = prop.current();
    s.fidelity.push_back(ensemble_fidelity(e, e.reweighted(weights_prime)));
  }
  return s;
}

FidelitySeries coupled_fidelity_series(Complex d, Complex d_prime,
                                       const spin::KickedTopParams& params, double alpha,
                                       const StateVector& psi0, std::size_t n_kicks) {
  return coupled_fidelity_series(env::QubitEnv::pure(alpha, params.beta, d),
                                 env::QubitEnv::pure(alpha, params.beta, d_prime), params, psi0,
                                 n_kicks);
}

OscillatorSeries oscillator_fidelity_series(const env::OscillatorEnv& osc,
                                            const env::OscillatorEnv& osc_prime,
                                            const spin::KickedTopParams& params,
                                            const StateVector& psi0, std::size_t n_kicks) {
  if (osc.levels() != osc_prime.levels()) {
    throw ValidationError("oscillator_fidelity_series: environments differ in number of levels");
  }
  if (osc.alpha() != osc_prime.alpha() || osc.beta() != osc_prime.beta()) {
    throw ValidationError(
        "oscillator_fidelity_series: both environments must share the same alpha and beta");
  }
  const env::OscillatorBound bound = env::bound_oscillator(osc.amplitudes(), osc_prime.amplitudes());
  BranchPropagator prop(env::oscillator_branches(osc), params, psi0);
  std::vector<double> weights_prime;
  const env::BranchSpectrum spectrum_prime = env::oscillator_branches(osc_prime);
  for (const auto& br : spectrum_prime.branches()) {
    weights_prime.push_back(br.weight);
  }

  OscillatorSeries out;
  out.sum_reference = bound.sum_bound;
  out.series.bound = bound.min_bound;
  add_top_metadata(out.series, params);
  out.series.metadata.emplace_back("alpha", fmt_num(osc.alpha()));
  out.series.metadata.emplace_back("levels", std::to_string(osc.levels()));
  out.series.metadata.emplace_back("sum_reference", fmt_num(bound.sum_bound));
  for (std::size_t n = 0; n <= n_kicks; ++n) {
    if (n > 0) prop.step();
    const BranchEnsemble& e = prop.current();
    const double f = ensemble_fidelity(e, e.reweighted(weights_prime));
    out.series.fidelity.push_back(f);
    out.deviation.push_back(f - bound.sum_bound);
  }
  return out;
}

MarkovianSeries markovian_fidelity_series(double a, double a_prime,
                                          const spin::KickedTopParams& params, double alpha,
                                          const StateVector& psi0, std::size_t n_kicks) {
  require_dim(params, psi0, "markovian_fidelity_series");
  const double pair = env::bound_qubit_pair(a, a_prime);  // validates a, a'
  const ComplexMatrix u_plus = spin::kicked_top_unitary(params.with_beta(params.beta + alpha));
  const ComplexMatrix u_minus = spin::kicked_top_unitary(params.with_beta(params.beta - alpha));

  auto channel = [&](const ComplexMatrix& rho, double w) -> ComplexMatrix {
    ComplexMatrix next =
        w * (u_plus * rho * u_plus.adjoint()) + (1.0 - w) * (u_minus * rho * u_minus.adjoint());
    return (next + next.adjoint()) * 0.5;
  };

  MarkovianSeries out;
  out.nonmarkov_bound = pair;
  add_top_metadata(out.series, params);
  out.series.metadata.emplace_back("alpha", fmt_num(alpha));
  out.series.metadata.emplace_back("a", fmt_num(a));
  out.series.metadata.emplace_back("a_prime", fmt_num(a_prime));

  const ComplexVector& v = psi0.amplitudes();
  ComplexMatrix rho = v * v.adjoint();
  ComplexMatrix rho_prime = rho;
  out.series.fidelity.push_back(1.0);
  out.markov_bound.push_back(1.0);
  for (std::size_t n = 1; n <= n_kicks; ++n) {
    rho = channel(rho, a);
    rho_prime = channel(rho_prime, a_prime);
    // Constructing DensityMatrix re-checks Hermiticity, trace and PSD each kick.
    out.series.fidelity.push_back(
        numkit::uhlmann_fidelity(DensityMatrix(rho), DensityMatrix(rho_prime)));
    out.markov_bound.push_back(env::bound_markovian(a, a_prime, static_cast<int>(n)));
  }
  return out;
}

}  // namespace qstab::dynamics
