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

#include "qstab/spin.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace qstab::spin {

SpinJ SpinJ::from_twice(int two_j) {
  if (two_j < 1) {
    std::ostringstream msg;
    msg << "spin j must be at least 1/2 (got 2j = " << two_j << ")";
    throw ValidationError(msg.str());
  }
  return SpinJ(two_j);
}

SpinJ SpinJ::from_double(double j) {
  if (!std::isfinite(j)) throw ValidationError("spin j is not finite");
  const double twice = 2.0 * j;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-9 || rounded < 1.0) {
    std::ostringstream msg;
    msg << "spin j must be a positive half-integer (got " << j << ")";
    throw ValidationError(msg.str());
  }
  return SpinJ(static_cast<int>(rounded));
}

ComplexMatrix SpinOperators::raising() const { return jx + Complex(0.0, 1.0) * jy; }

ComplexMatrix SpinOperators::casimir() const { return jx * jx + jy * jy + jz * jz; }

SpinOperators build_spin_operators(SpinJ j) {
  const auto n = static_cast<Eigen::Index>(j.dim());
  const double jj = j.value();

  // <m+1|J+|m> = sqrt(j(j+1) - m(m+1)); row i holds m = j - i, so J+ sits on
  // the superdiagonal.
  ComplexMatrix jplus = ComplexMatrix::Zero(n, n);
  ComplexMatrix jz = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m = j.m(static_cast<std::size_t>(i));
    jz(i, i) = m;
    if (i > 0) jplus(i - 1, i) = std::sqrt(jj * (jj + 1.0) - m * (m + 1.0));
  }
  const ComplexMatrix jminus = jplus.adjoint();
  SpinOperators ops{j, (jplus + jminus) * 0.5, (jplus - jminus) * Complex(0.0, -0.5), jz};
  return ops;
}

SpinOperators build_spin_operators(double j) { return build_spin_operators(SpinJ::from_double(j)); }

std::shared_ptr<const SpinOperators> cached_spin_operators(SpinJ j) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const SpinOperators>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[j.twice()];
  if (!slot) slot = std::make_shared<const SpinOperators>(build_spin_operators(j));
  return slot;
}

StateVector spin_coherent_state(SpinJ j, double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw ValidationError("spin_coherent_state: angles must be finite");
  }
  const auto ops = cached_spin_operators(j);
  const ComplexMatrix generator = ops->jx * std::sin(phi) - ops->jy * std::cos(phi);
  // exp(i theta G) = unitary_exp(G, -theta)
  const ComplexMatrix rotation = numkit::unitary_exp(generator, -theta);
  return StateVector::normalized(rotation.col(0));
}

void KickedTopParams::validate() const {
  if (!std::isfinite(beta) || !std::isfinite(p) || !std::isfinite(tau)) {
    throw ValidationError("kicked top parameters must be finite");
  }
  if (!(tau > 0.0)) {
    std::ostringstream msg;
    msg << "kick period tau must be positive (got " << tau << ")";
    throw ValidationError(msg.str());
  }
}

ComplexMatrix kick_rotation(const KickedTopParams& params) {
  params.validate();
  const auto ops = cached_spin_operators(params.j);
  ComplexMatrix r = numkit::unitary_exp(ops->jy, params.p);
  // Jy is purely imaginary, so exp(-i p Jy) is real; drop the round-off part.
  return r.real().cast<Complex>();
}

ComplexVector torsion_phases(const KickedTopParams& params) {
  params.validate();
  const auto n = static_cast<Eigen::Index>(params.j.dim());
  const double scale = params.beta / (2.0 * params.j.value() * params.tau);
  ComplexVector phases(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m = params.j.m(static_cast<std::size_t>(i));
    phases(i) = std::polar(1.0, -scale * m * m);
  }
  return phases;
}

ComplexMatrix kicked_top_unitary(const KickedTopParams& params) {
  return torsion_phases(params).asDiagonal() * kick_rotation(params);
}

ComplexMatrix coupled_kick_unitary(const KickedTopParams& params, double alpha) {
  if (!std::isfinite(alpha)) throw ValidationError("coupled_kick_unitary: alpha must be finite");
  const ComplexMatrix rotation = kick_rotation(params);
  const ComplexVector upper = torsion_phases(params.with_beta(params.beta + alpha));
  const ComplexVector lower = torsion_phases(params.with_beta(params.beta - alpha));

  const auto n = static_cast<Eigen::Index>(params.j.dim());
  ComplexVector torsion(2 * n);
  torsion << upper, lower;
  const ComplexMatrix kick = numkit::kron(ComplexMatrix::Identity(2, 2), rotation);
  return torsion.asDiagonal() * kick;
}

}  // namespace qstab::spin
