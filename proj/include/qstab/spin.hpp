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

// Angular momentum operators, spin coherent states and the kicked-top
// Floquet operators. All matrices are in the J_z eigenbasis ordered
// m = j, j-1, ..., -j (row index i <-> m = j - i). hbar = 1.

#include <cstddef>
#include <memory>

#include "qstab/numkit.hpp"

namespace qstab::spin {

/// Spin quantum number j, stored as the integer 2j >= 1.
class SpinJ {
 public:
  /// Throws ValidationError unless 2j is a positive integer.
  static SpinJ from_double(double j);
  static SpinJ from_twice(int two_j);

  double value() const { return 0.5 * two_j_; }
  int twice() const { return two_j_; }
  std::size_t dim() const { return static_cast<std::size_t>(two_j_ + 1); }
  /// Magnetic quantum number of basis row i.
  double m(std::size_t i) const { return value() - static_cast<double>(i); }

  friend bool operator==(SpinJ, SpinJ) = default;

 private:
  explicit SpinJ(int two_j) : two_j_(two_j) {}
  int two_j_;
};

struct SpinOperators {
  SpinJ j;
  ComplexMatrix jx;
  ComplexMatrix jy;
  ComplexMatrix jz;

  std::size_t dim() const { return j.dim(); }
  /// J+ (raising); J- is its adjoint.
  ComplexMatrix raising() const;
  /// Jx^2 + Jy^2 + Jz^2.
  ComplexMatrix casimir() const;
};

SpinOperators build_spin_operators(SpinJ j);
SpinOperators build_spin_operators(double j);

/// Shared immutable operator set; repeated calls with the same j return the
/// same instance.
std::shared_ptr<const SpinOperators> cached_spin_operators(SpinJ j);

/// |Theta, phi> = exp(i Theta (Jx sin phi - Jy cos phi)) |j, j>.
/// The expectation vector points along (sin T cos phi, sin T sin phi, cos T).
StateVector spin_coherent_state(SpinJ j, double theta, double phi);

struct KickedTopParams {
  SpinJ j = SpinJ::from_twice(1);
  double beta = 0.0;  // torsion strength
  double p = 0.0;     // kick rotation angle about y
  double tau = 1.0;   // kick period

  /// Throws ValidationError if tau <= 0 or any value is not finite.
  void validate() const;

  KickedTopParams with_beta(double b) const {
    KickedTopParams out = *this;
    out.beta = b;
    return out;
  }
};

/// exp(-i p Jy); real orthogonal in this basis.
ComplexMatrix kick_rotation(const KickedTopParams& params);

/// Diagonal of exp(-i beta/(2 j tau) Jz^2).
ComplexVector torsion_phases(const KickedTopParams& params);

/// One period: exp(-i beta/(2 j tau) Jz^2) exp(-i p Jy).
ComplexMatrix kicked_top_unitary(const KickedTopParams& params);

/// One period of the top coupled to a qubit through (alpha sz + beta 1) (x) Jz^2.
/// Qubit factor first; block (0,0) is the top at beta + alpha, block (1,1) at
/// beta - alpha.
ComplexMatrix coupled_kick_unitary(const KickedTopParams& params, double alpha);

}  // namespace qstab::spin
