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
 * Dense complex linear algebra kernel.
 *
 * Everything in this header is a pure function of its arguments. Matrices
 * are Eigen::MatrixXcd; the two state types below wrap Eigen storage and
 * enforce their physical invariants at construction time, so any
 * StateVector or DensityMatrix that exists is known to be valid.
 *
 *   hermitian_eig        H = Q diag(lambda) Q^dagger, lambda ascending
 *   unitary_exp          exp(-i theta H) for Hermitian H (spectral)
 *   psd_sqrt             principal square root of a PSD matrix
 *   uhlmann_fidelity     F = tr sqrt( sqrt(rho1) rho2 sqrt(rho1) )
 *   partial_trace_first  tr_A over the first tensor factor of A (x) B
 */

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qstab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Raised whenever an input violates an operation's precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix that should be positive semidefinite has an eigenvalue below
/// -kPsdClamp.
class NotPsdError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kNorm = 1e-10;
/// Eigenvalues in (-kPsdClamp, 0) are treated as round-off and clamped.
inline constexpr double kPsdClamp = 1e-10;
/// Eigenvalues of a unit-trace state at or below this are dropped from its
/// support when computing fidelities.
inline constexpr double kSupport = 1e-14;
}  // namespace tol

namespace numkit {

struct EigenDecomposition {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // columns, unitary
};

/// Throws ValidationError if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const std::string& what);

/// Largest |m(i,j) - conj(m(j,i))|.
double hermitian_deviation(const ComplexMatrix& m);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product a (x) b; index (i_a * rows(b) + i_b).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

EigenDecomposition hermitian_eig(const ComplexMatrix& h);

/// exp(-i * theta * h) for Hermitian h.
ComplexMatrix unitary_exp(const ComplexMatrix& h, double theta);

/// Same as unitary_exp but reuses an existing decomposition of h.
ComplexMatrix unitary_exp(const EigenDecomposition& eig, double theta);

}  // namespace numkit

/// Unit-norm pure state.
class StateVector {
 public:
  /// Throws ValidationError unless |amplitudes| = 1 within tol::kNorm.
  explicit StateVector(ComplexVector amplitudes);

  /// Rescales to unit norm; throws on a zero or non-finite vector.
  static StateVector normalized(ComplexVector amplitudes);

  /// Basis state |index> in a space of dimension dim.
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const ComplexVector& amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

  /// U|psi>; throws if U is not dim x dim.
  StateVector evolved(const ComplexMatrix& unitary) const;

  Complex inner(const StateVector& other) const { return amps_.dot(other.amps_); }

 private:
  ComplexVector amps_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  /// Validates Hermiticity (max elementwise), trace and PSD within 1e-10.
  explicit DensityMatrix(ComplexMatrix entries);

  static DensityMatrix pure(const StateVector& psi);

  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
  const ComplexMatrix& matrix() const { return rho_; }

  double purity() const;

 private:
  ComplexMatrix rho_;
};

namespace numkit {

/// Principal square root of a Hermitian PSD matrix; eigenvalues in
/// (-kPsdClamp, 0) are clamped to zero, anything lower raises NotPsdError.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);
ComplexMatrix psd_sqrt(const DensityMatrix& rho);

/// Uhlmann fidelity tr sqrt(sqrt(rho1) rho2 sqrt(rho1)) (root convention,
/// equal to |<psi1|psi2>| for pure states).
///
/// Evaluated as the trace norm of sqrt(rho1) sqrt(rho2) restricted to the
/// supports of the two states, which is the same quantity and keeps
/// round-off eigenvalues of rank-deficient states from leaking in through
/// the square roots.
double uhlmann_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Traces out the first factor of a (dim_a * dim_b)-dimensional state.
DensityMatrix partial_trace_first(const DensityMatrix& rho, std::size_t dim_a,
                                  std::size_t dim_b);

/// The underlying linear map, without state validation; accepts any
/// square operator on the product space.
ComplexMatrix partial_trace_first(const ComplexMatrix& op, std::size_t dim_a,
                                  std::size_t dim_b);

}  // namespace numkit
}  // namespace qstab
