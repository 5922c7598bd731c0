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

#include "qstab/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

namespace qstab {
namespace numkit {
namespace {

void require_square(const ComplexMatrix& m, const std::string& what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << what << ": expected a non-empty square matrix, got " << m.rows() << "x"
        << m.cols();
    throw ValidationError(msg.str());
  }
}

void require_hermitian(const ComplexMatrix& m, const std::string& what) {
  const double dev = hermitian_deviation(m);
  if (dev > tol::kHermitian) {
    std::ostringstream msg;
    msg << what << ": matrix is not Hermitian (max deviation " << dev << ")";
    throw ValidationError(msg.str());
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return (m + m.adjoint()) * 0.5;
}

// Decomposition of an already-validated matrix.
EigenDecomposition decompose(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success) {
    throw ValidationError("hermitian_eig: eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace

void require_finite(const ComplexMatrix& m, const std::string& what) {
  if (!m.allFinite()) throw ValidationError(what + ": matrix has non-finite entries");
}

double hermitian_deviation(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& h) {
  require_square(h, "hermitian_eig");
  require_finite(h, "hermitian_eig");
  require_hermitian(h, "hermitian_eig");
  return decompose(h);
}

ComplexMatrix unitary_exp(const EigenDecomposition& eig, double theta) {
  const ComplexMatrix& q = eig.eigenvectors;
  ComplexVector phases(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::polar(1.0, -theta * eig.eigenvalues(k));
  }
  return q * phases.asDiagonal() * q.adjoint();
}

ComplexMatrix unitary_exp(const ComplexMatrix& h, double theta) {
  if (!std::isfinite(theta)) throw ValidationError("unitary_exp: theta is not finite");
  return unitary_exp(hermitian_eig(h), theta);
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const EigenDecomposition eig = hermitian_eig(m);
  const double lowest = eig.eigenvalues.minCoeff();
  if (lowest < -tol::kPsdClamp) {
    std::ostringstream msg;
    msg << "psd_sqrt: matrix is not positive semidefinite (eigenvalue " << lowest << ")";
    throw NotPsdError(msg.str());
  }
  RealVector roots = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors * roots.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix psd_sqrt(const DensityMatrix& rho) { return psd_sqrt(rho.matrix()); }

namespace {

// Eigenvectors of rho scaled by sqrt(lambda), keeping only the support.
ComplexMatrix weighted_support(const DensityMatrix& rho) {
  const EigenDecomposition eig = decompose(rho.matrix());
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    if (eig.eigenvalues(k) > tol::kSupport) keep.push_back(k);
  }
  ComplexMatrix out(eig.eigenvectors.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    const auto k = keep[c];
    out.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors.col(k) * std::sqrt(eig.eigenvalues(k));
  }
  return out;
}

}  // namespace

double uhlmann_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) {
    std::ostringstream msg;
    msg << "uhlmann_fidelity: dimension mismatch (" << rho1.dim() << " vs " << rho2.dim() << ")";
    throw ValidationError(msg.str());
  }
  // rho_i = A_i A_i^dagger with A_i spanning the support, so
  // ||sqrt(rho1) sqrt(rho2)||_1 = ||A1^dagger A2||_1.
  const ComplexMatrix a1 = weighted_support(rho1);
  const ComplexMatrix a2 = weighted_support(rho2);
  if (a1.cols() == 0 || a2.cols() == 0) return 0.0;
  const ComplexMatrix overlap = a1.adjoint() * a2;
  Eigen::JacobiSVD<ComplexMatrix> svd(overlap);
  return svd.singularValues().sum();
}

ComplexMatrix partial_trace_first(const ComplexMatrix& op, std::size_t dim_a,
                                  std::size_t dim_b) {
  if (dim_a == 0 || dim_b == 0 || op.rows() != op.cols() ||
      static_cast<std::size_t>(op.rows()) != dim_a * dim_b) {
    std::ostringstream msg;
    msg << "partial_trace_first: operator of size " << op.rows() << "x" << op.cols()
        << " does not factor as " << dim_a << " x " << dim_b;
    throw ValidationError(msg.str());
  }
  const auto nb = static_cast<Eigen::Index>(dim_b);
  ComplexMatrix out = ComplexMatrix::Zero(nb, nb);
  for (Eigen::Index a = 0; a < static_cast<Eigen::Index>(dim_a); ++a) {
    out += op.block(a * nb, a * nb, nb, nb);
  }
  return out;
}

DensityMatrix partial_trace_first(const DensityMatrix& rho, std::size_t dim_a,
                                  std::size_t dim_b) {
  return DensityMatrix(partial_trace_first(rho.matrix(), dim_a, dim_b));
}

}  // namespace numkit

StateVector::StateVector(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw ValidationError("StateVector: empty amplitude vector");
  if (!amps_.allFinite()) throw ValidationError("StateVector: non-finite amplitudes");
  const double norm = amps_.norm();
  if (std::abs(norm - 1.0) > tol::kNorm) {
    std::ostringstream msg;
    msg << "StateVector: norm " << norm << " differs from 1";
    throw ValidationError(msg.str());
  }
}

StateVector StateVector::normalized(ComplexVector amplitudes) {
  if (!amplitudes.allFinite()) throw ValidationError("StateVector: non-finite amplitudes");
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw ValidationError("StateVector: cannot normalize a zero vector");
  return StateVector(amplitudes / norm);
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw ValidationError("StateVector::basis: index out of range");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::evolved(const ComplexMatrix& unitary) const {
  if (unitary.rows() != amps_.size() || unitary.cols() != amps_.size()) {
    std::ostringstream msg;
    msg << "StateVector::evolved: operator " << unitary.rows() << "x" << unitary.cols()
        << " does not act on dimension " << amps_.size();
    throw ValidationError(msg.str());
  }
  ComplexVector next = unitary * amps_;
  // Renormalize so norm drift does not accumulate over long runs.
  next /= next.norm();
  return StateVector(std::move(next));
}

DensityMatrix::DensityMatrix(ComplexMatrix entries) : rho_(std::move(entries)) {
  if (rho_.rows() == 0 || rho_.rows() != rho_.cols()) {
    throw ValidationError("DensityMatrix: expected a non-empty square matrix");
  }
  numkit::require_finite(rho_, "DensityMatrix");
  const double dev = numkit::hermitian_deviation(rho_);
  if (dev > tol::kHermitian) {
    std::ostringstream msg;
    msg << "DensityMatrix: not Hermitian (max deviation " << dev << ")";
    throw ValidationError(msg.str());
  }
  rho_ = (rho_ + rho_.adjoint()) * 0.5;
  const double trace = rho_.trace().real();
  if (std::abs(trace - 1.0) > tol::kTrace) {
    std::ostringstream msg;
    msg << "DensityMatrix: trace " << trace << " differs from 1";
    throw ValidationError(msg.str());
  }
  const double lowest = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(rho_, Eigen::EigenvaluesOnly)
                            .eigenvalues()
                            .minCoeff();
  if (lowest < -tol::kPsdClamp) {
    std::ostringstream msg;
    msg << "DensityMatrix: not positive semidefinite (eigenvalue " << lowest << ")";
    throw NotPsdError(msg.str());
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const ComplexVector& v = psi.amplitudes();
  return DensityMatrix(v * v.adjoint());
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

}  // namespace qstab
