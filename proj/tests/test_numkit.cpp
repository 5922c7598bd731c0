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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qstab/numkit.hpp"

using namespace qstab;
using numkit::max_abs_diff;

namespace {

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

double frob_rel(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double denom = std::max(a.norm(), 1e-300);
  return (a - b).norm() / denom;
}

}  // namespace

TEST_CASE("hermitian_eig: diagonal input gives sorted values and permuted identity") {
  const auto eig = numkit::hermitian_eig(diag2(2.0, 1.0));
  CHECK(eig.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eig.eigenvalues(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(eig.eigenvectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(eig.eigenvectors(0, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(eig.eigenvectors(0, 0)) < 1e-14);
}

TEST_CASE("hermitian_eig: Pauli x spectrum") {
  const auto eig = numkit::hermitian_eig(pauli_x());
  CHECK(std::abs(eig.eigenvalues(0) + 1.0) < 1e-14);
  CHECK(std::abs(eig.eigenvalues(1) - 1.0) < 1e-14);
}

TEST_CASE("hermitian_eig: J_y at j = 1 has spectrum (-1, 0, 1)") {
  // Characteristic polynomial -l^3 + l; roots confirmed with 40-digit mpmath.
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix jy(3, 3);
  jy << 0.0, Complex(0, -s), 0.0, Complex(0, s), 0.0, Complex(0, -s), 0.0, Complex(0, s), 0.0;
  const auto eig = numkit::hermitian_eig(jy);
  CHECK(std::abs(eig.eigenvalues(0) + 1.0) < 1e-13);
  CHECK(std::abs(eig.eigenvalues(1)) < 1e-13);
  CHECK(std::abs(eig.eigenvalues(2) - 1.0) < 1e-13);
}

TEST_CASE("hermitian_eig: rejects bad input") {
  CHECK_THROWS_AS(numkit::hermitian_eig(ComplexMatrix::Zero(2, 3)), ValidationError);
  ComplexMatrix m = pauli_x();
  m(0, 1) = 2.0;
  CHECK_THROWS_AS(numkit::hermitian_eig(m), ValidationError);
  ComplexMatrix nan = pauli_x();
  nan(0, 0) = NAN;
  CHECK_THROWS_AS(numkit::hermitian_eig(nan), ValidationError);
}

TEST_CASE("hermitian_eig: reconstruction and orthonormality over random inputs") {
  std::mt19937_64 rng(1234);
  for (int n : {1, 2, 3, 7, 16, 40}) {
    for (int rep = 0; rep < 5; ++rep) {
      const ComplexMatrix h = oracle::random_hermitian(rng, n, 3.0);
      const auto eig = numkit::hermitian_eig(h);
      const ComplexMatrix& q = eig.eigenvectors;
      const ComplexMatrix rebuilt = q * eig.eigenvalues.cast<Complex>().asDiagonal() * q.adjoint();
      CHECK(frob_rel(h, rebuilt) < 1e-9);
      CHECK(max_abs_diff(q.adjoint() * q, ComplexMatrix::Identity(n, n)) < 1e-10);
      for (int k = 1; k < n; ++k) CHECK(eig.eigenvalues(k - 1) <= eig.eigenvalues(k));
    }
  }
}

TEST_CASE("unitary_exp: theta = 0 is the identity") {
  std::mt19937_64 rng(7);
  const ComplexMatrix h = oracle::random_hermitian(rng, 5);
  CHECK(max_abs_diff(numkit::unitary_exp(h, 0.0), ComplexMatrix::Identity(5, 5)) < 1e-13);
}

TEST_CASE("unitary_exp: diagonal generator") {
  const ComplexMatrix u = numkit::unitary_exp(pauli_z(), std::numbers::pi / 2);
  CHECK(std::abs(u(0, 0) - std::polar(1.0, -std::numbers::pi / 2)) < 1e-14);
  CHECK(std::abs(u(1, 1) - std::polar(1.0, std::numbers::pi / 2)) < 1e-14);
  CHECK(std::abs(u(0, 1)) < 1e-14);
}

TEST_CASE("unitary_exp: pi rotation about y for spin 1/2 flips up to down") {
  const ComplexMatrix jy = pauli_y() * 0.5;
  const ComplexMatrix u = numkit::unitary_exp(jy, std::numbers::pi);
  const ComplexMatrix series = oracle::taylor_unitary_exp(jy, std::numbers::pi);
  CHECK(max_abs_diff(u, series) < 1e-12);
  // Closed form exp(-i pi sy / 2) = -i sy = [[0, -1], [1, 0]].
  ComplexMatrix closed(2, 2);
  closed << 0.0, -1.0, 1.0, 0.0;
  CHECK(max_abs_diff(u, closed) < 1e-12);
  const ComplexVector up = (ComplexVector(2) << 1.0, 0.0).finished();
  const ComplexVector flipped = u * up;
  CHECK(std::abs(std::abs(flipped(1)) - 1.0) < 1e-12);
}

TEST_CASE("unitary_exp: unitarity, commutation and agreement with the series oracle") {
  std::mt19937_64 rng(99);
  for (int n : {2, 4, 9, 20}) {
    const ComplexMatrix h = oracle::random_hermitian(rng, n);
    const double theta = 0.37 * n;
    const ComplexMatrix u = numkit::unitary_exp(h, theta);
    CHECK(max_abs_diff(u.adjoint() * u, ComplexMatrix::Identity(n, n)) < 1e-9);
    CHECK(max_abs_diff(u * h, h * u) < 1e-9);
    CHECK(max_abs_diff(u, oracle::taylor_unitary_exp(h, theta)) < 1e-9);
  }
}

TEST_CASE("unitary_exp: one-parameter group property") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + rep % 11;
    const ComplexMatrix h = oracle::random_hermitian(rng, n);
    const double t1 = angle(rng), t2 = angle(rng);
    const ComplexMatrix lhs = numkit::unitary_exp(h, t1) * numkit::unitary_exp(h, t2);
    CHECK(max_abs_diff(lhs, numkit::unitary_exp(h, t1 + t2)) < 1e-8);
  }
}

TEST_CASE("psd_sqrt: examples") {
  const DensityMatrix half(ComplexMatrix::Identity(2, 2) * 0.5);
  CHECK(max_abs_diff(numkit::psd_sqrt(half), ComplexMatrix::Identity(2, 2) / std::sqrt(2.0)) < 1e-14);

  const DensityMatrix d(diag2(0.25, 0.75));
  CHECK(max_abs_diff(numkit::psd_sqrt(d), diag2(0.5, std::sqrt(0.75))) < 1e-14);

  ComplexVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const DensityMatrix proj = DensityMatrix::pure(StateVector(plus));
  CHECK(max_abs_diff(numkit::psd_sqrt(proj), proj.matrix()) < 1e-9);
}

TEST_CASE("psd_sqrt: clamps round-off negatives, rejects real negatives") {
  CHECK_NOTHROW(numkit::psd_sqrt(diag2(1.0, -5e-11)));
  CHECK(numkit::psd_sqrt(diag2(1.0, -5e-11))(1, 1) == Complex(0.0));
  CHECK_THROWS_AS(numkit::psd_sqrt(diag2(1.0, -1e-9)), NotPsdError);
}

TEST_CASE("psd_sqrt: squares back over random states") {
  std::mt19937_64 rng(5);
  for (int n : {2, 5, 12, 30}) {
    for (int rank : {1, 2, n}) {
      const DensityMatrix rho(oracle::random_density(rng, n, rank));
      const ComplexMatrix s = numkit::psd_sqrt(rho);
      CHECK(numkit::hermitian_deviation(s) < 1e-12);
      CHECK((s * s - rho.matrix()).norm() < 1e-9);
    }
  }
}

TEST_CASE("uhlmann_fidelity: identical, orthogonal and diagonal examples") {
  std::mt19937_64 rng(11);
  const DensityMatrix rho(oracle::random_density(rng, 6, 3));
  CHECK(numkit::uhlmann_fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-12));

  const DensityMatrix zero(diag2(1.0, 0.0));
  const DensityMatrix one(diag2(0.0, 1.0));
  CHECK(numkit::uhlmann_fidelity(zero, one) == doctest::Approx(0.0).epsilon(1e-15));

  // sqrt(0.18) + sqrt(0.28), evaluated with 40-digit mpmath.
  const double expected = 0.95341433092484663274;
  const double f = numkit::uhlmann_fidelity(DensityMatrix(diag2(0.3, 0.7)), DensityMatrix(diag2(0.6, 0.4)));
  CHECK(std::abs(f - expected) < 1e-12);
}

TEST_CASE("uhlmann_fidelity: dimension mismatch") {
  CHECK_THROWS_AS(numkit::uhlmann_fidelity(DensityMatrix(diag2(1, 0)),
                                           DensityMatrix(ComplexMatrix::Identity(3, 3) / 3.0)),
                  ValidationError);
}

TEST_CASE("uhlmann_fidelity: pure states reduce to the overlap") {
  std::mt19937_64 rng(17);
  for (int n : {2, 8, 64, 201}) {
    for (int rep = 0; rep < 4; ++rep) {
      const StateVector a(oracle::random_unit_vector(rng, n));
      const StateVector b(oracle::random_unit_vector(rng, n));
      const double f = numkit::uhlmann_fidelity(DensityMatrix::pure(a), DensityMatrix::pure(b));
      CHECK(std::abs(f - std::abs(a.inner(b))) < 1e-9);
      CHECK(std::abs(f - numkit::uhlmann_fidelity(DensityMatrix::pure(b), DensityMatrix::pure(a))) < 1e-9);
    }
  }
}

TEST_CASE("uhlmann_fidelity: matches the literal square-root formula on full-rank states") {
  std::mt19937_64 rng(23);
  for (int n : {2, 3, 6, 10}) {
    for (int rep = 0; rep < 5; ++rep) {
      const DensityMatrix r1(oracle::random_density(rng, n, n));
      const DensityMatrix r2(oracle::random_density(rng, n, n));
      const double f = numkit::uhlmann_fidelity(r1, r2);
      CHECK(std::abs(f - oracle::uhlmann_literal(r1, r2)) < 1e-9);
      CHECK(std::abs(f - numkit::uhlmann_fidelity(r2, r1)) < 1e-9);
      CHECK(f <= 1.0 + 1e-9);
      CHECK(f >= 0.0);
    }
  }
}

TEST_CASE("uhlmann_fidelity: invariant under joint unitary conjugation") {
  std::mt19937_64 rng(31);
  for (int n : {2, 5, 11}) {
    const ComplexMatrix r1 = oracle::random_density(rng, n, 2);
    const ComplexMatrix r2 = oracle::random_density(rng, n, n);
    const ComplexMatrix u = oracle::random_unitary(rng, n);
    const double before = numkit::uhlmann_fidelity(DensityMatrix(r1), DensityMatrix(r2));
    const double after = numkit::uhlmann_fidelity(DensityMatrix(u * r1 * u.adjoint()),
                                                  DensityMatrix(u * r2 * u.adjoint()));
    CHECK(std::abs(before - after) < 1e-8);
  }
}

TEST_CASE("partial_trace_first: product and Bell states") {
  std::mt19937_64 rng(41);
  const ComplexMatrix ra = oracle::random_density(rng, 3, 2);
  const ComplexMatrix rb = oracle::random_density(rng, 4, 4);
  const DensityMatrix out = numkit::partial_trace_first(DensityMatrix(numkit::kron(ra, rb)), 3, 4);
  CHECK(max_abs_diff(out.matrix(), rb) < 1e-14);

  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const DensityMatrix reduced = numkit::partial_trace_first(DensityMatrix::pure(StateVector(bell)), 2, 2);
  CHECK(max_abs_diff(reduced.matrix(), ComplexMatrix::Identity(2, 2) * 0.5) < 1e-14);
}

TEST_CASE("partial_trace_first: qubit-controlled branches mix with weights a, 1-a regardless of b") {
  // Explicit 2 (x) 3 construction: the qubit controls which unitary acts on
  // the spin-1 system. Tracing the qubit leaves a V+ rho V+^dag + (1-a) V- rho V-^dag.
  std::mt19937_64 rng(43);
  const double a = 0.7;
  const Complex b = 0.1;
  ComplexMatrix qubit(2, 2);
  qubit << a, b, std::conj(b), 1.0 - a;
  const ComplexMatrix sys = oracle::random_density(rng, 3, 1);
  const ComplexMatrix v_plus = oracle::random_unitary(rng, 3);
  const ComplexMatrix v_minus = oracle::random_unitary(rng, 3);
  ComplexMatrix total = ComplexMatrix::Zero(6, 6);
  total.block(0, 0, 3, 3) = v_plus;
  total.block(3, 3, 3, 3) = v_minus;
  const ComplexMatrix rho_t = total * numkit::kron(qubit, sys) * total.adjoint();
  const DensityMatrix reduced = numkit::partial_trace_first(DensityMatrix(rho_t), 2, 3);
  const ComplexMatrix expected =
      a * v_plus * sys * v_plus.adjoint() + (1.0 - a) * v_minus * sys * v_minus.adjoint();
  CHECK(max_abs_diff(reduced.matrix(), expected) < 1e-12);

  ComplexMatrix qubit_no_b = qubit;
  qubit_no_b(0, 1) = qubit_no_b(1, 0) = 0.0;
  const ComplexMatrix rho_no_b = total * numkit::kron(qubit_no_b, sys) * total.adjoint();
  CHECK(max_abs_diff(numkit::partial_trace_first(DensityMatrix(rho_no_b), 2, 3).matrix(),
                     reduced.matrix()) < 1e-12);
}

TEST_CASE("partial_trace_first: linear and trace preserving") {
  std::mt19937_64 rng(47);
  for (int rep = 0; rep < 10; ++rep) {
    const ComplexMatrix r1 = oracle::random_density(rng, 6, 1 + rep % 6);
    const ComplexMatrix r2 = oracle::random_density(rng, 6, 6);
    const double w = 0.1 * rep;
    const ComplexMatrix mix = w * r1 + (1.0 - w) * r2;
    const ComplexMatrix lhs = numkit::partial_trace_first(mix, 2, 3);
    const ComplexMatrix rhs =
        w * numkit::partial_trace_first(r1, 2, 3) + (1.0 - w) * numkit::partial_trace_first(r2, 2, 3);
    CHECK(max_abs_diff(lhs, rhs) < 1e-14);
    CHECK(std::abs(numkit::partial_trace_first(DensityMatrix(r1), 3, 2).matrix().trace().real() - 1.0) < 1e-10);
  }
}

TEST_CASE("partial_trace_first: factorization mismatch") {
  CHECK_THROWS_AS(numkit::partial_trace_first(DensityMatrix(ComplexMatrix::Identity(6, 6) / 6.0), 4, 2),
                  ValidationError);
}

TEST_CASE("StateVector and DensityMatrix enforce their invariants") {
  CHECK_THROWS_AS(StateVector(ComplexVector::Ones(2)), ValidationError);
  CHECK_NOTHROW(StateVector::normalized(ComplexVector::Ones(2)));
  CHECK_THROWS_AS(StateVector::normalized(ComplexVector::Zero(3)), ValidationError);

  CHECK_THROWS_AS(DensityMatrix(diag2(0.5, 0.6)), ValidationError);  // trace
  ComplexMatrix skew = diag2(0.5, 0.5);
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{skew}, ValidationError);  // Hermiticity
  CHECK_THROWS_AS(DensityMatrix(diag2(1.5, -0.5)), NotPsdError);
  CHECK_NOTHROW(DensityMatrix(diag2(1.0 + 5e-11, -5e-11)));

  const StateVector psi = StateVector::basis(3, 1);
  CHECK_THROWS_AS(psi.evolved(ComplexMatrix::Identity(2, 2)), ValidationError);
}
