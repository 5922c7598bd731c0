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
#include <random>

#include "qstab/env.hpp"

using namespace qstab;
using namespace qstab::env;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("QubitEnv validation") {
  CHECK_NOTHROW(QubitEnv(0.01, 3.0, 0.5, 0.5));
  CHECK_THROWS_AS(QubitEnv(0.01, 3.0, 1.2), ValidationError);
  CHECK_THROWS_AS(QubitEnv(0.01, 3.0, -0.1), ValidationError);
  CHECK_THROWS_AS(QubitEnv(0.01, 3.0, 0.5, 0.6), ValidationError);  // |b|^2 > a(1-a)
  CHECK_THROWS_AS(QubitEnv::pure(0.01, 3.0, 1.1), ValidationError);

  const auto pure = QubitEnv::pure(0.01, 3.0, kInvSqrt2);
  CHECK(pure.a() == doctest::Approx(0.5));
  CHECK(std::abs(pure.b() - Complex(0.5)) < 1e-15);
}

TEST_CASE("qubit_branches: examples") {
  const auto eig = qubit_branches(QubitEnv(0.01, 3.0, 1.0));
  REQUIRE(eig.size() == 2);
  CHECK(eig.branches()[0].lambda == doctest::Approx(3.01));
  CHECK(eig.branches()[0].weight == 1.0);
  CHECK(eig.branches()[1].weight == 0.0);

  const auto half = qubit_branches(QubitEnv(0.01, 3.0, 0.5));
  CHECK(half.branches()[0].lambda == doctest::Approx(3.01).epsilon(1e-15));
  CHECK(half.branches()[1].lambda == doctest::Approx(2.99).epsilon(1e-15));
  CHECK(half.branches()[0].weight == 0.5);
  CHECK(half.branches()[1].weight == 0.5);

  for (double b : {0.0, 0.1, -0.2, 0.3}) {
    const auto s = qubit_branches(QubitEnv(0.01, 3.0, 0.3, b * 0.9));
    CHECK(s.branches()[0].weight == 0.3);
    CHECK(s.branches()[1].weight == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(s.branches()[0].lambda == half.branches()[0].lambda);
  }
}

TEST_CASE("oscillator_branches: examples") {
  const auto one = oscillator_branches(OscillatorEnv(0.01, 3.0, {1.0}));
  REQUIRE(one.size() == 1);
  CHECK(one.branches()[0].lambda == doctest::Approx(3.005).epsilon(1e-15));

  const auto two = oscillator_branches(OscillatorEnv::equal_superposition(0.01, 3.0, 2));
  CHECK(two.branches()[0].lambda == doctest::Approx(3.005).epsilon(1e-15));
  CHECK(two.branches()[1].lambda == doctest::Approx(3.015).epsilon(1e-15));
  CHECK(two.branches()[0].weight == doctest::Approx(0.5).epsilon(1e-15));

  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Complex> c(1 + rep % 6);
    double norm = 0.0;
    for (auto& x : c) {
      x = Complex(g(rng), g(rng));
      norm += std::norm(x);
    }
    for (auto& x : c) x /= std::sqrt(norm);
    double total = 0.0;
    const auto spectrum = oscillator_branches(OscillatorEnv(0.1, 1.0, c));
    for (const auto& br : spectrum.branches()) total += br.weight;
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
}

TEST_CASE("OscillatorEnv rejects unnormalized amplitudes") {
  CHECK_THROWS_AS(OscillatorEnv(0.01, 3.0, {1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(OscillatorEnv(0.01, 3.0, {}), ValidationError);
}

TEST_CASE("BranchSpectrum validation") {
  CHECK_THROWS_AS(BranchSpectrum({{1.0, 0.5}, {2.0, 0.4}}), ValidationError);
  CHECK_THROWS_AS(BranchSpectrum({{1.0, 1.5}, {2.0, -0.5}}), ValidationError);
  CHECK_THROWS_AS(BranchSpectrum({}), ValidationError);
}

TEST_CASE("effective_beta and std_beta: qubit examples") {
  const auto half = qubit_branches(QubitEnv(0.01, 3.0, 0.5));
  CHECK(std::abs(effective_beta(half) - 3.0) < 1e-12);
  CHECK(std::abs(std_beta(half) - 0.01) < 1e-12);

  const auto top = qubit_branches(QubitEnv(0.01, 3.0, 1.0));
  CHECK(std::abs(effective_beta(top) - 3.01) < 1e-12);
  CHECK(std_beta(top) == 0.0);
  CHECK(std_beta(qubit_branches(QubitEnv(0.01, 3.0, 0.0))) == 0.0);

  // 2 * 0.1 * sqrt(0.25 * 0.75), 40-digit mpmath.
  CHECK(std::abs(std_beta(qubit_branches(QubitEnv(0.1, 3.0, 0.25))) - 0.086602540378443864676) < 1e-12);
}

TEST_CASE("effective_beta: oscillator example") {
  const auto two = oscillator_branches(OscillatorEnv::equal_superposition(0.01, 3.0, 2));
  CHECK(std::abs(effective_beta(two) - 3.01) < 1e-12);
}

TEST_CASE("std_beta is zero for a single unit-weight branch") {
  CHECK(std_beta(BranchSpectrum({{4.2, 1.0}})) == 0.0);
  CHECK(std_beta(BranchSpectrum({{4.2, 0.5}, {4.3, 0.5}})) > 0.0);
}

TEST_CASE("qubit closed forms match the moment computation over seeded inputs") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> coupling(-0.5, 0.5);
  for (int rep = 0; rep < 100; ++rep) {
    const double a = u01(rng), alpha = coupling(rng), beta = 1.0 + 4.0 * u01(rng);
    const auto s = qubit_branches(QubitEnv(alpha, beta, a));
    CHECK(std::abs(effective_beta(s) - (beta + alpha * (2 * a - 1))) < 1e-12);
    CHECK(std::abs(std_beta(s) - 2 * std::abs(alpha) * std::sqrt(a * (1 - a))) < 1e-12);
  }
}

TEST_CASE("bound_qubit_pair: examples and domain") {
  CHECK(bound_qubit_pair(0.5, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(bound_qubit_pair(0.5, 1.0) - kInvSqrt2) < 1e-15);
  CHECK(std::abs(bound_qubit_pair(0.3, 0.6) - 0.95341433092484663274) < 1e-14);
  CHECK(bound_qubit_pair(1.0, 0.0) == 0.0);
  CHECK_THROWS_AS(bound_qubit_pair(-0.1, 0.5), ValidationError);
  CHECK_THROWS_AS(bound_qubit_pair(0.5, 1.01), ValidationError);
}

TEST_CASE("bound_qubit_worstcase: examples and domain") {
  CHECK(std::abs(bound_qubit_worstcase(0.5) - kInvSqrt2) < 1e-15);
  CHECK(bound_qubit_worstcase(0.0) == 0.0);
  CHECK(std::abs(bound_qubit_worstcase(0.64) - 0.6) < 1e-15);
  CHECK_THROWS_AS(bound_qubit_worstcase(2.0), ValidationError);
  for (int i = 0; i <= 100; ++i) CHECK(bound_qubit_worstcase(i / 100.0) <= kInvSqrt2 + 1e-15);
}

TEST_CASE("bound_oscillator: examples and errors") {
  const std::vector<Complex> eq2{kInvSqrt2, kInvSqrt2};
  const auto b = bound_oscillator(eq2, eq2);
  CHECK(b.sum_bound == doctest::Approx(1.0));
  CHECK(std::abs(b.min_bound - kInvSqrt2) < 1e-15);

  const std::vector<Complex> c{0.6, Complex(0, 0.8)};
  CHECK(bound_oscillator(c, c).sum_bound == doctest::Approx(1.0));

  const auto disjoint = bound_oscillator({1.0, 0.0, 0.0}, {0.0, 1.0, 0.0});
  CHECK(disjoint.sum_bound == 0.0);
  CHECK(disjoint.min_bound == 0.0);

  const double r3 = 1.0 / std::sqrt(3.0);
  CHECK(std::abs(bound_oscillator({r3, r3, r3}, {1.0, 0.0, 0.0}).min_bound - r3) < 1e-15);

  CHECK_THROWS_AS(bound_oscillator(eq2, {1.0, 0.0, 0.0}), ValidationError);
}

TEST_CASE("bound_oscillator: min_bound never exceeds sum_bound") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  auto random_amps = [&](std::size_t l) {
    std::vector<Complex> c(l);
    double norm = 0;
    for (auto& x : c) {
      x = Complex(g(rng), g(rng));
      norm += std::norm(x);
    }
    for (auto& x : c) x /= std::sqrt(norm);
    return c;
  };
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t l = 1 + rep % 5;
    const auto b = bound_oscillator(random_amps(l), random_amps(l));
    CHECK(b.min_bound <= b.sum_bound + 1e-15);
    CHECK(b.sum_bound <= 1.0);
  }
}

TEST_CASE("bound_markovian: examples and domain") {
  CHECK(bound_markovian(0.3, 0.6, 1) == bound_qubit_pair(0.3, 0.6));
  CHECK(std::abs(bound_markovian(0.5, 1.0, 2) - 0.5) < 1e-15);
  CHECK(bound_markovian(0.4, 0.4, 50) == doctest::Approx(1.0));
  CHECK(std::abs(bound_markovian(0.5, 1.0, 20) - 0.0009765625) < 1e-15);
  CHECK_THROWS_AS(bound_markovian(0.5, 1.0, 0), ValidationError);
  CHECK_THROWS_AS(bound_markovian(1.5, 1.0, 3), ValidationError);
}

TEST_CASE("bound properties over a seeded sample of (a, a')") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int rep = 0; rep < 1000; ++rep) {
    const double a = u01(rng), ap = u01(rng);
    const double pair = bound_qubit_pair(a, ap);
    // The worst case over a' is attained at a' in {0, 1}.
    CHECK(pair >= bound_qubit_worstcase(a) - 1e-15);
    double previous = pair;
    for (int n = 1; n <= 8; ++n) {
      const double m = bound_markovian(a, ap, n);
      CHECK(m <= pair + 1e-15);
      if (n > 1 && a != ap) CHECK(m < previous);
      previous = m;
    }
  }
  CHECK(bound_markovian(0.2, 0.9, 400) < 1e-6);
}
