// Copyright 2026 The QRS Authors
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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "dense_oracle.hpp"
#include "qrs/network.hpp"
#include "qrs/spectrum.hpp"

namespace {

using qrs::PauliSum;
using qrs::PauliTerm;

Eigen::VectorXd dense_eigenvalues(const PauliSum& h, std::size_t n) {
  Eigen::SelfAdjointEigenSolver<oracle::Mat> es(oracle::dense(h, n), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

TEST(ExactSpectrum, MatchesDenseDiagonalizationOnRandomOperators) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const auto h = oracle::random_sum(n, 7, rng);
    const auto s = qrs::exact_spectrum(h, n);
    const auto ref = dense_eigenvalues(h, n);
    ASSERT_EQ(s.energies.size(), static_cast<std::size_t>(ref.size()));
    for (Eigen::Index k = 0; k < ref.size(); ++k) EXPECT_NEAR(s.energies[k], ref[k], 1e-10);
  }
}

TEST(ExactSpectrum, FixtureBlocksAgreeWithDenseMatrix) {
  const auto net = qrs::apply_scenario(qrs::generate_fixture(42), qrs::Scenario::B);
  const auto h = qrs::build_hamiltonian(qrs::subnetwork(net, 8));
  const auto s = qrs::exact_spectrum(h, 8);
  const auto ref = dense_eigenvalues(h, 8);
  for (Eigen::Index k = 0; k < ref.size(); ++k) EXPECT_NEAR(s.energies[k], ref[k], 1e-10);
  EXPECT_NEAR(s.gap(), [&] {
    for (Eigen::Index k = 1; k < ref.size(); ++k) {
      if (ref[k] - ref[0] > 1e-9) return ref[k] - ref[0];
    }
    return 0.0;
  }(), 1e-10);
}

TEST(ExactSpectrum, DiagonalCases) {
  const auto one = qrs::exact_spectrum(PauliSum(1, {PauliTerm::Z(0, 0.7)}), 1);
  EXPECT_EQ(one.energies, (std::vector<double>{-0.7, 0.7}));
  const PauliSum h(2, {PauliTerm::Z(0, 0.1), PauliTerm::Z(1, 0.15), PauliTerm::ZZ(0, 1, -0.5)});
  const auto s = qrs::exact_spectrum(h, 2);
  const std::vector<double> ref{-0.75, -0.25, 0.45, 0.55};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(s.energies[k], ref[k], 1e-15);
  const auto g = qrs::exact_ground_state(h, 2);
  EXPECT_NEAR(std::abs(g.state[3]), 1.0, 1e-15);
}

TEST(IterativeGroundState, SingleQubitTransverseField) {
  const auto g = qrs::ground_state_iterative(PauliSum(1, {PauliTerm::X(0, -1.0)}), 1);
  EXPECT_NEAR(g.energy, -1.0, 1e-10);
  EXPECT_NEAR(std::abs(g.state[0]), 1.0 / std::sqrt(2.0), 1e-8);
  EXPECT_NEAR(std::abs(g.state[1]), 1.0 / std::sqrt(2.0), 1e-8);
  EXPECT_NEAR(std::abs(qrs::inner_product(g.state, g.state)), 1.0, 1e-12);
}

TEST(IterativeGroundState, RandomTenQubitOperator) {
  std::mt19937_64 rng(99);
  const auto h = oracle::random_sum(10, 25, rng);
  const double exact = qrs::exact_spectrum(h, 10).ground_energy();
  EXPECT_NEAR(qrs::ground_state_iterative(h, 10).energy, exact, 1e-8);
}

TEST(ExactSpectrum, OverlapWeightsSumToOne) {
  std::mt19937_64 rng(1);
  const auto h = oracle::random_sum(4, 6, rng);
  const auto ref = oracle::random_state(4, rng);
  const auto s = qrs::exact_spectrum(h, 4, &ref);
  ASSERT_TRUE(s.weights.has_value());
  double total = 0.0;
  for (double w : *s.weights) total += w;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(ExactGroundState, ReportsDegeneracy) {
  // -Z0 Z1 has two ground states |00> and |11>.
  const PauliSum h(2, {PauliTerm::ZZ(0, 1, -1.0)});
  const auto g = qrs::exact_ground_state(h, 2);
  EXPECT_NEAR(g.energy, -1.0, 1e-14);
  EXPECT_EQ(g.multiplicity, 2u);
  EXPECT_EQ(qrs::exact_spectrum(h, 2).ground_multiplicity, 2u);
}

TEST(ExactGroundState, EigenvectorSatisfiesEigenEquation) {
  const auto net = qrs::apply_scenario(qrs::generate_fixture(42), qrs::Scenario::A);
  const auto h = qrs::build_hamiltonian(qrs::subnetwork(net, 7));
  const auto g = qrs::exact_ground_state(h, 7);
  const auto v = oracle::vec(g.state);
  EXPECT_LT((oracle::dense(h, 7) * v - g.energy * v).norm(), 1e-10);
  EXPECT_NEAR(dense_eigenvalues(h, 7)[0], g.energy, 1e-10);
}

TEST(ExactSpectrum, RejectsOversizedAndNonHermitianInput) {
  EXPECT_THROW(qrs::exact_spectrum(PauliSum(15, {PauliTerm::Z(0)}), 15), std::invalid_argument);
  EXPECT_THROW(qrs::exact_spectrum(PauliSum(1, {PauliTerm::X(0, qrs::Complex(0, 1))}), 1),
               std::invalid_argument);
}

TEST(IterativeGroundState, AgreesWithExactSolver) {
  const auto net = qrs::apply_scenario(qrs::generate_fixture(42), qrs::Scenario::B);
  const auto h = qrs::build_hamiltonian(qrs::subnetwork(net, 11));
  const double exact = qrs::exact_ground_state(h, 11).energy;
  const auto it = qrs::ground_state_iterative(h, 11);
  EXPECT_NEAR(it.energy, exact, 1e-9);
  EXPECT_LT(it.residual, 1e-8);
}

}  // namespace
