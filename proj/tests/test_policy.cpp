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

#include <random>

#include "dense_oracle.hpp"
#include "qrs/network.hpp"
#include "qrs/policy.hpp"
#include "qrs/spectrum.hpp"

namespace {

using qrs::PauliSum;
using qrs::PauliTerm;

qrs::SupplyNetwork fixture(qrs::Scenario s) { return qrs::apply_scenario(qrs::generate_fixture(42), s); }

TEST(PolicyGradient, VanishesForNullAndCommutingPerturbations) {
  const auto net = fixture(qrs::Scenario::none);
  const auto h = qrs::build_hamiltonian(qrs::subnetwork(net, 6));
  std::mt19937_64 rng(3);
  const auto psi = oracle::random_state(6, rng);
  EXPECT_EQ(qrs::policy_gradient(psi, h, PauliSum(6)), 0.0);
  const PauliSum dz(6, {PauliTerm::Z(2, 0.5), PauliTerm::ZZ(1, 4, 0.3)});
  EXPECT_EQ(qrs::policy_gradient(psi, h + dz, dz), 0.0);
}

TEST(PolicyGradient, MatchesDenseCommutatorOnEightQubits) {
  const auto net = fixture(qrs::Scenario::A);
  const auto h = qrs::build_hamiltonian(qrs::subnetwork(net, 8));
  const auto dh = qrs::canonical_policies(net)[2].perturbation.restrict_to(8);
  const auto hp = h + dh;
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 3; ++trial) {
    const auto psi = oracle::random_state(8, rng);
    const auto a = oracle::dense(hp, 8), b = oracle::dense(dh, 8);
    const oracle::Vec v = oracle::vec(psi);
    const qrs::Complex ref = v.dot((a * b - b * a) * v);
    EXPECT_NEAR(ref.real(), 0.0, 1e-12);
    EXPECT_NEAR(qrs::policy_gradient(psi, hp, dh), std::abs(ref.imag()), 1e-10);
  }
}

TEST(PolicyGradient, RealStatesAndRealOperatorsGiveZero) {
  // <psi|[H, dH]|psi> is imaginary for Hermitian operands and real for real
  // symmetric matrices and a real state, so it must vanish.
  const auto net = fixture(qrs::Scenario::A);
  const auto h = qrs::build_hamiltonian(qrs::subnetwork(net, 8));
  const auto g = qrs::exact_ground_state(h, 8);
  for (const auto& p : qrs::canonical_policies(net)) {
    const auto dh = p.perturbation.restrict_to(8);
    EXPECT_NEAR(qrs::policy_gradient(g.state, h + dh, dh), 0.0, 1e-12);
  }
}

TEST(PolicyEnergyDelta, FrozenStateShift) {
  const auto net = fixture(qrs::Scenario::none);
  const auto h = qrs::build_hamiltonian(qrs::subnetwork(net, 6));
  const auto g = qrs::exact_ground_state(h, 6);
  EXPECT_EQ(qrs::policy_energy_delta(g.state, h, g.energy), qrs::expectation(h, g.state) - g.energy);
  // Fixture biases are positive and couplings ferromagnetic, so the diagonal
  // ground state is all stressed (<Z> = -1 everywhere).
  for (std::size_t q = 0; q < 6; ++q) EXPECT_NEAR(qrs::stress_probability(g.state, q), 1.0, 1e-12);
  const PauliSum dz(6, {PauliTerm::Z(3, 0.4), PauliTerm::Z(4, 0.4), PauliTerm::Z(5, 0.4)});
  EXPECT_NEAR(qrs::policy_energy_delta(g.state, h + dz, g.energy), -0.4 * 3, 1e-12);
}

TEST(Screen, CountsRanksAndScaling) {
  const auto net = fixture(qrs::Scenario::A);
  const auto h = qrs::build_hamiltonian(net).restrict_to(8);
  std::mt19937_64 rng(5);
  const auto psi = oracle::random_state(8, rng);
  const double e0 = qrs::expectation(h, psi);
  const auto policies = qrs::canonical_policies(net);
  const auto r = qrs::screen_policies(psi, e0, h, policies, 8, 40, 287);
  ASSERT_EQ(r.scores.size(), 6u);
  EXPECT_EQ(r.instrumentation.expectation_calls, 12u);
  EXPECT_EQ(r.instrumentation.vqe_iterations_equiv, 6u * 287u);
  EXPECT_DOUBLE_EQ(r.instrumentation.speedup_factor, 287.0 / 2.0);
  EXPECT_EQ(r.scores[0].gradient, 0.0);
  EXPECT_EQ(r.scores[0].delta_e_first_order, 0.0);
  EXPECT_EQ(r.scores[0].rank, 6u);
  for (const auto& s : r.scores) {
    EXPECT_NEAR(s.delta_e_scaled, s.delta_e_first_order * 40.0 / 8.0, 1e-12);
  }
  // Pure-Z perturbations commute with the Z part of H; only the X shock on
  // qubit 0 contributes, which rate-hike (qubits 9-19) never touches.
  EXPECT_EQ(r.scores[1].gradient, 0.0);
  EXPECT_GT(r.scores[2].gradient, 0.0);
  EXPECT_GT(r.scores[2].gradient, r.scores[3].gradient);
  // combined contains the subsidy, so the two share the top ranks.
  EXPECT_LE(r.scores[2].rank, 2u);
  EXPECT_LE(r.scores[5].rank, 2u);
  // rate-hike lies entirely beyond qubit 7 and is dropped with a warning.
  EXPECT_EQ(r.scores[1].dropped_terms, 11u);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Screen, TieBreakPutsNullLastThenByName) {
  const PauliSum h(2, {PauliTerm::ZZ(0, 1, -1.0)});
  const auto psi = qrs::Statevector::basis(2);
  const std::vector<qrs::PolicySpec> p{
      {"zeta", PauliSum(2, {PauliTerm::Z(0, 0.1)})},
      {"none", PauliSum(2)},
      {"alpha", PauliSum(2, {PauliTerm::Z(1, 0.1)})},
  };
  const auto r = qrs::screen_policies(psi, -1.0, h, p, 2, 2);
  EXPECT_EQ(r.scores[2].rank, 1u);
  EXPECT_EQ(r.scores[0].rank, 2u);
  EXPECT_EQ(r.scores[1].rank, 3u);
}

TEST(Heatmap, DiagonalSystemGivesBasisRows) {
  const auto net = fixture(qrs::Scenario::none);
  const auto h = qrs::build_hamiltonian(net);
  const auto policies = qrs::canonical_policies(net);
  const auto map = qrs::policy_heatmap(h, policies, 8);
  EXPECT_EQ(map.solver, "exact");
  ASSERT_EQ(map.rows.size(), policies.size());
  EXPECT_EQ(map.rows[0].delta_e_reoptimized, 0.0);
  for (std::size_t k = 0; k < map.rows.size(); ++k) {
    if (!policies[k].perturbation.is_diagonal()) continue;
    for (double s : map.rows[k].stress) EXPECT_TRUE(std::abs(s) < 1e-12 || std::abs(s - 1.0) < 1e-12);
  }
}

TEST(Heatmap, SubsidyChangesShockedNodes) {
  const auto net = fixture(qrs::Scenario::A);
  const auto h = qrs::build_hamiltonian(net);
  const auto policies = qrs::canonical_policies(net);
  const auto map = qrs::policy_heatmap(h, policies, 10);
  const auto hs = h.restrict_to(10);
  const auto base = qrs::exact_ground_state(hs, 10);
  for (std::size_t q = 0; q < 10; ++q)
    EXPECT_NEAR(map.rows[0].stress[q], qrs::stress_probability(base.state, q), 1e-10);
  const auto sub = qrs::exact_ground_state(hs + policies[2].perturbation.restrict_to(10), 10);
  double diff = 0.0;
  for (std::size_t q = 2; q <= 4; ++q) {
    EXPECT_NEAR(map.rows[2].stress[q], qrs::stress_probability(sub.state, q), 1e-10);
    diff = std::max(diff, std::abs(map.rows[2].stress[q] - map.rows[0].stress[q]));
  }
  EXPECT_GT(diff, 1e-3);
  EXPECT_NEAR(map.rows[2].delta_e_reoptimized, sub.energy - base.energy, 1e-10);
}

}  // namespace
