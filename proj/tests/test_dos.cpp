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
#include <cmath>
#include <random>

#include "dense_oracle.hpp"
#include "qrs/dos.hpp"
#include "qrs/network.hpp"
#include "qrs/spectrum.hpp"

namespace {

using qrs::Complex;
using qrs::PauliSum;
using qrs::PauliTerm;

qrs::SupplyNetwork fixture(qrs::Scenario s) { return qrs::apply_scenario(qrs::generate_fixture(42), s); }

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

std::size_t nearest_bin(const std::vector<double>& grid, double e) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (std::abs(grid[k] - e) < std::abs(grid[best] - e)) best = k;
  }
  return best;
}

TEST(SplitCommuting, FixtureGroups) {
  const auto h = qrs::build_hamiltonian(fixture(qrs::Scenario::B));
  const auto parts = qrs::split_commuting(h);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].size(), 40u);
  EXPECT_EQ(parts[1].size(), 57u);
  EXPECT_EQ(parts[2].size(), 21u);
  PauliSum sum(40);
  for (const auto& p : parts) {
    sum = sum + p;
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = a + 1; b < p.size(); ++b) EXPECT_TRUE(qrs::commutes(p.terms()[a], p.terms()[b]));
  }
  EXPECT_EQ(sum, h);
}

TEST(TrotterStep, DiagonalHamiltonianIsExact) {
  const auto h = qrs::build_hamiltonian(qrs::subnetwork(fixture(qrs::Scenario::none), 6));
  std::mt19937_64 rng(4);
  auto psi = oracle::random_state(6, rng);
  const oracle::Vec ref = oracle::propagator(oracle::dense(h, 6), 0.7) * oracle::vec(psi);
  qrs::trotter_step(psi, qrs::split_commuting(h), 0.7);
  EXPECT_LT(oracle::max_abs(oracle::vec(psi) - ref), 1e-12);
}

TEST(TrotterStep, SingleQubitShockClosedForm) {
  const PauliSum h(1, {PauliTerm::X(0, -1.5)});
  auto psi = qrs::Statevector::basis(1);
  const double dt = 0.23;
  qrs::trotter_step(psi, qrs::split_commuting(h), dt);
  EXPECT_NEAR(std::abs(psi[0] - Complex(std::cos(1.5 * dt), 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(psi[1] - Complex(0.0, std::sin(1.5 * dt))), 0.0, 1e-15);
}

TEST(TrotterStep, ErrorStaysWithinBoundOnEightQubits) {
  const auto h = qrs::build_hamiltonian(qrs::subnetwork(fixture(qrs::Scenario::A), 8));
  const auto parts = qrs::split_commuting(h);
  const qrs::TrotterConfig cfg{32, 10.0, 0.0, 8};
  const auto bound = qrs::trotter_error_report(parts, cfg);
  const oracle::Mat u = oracle::propagator(oracle::dense(h, 8), cfg.dt());
  auto psi = qrs::Statevector::basis(8);
  oracle::Vec exact = oracle::vec(psi);
  for (std::size_t j = 1; j < cfg.steps; ++j) {
    qrs::trotter_step(psi, parts, cfg.dt());
    exact = u * exact;
    EXPECT_LE((oracle::vec(psi) - exact).norm(), bound.per_step * j + 1e-12);
  }
  EXPECT_GT(bound.per_step, 0.0);
}

TEST(TrotterErrorReport, Arithmetic) {
  const std::vector<PauliSum> parts{PauliSum(1, {PauliTerm::Z(0, 0.1)}), PauliSum(1, {PauliTerm::X(0, 1.5)})};
  qrs::TrotterConfig cfg;
  cfg.steps = 2;
  cfg.t_max = 0.323;
  const auto r = qrs::trotter_error_report(parts, cfg);
  EXPECT_NEAR(r.per_step, 0.323 * 0.323 / 2 * 0.3, 1e-15);
  EXPECT_NEAR(r.per_step, 0.01565, 1e-5);
  const std::vector<PauliSum> diag{PauliSum(1, {PauliTerm::Z(0)})};
  EXPECT_EQ(qrs::trotter_error_report(diag, cfg).per_step, 0.0);
}

TEST(Survival, EigenstateIsStationary) {
  const auto h = qrs::build_hamiltonian(qrs::subnetwork(fixture(qrs::Scenario::none), 5));
  const auto g = qrs::exact_ground_state(h, 5);
  const qrs::TrotterConfig cfg{32, 10.0, g.energy, 8};
  const auto s = qrs::survival_series(g.state, h, cfg);
  ASSERT_EQ(s.amplitudes.size(), 32u);
  for (const auto& a : s.amplitudes) EXPECT_NEAR(std::abs(a - Complex(1.0)), 0.0, 1e-12);
  EXPECT_NEAR(s.nyquist, 1.55, 1e-12);
}

TEST(Survival, TwoLevelClosedForm) {
  const double w = 0.9;
  const PauliSum h(1, {PauliTerm::Z(0, -0.5 * w)});
  const qrs::Statevector psi(1, {std::sqrt(0.75), std::sqrt(0.25)});
  const qrs::TrotterConfig cfg{40, 12.0, -0.5 * w, 8};
  const auto s = qrs::survival_series(psi, h, cfg);
  for (std::size_t j = 0; j < s.times.size(); ++j) {
    const Complex ref = 0.75 + 0.25 * std::exp(Complex(0.0, -w * s.times[j]));
    EXPECT_NEAR(std::abs(s.amplitudes[j] - ref), 0.0, 1e-8);
  }
}

qrs::DosResult synthetic(const std::vector<double>& energies, const std::vector<double>& weights,
                         std::size_t steps = 32, double t_max = 10.0) {
  qrs::DosResult r;
  r.dt = t_max / static_cast<double>(steps - 1);
  r.padding_factor = 8;
  for (std::size_t j = 0; j < steps; ++j) {
    const double t = r.dt * static_cast<double>(j);
    Complex a = 0.0;
    for (std::size_t k = 0; k < energies.size(); ++k) a += weights[k] * std::exp(Complex(0.0, -energies[k] * t));
    r.times.push_back(t);
    r.amplitudes.push_back(a);
  }
  return qrs::dos_reconstruct(r);
}

TEST(DosReconstruct, SingleLevelPeaksAtShift) {
  auto r = synthetic({0.0}, {1.0});
  ASSERT_EQ(r.density.size(), 256u);
  const std::size_t k = argmax(r.density);
  EXPECT_EQ(k, nearest_bin(r.energy_grid, 0.0));
  auto sorted = r.density;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  EXPECT_GE(r.density[k], 10.0 * sorted[sorted.size() / 2]);
  EXPECT_TRUE(std::is_sorted(r.energy_grid.begin(), r.energy_grid.end()));
}

TEST(DosReconstruct, TwoLevelPeaksAndWeights) {
  const auto r = synthetic({-1.2, 1.4}, {0.75, 0.25});
  const std::size_t a = nearest_bin(r.energy_grid, -1.2), b = nearest_bin(r.energy_grid, 1.4);
  const std::size_t pa = std::max_element(r.density.begin() + a - 4, r.density.begin() + a + 5) - r.density.begin();
  const std::size_t pb = std::max_element(r.density.begin() + b - 4, r.density.begin() + b + 5) - r.density.begin();
  EXPECT_LE(std::abs(static_cast<long>(pa) - static_cast<long>(a)), 1);
  EXPECT_LE(std::abs(static_cast<long>(pb) - static_cast<long>(b)), 1);
  EXPECT_NEAR(r.density[pa] / r.density[pb], 3.0, 0.6);
}

TEST(DosReconstruct, SpectrumWeightsNormalised) {
  const auto r = synthetic({-1.0, 0.5, 2.0}, {0.5, 0.3, 0.2});
  const auto s = qrs::spectrum_from_dos(r);
  EXPECT_EQ(s.source, qrs::SpectrumSource::dos);
  ASSERT_TRUE(s.weights.has_value());
  double total = 0.0;
  for (double w : *s.weights) total += w;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_TRUE(std::is_sorted(s.energies.begin(), s.energies.end()));
}

TEST(Nyquist, StrictComparison) {
  const qrs::TrotterConfig cfg{32, 10.0, 0.0, 8};
  EXPECT_NEAR(qrs::nyquist_check(cfg, 1.0).nyquist, 1.55, 1e-12);
  EXPECT_TRUE(qrs::nyquist_check(cfg, 1.0).pass);
  EXPECT_FALSE(qrs::nyquist_check(cfg, 2.0).pass);
  EXPECT_FALSE(qrs::nyquist_check(cfg, 1.55).pass);
}

TEST(BoltzmannTail, LimitsAndNormalisation) {
  const auto h = qrs::build_hamiltonian(qrs::subnetwork(fixture(qrs::Scenario::A), 8));
  const auto spec = qrs::exact_spectrum(h, 8);
  const auto grid = qrs::temperature_grid(1e-2, 1e6, 50, true);
  ASSERT_EQ(grid.size(), 50u);
  EXPECT_DOUBLE_EQ(grid.front(), 1e-2);
  EXPECT_NEAR(grid.back(), 1e6, 1e-6);
  const auto c = qrs::boltzmann_tail(spec, 0.85, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_NEAR(c.normalization[k], 1.0, 1e-12);
    if (k > 0) EXPECT_GE(c.p_cat[k], c.p_cat[k - 1]);
  }
  std::size_t above = 0;
  for (double e : spec.energies) above += e >= c.e_cutoff;
  EXPECT_DOUBLE_EQ(c.count_fraction, static_cast<double>(above) / spec.energies.size());
  EXPECT_NEAR(c.p_cat.back(), c.count_fraction, 1e-6);
  const std::vector<double> cold{1e-6};
  EXPECT_LT(qrs::boltzmann_tail(spec, 0.85, cold).p_cat[0], 1e-12);
}

TEST(Vix, RoundTrip) {
  EXPECT_EQ(qrs::vix_map(0.0, 0.55), 0.0);
  EXPECT_NEAR(qrs::temperature_of(std::sqrt(1.1), 0.55), 1.0, 1e-15);
  for (double t : qrs::temperature_grid(1e-2, 1e6, 50, true))
    EXPECT_NEAR(qrs::temperature_of(qrs::vix_map(t, 0.55), 0.55), t, 1e-12 * t);
}

TEST(Cascade, NoShockStaysStable) {
  const auto c = qrs::cascade_simulate(qrs::subnetwork(fixture(qrs::Scenario::none), 10), 5.0, 32);
  ASSERT_EQ(c.per_node_stress.size(), 8u);
  EXPECT_EQ(c.substeps, 5u);
  for (const auto& snap : c.per_node_stress)
    for (double s : snap) EXPECT_LE(s, 1e-10);
}

TEST(Cascade, SingleNodeRabiOscillation) {
  qrs::SupplyNetwork net;
  net.nodes = {{0, "a", 0, 0.0}};
  net.shocks = {{0, 1.5}};
  const auto c = qrs::cascade_simulate(net, 5.0, 32);
  for (std::size_t j = 0; j < c.snapshot_times.size(); ++j) {
    EXPECT_NEAR(c.snapshot_times[j], 5.0 * j / 7.0, 1e-14);
    EXPECT_NEAR(c.per_node_stress[j][0], std::pow(std::sin(1.5 * c.snapshot_times[j]), 2), 1e-6);
  }
  EXPECT_TRUE(std::isnan(c.tier_means[0][1]));
}

}  // namespace
