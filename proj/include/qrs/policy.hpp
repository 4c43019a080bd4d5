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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qrs/network.hpp"
#include "qrs/pauli.hpp"
#include "qrs/statevector.hpp"
#include "qrs/vqe.hpp"

namespace qrs {

/// Real parts of <[H, dH]> above this are rejected: for Hermitian operands the
/// commutator expectation is purely imaginary.
inline constexpr double kCommutatorRealTolerance = 1e-10;

/// |<psi0| [H_p, dH] |psi0>|, with H_p = H + dH in the screening pipeline.
double policy_gradient(const Statevector& psi0, const PauliSum& h_p, const PauliSum& dh);

/// <psi0|H_p|psi0> - E0 with the state frozen (no re-optimisation).
double policy_energy_delta(const Statevector& psi0, const PauliSum& h_p, double e0);

struct PolicyScore {
  std::string name;
  double energy = 0.0;                // <psi0|H_P|psi0>
  double delta_e_first_order = 0.0;
  double delta_e_scaled = 0.0;        // delta_e_first_order * n_full / n_sub
  double gradient = 0.0;
  std::size_t rank = 0;               // 1-based, by descending gradient
  std::size_t dropped_terms = 0;      // terms outside the simulated qubits
  std::optional<double> delta_e_reoptimized;
};

struct ScreenInstrumentation {
  std::size_t expectation_calls = 0;
  std::size_t policies = 0;
  std::size_t vqe_iterations_equiv = 0;  // P x evaluations of one VQE run
  double speedup_factor = 0.0;
};

struct ScreenResult {
  std::vector<PolicyScore> scores;    // input order
  ScreenInstrumentation instrumentation;
  std::vector<std::string> warnings;
};

/**
 * @brief Scores every policy with one commutator and one energy expectation.
 *
 * Perturbations are cut down to qubits < n_sub; the number of dropped terms
 * goes into the score and a warning. Ranks sort by descending gradient; among
 * equal gradients a policy with an empty perturbation goes last, then names
 * ascend. `vqe_evaluations` is the evaluation count of one VQE run on the same
 * sub-network and sets the reported speedup.
 */
ScreenResult screen_policies(const Statevector& psi0, double e0, const PauliSum& h,
                             const std::vector<PolicySpec>& policies, std::size_t n_sub,
                             std::size_t n_full = kFixtureNodes, std::size_t vqe_evaluations = 0);

struct HeatmapRow {
  std::string name;
  std::vector<double> stress;         // per node of the sub-network
  double ground_energy = 0.0;
  double delta_e_reoptimized = 0.0;   // E0(H + dH) - E0(H)
  std::size_t multiplicity = 1;
};

struct Heatmap {
  double baseline_energy = 0.0;
  std::string solver;                 // "exact" or "vqe"
  std::vector<HeatmapRow> rows;
};

/// Re-solves the ground state of H + dH for every policy (exact when
/// n_sub <= 14, VQE otherwise) and records per-node stress.
Heatmap policy_heatmap(const PauliSum& h, const std::vector<PolicySpec>& policies,
                       std::size_t n_sub, const AnsatzConfig& ansatz = {},
                       const VqeOptions& vqe = {});

}  // namespace qrs
