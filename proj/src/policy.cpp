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

#include "qrs/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qrs/spectrum.hpp"

namespace qrs {

namespace {

void check_support(const Statevector& psi, const PauliSum& op, const char* what) {
  if (op.num_qubits() != psi.num_qubits()) {
    throw std::invalid_argument(std::string(what) + " is bound to " +
                                std::to_string(op.num_qubits()) + " qubits but the state has " +
                                std::to_string(psi.num_qubits()));
  }
}

}  // namespace

double policy_gradient(const Statevector& psi0, const PauliSum& h_p, const PauliSum& dh) {
  check_support(psi0, h_p, "policy Hamiltonian");
  check_support(psi0, dh, "policy perturbation");
  const PauliSum c = commutator(h_p, dh);
  if (c.empty()) return 0.0;
  const Complex v = expectation_complex(c, psi0);
  if (std::abs(v.real()) > kCommutatorRealTolerance) {
    throw std::domain_error("commutator expectation has real part " + std::to_string(v.real()) +
                            "; operands are not Hermitian");
  }
  return std::abs(v.imag());
}

double policy_energy_delta(const Statevector& psi0, const PauliSum& h_p, double e0) {
  check_support(psi0, h_p, "policy Hamiltonian");
  return expectation(h_p, psi0) - e0;
}

ScreenResult screen_policies(const Statevector& psi0, double e0, const PauliSum& h,
                             const std::vector<PolicySpec>& policies, std::size_t n_sub,
                             std::size_t n_full, std::size_t vqe_evaluations) {
  if (psi0.num_qubits() != n_sub) {
    throw std::invalid_argument("ground state does not live on the screened sub-network");
  }
  const PauliSum hs = h.num_qubits() == n_sub ? h : h.restrict_to(n_sub);
  ScreenResult out;
  auto& inst = out.instrumentation;
  for (const auto& p : policies) {
    PolicyScore s;
    s.name = p.name;
    const PauliSum dh = p.perturbation.restrict_to(n_sub, &s.dropped_terms);
    if (s.dropped_terms > 0) {
      out.warnings.push_back("policy '" + p.name + "': dropped " + std::to_string(s.dropped_terms) +
                             " of " + std::to_string(p.perturbation.size()) +
                             " terms acting outside qubits 0.." + std::to_string(n_sub - 1));
    }
    const PauliSum hp = hs + dh;
    s.gradient = policy_gradient(psi0, hp, dh);
    ++inst.expectation_calls;
    s.energy = expectation(hp, psi0);
    ++inst.expectation_calls;
    s.delta_e_first_order = s.energy - e0;
    s.delta_e_scaled = scale_energy(s.delta_e_first_order, n_sub, n_full);
    out.scores.push_back(std::move(s));
  }

  std::vector<std::size_t> order(out.scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& sa = out.scores[a];
    const auto& sb = out.scores[b];
    if (sa.gradient != sb.gradient) return sa.gradient > sb.gradient;
    const bool na = policies[a].perturbation.empty();
    const bool nb = policies[b].perturbation.empty();
    if (na != nb) return nb;
    return sa.name < sb.name;
  });
  for (std::size_t r = 0; r < order.size(); ++r) out.scores[order[r]].rank = r + 1;

  inst.policies = policies.size();
  inst.vqe_iterations_equiv = policies.size() * vqe_evaluations;
  inst.speedup_factor = inst.expectation_calls == 0
                            ? 0.0
                            : static_cast<double>(inst.vqe_iterations_equiv) /
                                  static_cast<double>(inst.expectation_calls);
  return out;
}

Heatmap policy_heatmap(const PauliSum& h, const std::vector<PolicySpec>& policies,
                       std::size_t n_sub, const AnsatzConfig& ansatz, const VqeOptions& vqe) {
  const PauliSum hs = h.num_qubits() == n_sub ? h : h.restrict_to(n_sub);
  const bool exact = n_sub <= kDenseQubitCap;
  Heatmap map;
  map.solver = exact ? "exact" : "vqe";

  struct Solved {
    double energy;
    Statevector state;
    std::size_t multiplicity;
  };
  auto solve = [&](const PauliSum& op) -> Solved {
    if (exact) {
      auto g = exact_ground_state(op, n_sub);
      return {g.energy, std::move(g.state), g.multiplicity};
    }
    AnsatzConfig cfg = ansatz;
    cfg.qubits = n_sub;
    auto r = vqe_minimize(op, cfg, vqe);
    return {r.best_energy, std::move(r.ground_state), 1};
  };

  map.baseline_energy = solve(hs).energy;
  for (const auto& p : policies) {
    const auto g = solve(hs + p.perturbation.restrict_to(n_sub));
    HeatmapRow row;
    row.name = p.name;
    row.ground_energy = g.energy;
    row.delta_e_reoptimized = g.energy - map.baseline_energy;
    row.multiplicity = g.multiplicity;
    for (std::size_t q = 0; q < n_sub; ++q) row.stress.push_back(stress_probability(g.state, q));
    map.rows.push_back(std::move(row));
  }
  return map;
}

}  // namespace qrs
