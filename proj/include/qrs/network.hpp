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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qrs/pauli.hpp"

namespace qrs {

inline constexpr std::size_t kFixtureNodes = 40;
inline constexpr std::size_t kTierCount = 4;

struct SupplyNode {
  std::uint32_t index = 0;
  std::string name;
  int tier = 0;
  double bias = 0.0;  // h_i

  bool operator==(const SupplyNode&) const = default;
};

struct SupplyEdge {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  double coupling = 0.0;  // J_ij

  bool operator==(const SupplyEdge&) const = default;
};

/// Tiered supply graph. Node i is qubit i; |1> on a qubit means stressed.
struct SupplyNetwork {
  std::vector<SupplyNode> nodes;
  std::vector<SupplyEdge> edges;
  std::map<std::uint32_t, double> shocks;  // qubit -> lambda_k

  std::size_t size() const { return nodes.size(); }
  double mean_coupling() const;

  bool operator==(const SupplyNetwork&) const = default;
};

/// Tier of a fixture qubit: 0-1 tier 0, 2-8 tier 1, 9-19 tier 2, 20-39 tier 3.
int fixture_tier(std::uint32_t index);
double tier_bias(int tier);
std::string fixture_node_name(std::uint32_t index);

/**
 * @brief The 40-node, 57-edge four-tier fixture.
 *
 * Edges follow the coprime-stride enumeration (tier 0->1: every raw
 * material feeds every supplier; tier 1->2: (2 + k mod 7, 9 + k mod 11) for
 * k < 21; tier 2->3: (9 + k mod 11, 20 + k mod 20) for k < 22). Coupling e
 * is 0.3 + 0.5 u_e with u_e the e-th splitmix64 draw from `seed`.
 */
SupplyNetwork generate_fixture(std::uint64_t seed = 42);

enum class Scenario { none, A, B };

Scenario parse_scenario(std::string_view tag);
std::string_view to_string(Scenario s);

/// Replaces the shock set: A puts lambda = 1.5 on qubit 0, B adds
/// lambda = 0.4 on qubits 20-39, none clears it.
SupplyNetwork apply_scenario(SupplyNetwork net, Scenario scenario);

/// H = sum_i h_i Z_i - sum_(i,j) J_ij Z_i Z_j - sum_k lambda_k X_k on |nodes| qubits.
PauliSum build_hamiltonian(const SupplyNetwork& net);

/// The three commuting groups used by the product formula:
/// local Z fields, ZZ couplings, X shocks.
std::vector<PauliSum> hamiltonian_parts(const SupplyNetwork& net);

/// Induced subgraph on qubits 0..n-1; indices are unchanged.
SupplyNetwork subnetwork(const SupplyNetwork& net, std::size_t n);

struct PolicySpec {
  std::string name;
  PauliSum perturbation;  // delta H_P
};

/// Supplier-to-distributor routes switched on by the trade-diversion policy.
inline constexpr std::pair<std::uint32_t, std::uint32_t> kAlternateEdges[] = {
    {3, 10}, {4, 12}, {5, 14}, {6, 16}, {7, 18}};

/// none, rate-hike, supplier-subsidy, stockpile-release, trade-diversion,
/// combined (rate-hike + supplier-subsidy + stockpile-release), bound to 40 qubits.
std::vector<PolicySpec> canonical_policies(const SupplyNetwork& net, double trade_delta_j = 0.2);

// JSON network file. Couplings carry 17 significant digits.
std::string to_json(const SupplyNetwork& net);
SupplyNetwork network_from_json(std::string_view text);
SupplyNetwork load_network(const std::string& path);
void save_network(const SupplyNetwork& net, const std::string& path);

// Policy file: `[name]` headers followed by operator text lines.
std::string policies_to_text(const std::vector<PolicySpec>& policies);
std::vector<PolicySpec> parse_policies(std::string_view text, std::size_t num_qubits);

}  // namespace qrs
