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

#include "qrs/network.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qrs/splitmix64.hpp"

namespace qrs {

double SupplyNetwork::mean_coupling() const {
  if (edges.empty()) return 0.0;
  double s = 0.0;
  for (const auto& e : edges) s += e.coupling;
  return s / static_cast<double>(edges.size());
}

int fixture_tier(std::uint32_t index) {
  if (index < 2) return 0;
  if (index < 9) return 1;
  if (index < 20) return 2;
  if (index < 40) return 3;
  throw std::out_of_range("fixture has 40 nodes");
}

double tier_bias(int tier) {
  static constexpr double kBias[] = {0.10, 0.15, 0.20, 0.25};
  if (tier < 0 || tier > 3) throw std::out_of_range("tier must be 0-3");
  return kBias[tier];
}

std::string fixture_node_name(std::uint32_t index) {
  char buf[16];
  switch (fixture_tier(index)) {
    case 0: std::snprintf(buf, sizeof buf, "RM-%c", 'A' + static_cast<int>(index)); break;
    case 1: std::snprintf(buf, sizeof buf, "Sup-%c", 'A' + static_cast<int>(index - 2)); break;
    case 2: std::snprintf(buf, sizeof buf, "Dist-%02u", index - 8); break;
    default: std::snprintf(buf, sizeof buf, "Store-%02u", index - 19); break;
  }
  return buf;
}

SupplyNetwork generate_fixture(std::uint64_t seed) {
  SupplyNetwork net;
  for (std::uint32_t i = 0; i < kFixtureNodes; ++i) {
    const int tier = fixture_tier(i);
    net.nodes.push_back({i, fixture_node_name(i), tier, tier_bias(tier)});
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t src : {0u, 1u}) {
    for (std::uint32_t s = 2; s <= 8; ++s) pairs.emplace_back(src, s);
  }
  for (std::uint32_t k = 0; k < 21; ++k) pairs.emplace_back(2 + k % 7, 9 + k % 11);
  for (std::uint32_t k = 0; k < 22; ++k) pairs.emplace_back(9 + k % 11, 20 + k % 20);

  SplitMix64 rng(seed);
  for (const auto& [a, b] : pairs) net.edges.push_back({a, b, 0.3 + 0.5 * rng.next_double()});
  return net;
}

Scenario parse_scenario(std::string_view tag) {
  if (tag == "A" || tag == "a") return Scenario::A;
  if (tag == "B" || tag == "b") return Scenario::B;
  if (tag == "none") return Scenario::none;
  throw std::invalid_argument("unknown scenario '" + std::string(tag) + "' (expected A, B or none)");
}

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::A: return "A";
    case Scenario::B: return "B";
    case Scenario::none: return "none";
  }
  return "none";
}

SupplyNetwork apply_scenario(SupplyNetwork net, Scenario scenario) {
  if (net.size() != kFixtureNodes) {
    throw std::invalid_argument("shock scenarios are defined on the 40-node network");
  }
  net.shocks.clear();
  if (scenario == Scenario::none) return net;
  net.shocks[0] = 1.5;
  if (scenario == Scenario::B) {
    for (std::uint32_t k = 20; k < 40; ++k) net.shocks[k] = 0.4;
  }
  return net;
}

std::vector<PauliSum> hamiltonian_parts(const SupplyNetwork& net) {
  const std::size_t n = net.size();
  std::vector<PauliTerm> local, coupling, shock;
  for (const auto& node : net.nodes) local.push_back(PauliTerm::Z(node.index, node.bias));
  for (const auto& e : net.edges) coupling.push_back(PauliTerm::ZZ(e.src, e.dst, -e.coupling));
  for (const auto& [k, lambda] : net.shocks) shock.push_back(PauliTerm::X(k, -lambda));
  return {PauliSum(n, std::move(local)), PauliSum(n, std::move(coupling)),
          PauliSum(n, std::move(shock))};
}

PauliSum build_hamiltonian(const SupplyNetwork& net) {
  const auto parts = hamiltonian_parts(net);
  return parts[0] + parts[1] + parts[2];
}

SupplyNetwork subnetwork(const SupplyNetwork& net, std::size_t n) {
  if (n < 1 || n > net.size()) {
    throw std::out_of_range("sub-network size " + std::to_string(n) + " outside 1.." +
                            std::to_string(net.size()));
  }
  SupplyNetwork sub;
  for (const auto& node : net.nodes) {
    if (node.index < n) sub.nodes.push_back(node);
  }
  for (const auto& e : net.edges) {
    if (e.src < n && e.dst < n) sub.edges.push_back(e);
  }
  for (const auto& [k, lambda] : net.shocks) {
    if (k < n) sub.shocks[k] = lambda;
  }
  return sub;
}

std::vector<PolicySpec> canonical_policies(const SupplyNetwork& net, double trade_delta_j) {
  if (net.size() != kFixtureNodes) {
    throw std::invalid_argument("canonical policies are defined on the 40-node network");
  }
  const std::size_t n = kFixtureNodes;
  std::vector<PauliTerm> rate, subsidy, stock, trade;
  for (std::uint32_t k = 9; k <= 19; ++k) rate.push_back(PauliTerm::Z(k, 0.4));
  subsidy = {PauliTerm::X(2, -0.6), PauliTerm::X(3, -0.6), PauliTerm::X(4, -0.4)};
  for (std::uint32_t k = 5; k <= 7; ++k) stock.push_back(PauliTerm::Z(k, 0.5));
  for (const auto& [a, b] : kAlternateEdges) trade.push_back(PauliTerm::ZZ(a, b, trade_delta_j));

  PauliSum rate_sum(n, rate), subsidy_sum(n, subsidy), stock_sum(n, stock);
  return {
      {"none", PauliSum(n)},
      {"rate-hike", rate_sum},
      {"supplier-subsidy", subsidy_sum},
      {"stockpile-release", stock_sum},
      {"trade-diversion", PauliSum(n, trade)},
      {"combined", rate_sum + subsidy_sum + stock_sum},
  };
}

// ---------------------------------------------------------------------------
// Files

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string to_json(const SupplyNetwork& net) {
  std::string s = "{\n  \"nodes\": [\n";
  for (std::size_t k = 0; k < net.nodes.size(); ++k) {
    const auto& v = net.nodes[k];
    s += "    {\"index\": " + std::to_string(v.index) + ", \"name\": " + quoted(v.name) +
         ", \"tier\": " + std::to_string(v.tier) + ", \"bias\": " + g17(v.bias) + "}";
    s += k + 1 < net.nodes.size() ? ",\n" : "\n";
  }
  s += "  ],\n  \"edges\": [\n";
  for (std::size_t k = 0; k < net.edges.size(); ++k) {
    const auto& e = net.edges[k];
    s += "    {\"src\": " + std::to_string(e.src) + ", \"dst\": " + std::to_string(e.dst) +
         ", \"coupling\": " + g17(e.coupling) + "}";
    s += k + 1 < net.edges.size() ? ",\n" : "\n";
  }
  s += "  ],\n  \"shocks\": {";
  bool first = true;
  for (const auto& [k, lambda] : net.shocks) {
    s += first ? "" : ", ";
    s += "\"" + std::to_string(k) + "\": " + g17(lambda);
    first = false;
  }
  s += "}\n}\n";
  return s;
}

SupplyNetwork network_from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  SupplyNetwork net;
  for (const auto& v : j.at("nodes")) {
    net.nodes.push_back({v.at("index").get<std::uint32_t>(), v.at("name").get<std::string>(),
                         v.at("tier").get<int>(), v.at("bias").get<double>()});
  }
  for (std::size_t k = 0; k < net.nodes.size(); ++k) {
    if (net.nodes[k].index != k) {
      throw std::invalid_argument("node indices must be 0..n-1 in order");
    }
  }
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (const auto& e : j.at("edges")) {
    SupplyEdge edge{e.at("src").get<std::uint32_t>(), e.at("dst").get<std::uint32_t>(),
                    e.at("coupling").get<double>()};
    if (edge.src >= net.size() || edge.dst >= net.size() || edge.src == edge.dst) {
      throw std::invalid_argument("edge endpoint outside the node list");
    }
    if (!seen.insert({edge.src, edge.dst}).second) {
      throw std::invalid_argument("duplicate edge " + std::to_string(edge.src) + "->" +
                                  std::to_string(edge.dst));
    }
    net.edges.push_back(edge);
  }
  if (j.contains("shocks")) {
    for (const auto& [key, value] : j.at("shocks").items()) {
      const auto k = static_cast<std::uint32_t>(std::stoul(key));
      if (k >= net.size()) throw std::invalid_argument("shock on unknown node " + key);
      net.shocks[k] = value.get<double>();
    }
  }
  return net;
}

SupplyNetwork load_network(const std::string& path) { return network_from_json(read_file(path)); }

void save_network(const SupplyNetwork& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json(net);
}

std::string policies_to_text(const std::vector<PolicySpec>& policies) {
  std::string s;
  for (const auto& p : policies) s += "[" + p.name + "]\n" + to_text(p.perturbation);
  return s;
}

std::vector<PolicySpec> parse_policies(std::string_view text, std::size_t num_qubits) {
  std::vector<PolicySpec> out;
  std::string body;
  std::string name;
  auto flush = [&] {
    if (name.empty()) return;
    auto op = parse_pauli_sum(body, num_qubits);
    if (!op.is_hermitian()) throw std::invalid_argument("policy " + name + " is not Hermitian");
    out.push_back({name, std::move(op)});
    body.clear();
  };
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    if (line[b] == '[') {
      flush();
      const auto e = line.find(']', b);
      if (e == std::string::npos) throw std::invalid_argument("unterminated policy header");
      name = line.substr(b + 1, e - b - 1);
    } else {
      if (name.empty()) throw std::invalid_argument("operator line before any [policy] header");
      body += line + "\n";
    }
  }
  flush();
  return out;
}

}  // namespace qrs
