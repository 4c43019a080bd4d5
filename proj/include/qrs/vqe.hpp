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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrs/optimize.hpp"
#include "qrs/network.hpp"
#include "qrs/pauli.hpp"
#include "qrs/statevector.hpp"

namespace qrs {

/**
 * Hardware-efficient ansatz. Layers d = 0..D each apply RY(theta[d*n + q]) to
 * every qubit q; layers d < D are followed by the CX chain q -> q+1, so the
 * circuit ends on rotations and N_p = n (D + 1).
 */
struct AnsatzConfig {
  std::size_t qubits = 1;
  std::size_t depth = 3;

  std::size_t parameter_count() const { return qubits * (depth + 1); }
};

Statevector prepare_ansatz(const AnsatzConfig& config, std::span<const double> params);

enum class OptimizerKind { quadratic, cobyla };

OptimizerKind parse_optimizer(std::string_view name);
std::string_view to_string(OptimizerKind k);

struct VqeOptions {
  std::size_t restarts = 5;
  std::uint64_t seed = 42;
  std::size_t max_evaluations = 2000;
  double rho_begin = 0.5;
  double rho_end = 1e-8;
  OptimizerKind optimizer = OptimizerKind::quadratic;
  std::size_t threads = 1;
};

struct RestartTrace {
  std::uint64_t seed = 0;               // seed + r
  std::size_t evaluations = 0;
  double final_energy = 0.0;
  StopReason reason = StopReason::converged;
  std::vector<double> best_so_far;      // per evaluation, nonincreasing
};

struct VqeResult {
  double best_energy = 0.0;
  std::vector<double> best_params;      // wrapped to [-pi, pi]
  std::size_t best_restart = 0;
  std::vector<RestartTrace> traces;
  Statevector ground_state;

  std::size_t total_evaluations() const;
};

/// Initial parameters of restart r: uniform on [-pi, pi] from splitmix64(seed + r).
std::vector<double> initial_parameters(std::size_t count, std::uint64_t stream_seed);

/// Multi-restart minimisation of <psi(theta)|H|psi(theta)>.
VqeResult vqe_minimize(const PauliSum& h, const AnsatzConfig& config, const VqeOptions& options = {});

struct DepthRow {
  std::size_t depth = 0;
  std::size_t parameter_count = 0;
  double energy = 0.0;
  double error = 0.0;               // energy - exact ground energy
  std::size_t evaluations = 0;
  double runtime_seconds = 0.0;
};

struct DepthStudy {
  double exact_energy = 0.0;
  std::vector<DepthRow> rows;
  bool runtime_monotone = true;     // soft check only
};

DepthStudy depth_study(const PauliSum& h, std::size_t n, std::span<const std::size_t> depths,
                       const VqeOptions& options = {});

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = slope x + intercept. Needs two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct DensityRow {
  std::size_t n = 0;
  double energy = 0.0;
  double density = 0.0;             // energy / n
};

struct EnergyDensityFit {
  LineFit fit;
  std::vector<DensityRow> rows;
  double mean_density = 0.0;
  double max_relative_deviation = 0.0;
};

/// Exact ground energies of the induced sub-networks and a linear fit in n.
EnergyDensityFit energy_density_fit(const SupplyNetwork& net, std::span<const std::size_t> sizes);

/// E_sub n_full / n_sub.
double scale_energy(double e_sub, std::size_t n_sub, std::size_t n_full);

enum class BaselineMode { gibbs_independent, ground_independent };

BaselineMode parse_baseline_mode(std::string_view name);
std::string_view to_string(BaselineMode m);

/// Per-node stress probability with couplings and shocks ignored.
std::vector<double> classical_baseline(const SupplyNetwork& net, BaselineMode mode,
                                       double temperature = 1.0);

struct AdvantageRow {
  std::size_t node = 0;
  double p_vqe = 0.0;
  double p_mc = 0.0;
  double delta = 0.0;
};

struct AdvantageReport {
  std::vector<AdvantageRow> rows;
  std::vector<std::size_t> flagged;
  double threshold = 0.15;
  double max_abs_delta = 0.0;
  std::size_t max_node = 0;
};

AdvantageReport quantum_advantage(const Statevector& psi, std::span<const double> baseline,
                                  double threshold = 0.15);

}  // namespace qrs
