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

#include "qrs/vqe.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "qrs/spectrum.hpp"
#include "qrs/splitmix64.hpp"

namespace qrs {

Statevector prepare_ansatz(const AnsatzConfig& config, std::span<const double> params) {
  const std::size_t n = config.qubits;
  if (params.size() != config.parameter_count()) {
    throw std::invalid_argument("ansatz expects " + std::to_string(config.parameter_count()) +
                                " parameters, got " + std::to_string(params.size()));
  }
  Statevector psi = Statevector::basis(n, 0);
  for (std::size_t d = 0; d <= config.depth; ++d) {
    for (std::size_t q = 0; q < n; ++q) psi.apply_ry(q, params[d * n + q]);
    if (d < config.depth) {
      for (std::size_t q = 0; q + 1 < n; ++q) psi.apply_cx(q, q + 1);
    }
  }
  return psi;
}

OptimizerKind parse_optimizer(std::string_view name) {
  if (name == "cobyla") return OptimizerKind::cobyla;
  if (name == "quadratic") return OptimizerKind::quadratic;
  throw std::invalid_argument("unknown optimizer '" + std::string(name) +
                              "' (expected quadratic or cobyla)");
}

std::string_view to_string(OptimizerKind k) {
  return k == OptimizerKind::cobyla ? "cobyla" : "quadratic";
}

std::size_t VqeResult::total_evaluations() const {
  std::size_t s = 0;
  for (const auto& t : traces) s += t.evaluations;
  return s;
}

std::vector<double> initial_parameters(std::size_t count, std::uint64_t stream_seed) {
  SplitMix64 rng(stream_seed);
  std::vector<double> theta(count);
  for (auto& t : theta) t = -std::numbers::pi + 2.0 * std::numbers::pi * rng.next_double();
  return theta;
}

namespace {

double wrap_angle(double t) {
  double w = std::remainder(t, 2.0 * std::numbers::pi);
  if (w == -std::numbers::pi) w = std::numbers::pi;
  return w;
}

struct RestartOutcome {
  RestartTrace trace;
  std::vector<double> params;
};

RestartOutcome run_restart(const CompiledOperator& op, const AnsatzConfig& config,
                           const VqeOptions& options, std::size_t r) {
  const std::uint64_t stream = options.seed + r;
  auto energy = [&](std::span<const double> theta) {
    return op.expectation(prepare_ansatz(config, theta));
  };
  auto x0 = initial_parameters(config.parameter_count(), stream);
  const TrustRegionOptions tr{options.rho_begin, options.rho_end, options.max_evaluations};
  MinimizeResult m = options.optimizer == OptimizerKind::cobyla
                         ? cobyla_minimize(energy, std::move(x0), tr)
                         : quadratic_model_minimize(energy, std::move(x0), tr);
  RestartOutcome out;
  out.trace.seed = stream;
  out.trace.evaluations = m.evaluations;
  out.trace.reason = m.reason;
  out.trace.best_so_far.reserve(m.history.size());
  double best = m.history.front();
  for (double v : m.history) {
    best = std::min(best, v);
    out.trace.best_so_far.push_back(best);
  }
  out.params = std::move(m.x);
  for (auto& t : out.params) t = wrap_angle(t);
  out.trace.final_energy = energy(out.params);
  return out;
}

}  // namespace

VqeResult vqe_minimize(const PauliSum& h, const AnsatzConfig& config, const VqeOptions& options) {
  if (config.qubits < 1) throw std::invalid_argument("ansatz needs at least one qubit");
  if (h.num_qubits() != config.qubits) {
    throw std::invalid_argument("Hamiltonian is bound to " + std::to_string(h.num_qubits()) +
                                " qubits but the ansatz has " + std::to_string(config.qubits));
  }
  if (!h.is_hermitian()) throw std::invalid_argument("VQE needs a Hermitian operator");
  if (options.restarts < 1) throw std::invalid_argument("at least one restart is required");
  check_memory(statevector_bytes(config.qubits) * std::max<std::size_t>(1, options.threads));

  const CompiledOperator op(h);
  std::vector<RestartOutcome> outcomes(options.restarts);
  std::vector<std::string> failures(options.restarts);

  auto work = [&](std::size_t r) {
    try {
      outcomes[r] = run_restart(op, config, options, r);
    } catch (const std::exception& e) {
      failures[r] = e.what();
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, options.restarts);
  if (threads == 1) {
    for (std::size_t r = 0; r < options.restarts; ++r) work(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t r; (r = next.fetch_add(1)) < options.restarts;) work(r);
      });
    }
    for (auto& th : pool) th.join();
  }

  VqeResult result;
  bool any = false;
  std::string diag;
  for (std::size_t r = 0; r < options.restarts; ++r) {
    if (!failures[r].empty()) {
      diag += "restart " + std::to_string(r) + ": " + failures[r] + "; ";
      continue;
    }
    if (!any || outcomes[r].trace.final_energy < result.best_energy) {
      result.best_energy = outcomes[r].trace.final_energy;
      result.best_restart = r;
      any = true;
    }
  }
  if (!any) throw std::runtime_error("every VQE restart failed: " + diag);
  result.best_params = outcomes[result.best_restart].params;
  for (auto& o : outcomes) result.traces.push_back(std::move(o.trace));
  result.ground_state = prepare_ansatz(config, result.best_params);
  return result;
}

DepthStudy depth_study(const PauliSum& h, std::size_t n, std::span<const std::size_t> depths,
                       const VqeOptions& options) {
  if (n > kDenseQubitCap) throw std::invalid_argument("depth study needs an exact oracle (n <= 14)");
  DepthStudy study;
  study.exact_energy = exact_ground_state(h, n).energy;
  double last_runtime = 0.0;
  for (std::size_t d : depths) {
    const AnsatzConfig cfg{n, d};
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = vqe_minimize(h, cfg, options);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    DepthRow row{d, cfg.parameter_count(), r.best_energy, r.best_energy - study.exact_energy,
                 r.total_evaluations(), secs};
    if (!study.rows.empty() && secs < last_runtime) study.runtime_monotone = false;
    last_runtime = secs;
    study.rows.push_back(row);
  }
  return study;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_line: length mismatch");
  if (x.size() < 2) throw std::invalid_argument("fit_line needs at least two points");
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line needs two distinct abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss_res += r * r;
  }
  f.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  return f;
}

EnergyDensityFit energy_density_fit(const SupplyNetwork& net, std::span<const std::size_t> sizes) {
  EnergyDensityFit out;
  std::vector<double> xs, ys;
  for (std::size_t n : sizes) {
    if (n > kDenseQubitCap) throw std::invalid_argument("energy-density sizes must be <= 14");
    const auto h = build_hamiltonian(subnetwork(net, n));
    const double e0 = exact_ground_state(h, n).energy;
    out.rows.push_back({n, e0, e0 / static_cast<double>(n)});
    xs.push_back(static_cast<double>(n));
    ys.push_back(e0);
  }
  out.fit = fit_line(xs, ys);
  for (const auto& r : out.rows) out.mean_density += r.density;
  out.mean_density /= static_cast<double>(out.rows.size());
  for (const auto& r : out.rows) {
    out.max_relative_deviation = std::max(
        out.max_relative_deviation, std::abs(r.density - out.mean_density) / std::abs(out.mean_density));
  }
  return out;
}

double scale_energy(double e_sub, std::size_t n_sub, std::size_t n_full) {
  if (n_sub < 1) throw std::invalid_argument("n_sub must be positive");
  return e_sub * static_cast<double>(n_full) / static_cast<double>(n_sub);
}

BaselineMode parse_baseline_mode(std::string_view name) {
  if (name == "gibbs-independent") return BaselineMode::gibbs_independent;
  if (name == "ground-independent") return BaselineMode::ground_independent;
  throw std::invalid_argument("unknown baseline mode '" + std::string(name) + "'");
}

std::string_view to_string(BaselineMode m) {
  return m == BaselineMode::gibbs_independent ? "gibbs-independent" : "ground-independent";
}

std::vector<double> classical_baseline(const SupplyNetwork& net, BaselineMode mode,
                                       double temperature) {
  if (mode == BaselineMode::gibbs_independent && !(temperature > 0.0)) {
    throw std::invalid_argument("baseline temperature must be positive");
  }
  std::vector<double> p;
  p.reserve(net.size());
  for (const auto& node : net.nodes) {
    const double h = node.bias;
    if (mode == BaselineMode::ground_independent) {
      p.push_back(h > 0.0 ? 1.0 : h == 0.0 ? 0.5 : 0.0);
    } else {
      // e^{x} / (e^{x} + e^{-x}) = 1 / (1 + e^{-2x})
      p.push_back(1.0 / (1.0 + std::exp(-2.0 * h / temperature)));
    }
  }
  return p;
}

AdvantageReport quantum_advantage(const Statevector& psi, std::span<const double> baseline,
                                  double threshold) {
  if (baseline.size() != psi.num_qubits()) {
    throw std::invalid_argument("baseline has " + std::to_string(baseline.size()) +
                                " entries for a " + std::to_string(psi.num_qubits()) +
                                "-qubit state");
  }
  AdvantageReport rep;
  rep.threshold = threshold;
  for (std::size_t i = 0; i < baseline.size(); ++i) {
    const double pv = stress_probability(psi, i);
    const double d = pv - baseline[i];
    rep.rows.push_back({i, pv, baseline[i], d});
    if (std::abs(d) > threshold) rep.flagged.push_back(i);
    if (std::abs(d) > rep.max_abs_delta) {
      rep.max_abs_delta = std::abs(d);
      rep.max_node = i;
    }
  }
  return rep;
}

}  // namespace qrs
