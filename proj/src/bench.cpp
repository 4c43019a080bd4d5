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

#include "qrs/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "qrs/dos.hpp"
#include "qrs/statevector.hpp"
#include "qrs/vqe.hpp"

namespace qrs {

Workload parse_workload(std::string_view name) {
  if (name == "energy_eval") return Workload::energy_eval;
  if (name == "trotter_step") return Workload::trotter_step;
  throw std::invalid_argument("unknown workload '" + std::string(name) +
                              "' (expected energy_eval or trotter_step)");
}

std::string_view to_string(Workload w) {
  return w == Workload::energy_eval ? "energy_eval" : "trotter_step";
}

namespace {

volatile double g_sink = 0.0;  // keeps timed expectation values alive

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

std::vector<BenchSample> run_benchmarks(const SupplyNetwork& net, std::span<const std::size_t> sizes,
                                        Workload workload, const BenchOptions& options) {
  if (options.repeats < 3) throw std::invalid_argument("benchmarks need at least 3 repeats");
  using clock = std::chrono::steady_clock;
  std::vector<BenchSample> out;
  for (std::size_t n : sizes) {
    check_memory(statevector_bytes(n));
    const auto h = build_hamiltonian(subnetwork(net, n));
    const AnsatzConfig cfg{n, options.depth};
    const auto theta = initial_parameters(cfg.parameter_count(), options.seed);
    Statevector psi = prepare_ansatz(cfg, theta);
    const CompiledOperator op(h);
    const auto parts = split_commuting(h);
    constexpr double kDt = 10.0 / 31.0;

    auto call = [&] {
      if (workload == Workload::energy_eval) {
        g_sink = g_sink + op.expectation(psi);
      } else {
        trotter_step(psi, parts, kDt);
      }
    };

    // Grow the batch until one measurement is long enough to trust.
    std::size_t batch = 1;
    for (;;) {
      const auto t0 = clock::now();
      for (std::size_t b = 0; b < batch; ++b) call();
      const double s = std::chrono::duration<double>(clock::now() - t0).count();
      if (s >= options.min_measurement_seconds) break;
      const double grow = s > 0.0 ? 1.2 * options.min_measurement_seconds / s : 10.0;
      batch = std::max(batch + 1, static_cast<std::size_t>(static_cast<double>(batch) * std::min(grow, 10.0)));
    }

    std::vector<double> times;
    for (std::size_t r = 0; r < options.repeats; ++r) {
      const auto t0 = clock::now();
      for (std::size_t b = 0; b < batch; ++b) call();
      times.push_back(std::chrono::duration<double>(clock::now() - t0).count() /
                      static_cast<double>(batch));
    }
    out.push_back({n, median(times), options.repeats, batch, workload});
  }
  return out;
}

double ScalingFit::predict_seconds(double n) const {
  return a * std::exp2(r * (n - static_cast<double>(n0)));
}

ScalingFit fit_exponential(std::span<const BenchSample> samples) {
  if (samples.size() < 3) throw std::invalid_argument("exponential fit needs at least 3 samples");
  std::set<std::size_t> distinct;
  for (const auto& s : samples) {
    if (!(s.wall_seconds > 0.0)) throw std::invalid_argument("sample times must be positive");
    distinct.insert(s.n);
  }
  if (distinct.size() != samples.size()) {
    throw std::invalid_argument("exponential fit needs distinct qubit counts");
  }
  ScalingFit f;
  f.n0 = *distinct.begin();
  std::vector<double> x, y;
  for (const auto& s : samples) {
    x.push_back(static_cast<double>(s.n - f.n0));
    y.push_back(std::log2(s.wall_seconds));
  }
  const auto line = fit_line(x, y);
  f.r = line.slope;
  f.a = std::exp2(line.intercept);
  f.r_squared = std::clamp(line.r_squared, 0.0, 1.0);
  return f;
}

std::string human_bytes(std::uint64_t bytes, bool binary) {
  static const char* kDecimal[] = {"B", "kB", "MB", "GB", "TB", "PB", "EB"};
  static const char* kBinary[] = {"B", "KiB", "MiB", "GiB", "TiB", "PiB", "EiB"};
  const double base = binary ? 1024.0 : 1000.0;
  double v = static_cast<double>(bytes);
  int u = 0;
  while (v >= base && u < 6) {
    v /= base;
    ++u;
  }
  char buf[32];
  if (u == 0) {
    std::snprintf(buf, sizeof buf, "%llu B", static_cast<unsigned long long>(bytes));
  } else {
    std::snprintf(buf, sizeof buf, "%.1f %s", v, binary ? kBinary[u] : kDecimal[u]);
  }
  return buf;
}

std::vector<MemoryRow> memory_table(std::span<const std::size_t> sizes) {
  std::vector<MemoryRow> rows;
  for (std::size_t n : sizes) {
    const std::uint64_t bytes = statevector_bytes(n);
    rows.push_back({n, std::to_string(std::uint64_t{1} << n), bytes, human_bytes(bytes, false),
                    human_bytes(bytes, true)});
  }
  return rows;
}

double compression_ratio(std::size_t n, std::size_t parameter_count) {
  if (parameter_count == 0) throw std::invalid_argument("parameter count must be positive");
  return std::exp2(static_cast<double>(n)) / static_cast<double>(parameter_count);
}

}  // namespace qrs
