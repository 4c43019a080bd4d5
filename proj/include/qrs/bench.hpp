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
#include <span>
#include <string>
#include <vector>

#include "qrs/network.hpp"

namespace qrs {

enum class Workload { energy_eval, trotter_step };

Workload parse_workload(std::string_view name);
std::string_view to_string(Workload w);

struct BenchSample {
  std::size_t n = 0;
  double wall_seconds = 0.0;   // median over repeats, per single workload call
  std::size_t repeats = 0;
  std::size_t batch = 1;       // calls per timed measurement
  Workload workload = Workload::energy_eval;
};

struct BenchOptions {
  std::size_t repeats = 5;
  double min_measurement_seconds = 0.01;   // auto-batch below this
  std::uint64_t seed = 42;
  std::size_t depth = 3;
};

/**
 * @brief Times one workload call per sub-network size.
 *
 * The state is a fixed random ansatz state. Each measurement repeats the call
 * until at least min_measurement_seconds have passed and divides; the sample
 * is the median of `repeats` measurements. Always single threaded.
 */
std::vector<BenchSample> run_benchmarks(const SupplyNetwork& net, std::span<const std::size_t> sizes,
                                        Workload workload, const BenchOptions& options = {});

struct ScalingFit {
  double a = 0.0;              // seconds at n0
  double r = 0.0;              // doublings per qubit
  std::size_t n0 = 0;
  double r_squared = 0.0;

  /// a 2^{r (n - n0)} seconds.
  double predict_seconds(double n) const;
  double predict_hours(double n) const { return predict_seconds(n) / 3600.0; }
};

/// Least squares on log2 t = log2 a + r (n - n0), n0 = min sampled n.
ScalingFit fit_exponential(std::span<const BenchSample> samples);

struct MemoryRow {
  std::size_t n = 0;
  std::string amplitudes;      // 2^n as an exact decimal string
  std::uint64_t bytes = 0;
  std::string human_decimal;   // 16.8 MB, 17.2 GB, 17.6 TB
  std::string human_binary;    // 16.0 MiB, 16.0 GiB, 16.0 TiB
};

std::vector<MemoryRow> memory_table(std::span<const std::size_t> sizes);

/// One fractional digit in decimal (1 kB = 1000 B) or binary (1 KiB = 1024 B) units.
std::string human_bytes(std::uint64_t bytes, bool binary = false);

/// 2^n / parameter_count.
double compression_ratio(std::size_t n, std::size_t parameter_count);

}  // namespace qrs
