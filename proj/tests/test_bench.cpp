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

#include <cmath>
#include <random>
#include <vector>

#include "qrs/bench.hpp"

namespace {

std::vector<qrs::BenchSample> synthetic(double noise, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-noise, noise);
  std::vector<qrs::BenchSample> s;
  for (std::size_t n = 6; n <= 16; ++n) {
    qrs::BenchSample b;
    b.n = n;
    b.wall_seconds = std::ldexp(1e-6, static_cast<int>(n)) * (1.0 + u(rng));
    s.push_back(b);
  }
  return s;
}

TEST(FitExponential, ExactDataIsRecovered) {
  const auto f = qrs::fit_exponential(synthetic(0.0, 1));
  EXPECT_NEAR(f.r, 1.0, 1e-9);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-9);
  EXPECT_EQ(f.n0, 6u);
  EXPECT_NEAR(f.a, 64e-6, 1e-15);
  EXPECT_NEAR(f.predict_seconds(20), std::ldexp(1e-6, 20), 1e-9);
  EXPECT_NEAR(f.predict_hours(40), std::ldexp(1e-6, 40) / 3600.0, 1e-3);
}

TEST(FitExponential, FivePercentNoise) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto f = qrs::fit_exponential(synthetic(0.05, seed));
    EXPECT_GE(f.r, 0.95);
    EXPECT_LE(f.r, 1.05);
  }
}

TEST(RunBenchmarks, RejectsTooFewRepeats) {
  qrs::BenchOptions opt;
  opt.repeats = 2;
  const std::vector<std::size_t> sizes{4};
  EXPECT_THROW(qrs::run_benchmarks(qrs::generate_fixture(), sizes, qrs::Workload::energy_eval, opt),
               std::invalid_argument);
}

TEST(FitExponential, NeedsThreeSamples) {
  std::vector<qrs::BenchSample> one(1);
  one[0].n = 6;
  one[0].wall_seconds = 1.0;
  EXPECT_THROW(qrs::fit_exponential(one), std::invalid_argument);
}

TEST(RunBenchmarks, SamplesArePositive) {
  const auto net = qrs::apply_scenario(qrs::generate_fixture(42), qrs::Scenario::A);
  const std::vector<std::size_t> sizes{4, 5, 6};
  qrs::BenchOptions opt;
  opt.repeats = 3;
  opt.min_measurement_seconds = 0.001;
  for (auto w : {qrs::Workload::energy_eval, qrs::Workload::trotter_step}) {
    const auto s = qrs::run_benchmarks(net, sizes, w, opt);
    ASSERT_EQ(s.size(), 3u);
    for (std::size_t k = 0; k < s.size(); ++k) {
      EXPECT_EQ(s[k].n, sizes[k]);
      EXPECT_GT(s[k].wall_seconds, 0.0);
      EXPECT_EQ(s[k].repeats, 3u);
      EXPECT_GE(s[k].batch, 1u);
      EXPECT_EQ(s[k].workload, w);
    }
  }
}

TEST(MemoryTable, ReferenceRows) {
  const std::vector<std::size_t> sizes{1, 20, 30, 40};
  const auto rows = qrs::memory_table(sizes);
  EXPECT_EQ(rows[0].bytes, 32u);
  EXPECT_EQ(rows[1].bytes, 16777216u);
  EXPECT_EQ(rows[1].human_binary, "16.0 MiB");
  EXPECT_EQ(rows[1].human_decimal, "16.8 MB");
  EXPECT_EQ(rows[2].bytes, 17179869184ull);
  EXPECT_EQ(rows[2].human_decimal, "17.2 GB");
  EXPECT_EQ(rows[3].bytes, 17592186044416ull);
  EXPECT_EQ(rows[3].human_decimal, "17.6 TB");
  EXPECT_EQ(rows[3].amplitudes, "1099511627776");
}

TEST(HumanBytes, Units) {
  EXPECT_EQ(qrs::human_bytes(999), "999 B");
  EXPECT_EQ(qrs::human_bytes(1000), "1.0 kB");
  EXPECT_EQ(qrs::human_bytes(1024, true), "1.0 KiB");
}

TEST(CompressionRatio, Arithmetic) {
  EXPECT_NEAR(qrs::compression_ratio(40, 120), 9.16e9, 0.01e9);
  EXPECT_EQ(qrs::compression_ratio(1, 1), 2.0);
  EXPECT_NEAR(qrs::compression_ratio(30, 120), 8947848.533333333, 1e-6);
}

}  // namespace
