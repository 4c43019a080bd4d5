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
#include <span>
#include <vector>

#include "qrs/optimize.hpp"

namespace {

using qrs::MinimizeResult;
using qrs::TrustRegionOptions;

double shifted_bowl(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - 0.1 * static_cast<double>(i + 1);
    s += (1.0 + static_cast<double>(i)) * d * d;
  }
  return s - 3.0;
}

double rosenbrock(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    s += 100.0 * std::pow(x[i + 1] - x[i] * x[i], 2) + std::pow(1.0 - x[i], 2);
  }
  return s;
}

void expect_consistent(const MinimizeResult& r) {
  ASSERT_EQ(r.history.size(), r.evaluations);
  EXPECT_EQ(*std::min_element(r.history.begin(), r.history.end()), r.value);
}

TEST(QuadraticModel, SolvesConvexQuadraticToRhoEnd) {
  const auto r = qrs::quadratic_model_minimize(shifted_bowl, std::vector<double>(6, 0.0));
  expect_consistent(r);
  EXPECT_EQ(r.reason, qrs::StopReason::converged);
  EXPECT_NEAR(r.value, -3.0, 1e-12);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(r.x[i], 0.1 * (i + 1), 1e-6);
}

TEST(QuadraticModel, SolvesRosenbrock) {
  TrustRegionOptions opt;
  opt.max_evaluations = 5000;
  const auto r = qrs::quadratic_model_minimize(rosenbrock, {-1.2, 1.0, -0.5}, opt);
  expect_consistent(r);
  EXPECT_LT(r.value, 1e-10);
}

TEST(QuadraticModel, StopsAtEvaluationLimit) {
  TrustRegionOptions opt;
  opt.max_evaluations = 40;
  const auto r = qrs::quadratic_model_minimize(rosenbrock, {-1.2, 1.0, -0.5, 0.3}, opt);
  EXPECT_EQ(r.evaluations, 40u);
  EXPECT_EQ(r.reason, qrs::StopReason::evaluation_limit);
}

TEST(Cobyla, SolvesConvexQuadratic) {
  TrustRegionOptions opt;
  opt.max_evaluations = 4000;
  const auto r = qrs::cobyla_minimize(shifted_bowl, std::vector<double>(4, 0.0), opt);
  expect_consistent(r);
  EXPECT_NEAR(r.value, -3.0, 1e-8);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(r.x[i], 0.1 * (i + 1), 1e-4);
}

TEST(Cobyla, StopsAtEvaluationLimit) {
  TrustRegionOptions opt;
  opt.max_evaluations = 25;
  const auto r = qrs::cobyla_minimize(rosenbrock, {-1.2, 1.0}, opt);
  EXPECT_EQ(r.evaluations, 25u);
  EXPECT_EQ(r.reason, qrs::StopReason::evaluation_limit);
}

TEST(Minimizers, OneDimensionalAndDeterministic) {
  const auto f = [](std::span<const double> x) { return std::cos(x[0]); };
  for (auto* m : {&qrs::quadratic_model_minimize, &qrs::cobyla_minimize}) {
    const auto a = (*m)(f, {2.5}, {});
    const auto b = (*m)(f, {2.5}, {});
    EXPECT_NEAR(a.value, -1.0, 1e-12);
    EXPECT_NEAR(a.x[0], M_PI, 1e-5);
    EXPECT_EQ(a.history, b.history);
  }
}

TEST(Minimizers, RejectInvalidOptions) {
  TrustRegionOptions bad;
  bad.rho_end = 1.0;
  bad.rho_begin = 0.1;
  EXPECT_THROW(qrs::quadratic_model_minimize(shifted_bowl, {0.0, 0.0}, bad), std::invalid_argument);
  EXPECT_THROW(qrs::cobyla_minimize(shifted_bowl, {0.0, 0.0}, bad), std::invalid_argument);
  EXPECT_THROW(qrs::quadratic_model_minimize(shifted_bowl, {}, {}), std::invalid_argument);
}

}  // namespace
