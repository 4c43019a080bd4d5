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

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace qrs {

using Objective = std::function<double(std::span<const double>)>;

/// Shared by both derivative-free minimisers.
struct TrustRegionOptions {
  double rho_begin = 0.5;     // initial trust radius
  double rho_end = 1e-8;      // final trust radius
  std::size_t max_evaluations = 2000;
};

enum class StopReason { converged, evaluation_limit, rounding };

std::string_view to_string(StopReason r);

struct MinimizeResult {
  std::vector<double> x;      // best point evaluated
  double value = 0.0;
  std::size_t evaluations = 0;
  StopReason reason = StopReason::converged;
  std::vector<double> history;  // objective value per evaluation
};

/**
 * @brief Unconstrained COBYLA (Powell 1994).
 *
 * Keeps a simplex of n + 1 points, fits the linear interpolant through it and
 * steps to the trust-region boundary along the model's steepest descent.
 * Geometry steps keep the simplex well conditioned; the radius halves each
 * time neither kind of step makes progress, down to rho_end. Without
 * constraints the trust-region subproblem has the closed form
 * dx = -rho g / |g|.
 */
MinimizeResult cobyla_minimize(const Objective& f, std::vector<double> x0,
                               const TrustRegionOptions& options = {});

/**
 * @brief Derivative-free trust-region method on quadratic interpolation models.
 *
 * Follows the structure of Powell's NEWUOA: 2n + 1 interpolation points, the
 * quadratic with least Frobenius-norm Hessian that interpolates them, an exact
 * trust-region step, Lagrange-function based point replacement and a
 * resolution rho that shrinks from rho_begin to rho_end. The interpolation
 * system is refactorised from scratch at every iteration instead of being
 * updated, trading O(n^3) linear algebra for simplicity.
 */
MinimizeResult quadratic_model_minimize(const Objective& f, std::vector<double> x0,
                                        const TrustRegionOptions& options = {});

}  // namespace qrs
