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

#include "qrs/optimize.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "evaluation_tracker.hpp"

namespace qrs {

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::converged: return "converged";
    case StopReason::evaluation_limit: return "evaluation_limit";
    case StopReason::rounding: return "rounding";
  }
  return "converged";
}

MinimizeResult cobyla_minimize(const Objective& f, std::vector<double> x_start,
                               const TrustRegionOptions& options) {
  const auto n = static_cast<Eigen::Index>(x_start.size());
  if (n == 0) throw std::invalid_argument("cobyla needs at least one variable");
  if (!(options.rho_begin > 0.0) || !(options.rho_end > 0.0) ||
      options.rho_end > options.rho_begin) {
    throw std::invalid_argument("cobyla needs 0 < rho_end <= rho_begin");
  }
  if (options.max_evaluations < 1) throw std::invalid_argument("evaluation budget must be positive");

  constexpr double kAlpha = 0.25;
  constexpr double kBeta = 2.1;
  constexpr double kGamma = 0.5;
  constexpr double kDelta = 1.1;

  detail::EvaluationTracker eval(f, options.max_evaluations);
  double rho = options.rho_begin;

  // Pole x0 with value f0; vertex j sits at x0 + sim.col(j) with value fv[j].
  Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(x_start.data(), n);
  Eigen::MatrixXd sim = Eigen::MatrixXd::Identity(n, n) * rho;
  Eigen::MatrixXd simi = Eigen::MatrixXd::Identity(n, n) / rho;
  Eigen::VectorXd fv(n);
  double f0 = eval(x0);

  for (Eigen::Index j = 0; j < n; ++j) {
    if (eval.exhausted()) return eval.finish(StopReason::evaluation_limit);
    Eigen::VectorXd x = x0;
    x[j] += rho;
    const double fj = eval(x);
    if (f0 <= fj) {
      fv[j] = fj;
      continue;
    }
    // The new vertex is better: it becomes the pole.
    x0[j] += rho;
    fv[j] = f0;
    f0 = fj;
    for (Eigen::Index k = 0; k <= j; ++k) {
      sim(j, k) = -rho;
      double t = 0.0;
      for (Eigen::Index i = k; i <= j; ++i) t -= simi(i, k);
      simi(j, k) = t;
    }
  }

  // Replaces vertex `jdrop` by displacement dx, keeping simi = sim^{-1}.
  auto replace_vertex = [&](Eigen::Index jdrop, const Eigen::VectorXd& dx) {
    sim.col(jdrop) = dx;
    simi.row(jdrop) /= simi.row(jdrop).dot(dx);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != jdrop) simi.row(j) -= simi.row(j).dot(dx) * simi.row(jdrop);
    }
  };

  bool trust_branch = true;
  Eigen::VectorXd vsig(n), veta(n), g(n), dx(n);

  for (;;) {
    // Move the best vertex into pole position.
    Eigen::Index nbest = -1;
    double phimin = f0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (fv[j] < phimin) {
        nbest = j;
        phimin = fv[j];
      }
    }
    if (nbest >= 0) {
      std::swap(f0, fv[nbest]);
      const Eigen::VectorXd shift = sim.col(nbest);
      x0 += shift;
      sim.colwise() -= shift;
      sim.col(nbest) = -shift;
      simi.row(nbest) = -simi.colwise().sum();
    }

    const double err = (simi * sim - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (err > 0.1) return eval.finish(StopReason::rounding);

    // Linear model gradient from the simplex values.
    g = simi.transpose() * (fv.array() - f0).matrix();

    const double parsig = kAlpha * rho;
    const double pareta = kBeta * rho;
    bool acceptable = true;
    for (Eigen::Index j = 0; j < n; ++j) {
      vsig[j] = 1.0 / simi.row(j).norm();
      veta[j] = sim.col(j).norm();
      if (vsig[j] < parsig || veta[j] > pareta) acceptable = false;
    }

    bool reduce = false;
    if (!trust_branch && !acceptable) {
      // Geometry step: replace the vertex that spoils the simplex shape.
      Eigen::Index jdrop = -1;
      double t = pareta;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (veta[j] > t) {
          jdrop = j;
          t = veta[j];
        }
      }
      if (jdrop < 0) {
        for (Eigen::Index j = 0; j < n; ++j) {
          if (vsig[j] < t) {
            jdrop = j;
            t = vsig[j];
          }
        }
      }
      dx = kGamma * rho * vsig[jdrop] * simi.row(jdrop).transpose();
      if (g.dot(dx) > 0.0) dx = -dx;
      replace_vertex(jdrop, dx);
      if (eval.exhausted()) return eval.finish(StopReason::evaluation_limit);
      fv[jdrop] = eval(x0 + dx);
      trust_branch = true;
      continue;
    }

    // Trust-region step to the boundary along -g.
    const double gnorm = g.norm();
    if (gnorm == 0.0) {
      trust_branch = true;
      reduce = true;
    } else {
      dx = -(rho / gnorm) * g;
      const double prerem = rho * gnorm;
      if (eval.exhausted()) return eval.finish(StopReason::evaluation_limit);
      const double fnew = eval(x0 + dx);
      trust_branch = true;
      const double trured = f0 - fnew;

      double ratio = trured <= 0.0 ? 1.0 : 0.0;
      Eigen::Index jdrop = -1;
      Eigen::VectorXd sigbar(n);
      for (Eigen::Index j = 0; j < n; ++j) {
        const double t = std::abs(simi.row(j).dot(dx));
        if (t > ratio) {
          jdrop = j;
          ratio = t;
        }
        sigbar[j] = t * vsig[j];
      }
      double edgmax = kDelta * rho;
      Eigen::Index l = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (sigbar[j] >= parsig || sigbar[j] >= vsig[j]) {
          const double t = trured > 0.0 ? (dx - sim.col(j)).norm() : veta[j];
          if (t > edgmax) {
            l = j;
            edgmax = t;
          }
        }
      }
      if (l >= 0) jdrop = l;
      if (jdrop >= 0) {
        replace_vertex(jdrop, dx);
        fv[jdrop] = fnew;
        if (trured > 0.0 && trured >= 0.1 * prerem) continue;
      }
      reduce = true;
    }

    if (reduce) {
      if (!acceptable) {
        trust_branch = false;
        continue;
      }
      if (rho <= options.rho_end) return eval.finish(StopReason::converged);
      rho *= 0.5;
      if (rho <= 1.5 * options.rho_end) rho = options.rho_end;
    }
  }
}

}  // namespace qrs
