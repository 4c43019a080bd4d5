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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "evaluation_tracker.hpp"
#include "qrs/optimize.hpp"

namespace qrs {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// argmin g.u + u.H.u / 2 subject to |u| <= radius, via the eigenbasis of H.
VectorXd trust_region_step(const VectorXd& g, const MatrixXd& h, double radius) {
  const Index n = g.size();
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(h);
  const VectorXd& lam = eig.eigenvalues();
  const MatrixXd& q = eig.eigenvectors();
  const VectorXd gt = q.transpose() * g;
  const double gnorm = g.norm();
  const double scale = std::max(lam.cwiseAbs().maxCoeff(), gnorm / radius);
  const double tiny = 1e-14 * std::max(scale, std::numeric_limits<double>::min());

  auto step_at = [&](double mu) {
    VectorXd c(n);
    for (Index i = 0; i < n; ++i) {
      const double d = lam[i] + mu;
      c[i] = std::abs(d) <= tiny ? 0.0 : -gt[i] / d;
    }
    return c;
  };

  if (lam[0] > tiny) {
    const VectorXd c = step_at(0.0);
    if (c.norm() <= radius) return q * c;
  }

  const double lo = std::max(0.0, -lam[0]);
  // With every lambda_i + mu >= |g| / radius the step is inside the region.
  double hi = lo + gnorm / radius + tiny;

  // Hard case: g has no component along the lowest eigenvectors and the
  // shifted step falls short of the boundary.
  bool singular_dir = false;
  for (Index i = 0; i < n; ++i) {
    if (std::abs(lam[i] + lo) <= tiny && std::abs(gt[i]) > 1e-12 * std::max(gnorm, 1e-300)) {
      singular_dir = true;
    }
  }
  if (!singular_dir && lo > 0.0) {
    VectorXd c = step_at(lo);
    const double cn = c.norm();
    if (cn < radius) {
      const double tau = std::sqrt(radius * radius - cn * cn);
      c[0] += tau;  // lowest eigenvector; g.q0 = 0 so either sign is optimal
      return q * c;
    }
  }

  double a = lo, b = hi;
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, b); ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= lo) break;
    if (step_at(mid).norm() > radius) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return q * step_at(b);
}

}  // namespace

MinimizeResult quadratic_model_minimize(const Objective& f, std::vector<double> x_start,
                                        const TrustRegionOptions& options) {
  const auto n = static_cast<Index>(x_start.size());
  if (n == 0) throw std::invalid_argument("minimiser needs at least one variable");
  if (!(options.rho_begin > 0.0) || !(options.rho_end > 0.0) ||
      options.rho_end > options.rho_begin) {
    throw std::invalid_argument("minimiser needs 0 < rho_end <= rho_begin");
  }
  if (options.max_evaluations < 1) throw std::invalid_argument("evaluation budget must be positive");

  const Index m = 2 * n + 1;
  const Index dim = m + n + 1;
  detail::EvaluationTracker eval(f, options.max_evaluations);
  double rho = options.rho_begin;
  double delta = rho;

  // Interpolation set: x0, x0 + rho e_i, and x0 - rho e_i (or x0 + 2 rho e_i
  // when the forward point improved on x0).
  MatrixXd y(n, m);
  VectorXd fy(m);
  const VectorXd x0 = Eigen::Map<const VectorXd>(x_start.data(), n);
  y.col(0) = x0;
  fy[0] = eval(x0);
  for (Index i = 0; i < n; ++i) {
    if (eval.exhausted()) return eval.finish(StopReason::evaluation_limit);
    y.col(1 + i) = x0;
    y(i, 1 + i) += rho;
    fy[1 + i] = eval(y.col(1 + i));
    if (eval.exhausted()) return eval.finish(StopReason::evaluation_limit);
    y.col(1 + n + i) = x0;
    y(i, 1 + n + i) += fy[1 + i] < fy[0] ? 2.0 * rho : -rho;
    fy[1 + n + i] = eval(y.col(1 + n + i));
  }

  // KKT system of the interpolation problem, in coordinates scaled by rho
  // around the best point.
  struct Model {
    Index kopt = 0;
    MatrixXd s;                       // (y_j - x_opt) / rho
    Eigen::PartialPivLU<MatrixXd> lu;
    VectorXd g;                       // scaled gradient at x_opt
    MatrixXd h;                       // scaled Hessian
  };
  MatrixXd hessian = MatrixXd::Zero(n, n);  // unscaled, carried between iterations
  auto factorize = [&](Model& md) {
    fy.minCoeff(&md.kopt);
    md.s = (y.colwise() - y.col(md.kopt)) / rho;
    MatrixXd w = MatrixXd::Zero(dim, dim);
    const MatrixXd gram = md.s.transpose() * md.s;
    w.topLeftCorner(m, m) = 0.5 * gram.array().square().matrix();
    w.block(0, m, m, 1).setOnes();
    w.block(m, 0, 1, m).setOnes();
    w.block(0, m + 1, m, n) = md.s.transpose();
    w.block(m + 1, 0, n, m) = md.s;
    md.lu.compute(w);
  };
  // Least change update: the new Hessian differs from the previous one by the
  // correction of least Frobenius norm that restores interpolation.
  auto fit = [&](Model& md) {
    const MatrixXd h_old = rho * rho * hessian;
    VectorXd rhs = VectorXd::Zero(dim);
    for (Index j = 0; j < m; ++j) {
      rhs[j] = fy[j] - fy[md.kopt] - 0.5 * md.s.col(j).dot(h_old * md.s.col(j));
    }
    const VectorXd sol = md.lu.solve(rhs);
    md.g = sol.tail(n);
    md.h = h_old + md.s * sol.head(m).asDiagonal() * md.s.transpose();
    hessian = md.h / (rho * rho);
  };
  // Values of every Lagrange function at x_opt + rho u.
  auto lagrange_values = [&](const Model& md, const VectorXd& u) {
    VectorXd w(dim);
    w.head(m) = 0.5 * (md.s.transpose() * u).array().square().matrix();
    w[m] = 1.0;
    w.tail(n) = u;
    return VectorXd(md.lu.solve(w).head(m));
  };

  Model md;
  for (;;) {
    factorize(md);
    fit(md);
    if (!md.g.allFinite() || !md.h.allFinite()) return eval.finish(StopReason::rounding);
    const VectorXd xopt = y.col(md.kopt);
    const double fopt = fy[md.kopt];

    const VectorXd u = trust_region_step(md.g, md.h, delta / rho);
    const double dnorm = rho * u.norm();
    double ratio = -1.0;
    bool stepped = false;

    if (dnorm < 0.5 * rho) {
      delta = 0.1 * delta;
      if (delta <= 1.5 * rho) delta = rho;
    } else {
      if (eval.exhausted()) return eval.finish(StopReason::evaluation_limit);
      const VectorXd xnew = xopt + rho * u;
      const double fnew = eval(xnew);
      stepped = true;
      const double predicted = -(md.g.dot(u) + 0.5 * u.dot(md.h * u));
      ratio = predicted > 0.0 ? (fopt - fnew) / predicted : -1.0;
      if (ratio <= 0.1) {
        delta = std::min(0.5 * delta, dnorm);
      } else if (ratio <= 0.7) {
        delta = std::max(0.5 * delta, dnorm);
      } else {
        delta = std::max(2.0 * delta, 4.0 * dnorm);
      }
      if (delta <= 1.5 * rho) delta = rho;

      // Replace the point whose Lagrange function is largest at xnew, with
      // extra weight on points far from the best one.
      const VectorXd ell = lagrange_values(md, u);
      const bool improved = fnew < fopt;
      const VectorXd centre = improved ? xnew : xopt;
      Index t = -1;
      double best = 0.0;
      for (Index j = 0; j < m; ++j) {
        if (j == md.kopt && !improved) continue;
        const double dist2 = (y.col(j) - centre).squaredNorm() / (delta * delta);
        const double score = ell[j] * ell[j] * std::max(1.0, dist2 * dist2);
        if (score > best) {
          best = score;
          t = j;
        }
      }
      if (t >= 0) {
        y.col(t) = xnew;
        fy[t] = fnew;
      }
      if (ratio >= 0.1) continue;
    }

    // Model may be poor: bring in the point farthest from the best one.
    Index kopt;
    fy.minCoeff(&kopt);
    Index far = -1;
    double far_dist = std::max(2.0 * delta, 10.0 * rho);
    for (Index j = 0; j < m; ++j) {
      const double d = (y.col(j) - y.col(kopt)).norm();
      if (d > far_dist) {
        far_dist = d;
        far = j;
      }
    }
    if (far >= 0) {
      factorize(md);
      const double dgeo = std::max(std::min(0.1 * far_dist, 0.5 * delta), rho) / rho;
      VectorXd e = VectorXd::Zero(dim);
      e[far] = 1.0;
      const VectorXd lag = md.lu.solve(e);
      auto ell_at = [&](const VectorXd& v) {
        const VectorXd sv = md.s.transpose() * v;
        return lag[m] + lag.tail(n).dot(v) + 0.5 * (lag.head(m).array() * sv.array().square()).sum();
      };
      VectorXd best_u = VectorXd::Zero(n);
      double best_val = -1.0;
      auto consider = [&](const VectorXd& dir) {
        const double nd = dir.norm();
        if (!(nd > 0.0)) return;
        for (double sgn : {1.0, -1.0}) {
          const VectorXd v = (sgn * dgeo / nd) * dir;
          const double val = std::abs(ell_at(v));
          if (val > best_val) {
            best_val = val;
            best_u = v;
          }
        }
      };
      consider(lag.tail(n));
      for (Index j = 0; j < m; ++j) {
        if (j != md.kopt) consider(md.s.col(j));
      }
      if (eval.exhausted()) return eval.finish(StopReason::evaluation_limit);
      const VectorXd xg = y.col(md.kopt) + rho * best_u;
      y.col(far) = xg;
      fy[far] = eval(xg);
      continue;
    }

    if (stepped && ratio > 0.0) continue;
    if (std::max(delta, dnorm) > rho) continue;

    if (rho <= options.rho_end) return eval.finish(StopReason::converged);
    const double r = rho / options.rho_end;
    const double next = r <= 16.0 ? options.rho_end
                        : r <= 250.0 ? std::sqrt(r) * options.rho_end
                                     : 0.1 * rho;
    delta = std::max(0.5 * rho, next);
    rho = next;
  }
}

}  // namespace qrs
