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

#include <Eigen/Dense>

#include "qrs/optimize.hpp"

namespace qrs::detail {

/// Counts evaluations, records history and remembers the best point seen.
class EvaluationTracker {
 public:
  EvaluationTracker(const Objective& f, std::size_t budget) : f_(f), budget_(budget) {}

  bool exhausted() const { return count_ >= budget_; }
  std::size_t count() const { return count_; }

  double operator()(const Eigen::VectorXd& x) {
    const double v = f_(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
    ++count_;
    history_.push_back(v);
    if (count_ == 1 || v < best_value_) {
      best_value_ = v;
      best_x_ = x;
    }
    return v;
  }

  MinimizeResult finish(StopReason reason) {
    MinimizeResult r;
    r.x.assign(best_x_.data(), best_x_.data() + best_x_.size());
    r.value = best_value_;
    r.evaluations = count_;
    r.reason = reason;
    r.history = std::move(history_);
    return r;
  }

 private:
  const Objective& f_;
  std::size_t budget_;
  std::size_t count_ = 0;
  double best_value_ = 0.0;
  Eigen::VectorXd best_x_;
  std::vector<double> history_;
};

}  // namespace qrs::detail
