// Copyright (C) 2026 The sepoco Authors. All Rights reserved.
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
#include <functional>
#include <optional>
#include <vector>

#include "sepoco/adversary.hpp"
#include "sepoco/geometry.hpp"
#include "sepoco/ipso.hpp"
#include "sepoco/report.hpp"

namespace sepoco {

class StepRule {
 public:
  enum class Mode { kConvex, kStronglyConvex };

  // eta_m = D / sqrt(epsilon + sum_{tau <= m} ||mean_grad_tau||^2).
  static StepRule convex(double epsilon, double diameter);
  // eta_m = 1 / (m theta).
  static StepRule strongly_convex(double theta);

  Mode mode() const { return mode_; }
  double epsilon() const { return epsilon_; }
  double diameter() const { return diameter_; }
  double theta() const { return theta_; }

  // `cumulative_sq_grad` already includes block m. May return +inf in convex
  // mode with epsilon = 0 and no gradient seen.
  double step_size(std::int64_t m, double cumulative_sq_grad) const;

 private:
  Mode mode_ = Mode::kConvex;
  double epsilon_ = 1.0;
  double diameter_ = 1.0;
  double theta_ = 1.0;
};

struct ProjectionStep {
  Vector point;
  std::int64_t so_calls = 0;
  Vector clipped_start;
};

// Maps the tentative point x_m - eta_m g_m back into K.
using BlockProjector = std::function<ProjectionStep(const Vector&)>;

BlockProjector ipso_projector(const ConvexBody& body, IpsoConfig cfg);

// Blocked online gradient descent: plays x_m for K rounds, then steps on the
// block-average gradient and corrects through the projector (IP-SO unless
// overridden).
class BlockLearner {
 public:
  BlockLearner(const ConvexBody& body, std::int64_t horizon, std::int64_t block, double delta,
               StepRule rule, std::optional<Vector> x1 = std::nullopt,
               BlockProjector projector = nullptr);

  const Vector& action() const { return action_; }
  std::int64_t block_index() const { return block_index_; }
  std::int64_t block_count() const { return horizon_ / block_; }
  std::int64_t horizon() const { return horizon_; }
  std::int64_t block_size() const { return block_; }
  double delta() const { return delta_; }
  const StepRule& rule() const { return rule_; }
  const IpsoConfig& ipso_config() const { return ipso_; }
  const Vector& grad_sum() const { return grad_sum_; }
  std::int64_t rounds_in_block() const { return rounds_in_block_; }
  double cumulative_sq_grad() const { return cumulative_sq_grad_; }
  std::int64_t total_so_calls() const { return total_so_calls_; }
  double last_step_size() const { return last_step_size_; }
  bool block_complete() const { return rounds_in_block_ == block_; }
  bool finished() const { return block_index_ > block_count(); }
  const std::vector<BlockRecord>& history() const { return history_; }

  // Throws BlockOverflow past K gradients in a block or past the horizon.
  void feed_gradient(const Vector& grad);
  // Uses the learner's projector.
  void end_block();
  // Corrects with IP-SO under an explicit configuration.
  void end_block(const IpsoConfig& cfg);

 private:
  void finish_block(const std::function<ProjectionStep(const Vector&)>& project);

  ConvexBody body_;
  std::int64_t horizon_;
  std::int64_t block_;
  double delta_;
  StepRule rule_;
  IpsoConfig ipso_;
  BlockProjector projector_;
  Vector action_;
  Vector grad_sum_;
  std::int64_t block_index_ = 1;
  std::int64_t rounds_in_block_ = 0;
  double cumulative_sq_grad_ = 0.0;
  std::int64_t total_so_calls_ = 0;
  double last_step_size_ = 0.0;
  std::vector<BlockRecord> history_;
};

// Runs the learner on the raw cost gradients grad f_t(x_m). Constraints are
// ignored by the learner but g_t is still recorded for CCV.
RunTrace run_oco(const ConvexBody& body, std::int64_t horizon, std::int64_t block, double delta,
                 const StepRule& rule, const std::vector<RoundOracle>& rounds,
                 std::optional<Vector> x1 = std::nullopt, BlockProjector projector = nullptr);

}  // namespace sepoco
