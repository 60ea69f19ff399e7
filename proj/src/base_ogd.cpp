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

#include "sepoco/base_ogd.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sepoco/error.hpp"

namespace sepoco {

StepRule StepRule::convex(double epsilon, double diameter) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    fail(ErrorCode::kInvalidConfig, "epsilon must be finite and non-negative");
  }
  if (!(diameter > 0.0) || !std::isfinite(diameter)) {
    fail(ErrorCode::kInvalidConfig, "diameter must be positive");
  }
  StepRule r;
  r.mode_ = Mode::kConvex;
  r.epsilon_ = epsilon;
  r.diameter_ = diameter;
  return r;
}

StepRule StepRule::strongly_convex(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    fail(ErrorCode::kInvalidConfig, "theta must be positive");
  }
  StepRule r;
  r.mode_ = Mode::kStronglyConvex;
  r.theta_ = theta;
  return r;
}

double StepRule::step_size(std::int64_t m, double cumulative_sq_grad) const {
  if (mode_ == Mode::kStronglyConvex) return 1.0 / (static_cast<double>(m) * theta_);
  const double denom = epsilon_ + cumulative_sq_grad;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return diameter_ / std::sqrt(denom);
}

BlockProjector ipso_projector(const ConvexBody& body, IpsoConfig cfg) {
  return [body, cfg](const Vector& y) {
    IpsoOutcome out = infeasible_project(body, cfg, y);
    return ProjectionStep{std::move(out.point), out.so_calls, std::move(out.clipped_start)};
  };
}

BlockLearner::BlockLearner(const ConvexBody& body, std::int64_t horizon, std::int64_t block,
                           double delta, StepRule rule, std::optional<Vector> x1,
                           BlockProjector projector)
    : body_(body), horizon_(horizon), block_(block), delta_(delta), rule_(rule) {
  if (horizon < 1) fail(ErrorCode::kInvalidConfig, "horizon T must be positive");
  if (block < 1) fail(ErrorCode::kInvalidConfig, "block size K must be positive");
  if (horizon % block != 0) {
    fail(ErrorCode::kInvalidConfig, "block size " + std::to_string(block) +
                                        " does not divide horizon " + std::to_string(horizon));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    fail(ErrorCode::kInvalidConfig, "delta must lie in (0, 1), got " + std::to_string(delta));
  }
  action_ = x1.value_or(body.anchor());
  require_vector(action_, body.dimension(), "x1");
  if (!body.contains(action_)) fail(ErrorCode::kInvalidConfig, "x1 is not a point of K");
  ipso_ = IpsoConfig::for_body(body, delta);
  projector_ = projector ? std::move(projector) : ipso_projector(body_, ipso_);
  grad_sum_ = Vector::Zero(body.dimension());
  history_.reserve(static_cast<size_t>(horizon / block));
}

void BlockLearner::feed_gradient(const Vector& grad) {
  if (finished()) fail(ErrorCode::kBlockOverflow, "horizon already exhausted");
  if (rounds_in_block_ >= block_) {
    fail(ErrorCode::kBlockOverflow, "block " + std::to_string(block_index_) + " already has " +
                                        std::to_string(block_) + " gradients");
  }
  require_vector(grad, body_.dimension(), "gradient");
  grad_sum_ += grad;
  ++rounds_in_block_;
}

void BlockLearner::end_block() { finish_block(projector_); }

void BlockLearner::end_block(const IpsoConfig& cfg) { finish_block(ipso_projector(body_, cfg)); }

void BlockLearner::finish_block(const std::function<ProjectionStep(const Vector&)>& project) {
  if (rounds_in_block_ != block_) {
    fail(ErrorCode::kInvalidConfig, "end_block needs exactly K fed gradients, have " +
                                        std::to_string(rounds_in_block_));
  }
  BlockRecord rec;
  rec.action = action_;
  rec.mean_gradient = grad_sum_ / static_cast<double>(block_);
  cumulative_sq_grad_ += rec.mean_gradient.squaredNorm();
  const double eta = rule_.step_size(block_index_, cumulative_sq_grad_);
  rec.step_size = eta;
  // An infinite step only arises with epsilon = 0 before any nonzero
  // gradient, so the mean gradient is zero and the step is skipped.
  rec.tentative = std::isfinite(eta) ? Vector(action_ - eta * rec.mean_gradient) : action_;
  ProjectionStep step = project(rec.tentative);
  rec.clipped_start = std::move(step.clipped_start);
  rec.so_calls = step.so_calls;
  total_so_calls_ += step.so_calls;
  last_step_size_ = eta;
  action_ = std::move(step.point);
  history_.push_back(std::move(rec));
  grad_sum_.setZero();
  rounds_in_block_ = 0;
  ++block_index_;
}

RunTrace run_oco(const ConvexBody& body, std::int64_t horizon, std::int64_t block, double delta,
                 const StepRule& rule, const std::vector<RoundOracle>& rounds,
                 std::optional<Vector> x1, BlockProjector projector) {
  if (static_cast<std::int64_t>(rounds.size()) < horizon) {
    fail(ErrorCode::kInvalidConfig, "adversary supplies fewer rounds than the horizon");
  }
  BlockLearner learner(body, horizon, block, delta, rule, std::move(x1), std::move(projector));
  RunTrace trace;
  trace.rounds.reserve(static_cast<size_t>(horizon));
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const RoundOracle& o = rounds[static_cast<size_t>(t - 1)];
    const Vector& x = learner.action();
    RoundRecord rec;
    rec.t = t;
    rec.block_m = learner.block_index();
    rec.action = x;
    rec.f_value = o.f(x);
    rec.g_plus_value = std::max(0.0, o.g(x));
    rec.eta_current = learner.last_step_size();
    learner.feed_gradient(o.grad_f(x));
    if (learner.block_complete()) learner.end_block();
    rec.so_calls_cum = learner.total_so_calls();
    trace.rounds.push_back(std::move(rec));
  }
  trace.blocks = learner.history();
  trace.total_so_calls = learner.total_so_calls();
  trace.params = {{"algorithm", "base_ogd"},
                  {"T", std::to_string(horizon)},
                  {"K", std::to_string(block)},
                  {"delta", echo_number(delta)}};
  return trace;
}

}  // namespace sepoco
