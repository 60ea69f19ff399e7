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

#include "sepoco/bagel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sepoco/error.hpp"

namespace sepoco {

LyapunovPhi LyapunovPhi::exponential(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    fail(ErrorCode::kInvalidConfig, "lambda must be positive");
  }
  LyapunovPhi p;
  p.kind_ = Kind::kExponential;
  p.lambda_ = lambda;
  return p;
}

LyapunovPhi LyapunovPhi::square() { return LyapunovPhi{}; }

double LyapunovPhi::value(double q) const {
  if (kind_ == Kind::kExponential) return std::expm1(lambda_ * q);
  return q * q;
}

double LyapunovPhi::derivative(double q) const {
  if (kind_ == Kind::kExponential) return lambda_ * std::exp(lambda_ * q);
  return 2.0 * q;
}

void BagelParams::validate(std::int64_t horizon) const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) fail(ErrorCode::kInvalidConfig, "gamma must be positive");
  if (!(V > 0.0) || !std::isfinite(V)) fail(ErrorCode::kInvalidConfig, "V must be positive");
  if (!(delta > 0.0 && delta < 1.0)) {
    fail(ErrorCode::kInvalidConfig, "delta must lie in (0, 1), got " + echo_number(delta));
  }
  if (horizon < 1 || block < 1 || horizon % block != 0) {
    fail(ErrorCode::kInvalidConfig, "block size must be a positive divisor of T");
  }
}

ParamsEcho BagelParams::echo() const {
  ParamsEcho e;
  e["mode"] = mode == CostMode::kConvex ? "convex" : "strongly_convex";
  e["gamma"] = echo_number(gamma);
  e["V"] = echo_number(V);
  e["phi"] = phi.kind() == LyapunovPhi::Kind::kExponential ? "exponential" : "square";
  e["lambda"] = echo_number(phi.lambda());
  e["beta"] = echo_number(beta);
  e["delta"] = echo_number(delta);
  e["K"] = std::to_string(block);
  e["K_requested"] = std::to_string(requested_block);
  e["M1"] = echo_number(M1);
  e["theta"] = echo_number(theta);
  if (inner_rule.mode() == StepRule::Mode::kConvex) {
    e["epsilon"] = echo_number(inner_rule.epsilon());
  } else {
    e["inner_theta"] = echo_number(inner_rule.theta());
  }
  return e;
}

double lambda_for(std::int64_t T, std::int64_t K, double delta) {
  const double t = static_cast<double>(T);
  const double k = static_cast<double>(K);
  return 1.0 / (2.0 * delta * t + 3.0 * std::sqrt(2.0 * t * k));
}

std::int64_t divisor_at_most(std::int64_t T, std::int64_t target) {
  if (T < 1) fail(ErrorCode::kInvalidConfig, "horizon T must be positive");
  std::int64_t k = std::min(std::max<std::int64_t>(1, target), T);
  while (T % k != 0) --k;
  return k;
}

namespace {

void require_preset_inputs(std::int64_t T, double M1, const PresetConstants& c) {
  if (T < 1) fail(ErrorCode::kInvalidConfig, "horizon T must be positive");
  if (!(M1 > 0.0) || !std::isfinite(M1)) fail(ErrorCode::kInvalidConfig, "M1 must be positive");
  if (!(c.c_delta > 0.0) || !(c.c_K > 0.0)) {
    fail(ErrorCode::kInvalidConfig, "c_delta and c_K must be positive");
  }
}

std::int64_t rounded_block(double value) {
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(value)));
}

}  // namespace

BagelParams convex_preset(std::int64_t T, double beta, double M1, double D,
                          const PresetConstants& constants) {
  require_preset_inputs(T, M1, constants);
  if (!(beta > 0.0 && beta <= 0.5)) {
    fail(ErrorCode::kInvalidConfig, "convex mode needs beta in (0, 1/2], got " + echo_number(beta));
  }
  const double t = static_cast<double>(T);
  BagelParams p;
  p.mode = CostMode::kConvex;
  p.beta = beta;
  p.M1 = M1;
  p.gamma = 1.0 / (M1 * D);
  p.V = 1.0;
  p.delta = constants.c_delta * std::pow(t, -beta);
  p.requested_block = rounded_block(constants.c_K * std::pow(t, 1.0 - 2.0 * beta));
  p.block = divisor_at_most(T, p.requested_block);
  p.phi = LyapunovPhi::exponential(lambda_for(T, p.block, p.delta));
  p.inner_rule = StepRule::convex(constants.epsilon, D);
  p.validate(T);
  return p;
}

BagelParams strongly_convex_preset(std::int64_t T, double beta, double M1, double theta,
                                   const PresetConstants& constants) {
  require_preset_inputs(T, M1, constants);
  if (!(beta > 0.0 && beta <= 1.0)) {
    fail(ErrorCode::kInvalidConfig,
         "strongly convex mode needs beta in (0, 1], got " + echo_number(beta));
  }
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    fail(ErrorCode::kInvalidConfig, "theta must be positive");
  }
  const double t = static_cast<double>(T);
  BagelParams p;
  p.mode = CostMode::kStronglyConvex;
  p.beta = beta;
  p.M1 = M1;
  p.theta = theta;
  p.gamma = 1.0;
  p.delta = constants.c_delta * std::pow(t, -beta) * std::log(t);
  p.requested_block = rounded_block(constants.c_K * std::pow(t, 1.0 - beta));
  p.block = divisor_at_most(T, p.requested_block);
  const double k = static_cast<double>(p.block);
  p.V = 8.0 * M1 * M1 * k * std::log(t * std::exp(1.0) / k) / theta;
  p.phi = LyapunovPhi::square();
  p.inner_rule = StepRule::strongly_convex(p.V * p.gamma * theta);
  p.validate(T);
  return p;
}

Vector surrogate_gradient(const BagelParams& params, double Q, const Vector& grad_f,
                          double g_value, const Vector& grad_g) {
  const double weight = params.phi.derivative(Q);
  if (!std::isfinite(weight)) {
    fail(ErrorCode::kNumericOverflow, "Phi'(Q) overflowed at Q = " + echo_number(Q));
  }
  Vector out = (params.V * params.gamma) * grad_f;
  if (g_value > 0.0) out += (weight * params.gamma) * grad_g;
  return out;
}

BagelLearner::BagelLearner(const ConvexBody& body, std::int64_t horizon, BagelParams params,
                           std::optional<Vector> x1, BlockProjector projector)
    : params_((params.validate(horizon), std::move(params))),
      inner_(body, horizon, params_.block, params_.delta, params_.inner_rule, std::move(x1),
             std::move(projector)) {}

RoundRecord BagelLearner::step_round(const RoundOracle& oracle) {
  const Vector& x = inner_.action();
  const double g = oracle.g(x);
  return observe(oracle.f(x), oracle.grad_f(x), g,
                 g > 0.0 ? oracle.grad_g(x) : Vector(Vector::Zero(x.size())));
}

RoundRecord BagelLearner::observe(double f_value, const Vector& grad_f, double g_value,
                                  const Vector& grad_g) {
  if (inner_.finished()) fail(ErrorCode::kBlockOverflow, "horizon already exhausted");
  if (!std::isfinite(f_value) || !std::isfinite(g_value)) {
    fail(ErrorCode::kInvalidArgument, "observed values must be finite");
  }
  require_vector(grad_f, inner_.action().size(), "grad_f");
  if (g_value > 0.0) require_vector(grad_g, inner_.action().size(), "grad_g");
  RoundRecord rec;
  rec.action = inner_.action();
  rec.t = ++round_;
  rec.block_m = inner_.block_index();
  rec.f_value = f_value;
  rec.g_plus_value = std::max(0.0, g_value);
  violation_.Q += params_.gamma * rec.g_plus_value;
  violation_.raw_ccv += rec.g_plus_value;
  rec.Q_t = violation_.Q;
  rec.eta_current = inner_.last_step_size();
  last_gradient_ = surrogate_gradient(params_, violation_.Q, grad_f, g_value, grad_g);
  inner_.feed_gradient(last_gradient_);
  if (inner_.block_complete()) inner_.end_block();
  rec.so_calls_cum = inner_.total_so_calls();
  return rec;
}

RunTrace run_coco(const ConvexBody& body, std::int64_t horizon, const BagelParams& params,
                  const std::vector<RoundOracle>& rounds, std::optional<Vector> x1,
                  BlockProjector projector) {
  if (static_cast<std::int64_t>(rounds.size()) < horizon) {
    fail(ErrorCode::kInvalidConfig, "adversary supplies fewer rounds than the horizon");
  }
  BagelLearner learner(body, horizon, params, std::move(x1), std::move(projector));
  RunTrace trace;
  trace.rounds.reserve(static_cast<size_t>(horizon));
  for (std::int64_t t = 0; t < horizon; ++t) {
    trace.rounds.push_back(learner.step_round(rounds[static_cast<size_t>(t)]));
  }
  trace.blocks = learner.inner().history();
  trace.total_so_calls = learner.inner().total_so_calls();
  trace.final_Q = learner.violation().Q;
  trace.params = params.echo();
  trace.params["algorithm"] = "bagel";
  trace.params["T"] = std::to_string(horizon);
  return trace;
}

}  // namespace sepoco
