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
#include <optional>
#include <vector>

#include "sepoco/adversary.hpp"
#include "sepoco/base_ogd.hpp"
#include "sepoco/report.hpp"

namespace sepoco {

class LyapunovPhi {
 public:
  enum class Kind { kExponential, kSquare };

  // Phi(q) = exp(lambda q) - 1.
  static LyapunovPhi exponential(double lambda);
  // Phi(q) = q^2.
  static LyapunovPhi square();

  Kind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  double value(double q) const;
  double derivative(double q) const;

 private:
  Kind kind_ = Kind::kSquare;
  double lambda_ = 0.0;
};

enum class CostMode { kConvex, kStronglyConvex };

struct BagelParams {
  CostMode mode = CostMode::kConvex;
  double gamma = 1.0;
  double V = 1.0;
  LyapunovPhi phi = LyapunovPhi::square();
  double beta = 0.5;
  double delta = 0.1;
  std::int64_t block = 1;
  // K before the divisor repair.
  std::int64_t requested_block = 1;
  // Step rule handed to the inner learner.
  StepRule inner_rule = StepRule::convex(1.0, 1.0);
  double M1 = 1.0;
  double theta = 0.0;

  void validate(std::int64_t horizon) const;
  ParamsEcho echo() const;
};

struct PresetConstants {
  double c_delta = 1.0;
  double c_K = 1.0;
  double epsilon = 1.0;
};

// 1 / (2 delta T + 3 sqrt(2 T K)).
double lambda_for(std::int64_t T, std::int64_t K, double delta);

// Largest divisor of T not exceeding max(1, target).
std::int64_t divisor_at_most(std::int64_t T, std::int64_t target);

// gamma = 1/(M1 D), V = 1, exponential Phi with lambda_for(T, K, delta),
// delta = c_delta T^-beta, K = round(c_K T^(1 - 2 beta)) repaired to a divisor.
// Requires 0 < beta <= 1/2.
BagelParams convex_preset(std::int64_t T, double beta, double M1, double D,
                          const PresetConstants& constants = {});

// gamma = 1, V = 8 M1^2 K log(T e / K) / theta, Phi(q) = q^2,
// delta = c_delta T^-beta log T (must stay below 1), K = round(c_K T^(1 - beta))
// repaired to a divisor. Requires 0 < beta <= 1. The inner learner runs the
// strongly convex rule with modulus V gamma theta, the modulus of V gamma f_t.
BagelParams strongly_convex_preset(std::int64_t T, double beta, double M1, double theta,
                                   const PresetConstants& constants = {});

// V gamma grad_f + Phi'(Q) gamma grad_g when g_value > 0, else V gamma grad_f.
// Throws NumericOverflow when Phi'(Q) is not finite.
Vector surrogate_gradient(const BagelParams& params, double Q, const Vector& grad_f,
                          double g_value, const Vector& grad_g);

struct ViolationState {
  double Q = 0.0;        // gamma-scaled
  double raw_ccv = 0.0;  // sum of (g_t)^+
};

class BagelLearner {
 public:
  BagelLearner(const ConvexBody& body, std::int64_t horizon, BagelParams params,
               std::optional<Vector> x1 = std::nullopt, BlockProjector projector = nullptr);

  const Vector& action() const { return inner_.action(); }
  const ViolationState& violation() const { return violation_; }
  const BlockLearner& inner() const { return inner_; }
  const BagelParams& params() const { return params_; }
  std::int64_t round() const { return round_; }
  // Surrogate gradient fed in the most recent round.
  const Vector& last_surrogate_gradient() const { return last_gradient_; }

  // Plays x_m against one round: Q_t grows by gamma (g_t(x_m))^+ first, then
  // the surrogate gradient at the updated Q_t goes to the inner learner.
  RoundRecord step_round(const RoundOracle& oracle);
  // The same step from values observed at action(): f_t, grad f_t, g_t and
  // grad g_t.
  RoundRecord observe(double f_value, const Vector& grad_f, double g_value, const Vector& grad_g);

 private:
  BagelParams params_;
  BlockLearner inner_;
  ViolationState violation_;
  std::int64_t round_ = 0;
  Vector last_gradient_;
};

RunTrace run_coco(const ConvexBody& body, std::int64_t horizon, const BagelParams& params,
                  const std::vector<RoundOracle>& rounds, std::optional<Vector> x1 = std::nullopt,
                  BlockProjector projector = nullptr);

}  // namespace sepoco
