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
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sepoco/adversary.hpp"
#include "sepoco/bagel.hpp"
#include "sepoco/geometry.hpp"
#include "sepoco/report.hpp"

namespace sepoco {

struct HindsightResult {
  Vector point;
  double value = 0.0;
};

// argmin over K of sum_t f_t. The costs are isotropic quadratics, so the sum is
// <L, x> + (Theta/2) ||x||^2 + const: with Theta > 0 the minimizer is the exact
// projection of -L/Theta, otherwise the linear minimizer over K.
HindsightResult hindsight_optimum(const ConvexBody& body, const std::vector<RoundOracle>& rounds);

// argmin of sum_t f_t over {x in K : g_t(x) <= 0 for all t}. Projected gradient
// with Dykstra projections, then restoration along the segment to the anchor.
// Throws InfeasibleCertificate if the result still violates a constraint.
HindsightResult feasible_hindsight_optimum(const ConvexBody& body,
                                           const std::vector<RoundOracle>& rounds,
                                           const Vector& anchor);

// Every halfspace of every round, normalized and deduplicated (tightest offset
// per normal).
std::vector<Halfspace> distinct_constraints(const std::vector<RoundOracle>& rounds);

struct EvaluateOptions {
  bool feasible_comparator = false;
  std::optional<Vector> feasible_anchor;
  bool keep_rounds = true;
};

RunReport evaluate_run(const ConvexBody& body, const std::vector<RoundOracle>& rounds,
                       RunTrace trace, const EvaluateOptions& options = {});

// The BAGEL surrogate run with IP-SO replaced by exact Euclidean projection;
// one projection per block counts as one call.
RunTrace projection_baseline_trace(const ConvexBody& body, std::int64_t horizon,
                                   const BagelParams& params,
                                   const std::vector<RoundOracle>& rounds);
RunReport projection_baseline_run(const ConvexBody& body, std::int64_t horizon,
                                  const BagelParams& params,
                                  const std::vector<RoundOracle>& rounds,
                                  const EvaluateOptions& options = {});

enum class Metric { kRegret, kCcv, kSoCalls };

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Least squares of log y on log x. Throws DegenerateFit on non-positive data
// or fewer than two distinct x.
ScalingFit fit_loglog(std::span<const double> x, std::span<const double> y);

// Fit of log(mean metric) against log T; CCV is fitted as mean CCV + 1.
// Requires >= 3 horizons with >= 5 runs each.
ScalingFit fit_scaling(const std::map<std::int64_t, std::vector<RunReport>>& reports_by_T,
                       Metric metric);
ScalingFit fit_scaling(const std::map<std::int64_t, std::vector<double>>& values_by_T,
                       Metric metric);

double metric_of(const RunReport& report, Metric metric);

struct Certificate {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

// sum_m K <mean_grad_m, x_m - comparator> <= 1.5 D K sqrt(sum_m ||mean_grad_m||^2) + 1e-6.
Certificate linearized_regret_certificate(const RunTrace& trace, const Vector& comparator,
                                          double diameter, std::int64_t block);

// The same left side against (K D / 2)(sqrt(epsilon + S) + 2 sqrt(S)), which
// keeps the epsilon in the final step size.
Certificate linearized_regret_certificate_eps(const RunTrace& trace, const Vector& comparator,
                                              double diameter, std::int64_t block,
                                              double epsilon);

// R(f_hat) - V R(f_tilde) - Phi(Q_T) >= -1e-6 at a feasible comparator, with
// f_tilde = gamma f, f_hat_t = V f_tilde_t + Phi'(Q_t) gamma (g_t)^+.
Certificate surrogate_decomposition_certificate(const BagelParams& params,
                                                const std::vector<RoundOracle>& rounds,
                                                const RunTrace& trace, const Vector& comparator);

// total_so_calls <= sum_m (dist(y_m, K_delta)^2 / (delta^2 r^2) + 1), with y_m the
// clipped start of block m.
Certificate so_call_budget_certificate(const ConvexBody& body, const RunTrace& trace,
                                       double delta);

}  // namespace sepoco
