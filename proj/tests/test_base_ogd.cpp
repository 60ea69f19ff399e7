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

#include <cmath>
#include <functional>
#include <map>

#include "sepoco/adversary.hpp"
#include "sepoco/base_ogd.hpp"
#include "sepoco/error.hpp"
#include "sepoco/evaluation.hpp"
#include "sepoco/selftest.hpp"
#include "test_util.hpp"

using namespace sepoco;
using sepoco::testing::near;
using sepoco::testing::vec;

namespace {

ConvexBody unit_ball() { return ConvexBody::ball(vec({0, 0}), 1.0); }

std::vector<RoundOracle> constant_linear(const Vector& g, std::int64_t T) {
  RoundOracle o;
  o.cost.linear = g;
  o.cost.target = Vector::Zero(g.size());
  o.declared_M1 = g.norm();
  return std::vector<RoundOracle>(static_cast<size_t>(T), o);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

}  // namespace

TEST_CASE("initial state") {
  BlockLearner l(unit_ball(), 8, 2, 0.1, StepRule::convex(1.0, 2.0));
  CHECK(l.block_index() == 1);
  CHECK(l.block_count() == 4);
  CHECK(near(l.action(), vec({0, 0}), 0.0));
  BlockLearner unblocked(unit_ball(), 8, 1, 0.1, StepRule::convex(1.0, 2.0));
  CHECK(unblocked.block_count() == 8);
}

TEST_CASE("block size must divide the horizon") {
  CHECK(code_of([] { BlockLearner(unit_ball(), 10, 3, 0.1, StepRule::convex(1.0, 2.0)); }) ==
        ErrorCode::kInvalidConfig);
  CHECK(code_of([] { BlockLearner(unit_ball(), 10, 2, 0.0, StepRule::convex(1.0, 2.0)); }) ==
        ErrorCode::kInvalidConfig);
  CHECK(code_of([] {
          BlockLearner(unit_ball(), 10, 2, 0.1, StepRule::convex(1.0, 2.0), vec({2, 0}));
        }) == ErrorCode::kInvalidConfig);
}

TEST_CASE("gradient accumulation and overflow") {
  BlockLearner l(unit_ball(), 8, 2, 0.1, StepRule::convex(1.0, 2.0));
  l.feed_gradient(vec({1, 0}));
  l.feed_gradient(vec({0, 1}));
  CHECK(near(l.grad_sum(), vec({1, 1}), 0.0));
  CHECK(l.block_complete());
  CHECK(code_of([&] { l.feed_gradient(vec({0, 1})); }) == ErrorCode::kBlockOverflow);
  l.end_block();
  REQUIRE(l.history().size() == 1);
  CHECK(near(l.history()[0].mean_gradient, vec({0.5, 0.5}), 0.0));
  CHECK(l.block_index() == 2);
  CHECK(l.rounds_in_block() == 0);
}

TEST_CASE("zero gradient block is a fixed point") {
  BlockLearner l(unit_ball(), 4, 2, 0.1, StepRule::convex(1.0, 2.0), vec({0.3, 0.4}));
  l.feed_gradient(vec({0, 0}));
  l.feed_gradient(vec({0, 0}));
  l.end_block();
  CHECK(near(l.action(), vec({0.3, 0.4}), 0.0));
  CHECK(l.total_so_calls() == 1);
}

TEST_CASE("step sizes") {
  CHECK(StepRule::convex(1.0, 2.0).step_size(1, 3.0) == doctest::Approx(1.0));
  CHECK(StepRule::strongly_convex(0.5).step_size(4, 123.0) == doctest::Approx(0.5));
  CHECK(std::isinf(StepRule::convex(0.0, 2.0).step_size(1, 0.0)));
}

TEST_CASE("epsilon zero skips the step while gradients are zero") {
  BlockLearner l(unit_ball(), 2, 1, 0.1, StepRule::convex(0.0, 2.0));
  l.feed_gradient(vec({0, 0}));
  l.end_block();
  CHECK(near(l.action(), vec({0, 0}), 0.0));
  l.feed_gradient(vec({0.5, 0}));
  l.end_block();
  // eta = 2 / 0.5, full step of length D then IP-SO back into the ball.
  CHECK(l.last_step_size() == doctest::Approx(4.0));
  CHECK(unit_ball().contains(l.action()));
}

TEST_CASE("interior update needs no correction") {
  // Strongly convex rule with theta = 2: eta_1 = 0.5, so eta g = (0.5, 0).
  BlockLearner l(unit_ball(), 2, 1, 0.1, StepRule::strongly_convex(2.0));
  l.feed_gradient(vec({1, 0}));
  l.end_block();
  CHECK(near(l.action(), vec({-0.5, 0}), 1e-15));
  CHECK(l.total_so_calls() == 1);
}

TEST_CASE("custom projector is used") {
  int calls = 0;
  BlockProjector p = [&](const Vector& y) {
    ++calls;
    return ProjectionStep{Vector::Zero(y.size()), 7, y};
  };
  BlockLearner l(unit_ball(), 2, 1, 0.1, StepRule::convex(1.0, 2.0), std::nullopt, p);
  l.feed_gradient(vec({1, 0}));
  l.end_block();
  CHECK(calls == 1);
  CHECK(l.total_so_calls() == 7);
}

TEST_CASE("constant linear loss approaches the minimising boundary point") {
  const Vector g = vec({0.6, 0.8});
  std::vector<double> per_round;
  for (std::int64_t T : {256, 1024, 4096}) {
    const auto rounds = constant_linear(g, T);
    const double delta = 1.0 / std::sqrt(static_cast<double>(T));
    RunTrace trace = run_oco(unit_ball(), T, 1, delta, StepRule::convex(1.0, 2.0), rounds);
    const RunReport report = evaluate_run(unit_ball(), rounds, std::move(trace));
    CHECK(near(report.hindsight_point, -g, 1e-12));
    per_round.push_back(report.regret / static_cast<double>(T));
    // Played point ends within the shrunk ball and near -g.
    CHECK((report.rounds.back().action + g).norm() < 0.1);
  }
  CHECK(per_round[1] < per_round[0]);
  CHECK(per_round[2] < per_round[1]);
}

TEST_CASE("trace bookkeeping") {
  const auto rounds = constant_linear(vec({1, 0}), 12);
  const RunTrace trace = run_oco(unit_ball(), 12, 3, 0.2, StepRule::convex(1.0, 2.0), rounds);
  CHECK(trace.rounds.size() == 12);
  CHECK(trace.blocks.size() == 4);
  for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
    CHECK(trace.rounds[t].t == static_cast<std::int64_t>(t + 1));
    CHECK(trace.rounds[t].block_m == static_cast<std::int64_t>(t / 3 + 1));
    // Action is constant within a block.
    CHECK(near(trace.rounds[t].action, trace.blocks[t / 3].action, 0.0));
  }
  CHECK(trace.rounds.back().so_calls_cum == trace.total_so_calls);
  CHECK(trace.params.at("algorithm") == "base_ogd");
}

TEST_CASE("convex step size is non-increasing") {
  ScenarioSpec spec;
  spec.kind = ScenarioKind::kCustomSeeded;
  spec.seed = 4;
  spec.horizon = 512;
  spec.dimension = 3;
  const auto body = ConvexBody::box(vec({-1, -1, -1}), vec({1, 1, 1}));
  const auto rounds = generate(spec, body);
  const RunTrace trace = run_oco(body, 512, 4, 0.1, StepRule::convex(1.0, body.diameter()), rounds);
  for (std::size_t m = 1; m < trace.blocks.size(); ++m) {
    CHECK(trace.blocks[m].step_size <= trace.blocks[m - 1].step_size);
  }
  for (const auto& r : trace.rounds) CHECK(body.contains(r.action));
}

TEST_CASE("regret certificate and call budget on random scenarios") {
  const auto r = check_regret_certificates(15, 77);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("regret slope for random Lipschitz losses at beta 1/2") {
  const auto body = ConvexBody::ball(vec({0, 0, 0}), 1.0);
  std::map<std::int64_t, std::vector<double>> regret;
  for (std::int64_t T : {1024, 4096, 16384}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      ScenarioSpec spec;
      spec.kind = ScenarioKind::kDriftingLinear;
      spec.constraints = ConstraintMode::kNone;
      spec.bias = 0.6;
      spec.seed = seed;
      spec.horizon = T;
      spec.dimension = 3;
      const auto rounds = generate(spec, body);
      const double delta = 1.0 / std::sqrt(static_cast<double>(T));
      RunTrace trace = run_oco(body, T, 1, delta, StepRule::convex(1.0, 2.0), rounds);
      EvaluateOptions opts;
      opts.keep_rounds = false;
      regret[T].push_back(evaluate_run(body, rounds, std::move(trace), opts).regret);
    }
  }
  const ScalingFit fit = fit_scaling(regret, Metric::kRegret);
  INFO("slope " << fit.slope);
  CHECK(fit.slope <= 0.6);
}

TEST_CASE("strongly convex mode on a fixed quadratic") {
  RoundOracle o;
  o.cost.linear = Vector::Zero(2);
  o.cost.curvature = 1.0;
  o.cost.target = vec({0.9, 0.0});
  o.declared_theta = 1.0;
  o.declared_M1 = 2.0;
  const std::vector<RoundOracle> rounds(2048, o);
  RunTrace trace = run_oco(unit_ball(), 2048, 1, 0.05, StepRule::strongly_convex(1.0), rounds);
  const RunReport report = evaluate_run(unit_ball(), rounds, std::move(trace));
  CHECK(near(report.hindsight_point, vec({0.9, 0.0}), 1e-12));
  CHECK(report.hindsight_value == doctest::Approx(0.0));
  CHECK(report.regret < 5.0);
}
