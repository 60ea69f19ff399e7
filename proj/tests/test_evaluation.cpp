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
#include "sepoco/bagel.hpp"
#include "sepoco/error.hpp"
#include "sepoco/evaluation.hpp"
#include "sepoco/rng.hpp"
#include "test_util.hpp"

using namespace sepoco;
using sepoco::testing::near;
using sepoco::testing::vec;

namespace {

RoundOracle linear_round(const Vector& g) {
  RoundOracle o;
  o.cost.linear = g;
  o.cost.target = Vector::Zero(g.size());
  return o;
}

RoundOracle quadratic_round(const Vector& linear, double curvature, const Vector& target) {
  RoundOracle o;
  o.cost.linear = linear;
  o.cost.curvature = curvature;
  o.cost.target = target;
  o.declared_theta = curvature;
  return o;
}

double total(const std::vector<RoundOracle>& rounds, const Vector& x) {
  double v = 0.0;
  for (const auto& o : rounds) v += o.f(x);
  return v;
}

// Grid search on [lo, hi]^2 restricted to points accepted by `ok`, refined
// three times around the incumbent.
Vector grid_argmin(const std::function<double(const Vector&)>& f,
                   const std::function<bool(const Vector&)>& ok, double lo, double hi) {
  Vector best;
  double best_v = INFINITY;
  Vector center = vec({0.5 * (lo + hi), 0.5 * (lo + hi)});
  double span = hi - lo;
  for (int level = 0; level < 5; ++level) {
    const int n = 200;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        const Vector x = center + span * vec({i / double(n) - 0.5, j / double(n) - 0.5});
        if (!ok(x)) continue;
        const double v = f(x);
        if (v < best_v) {
          best_v = v;
          best = x;
        }
      }
    }
    center = best;
    span /= 20.0;
  }
  return best;
}

}  // namespace

TEST_CASE("hindsight optimum of a fixed quadratic is its target") {
  const auto body = ConvexBody::ball(vec({0, 0}), 1.0);
  const std::vector<RoundOracle> rounds(10, quadratic_round(vec({0, 0}), 2.0, vec({0.3, -0.4})));
  const auto h = hindsight_optimum(body, rounds);
  CHECK(near(h.point, vec({0.3, -0.4}), 1e-15));
  CHECK(h.value == doctest::Approx(0.0));
}

TEST_CASE("hindsight optimum of a fixed linear loss on a ball") {
  const auto body = ConvexBody::ball(vec({1, 2}), 1.5);
  const Vector g = vec({3, -4});
  const std::vector<RoundOracle> rounds(7, linear_round(g));
  const auto h = hindsight_optimum(body, rounds);
  CHECK(near(h.point, vec({1, 2}) - 1.5 * g.normalized(), 1e-14));
  CHECK(h.value == doctest::Approx(total(rounds, h.point)));
}

TEST_CASE("linear hindsight on a simplex and a zero aggregate") {
  const auto simplex = ConvexBody::simplex(3);
  const auto h = hindsight_optimum(simplex, {linear_round(vec({1, -2, -2}))});
  CHECK(near(h.point, vec({0, 1, 0}), 0.0));
  const auto zero = hindsight_optimum(simplex, {linear_round(vec({1, 0, 0})), linear_round(vec({-1, 0, 0}))});
  CHECK(near(zero.point, simplex.anchor(), 0.0));
}

TEST_CASE("mixed random quadratics on a box agree with a grid search") {
  const auto box = ConvexBody::box(vec({-1, -0.5}), vec({0.5, 1}));
  CounterRng rng(12);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<RoundOracle> rounds;
    for (int t = 0; t < 20; ++t) {
      const bool quad = rng.uniform() < 0.5;
      rounds.push_back(quadratic_round(vec({rng.uniform(-2, 2), rng.uniform(-2, 2)}),
                                       quad ? rng.uniform(0, 1) : 0.0,
                                       vec({rng.uniform(-3, 3), rng.uniform(-3, 3)})));
    }
    const auto h = hindsight_optimum(box, rounds);
    const Vector g = grid_argmin([&](const Vector& x) { return total(rounds, x); },
                                 [&](const Vector& x) { return box.contains(x); }, -1.5, 1.5);
    CHECK(h.value == doctest::Approx(total(rounds, g)).epsilon(1e-5));
    CHECK(h.value <= total(rounds, g) + 1e-9);
  }
}

TEST_CASE("feasible optimum equals the unconstrained one when constraints are slack") {
  const auto body = ConvexBody::ball(vec({0, 0}), 1.0);
  auto o = linear_round(vec({1, 0}));
  o.constraint = aggregate_constraints({{vec({0, 1}), 0.5}});
  const std::vector<RoundOracle> rounds(5, o);
  const auto h = hindsight_optimum(body, rounds);
  const auto f = feasible_hindsight_optimum(body, rounds, body.anchor());
  CHECK(near(f.point, h.point, 0.0));
}

TEST_CASE("feasible optimum on a cutting halfspace agrees with a grid search") {
  const auto body = ConvexBody::ball(vec({0, 0}), 1.0);
  auto o = linear_round(vec({1, 0.5}));
  const Halfspace cut{vec({-1, 0}), 0.2};  // x_0 >= -0.2
  o.constraint = aggregate_constraints({cut});
  const std::vector<RoundOracle> rounds(4, o);
  const auto f = feasible_hindsight_optimum(body, rounds, body.anchor());
  CHECK(o.g(f.point) <= 1e-12);
  CHECK(body.contains(f.point));
  CHECK(f.point(0) == doctest::Approx(-0.2).epsilon(1e-6));
  const Vector g = grid_argmin([&](const Vector& x) { return total(rounds, x); },
                               [&](const Vector& x) { return body.contains(x) && o.g(x) <= 0.0; },
                               -1.2, 1.2);
  CHECK(f.value == doctest::Approx(total(rounds, g)).epsilon(1e-5));
  CHECK(near(f.point, g, 1e-4));
}

TEST_CASE("feasible optimum is the anchor when costs are minimised there") {
  const auto body = ConvexBody::box(vec({0, 0}), vec({1, 1}));
  auto o = quadratic_round(vec({0, 0}), 1.0, vec({0.5, 0.5}));
  o.constraint = aggregate_constraints({{vec({1, 0}), 0.5}, {vec({0, 1}), 0.5}});
  const std::vector<RoundOracle> rounds(3, o);
  const auto f = feasible_hindsight_optimum(body, rounds, body.anchor());
  CHECK(near(f.point, vec({0.5, 0.5}), 1e-9));
}

TEST_CASE("evaluate_run scores the trace") {
  const auto body = ConvexBody::ball(vec({0, 0}), 1.0);
  ScenarioSpec spec;
  spec.kind = ScenarioKind::kSwitchingHalfspaceConstraints;
  spec.seed = 2;
  spec.horizon = 256;
  spec.dimension = 2;
  const auto rounds = generate(spec, body);
  const auto params = convex_preset(256, 0.5, 1.0, 2.0);
  RunTrace trace = run_coco(body, 256, params, rounds);
  double f_sum = 0.0, ccv = 0.0;
  for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
    f_sum += rounds[t].f(trace.rounds[t].action);
    ccv += std::max(0.0, rounds[t].g(trace.rounds[t].action));
  }
  EvaluateOptions opts;
  opts.feasible_comparator = true;
  const RunReport r = evaluate_run(body, rounds, trace, opts);
  CHECK(r.regret == doctest::Approx(f_sum - r.hindsight_value));
  CHECK(r.ccv == doctest::Approx(ccv));
  REQUIRE(r.feasible_value.has_value());
  CHECK(*r.feasible_value >= r.hindsight_value - 1e-9);
  CHECK(r.rounds.size() == 256);
  CHECK(r.params_echo.at("algorithm") == "bagel");
}

TEST_CASE("projection baseline with K = 1 on a ball is the radial clamp") {
  const auto body = ConvexBody::ball(vec({0, 0}), 1.0);
  const std::vector<RoundOracle> rounds(64, linear_round(vec({1, 0})));
  const auto params = convex_preset(64, 0.5, 1.0, 2.0);
  const RunTrace trace = projection_baseline_trace(body, 64, params, rounds);
  for (const auto& b : trace.blocks) CHECK(b.so_calls == 1);
  for (std::size_t m = 0; m + 1 < trace.blocks.size(); ++m) {
    const Vector& y = trace.blocks[m].tentative;
    const Vector expect = y.norm() > 1.0 ? Vector(y / y.norm()) : y;
    CHECK(near(trace.blocks[m + 1].action, expect, 1e-15));
  }
  CHECK(trace.total_so_calls == 64);
  // Same report schema as a BAGEL run, apart from the algorithm name.
  const RunTrace bagel = run_coco(body, 64, params, rounds);
  CHECK(trace.params.size() == bagel.params.size());
  for (const auto& [k, v] : bagel.params) {
    REQUIRE(trace.params.count(k) == 1);
    if (k != "algorithm") CHECK(trace.params.at(k) == v);
  }
}

TEST_CASE("log-log fits") {
  const std::vector<double> T = {1024, 2048, 4096, 8192};
  std::vector<double> lin, root;
  for (double t : T) {
    lin.push_back(t);
    root.push_back(3.0 * std::sqrt(t));
  }
  CHECK(fit_loglog(T, lin).slope == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fit_loglog(T, root).slope == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(fit_loglog(T, root).r_squared == doctest::Approx(1.0));
  CHECK_THROWS_AS(fit_loglog(T, std::vector<double>{1, 2, 0, 4}), Error);
  CHECK_THROWS_AS(fit_loglog(std::vector<double>{4, 4}, std::vector<double>{1, 2}), Error);
}

TEST_CASE("scaling fits need enough horizons and runs") {
  std::map<std::int64_t, std::vector<double>> data;
  for (std::int64_t t : {1000, 2000, 4000}) data[t] = std::vector<double>(5, std::sqrt(double(t)));
  CHECK(fit_scaling(data, Metric::kRegret).slope == doctest::Approx(0.5));
  // CCV is fitted on mean + 1.
  std::map<std::int64_t, std::vector<double>> ccv;
  for (std::int64_t t : {1000, 2000, 4000}) ccv[t] = std::vector<double>(5, double(t) - 1.0);
  CHECK(fit_scaling(ccv, Metric::kCcv).slope == doctest::Approx(1.0));

  auto few_runs = data;
  few_runs[1000].pop_back();
  try {
    fit_scaling(few_runs, Metric::kRegret);
    FAIL("expected DegenerateFit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateFit);
  }
  auto few_T = data;
  few_T.erase(4000);
  CHECK_THROWS_AS(fit_scaling(few_T, Metric::kRegret), Error);
}

TEST_CASE("certificates on a blocked run") {
  const auto body = ConvexBody::box(vec({-1, -1}), vec({1, 1}));
  ScenarioSpec spec;
  spec.kind = ScenarioKind::kCustomSeeded;
  spec.seed = 3;
  spec.horizon = 256;
  spec.dimension = 2;
  const auto rounds = generate(spec, body);
  const RunTrace trace = run_oco(body, 256, 4, 0.2, StepRule::convex(1.0, body.diameter()), rounds);
  const Vector x = hindsight_optimum(body, rounds).point;
  const auto reg = linearized_regret_certificate(trace, x, body.diameter(), 4);
  CHECK(reg.holds);
  const auto reg_eps = linearized_regret_certificate_eps(trace, x, body.diameter(), 4, 1.0);
  CHECK(reg_eps.holds);
  CHECK(reg_eps.lhs == doctest::Approx(reg.lhs));
  CHECK(reg_eps.rhs >= reg.rhs);
  const auto calls = so_call_budget_certificate(body, trace, 0.2);
  CHECK(calls.holds);
  CHECK(calls.lhs == doctest::Approx(double(trace.total_so_calls)));
}
