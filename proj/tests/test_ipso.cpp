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

#include "sepoco/error.hpp"
#include "sepoco/exact_projection.hpp"
#include "sepoco/ipso.hpp"
#include "sepoco/rng.hpp"
#include "sepoco/selftest.hpp"
#include "test_util.hpp"

using namespace sepoco;
using sepoco::testing::near;
using sepoco::testing::vec;

TEST_CASE("inside start returns after one call") {
  const auto ball = ConvexBody::ball(vec({0, 0}), 1.0);
  const auto out = infeasible_project(ball, IpsoConfig::for_body(ball, 0.1), vec({0.3, -0.2}));
  CHECK(out.so_calls == 1);
  CHECK(out.steps_taken == 0);
  CHECK(near(out.point, vec({0.3, -0.2}), 0.0));
}

TEST_CASE("ball example: membership, non-expansiveness, call bound") {
  const auto ball = ConvexBody::ball(vec({0, 0}), 1.0);
  const double delta = 0.1;
  const Vector y0 = vec({2, 0});
  const auto out = infeasible_project(ball, IpsoConfig::for_body(ball, delta), y0);
  CHECK(ball.contains(out.point));
  CHECK(out.so_calls <= 122);
  CHECK(out.so_calls == out.steps_taken + 1);
  // Straight radial walk: ceil((2 - 1) / 0.1) = 10 steps of length 0.1.
  CHECK(out.steps_taken == 10);
  CounterRng rng(1);
  for (int i = 0; i < 500; ++i) {
    const Vector x = shrunk_member(ball, delta, random_point_in(ball, rng));
    CHECK((out.point - x).norm() <= (y0 - x).norm() + 1e-9);
  }
}

TEST_CASE("box example walks along face normals in steps of delta r") {
  const auto box = ConvexBody::box(vec({0, 0}), vec({1, 1}));
  const double delta = 0.05;
  const Vector y0 = vec({1.3, 0.5});
  IpsoTrace trace;
  const auto out = infeasible_project(box, IpsoConfig::for_body(box, delta), y0, &trace);
  CHECK(box.contains(out.point));
  REQUIRE(trace.iterates.size() == static_cast<std::size_t>(out.steps_taken + 1));
  for (std::size_t i = 1; i < trace.iterates.size(); ++i) {
    const Vector step = trace.iterates[i - 1] - trace.iterates[i];
    CHECK(step.norm() == doctest::Approx(0.025).epsilon(1e-12));
    CHECK(near(step.normalized(), vec({1, 0}), 1e-12));
  }
  const double dist = exact::distance_to_shrunk(box, delta, out.clipped_start);
  CHECK(out.so_calls <= dist * dist / (0.025 * 0.025) + 1.0);
  // 0.3 / 0.025 = 12 steps; the 12th lands exactly on the face.
  CHECK(out.steps_taken == 12);
}

TEST_CASE("preamble clips to the diameter ball around the anchor") {
  const auto ball = ConvexBody::ball(vec({0, 0}), 1.0);
  const auto out = infeasible_project(ball, IpsoConfig::for_body(ball, 0.2), vec({10, 0}));
  CHECK(near(out.clipped_start, vec({2, 0}), 1e-15));
  CHECK(ball.contains(out.point));

  const auto simplex = ConvexBody::simplex(3);
  const auto s = infeasible_project(simplex, IpsoConfig::for_body(simplex, 0.2), vec({0, 0, 0}));
  CHECK(near(s.clipped_start, vec({1.0 / 3, 1.0 / 3, 1.0 / 3}), 1e-15));
  CHECK(s.so_calls == 1);
}

TEST_CASE("off-centre anchor uses the distance to the anchor") {
  const auto ball = ConvexBody::ball(vec({5, 0}), 1.0);
  const auto out = infeasible_project(ball, IpsoConfig::for_body(ball, 0.2), vec({5, 0.5}));
  // Inside, so no clip although ||y|| > D.
  CHECK(near(out.point, vec({5, 0.5}), 0.0));
}

TEST_CASE("iterates stay in the affine hull of a simplex") {
  const auto simplex = ConvexBody::simplex(4);
  IpsoTrace trace;
  const auto out =
      infeasible_project(simplex, IpsoConfig::for_body(simplex, 0.1), vec({1.2, -0.3, 0.1, 0.0}), &trace);
  CHECK(simplex.contains(out.point));
  for (const auto& y : trace.iterates) CHECK(y.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("randomised contract") {
  const auto r = check_ipso_contract(200, 99);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("delta zero caps at one call") {
  const auto ball = ConvexBody::ball(vec({0, 0}), 1.0);
  const auto cfg = IpsoConfig::for_body(ball, 0.0);
  CHECK(cfg.max_iterations == 1);
  CHECK(infeasible_project(ball, cfg, vec({0.5, 0})).so_calls == 1);
  try {
    infeasible_project(ball, cfg, vec({1.5, 0}));
    FAIL("expected IterationCapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIterationCapExceeded);
  }
}

TEST_CASE("cap from the call bound") {
  const auto ball = ConvexBody::ball(vec({0, 0}), 1.0);
  // 10 (D^2 / (delta r)^2 + 1) with D = 2, r = 1, delta = 0.5.
  CHECK(IpsoConfig::for_body(ball, 0.5).max_iterations == 170);
  IpsoConfig tight{0.01, 3};
  try {
    infeasible_project(ball, tight, vec({1.5, 0}));
    FAIL("expected IterationCapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIterationCapExceeded);
  }
}

TEST_CASE("invalid input") {
  const auto ball = ConvexBody::ball(vec({0, 0}), 1.0);
  CHECK_THROWS_AS(IpsoConfig::for_body(ball, 1.0), Error);
  CHECK_THROWS_AS(infeasible_project(ball, IpsoConfig::for_body(ball, 0.1), vec({1, 2, 3})), Error);
}
