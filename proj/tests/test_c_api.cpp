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

#include <cstring>
#include <string>
#include <vector>

#include "sepoco/adversary.hpp"
#include "sepoco/bagel.hpp"
#include "sepoco/ipso.hpp"
#include "sepoco/sepoco.h"
#include "test_util.hpp"

using sepoco::testing::vec;

TEST_CASE("C API: body handles") {
  const double center[2] = {0.0, 0.0};
  sepoco_body* ball = nullptr;
  REQUIRE(sepoco_body_create_ball(center, 2, 1.0, &ball) == SEPOCO_OK);
  size_t d = 0;
  double D = 0.0, r = 0.0;
  CHECK(sepoco_body_dimension(ball, &d) == SEPOCO_OK);
  CHECK(sepoco_body_diameter(ball, &D) == SEPOCO_OK);
  CHECK(sepoco_body_inner_radius(ball, &r) == SEPOCO_OK);
  CHECK(d == 2);
  CHECK(D == 2.0);
  CHECK(r == 1.0);

  const double y[2] = {2.0, 0.0};
  int inside = -1;
  double sep[2] = {0, 0};
  CHECK(sepoco_body_separate(ball, y, &inside, sep) == SEPOCO_OK);
  CHECK(inside == 0);
  CHECK(sep[0] > 0.0);
  CHECK(sep[1] == 0.0);

  double point[2];
  int64_t calls = 0;
  CHECK(sepoco_ipso_project(ball, 0.1, y, point, &calls) == SEPOCO_OK);
  const auto body = sepoco::ConvexBody::ball(vec({0, 0}), 1.0);
  const auto ref = sepoco::infeasible_project(body, sepoco::IpsoConfig::for_body(body, 0.1), vec({2, 0}));
  CHECK(calls == ref.so_calls);
  CHECK(point[0] == ref.point(0));
  CHECK(point[1] == ref.point(1));
  sepoco_body_destroy(ball);
}

TEST_CASE("C API: simplex and polytope") {
  sepoco_body* simplex = nullptr;
  REQUIRE(sepoco_body_create_simplex(3, &simplex) == SEPOCO_OK);
  const double y[3] = {0, 0, 0};
  double p[3];
  CHECK(sepoco_body_affine_projection(simplex, y, p) == SEPOCO_OK);
  CHECK(p[0] == doctest::Approx(1.0 / 3));
  sepoco_body_destroy(simplex);

  const double normals[8] = {1, 0, 0, 1, -1, 0, 0, -1};
  const double offsets[4] = {1, 1, 1, 1};
  sepoco_body* square = nullptr;
  REQUIRE(sepoco_body_create_polytope(normals, offsets, 4, 2, nullptr, &square) == SEPOCO_OK);
  double anchor[2] = {9, 9};
  CHECK(sepoco_body_anchor(square, anchor) == SEPOCO_OK);
  CHECK(anchor[0] == doctest::Approx(0.0));
  CHECK(anchor[1] == doctest::Approx(0.0));
  sepoco_body_destroy(square);
}

TEST_CASE("C API: errors map to status codes") {
  sepoco_body* body = reinterpret_cast<sepoco_body*>(0x1);
  const double center[2] = {0, 0};
  CHECK(sepoco_body_create_ball(center, 2, -1.0, &body) == SEPOCO_INVALID_ARGUMENT);
  CHECK(body == nullptr);
  CHECK(std::strlen(sepoco_last_error()) > 0);
  CHECK(sepoco_body_create_ball(nullptr, 2, 1.0, &body) == SEPOCO_INVALID_ARGUMENT);
  size_t d = 0;
  CHECK(sepoco_body_dimension(nullptr, &d) == SEPOCO_INVALID_ARGUMENT);

  REQUIRE(sepoco_body_create_ball(center, 2, 1.0, &body) == SEPOCO_OK);
  CHECK(std::strlen(sepoco_last_error()) == 0);
  double point[2];
  CHECK(sepoco_ipso_project(body, 1.5, center, point, nullptr) == SEPOCO_INVALID_DELTA);
  CHECK(std::string(sepoco_status_name(SEPOCO_INVALID_DELTA)) == "InvalidDelta");
  CHECK(std::string(sepoco_status_name(SEPOCO_RUN_FAILED)) == "RunFailed");
  sepoco_learner* learner = nullptr;
  CHECK(sepoco_bagel_create_convex(body, 1024, 0.9, 1.0, 1.0, 1.0, 1.0, &learner) ==
        SEPOCO_INVALID_CONFIG);
  CHECK(learner == nullptr);
  sepoco_body_destroy(body);
}

TEST_CASE("C API: learner matches the C++ learner") {
  const auto body = sepoco::ConvexBody::box(vec({-1, -1}), vec({1, 1}));
  sepoco::ScenarioSpec spec;
  spec.kind = sepoco::ScenarioKind::kSwitchingHalfspaceConstraints;
  spec.seed = 7;
  spec.horizon = 256;
  spec.dimension = 2;
  const auto rounds = sepoco::generate(spec, body);
  const auto params = sepoco::convex_preset(256, 0.25, 1.0, body.diameter());
  sepoco::BagelLearner ref(body, 256, params);

  const double lower[2] = {-1, -1}, upper[2] = {1, 1};
  sepoco_body* h = nullptr;
  REQUIRE(sepoco_body_create_box(lower, upper, 2, &h) == SEPOCO_OK);
  sepoco_learner* l = nullptr;
  REQUIRE(sepoco_bagel_create_convex(h, 256, 0.25, 1.0, 1.0, 1.0, 1.0, &l) == SEPOCO_OK);
  int64_t K = 0;
  CHECK(sepoco_learner_block_size(l, &K) == SEPOCO_OK);
  CHECK(K == params.block);
  for (const auto& o : rounds) {
    double x[2];
    REQUIRE(sepoco_learner_action(l, x) == SEPOCO_OK);
    const sepoco::Vector xv = vec({x[0], x[1]});
    CHECK(xv == ref.action());
    const sepoco::Vector gf = o.grad_f(xv), gg = o.grad_g(xv);
    const double g = o.g(xv);
    REQUIRE(sepoco_learner_observe(l, o.f(xv), gf.data(), g, g > 0 ? gg.data() : nullptr) == SEPOCO_OK);
    ref.step_round(o);
  }
  double Q = 0, ccv = 0;
  int64_t calls = 0;
  CHECK(sepoco_learner_violation(l, &Q, &ccv) == SEPOCO_OK);
  CHECK(sepoco_learner_so_calls(l, &calls) == SEPOCO_OK);
  CHECK(Q == ref.violation().Q);
  CHECK(ccv == ref.violation().raw_ccv);
  CHECK(calls == ref.inner().total_so_calls());
  // Horizon exhausted.
  const double zero[2] = {0, 0};
  CHECK(sepoco_learner_observe(l, 0.0, zero, 0.0, nullptr) == SEPOCO_BLOCK_OVERFLOW);
  sepoco_learner_destroy(l);
  sepoco_body_destroy(h);
}

TEST_CASE("C API: configs") {
  sepoco_config* cfg = nullptr;
  CHECK(sepoco_config_parse("beta=0.5\nhorizons=64\n", 0, &cfg) == SEPOCO_CONFIG_ERROR);
  CHECK(cfg == nullptr);
  CHECK(std::string(sepoco_last_error()).find("geometry") != std::string::npos);
  REQUIRE(sepoco_config_parse("beta=0.5\nhorizons=64,128\nseeds=1\ngeometry=ball d=2\n", 0, &cfg) ==
          SEPOCO_OK);
  size_t needed = 0;
  CHECK(sepoco_config_format(cfg, nullptr, 0, &needed) == SEPOCO_OK);
  REQUIRE(needed > 1);
  std::vector<char> buf(needed);
  CHECK(sepoco_config_format(cfg, buf.data(), buf.size(), nullptr) == SEPOCO_OK);
  CHECK(std::strlen(buf.data()) == needed - 1);
  sepoco_config* again = nullptr;
  CHECK(sepoco_config_parse(buf.data(), 0, &again) == SEPOCO_OK);
  sepoco_config_destroy(again);
  sepoco_config_destroy(cfg);
  CHECK(sepoco_config_load("/nonexistent/sepoco.conf", 0, &cfg) == SEPOCO_IO_ERROR);
}
