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

#include "sepoco/ipso.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sepoco/error.hpp"

namespace sepoco {

IpsoConfig IpsoConfig::for_body(const ConvexBody& body, double delta) {
  require_delta(delta);
  IpsoConfig cfg;
  cfg.delta = delta;
  if (delta == 0.0) {
    cfg.max_iterations = 1;
    return cfg;
  }
  const double ratio = body.diameter() / (delta * body.inner_radius());
  const double cap = 10.0 * (ratio * ratio + 1.0);
  cfg.max_iterations = cap >= 9.0e18 ? INT64_MAX : static_cast<std::int64_t>(std::ceil(cap));
  return cfg;
}

void IpsoConfig::validate() const {
  require_delta(delta);
  if (max_iterations < 1) fail(ErrorCode::kInvalidConfig, "max_iterations must be positive");
}

IpsoOutcome infeasible_project(const ConvexBody& body, const IpsoConfig& cfg, const Vector& y0,
                               IpsoTrace* trace) {
  cfg.validate();
  require_vector(y0, body.dimension(), "y0");
  const Vector& c = body.anchor();
  const double d = body.diameter();

  Vector y = body.affine_projection(y0);
  const double scale = std::max(1.0, (y - c).norm() / d);
  if (scale > 1.0) y = c + (y - c) / scale;

  IpsoOutcome out;
  out.clipped_start = y;
  if (trace) trace->iterates.assign(1, y);
  const double step = cfg.delta * body.inner_radius();

  while (true) {
    ++out.so_calls;
    SeparationResult sep = body.separate(y);
    if (sep.inside()) break;
    if (out.so_calls >= cfg.max_iterations) {
      fail(ErrorCode::kIterationCapExceeded,
           "no Inside verdict after " + std::to_string(out.so_calls) + " oracle calls");
    }
    Vector g;
    try {
      g = body.affine_direction_projection(*sep.separator);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateDirection) throw;
      fail(ErrorCode::kIterationCapExceeded,
           std::string("separator is orthogonal to the affine hull: ") + e.what());
    }
    y -= (step / g.norm()) * g;
    ++out.steps_taken;
    if (trace) trace->iterates.push_back(y);
  }
  out.point = std::move(y);
  return out;
}

}  // namespace sepoco
