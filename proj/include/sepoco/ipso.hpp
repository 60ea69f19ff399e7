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
#include <vector>

#include "sepoco/geometry.hpp"

namespace sepoco {

struct IpsoConfig {
  double delta = 0.0;
  std::int64_t max_iterations = 1;

  // delta plus the default safety cap 10 (D^2 / (delta^2 r^2) + 1); a single
  // call when delta = 0.
  static IpsoConfig for_body(const ConvexBody& body, double delta);
  // Throws InvalidDelta or InvalidConfig.
  void validate() const;
};

struct IpsoOutcome {
  Vector point;
  std::int64_t so_calls = 0;
  std::int64_t steps_taken = 0;
  // The start of the corrective loop: y0 projected onto aff(K) and clipped
  // into the ball of radius D around c.
  Vector clipped_start;
};

// Optional per-iteration record of the loop iterates, clipped start first.
struct IpsoTrace {
  std::vector<Vector> iterates;
};

// Infeasible projection via the separation oracle: after the preamble, step
// by delta * r against the normalized in-hull separator until the oracle says
// Inside. so_calls = steps_taken + 1.
//
// Throws IterationCapExceeded when the cap is hit or the separator has no
// component inside aff(K).
IpsoOutcome infeasible_project(const ConvexBody& body, const IpsoConfig& cfg, const Vector& y0,
                               IpsoTrace* trace = nullptr);

}  // namespace sepoco
