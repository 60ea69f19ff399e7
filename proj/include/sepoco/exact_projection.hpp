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

#include <vector>

#include "sepoco/geometry.hpp"

// Exact Euclidean projections for the built-in geometries. Evaluation and
// tests only: the online learners reach the action set through its oracles.
namespace sepoco::exact {

struct DykstraOptions {
  double tolerance = 1e-12;
  int max_cycles = 200000;
};

Vector project(const ConvexBody& body, const Vector& y);
double distance(const ConvexBody& body, const Vector& y);

// Projection onto K_delta = (1 - delta) K + delta c.
Vector project_shrunk(const ConvexBody& body, double delta, const Vector& y);
double distance_to_shrunk(const ConvexBody& body, double delta, const Vector& y);

// Projection onto K intersected with extra halfspaces, by Dykstra's
// alternating projections. Returns the last iterate; callers certify it.
Vector project_intersection(const ConvexBody& body, const std::vector<Halfspace>& extra,
                            const Vector& y, const DykstraOptions& options = {});

Vector project_halfspace(const Halfspace& h, const Vector& y);
Vector project_simplex(const Vector& y);

}  // namespace sepoco::exact
