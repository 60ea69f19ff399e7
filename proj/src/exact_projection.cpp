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

#include "sepoco/exact_projection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "sepoco/error.hpp"

namespace sepoco::exact {

Vector project_halfspace(const Halfspace& h, const Vector& y) {
  const double excess = h.normal.dot(y) - h.offset;
  if (excess <= 0.0) return y;
  return y - (excess / h.normal.squaredNorm()) * h.normal;
}

Vector project_simplex(const Vector& y) {
  const Eigen::Index d = y.size();
  std::vector<double> u(y.data(), y.data() + d);
  std::sort(u.begin(), u.end(), std::greater<>());
  double prefix = 0.0;
  double tau = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    prefix += u[j];
    const double candidate = (prefix - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) tau = candidate;
  }
  return (y.array() - tau).max(0.0).matrix();
}

namespace {

Vector dykstra(const std::vector<std::function<Vector(const Vector&)>>& sets, const Vector& y,
               const DykstraOptions& options) {
  const size_t n = sets.size();
  Vector x = y;
  std::vector<Vector> corr(n, Vector::Zero(y.size()));
  for (int cycle = 0; cycle < options.max_cycles; ++cycle) {
    double moved = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const Vector z = x + corr[i];
      const Vector next = sets[i](z);
      corr[i] = z - next;
      moved = std::max(moved, (next - x).lpNorm<Eigen::Infinity>());
      x = next;
    }
    if (moved <= options.tolerance) break;
  }
  return x;
}

}  // namespace

Vector project(const ConvexBody& body, const Vector& y) {
  require_vector(y, body.dimension(), "point");
  const auto& kind = body.kind();
  if (auto* b = std::get_if<Ball>(&kind)) {
    const Vector diff = y - b->center;
    const double n = diff.norm();
    return n <= b->radius ? y : Vector(b->center + diff * (b->radius / n));
  }
  if (auto* x = std::get_if<Box>(&kind)) {
    return y.cwiseMax(x->lower).cwiseMin(x->upper);
  }
  if (std::holds_alternative<Simplex>(kind)) return project_simplex(y);
  const auto& p = std::get<HalfspacePolytope>(kind);
  if (body.contains(y)) return y;
  std::vector<std::function<Vector(const Vector&)>> sets;
  for (const auto& f : p.faces) {
    sets.emplace_back([f](const Vector& z) { return project_halfspace(f, z); });
  }
  return dykstra(sets, y, {});
}

double distance(const ConvexBody& body, const Vector& y) { return (project(body, y) - y).norm(); }

Vector project_shrunk(const ConvexBody& body, double delta, const Vector& y) {
  require_delta(delta);
  const Vector& c = body.anchor();
  return delta * c + (1.0 - delta) * project(body, (y - delta * c) / (1.0 - delta));
}

double distance_to_shrunk(const ConvexBody& body, double delta, const Vector& y) {
  return (project_shrunk(body, delta, y) - y).norm();
}

Vector project_intersection(const ConvexBody& body, const std::vector<Halfspace>& extra,
                            const Vector& y, const DykstraOptions& options) {
  require_vector(y, body.dimension(), "point");
  std::vector<std::function<Vector(const Vector&)>> sets;
  if (auto* p = std::get_if<HalfspacePolytope>(&body.kind())) {
    for (const auto& f : p->faces) {
      sets.emplace_back([f](const Vector& z) { return project_halfspace(f, z); });
    }
  } else {
    sets.emplace_back([&body](const Vector& z) { return project(body, z); });
  }
  for (const auto& h : extra) {
    require_vector(h.normal, body.dimension(), "halfspace normal");
    sets.emplace_back([h](const Vector& z) { return project_halfspace(h, z); });
  }
  return dykstra(sets, y, options);
}

}  // namespace sepoco::exact
