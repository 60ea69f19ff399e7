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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sepoco/vector.hpp"

namespace sepoco {

enum class Verdict { kInside, kOutside };

struct SeparationResult {
  Verdict verdict = Verdict::kInside;
  // Present iff verdict is kOutside. Unnormalized.
  std::optional<Vector> separator;

  bool inside() const { return verdict == Verdict::kInside; }
};

struct Ball {
  Vector center;
  double radius = 1.0;
};

struct Box {
  Vector lower;
  Vector upper;
};

// Probability simplex {x >= 0, sum x = 1} in R^d, d >= 2.
struct Simplex {
  int dimension = 2;
};

// {x : <normal, x> <= offset}
struct Halfspace {
  Vector normal;
  double offset = 0.0;
};

struct HalfspacePolytope {
  std::vector<Halfspace> faces;
};

using GeometryKind = std::variant<Ball, Box, Simplex, HalfspacePolytope>;

// Relative slack used by every membership test.
inline constexpr double kMembershipSlack = 1e-9;
// Projected separator directions shorter than this are degenerate.
inline constexpr double kDegenerateNorm = 1e-12;

// A convex action set seen through its oracles. Immutable after construction.
//
// Constants per kind:
//   Ball(c, R):      anchor c, r = R, D = 2R.
//   Box(l, u):       anchor (l + u)/2, r = min_i (u_i - l_i)/2, D = ||u - l||.
//   Simplex(d):      anchor 1/d, r = 1/sqrt(d(d-1)), D = sqrt(2).
//   Polytope(A, b):  vertices enumerated from d-subsets of faces; anchor is
//                    the vertex average unless given; r = min_i (b_i - a_i.c)/||a_i||;
//                    D = max pairwise vertex distance.
class ConvexBody {
 public:
  explicit ConvexBody(GeometryKind kind, std::optional<Vector> anchor = std::nullopt);

  static ConvexBody ball(Vector center, double radius);
  static ConvexBody box(Vector lower, Vector upper);
  static ConvexBody simplex(int dimension);
  static ConvexBody polytope(std::vector<Halfspace> faces,
                             std::optional<Vector> anchor = std::nullopt);

  int dimension() const { return dimension_; }
  const Vector& anchor() const { return anchor_; }
  double inner_radius() const { return inner_radius_; }
  double diameter() const { return diameter_; }
  const GeometryKind& kind() const { return kind_; }
  bool full_dimensional() const { return !std::holds_alternative<Simplex>(kind_); }
  // Polytope vertices; empty for the other kinds.
  const std::vector<Vector>& vertices() const { return vertices_; }
  std::string kind_name() const;

  SeparationResult separate(const Vector& y) const;
  bool contains(const Vector& y) const { return separate(y).inside(); }

  Vector affine_projection(const Vector& y) const;
  // Throws DegenerateDirection when the projection is shorter than kDegenerateNorm.
  Vector affine_direction_projection(const Vector& g) const;

 private:
  GeometryKind kind_;
  int dimension_ = 0;
  Vector anchor_;
  double inner_radius_ = 0.0;
  double diameter_ = 0.0;
  std::vector<Vector> vertices_;
};

// (1 - delta) x + delta c. Throws InvalidDelta unless 0 <= delta < 1.
Vector shrunk_member(const ConvexBody& body, double delta, const Vector& x);

void require_delta(double delta);

}  // namespace sepoco
