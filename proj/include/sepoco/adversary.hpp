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
#include <optional>
#include <string>
#include <vector>

#include "sepoco/geometry.hpp"

namespace sepoco {

// f(x) = <linear, x> + (curvature / 2) ||x - target||^2.
struct CostFunction {
  Vector linear;
  double curvature = 0.0;
  Vector target;  // ignored when curvature == 0

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
};

// g(x) = max_i (<a_i, x> - b_i) over halfspace constraints. The gradient is
// a_i for a maximizing index, lowest index on ties. With no parts, g == 0.
class AggregatedConstraint {
 public:
  AggregatedConstraint() = default;
  explicit AggregatedConstraint(std::vector<Halfspace> parts);

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  // -1 when there are no parts.
  int active_index(const Vector& x) const;
  const std::vector<Halfspace>& parts() const { return parts_; }

 private:
  std::vector<Halfspace> parts_;
};

AggregatedConstraint aggregate_constraints(std::vector<Halfspace> parts);

struct RoundOracle {
  CostFunction cost;
  AggregatedConstraint constraint;
  double declared_M1 = 1.0;
  double declared_theta = 0.0;

  double f(const Vector& x) const { return cost.value(x); }
  Vector grad_f(const Vector& x) const { return cost.gradient(x); }
  double g(const Vector& x) const { return constraint.value(x); }
  Vector grad_g(const Vector& x) const { return constraint.gradient(x); }
};

enum class ScenarioKind {
  kDriftingLinear,
  kRotatingQuadratic,
  kSwitchingHalfspaceConstraints,
  kCustomSeeded,
};

enum class ConstraintMode {
  kDefault,    // per kind: switching for kSwitchingHalfspaceConstraints, random
               // halfspaces for kCustomSeeded, none otherwise
  kNone,
  kSwitching,  // g_t(x) = s_t <n, x - anchor> - margin, s_t = +-1
  kInactive,   // halfspaces that stay negative on all of K
};

std::string scenario_kind_name(ScenarioKind kind);
std::optional<ScenarioKind> parse_scenario_kind(const std::string& name);
std::string constraint_mode_name(ConstraintMode mode);
std::optional<ConstraintMode> parse_constraint_mode(const std::string& name);

// Scenario families. b1, b2 are the first two vectors of an orthonormal basis
// of aff(K) - c; `axis`, when given, replaces b1 (its in-hull part,
// normalized) and b2 is re-orthogonalized against it.
//
//   DriftingLinear:  f_t(x) = <u_t, x>, u_t = cos(p_t) s_t b1 + sin(p_t) b2 with
//                    p_t = tilt sin(2 pi t / period) and s_t = +1 with
//                    probability (1 + bias)/2. ||u_t|| = 1, M1 = 1.
//   RotatingQuadratic: f_t(x) = (theta/2) ||x - z_t||^2 with
//                    z_t = c + r (offset b1 + radius (cos w t b1 + sin w t b2) + noise e_t),
//                    w = 2 pi / period, e_t uniform in the unit ball of the hull
//                    directions; offset + radius + noise <= 1 keeps z_t in K.
//                    M1 = theta D.
//   SwitchingHalfspaceConstraints: DriftingLinear costs with switching
//                    constraints along b2 through the anchor.
//   CustomSeeded:    random linear-plus-quadratic costs and one to three
//                    random halfspaces per round through points beyond the anchor.
//
// Switching constraints use the normal b2; inactive ones put the boundary at
// distance D + 1 + margin from c.
struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::kDriftingLinear;
  std::uint64_t seed = 0;
  std::int64_t horizon = 0;
  int dimension = 0;
  std::optional<Vector> feasible_anchor;  // defaults to the body anchor
  ConstraintMode constraints = ConstraintMode::kDefault;

  std::optional<Vector> axis;
  double bias = 0.0;
  double tilt = 0.4;
  double period = 16.0;
  double margin = 0.0;

  double theta = 1.0;
  double offset = 0.4;
  double radius = 0.3;
  double noise = 0.2;
};

// Deterministic given the spec. Throws InvalidScenario on a bad spec or an
// anchor outside K.
std::vector<RoundOracle> generate(const ScenarioSpec& spec, const ConvexBody& body);

// Orthonormal basis of aff(K) - c, built through affine_direction_projection.
std::vector<Vector> hull_basis(const ConvexBody& body);

}  // namespace sepoco
