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

#include "sepoco/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sepoco/error.hpp"
#include "sepoco/rng.hpp"

namespace sepoco {

double CostFunction::value(const Vector& x) const {
  double v = linear.dot(x);
  if (curvature != 0.0) v += 0.5 * curvature * (x - target).squaredNorm();
  return v;
}

Vector CostFunction::gradient(const Vector& x) const {
  if (curvature == 0.0) return linear;
  return linear + curvature * (x - target);
}

AggregatedConstraint::AggregatedConstraint(std::vector<Halfspace> parts)
    : parts_(std::move(parts)) {}

int AggregatedConstraint::active_index(const Vector& x) const {
  int best = -1;
  double best_value = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < parts_.size(); ++i) {
    const double v = parts_[i].normal.dot(x) - parts_[i].offset;
    if (v > best_value) {
      best_value = v;
      best = static_cast<int>(i);
    }
  }
  return best;
}

double AggregatedConstraint::value(const Vector& x) const {
  const int i = active_index(x);
  if (i < 0) return 0.0;
  return parts_[i].normal.dot(x) - parts_[i].offset;
}

Vector AggregatedConstraint::gradient(const Vector& x) const {
  const int i = active_index(x);
  if (i < 0) return Vector::Zero(x.size());
  return parts_[i].normal;
}

AggregatedConstraint aggregate_constraints(std::vector<Halfspace> parts) {
  return AggregatedConstraint(std::move(parts));
}

std::string scenario_kind_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kDriftingLinear: return "drifting_linear";
    case ScenarioKind::kRotatingQuadratic: return "rotating_quadratic";
    case ScenarioKind::kSwitchingHalfspaceConstraints: return "switching_halfspace";
    case ScenarioKind::kCustomSeeded: return "custom_seeded";
  }
  return "unknown";
}

std::optional<ScenarioKind> parse_scenario_kind(const std::string& name) {
  for (auto k : {ScenarioKind::kDriftingLinear, ScenarioKind::kRotatingQuadratic,
                 ScenarioKind::kSwitchingHalfspaceConstraints, ScenarioKind::kCustomSeeded}) {
    if (scenario_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

std::string constraint_mode_name(ConstraintMode mode) {
  switch (mode) {
    case ConstraintMode::kDefault: return "default";
    case ConstraintMode::kNone: return "none";
    case ConstraintMode::kSwitching: return "switching";
    case ConstraintMode::kInactive: return "inactive";
  }
  return "unknown";
}

std::optional<ConstraintMode> parse_constraint_mode(const std::string& name) {
  for (auto m : {ConstraintMode::kDefault, ConstraintMode::kNone, ConstraintMode::kSwitching,
                 ConstraintMode::kInactive}) {
    if (constraint_mode_name(m) == name) return m;
  }
  return std::nullopt;
}

std::vector<Vector> hull_basis(const ConvexBody& body) {
  const int d = body.dimension();
  std::vector<Vector> basis;
  for (int i = 0; i < d; ++i) {
    Vector e = Vector::Zero(d);
    e(i) = 1.0;
    Vector v;
    try {
      v = body.affine_direction_projection(e);
    } catch (const Error&) {
      continue;
    }
    for (const auto& b : basis) v -= b.dot(v) * b;
    if (v.norm() > 1e-9) basis.push_back(v.normalized());
  }
  return basis;
}

namespace {

Vector random_unit(CounterRng& rng, const std::vector<Vector>& basis) {
  Vector v = Vector::Zero(basis.front().size());
  while (v.norm() < 1e-12) {
    v.setZero();
    for (const auto& b : basis) v += rng.normal() * b;
  }
  return v.normalized();
}

Vector random_in_unit_ball(CounterRng& rng, const std::vector<Vector>& basis) {
  const double k = static_cast<double>(basis.size());
  return std::pow(rng.uniform(), 1.0 / k) * random_unit(rng, basis);
}

}  // namespace

std::vector<RoundOracle> generate(const ScenarioSpec& spec, const ConvexBody& body) {
  if (spec.horizon < 1) fail(ErrorCode::kInvalidScenario, "horizon must be positive");
  if (spec.dimension != body.dimension()) {
    fail(ErrorCode::kInvalidScenario, "scenario dimension does not match the body");
  }
  const Vector anchor = spec.feasible_anchor.value_or(body.anchor());
  if (anchor.size() != body.dimension() || !anchor.allFinite() || !body.contains(anchor)) {
    fail(ErrorCode::kInvalidScenario, "feasible anchor is not a point of K");
  }
  if (!(spec.bias >= -1.0 && spec.bias <= 1.0)) {
    fail(ErrorCode::kInvalidScenario, "bias must lie in [-1, 1]");
  }
  if (!(spec.period > 0.0) || !(spec.margin >= 0.0) || !(spec.theta >= 0.0)) {
    fail(ErrorCode::kInvalidScenario, "period must be positive; margin and theta non-negative");
  }
  if (spec.kind == ScenarioKind::kRotatingQuadratic &&
      (spec.offset < 0.0 || spec.radius < 0.0 || spec.noise < 0.0 ||
       spec.offset + spec.radius + spec.noise > 1.0)) {
    fail(ErrorCode::kInvalidScenario, "quadratic targets need offset + radius + noise <= 1");
  }

  std::vector<Vector> basis = hull_basis(body);
  if (basis.empty()) fail(ErrorCode::kInvalidScenario, "body has no hull directions");
  if (spec.axis) {
    if (spec.axis->size() != body.dimension() || !spec.axis->allFinite()) {
      fail(ErrorCode::kInvalidScenario, "axis has the wrong dimension");
    }
    Vector a = Vector::Zero(body.dimension());
    for (const auto& b : basis) a += b.dot(*spec.axis) * b;
    if (a.norm() < 1e-12) fail(ErrorCode::kInvalidScenario, "axis is orthogonal to the hull");
    std::vector<Vector> rebuilt{a.normalized()};
    for (const auto& b : basis) {
      Vector v = b;
      for (const auto& r : rebuilt) v -= r.dot(v) * r;
      if (v.norm() > 1e-9) rebuilt.push_back(v.normalized());
    }
    basis = std::move(rebuilt);
  }
  const Vector b1 = basis[0];
  const Vector b2 = basis.size() > 1 ? basis[1] : Vector(Vector::Zero(body.dimension()));

  ConstraintMode mode = spec.constraints;
  if (mode == ConstraintMode::kDefault) {
    mode = spec.kind == ScenarioKind::kSwitchingHalfspaceConstraints ? ConstraintMode::kSwitching
           : spec.kind == ScenarioKind::kCustomSeeded               ? ConstraintMode::kDefault
                                                                     : ConstraintMode::kNone;
  }
  if (mode == ConstraintMode::kSwitching && b2.norm() == 0.0) {
    fail(ErrorCode::kInvalidScenario, "switching constraints need a two-dimensional hull");
  }

  const CounterRng root(spec.seed);
  CounterRng cost_rng = root.split(1);
  CounterRng constraint_rng = root.split(2);
  const double two_pi = 2.0 * std::numbers::pi;
  const double D = body.diameter();
  const double r = body.inner_radius();
  const int d = body.dimension();

  std::vector<RoundOracle> rounds;
  rounds.reserve(static_cast<size_t>(spec.horizon));
  for (std::int64_t t = 1; t <= spec.horizon; ++t) {
    RoundOracle o;
    o.cost.linear = Vector::Zero(d);
    switch (spec.kind) {
      case ScenarioKind::kDriftingLinear:
      case ScenarioKind::kSwitchingHalfspaceConstraints: {
        const double phase = spec.tilt * std::sin(two_pi * static_cast<double>(t) / spec.period);
        const double s = cost_rng.sign(0.5 * (1.0 + spec.bias));
        o.cost.linear = std::cos(phase) * s * b1 + std::sin(phase) * b2;
        o.declared_M1 = 1.0;
        break;
      }
      case ScenarioKind::kRotatingQuadratic: {
        const double w = two_pi * static_cast<double>(t) / spec.period;
        const Vector wobble = random_in_unit_ball(cost_rng, basis);
        o.cost.curvature = spec.theta;
        o.cost.target = body.anchor() + r * (spec.offset * b1 +
                                             spec.radius * (std::cos(w) * b1 + std::sin(w) * b2) +
                                             spec.noise * wobble);
        o.declared_theta = spec.theta;
        o.declared_M1 = std::max(1.0, spec.theta * D);
        break;
      }
      case ScenarioKind::kCustomSeeded: {
        o.cost.linear = cost_rng.uniform() * random_unit(cost_rng, basis);
        o.cost.curvature = spec.theta * cost_rng.uniform();
        o.cost.target = body.anchor() + r * random_in_unit_ball(cost_rng, basis);
        o.declared_theta = o.cost.curvature;
        o.declared_M1 = 1.0 + spec.theta * D;
        break;
      }
    }

    std::vector<Halfspace> parts;
    switch (mode) {
      case ConstraintMode::kSwitching: {
        const Vector a = constraint_rng.sign() * b2;
        parts.push_back({a, a.dot(anchor) + spec.margin});
        break;
      }
      case ConstraintMode::kInactive: {
        const Vector& base = b2.norm() > 0.0 ? b2 : b1;
        const Vector n = constraint_rng.sign() * base;
        parts.push_back({n, n.dot(body.anchor()) + D + 1.0 + spec.margin});
        break;
      }
      case ConstraintMode::kDefault: {
        const int k = 1 + static_cast<int>(constraint_rng.below(3));
        for (int i = 0; i < k; ++i) {
          const Vector a = random_unit(constraint_rng, basis);
          parts.push_back({a, a.dot(anchor) + spec.margin * constraint_rng.uniform()});
        }
        break;
      }
      case ConstraintMode::kNone:
        break;
    }
    o.constraint = AggregatedConstraint(std::move(parts));
    rounds.push_back(std::move(o));
  }
  return rounds;
}

}  // namespace sepoco
