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

#include "sepoco/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sepoco/error.hpp"

namespace sepoco {

void require_vector(const Vector& v, Eigen::Index expected, const char* what) {
  if (v.size() != expected) {
    fail(ErrorCode::kDimensionMismatch, std::string(what) + " has dimension " +
                                            std::to_string(v.size()) + ", expected " +
                                            std::to_string(expected));
  }
  if (!v.allFinite()) fail(ErrorCode::kInvalidArgument, std::string(what) + " is not finite");
}

void require_delta(double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    fail(ErrorCode::kInvalidDelta, "delta must lie in [0, 1), got " + std::to_string(delta));
  }
}

namespace {

double tolerance(double scale) { return kMembershipSlack * std::max(1.0, std::abs(scale)); }

// Enumerates vertices of {x : A x <= b} by solving every d-subset of faces.
std::vector<Vector> enumerate_vertices(const std::vector<Halfspace>& faces, int d) {
  const int m = static_cast<int>(faces.size());
  std::vector<Vector> out;
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  Eigen::MatrixXd a(d, d);
  Vector rhs(d);
  while (true) {
    for (int i = 0; i < d; ++i) {
      a.row(i) = faces[idx[i]].normal.transpose();
      rhs(i) = faces[idx[i]].offset;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.rank() == d) {
      const Vector v = lu.solve(rhs);
      bool feasible = v.allFinite();
      for (int j = 0; feasible && j < m; ++j) {
        const double scale = std::max(faces[j].normal.norm(), std::abs(faces[j].offset));
        feasible = faces[j].normal.dot(v) <= faces[j].offset + 1e-9 * std::max(1.0, scale);
      }
      if (feasible) {
        const bool dup = std::any_of(out.begin(), out.end(),
                                     [&](const Vector& w) { return (w - v).norm() <= 1e-9; });
        if (!dup) out.push_back(v);
      }
    }
    int k = d - 1;
    while (k >= 0 && idx[k] == m - d + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int i = k + 1; i < d; ++i) idx[i] = idx[i - 1] + 1;
  }
  return out;
}

}  // namespace

ConvexBody::ConvexBody(GeometryKind kind, std::optional<Vector> anchor) : kind_(std::move(kind)) {
  if (auto* b = std::get_if<Ball>(&kind_)) {
    if (b->center.size() < 1) fail(ErrorCode::kInvalidArgument, "ball dimension must be >= 1");
    require_vector(b->center, b->center.size(), "ball center");
    if (!(b->radius > 0.0) || !std::isfinite(b->radius)) {
      fail(ErrorCode::kInvalidArgument, "ball radius must be positive");
    }
    dimension_ = static_cast<int>(b->center.size());
    anchor_ = b->center;
    inner_radius_ = b->radius;
    diameter_ = 2.0 * b->radius;
  } else if (auto* x = std::get_if<Box>(&kind_)) {
    if (x->lower.size() < 1) fail(ErrorCode::kInvalidArgument, "box dimension must be >= 1");
    require_vector(x->lower, x->lower.size(), "box lower");
    require_vector(x->upper, x->lower.size(), "box upper");
    if (((x->upper - x->lower).array() <= 0.0).any()) {
      fail(ErrorCode::kInvalidArgument, "box requires lower < upper in every coordinate");
    }
    dimension_ = static_cast<int>(x->lower.size());
    anchor_ = 0.5 * (x->lower + x->upper);
    inner_radius_ = 0.5 * (x->upper - x->lower).minCoeff();
    diameter_ = (x->upper - x->lower).norm();
  } else if (auto* s = std::get_if<Simplex>(&kind_)) {
    if (s->dimension < 2) fail(ErrorCode::kInvalidArgument, "simplex dimension must be >= 2");
    dimension_ = s->dimension;
    const double d = dimension_;
    anchor_ = Vector::Constant(dimension_, 1.0 / d);
    inner_radius_ = 1.0 / std::sqrt(d * (d - 1.0));
    diameter_ = std::sqrt(2.0);
  } else {
    auto& p = std::get<HalfspacePolytope>(kind_);
    if (p.faces.empty()) fail(ErrorCode::kInvalidArgument, "polytope needs at least one face");
    dimension_ = static_cast<int>(p.faces.front().normal.size());
    if (dimension_ < 1) fail(ErrorCode::kInvalidArgument, "polytope dimension must be >= 1");
    for (const auto& f : p.faces) {
      require_vector(f.normal, dimension_, "polytope normal");
      if (!std::isfinite(f.offset)) fail(ErrorCode::kInvalidArgument, "polytope offset not finite");
      if (f.normal.norm() <= 0.0) fail(ErrorCode::kInvalidArgument, "polytope normal is zero");
    }
    if (static_cast<int>(p.faces.size()) <= dimension_) {
      fail(ErrorCode::kInvalidArgument, "a bounded polytope needs more than d faces");
    }
    vertices_ = enumerate_vertices(p.faces, dimension_);
    if (vertices_.size() < 2) fail(ErrorCode::kInvalidArgument, "polytope has no interior");
    Vector mean = Vector::Zero(dimension_);
    for (const auto& v : vertices_) mean += v;
    anchor_ = mean / static_cast<double>(vertices_.size());
    diameter_ = 0.0;
    for (size_t i = 0; i < vertices_.size(); ++i) {
      for (size_t j = i + 1; j < vertices_.size(); ++j) {
        diameter_ = std::max(diameter_, (vertices_[i] - vertices_[j]).norm());
      }
    }
  }
  if (anchor) {
    require_vector(*anchor, dimension_, "anchor");
    if (!std::holds_alternative<HalfspacePolytope>(kind_)) {
      fail(ErrorCode::kUnsupported, "a custom anchor is only supported for polytopes");
    }
    anchor_ = *anchor;
  }
  if (auto* p = std::get_if<HalfspacePolytope>(&kind_)) {
    inner_radius_ = std::numeric_limits<double>::infinity();
    for (const auto& f : p->faces) {
      inner_radius_ = std::min(inner_radius_, (f.offset - f.normal.dot(anchor_)) / f.normal.norm());
    }
    if (!(inner_radius_ > 0.0)) {
      fail(ErrorCode::kInvalidArgument, "polytope anchor is not an interior point");
    }
  }
}

ConvexBody ConvexBody::ball(Vector center, double radius) {
  return ConvexBody(Ball{std::move(center), radius});
}

ConvexBody ConvexBody::box(Vector lower, Vector upper) {
  return ConvexBody(Box{std::move(lower), std::move(upper)});
}

ConvexBody ConvexBody::simplex(int dimension) { return ConvexBody(Simplex{dimension}); }

ConvexBody ConvexBody::polytope(std::vector<Halfspace> faces, std::optional<Vector> anchor) {
  return ConvexBody(HalfspacePolytope{std::move(faces)}, std::move(anchor));
}

std::string ConvexBody::kind_name() const {
  switch (kind_.index()) {
    case 0: return "ball";
    case 1: return "box";
    case 2: return "simplex";
    default: return "polytope";
  }
}

SeparationResult ConvexBody::separate(const Vector& y) const {
  require_vector(y, dimension_, "query point");
  SeparationResult out;
  auto outside = [&](Vector g) {
    out.verdict = Verdict::kOutside;
    out.separator = std::move(g);
  };

  if (auto* b = std::get_if<Ball>(&kind_)) {
    const Vector diff = y - b->center;
    if (diff.norm() > b->radius * (1.0 + kMembershipSlack)) outside(diff);
  } else if (auto* x = std::get_if<Box>(&kind_)) {
    // Faces ordered (upper_0, lower_0, upper_1, lower_1, ...); the most violated
    // face wins, lowest index on ties.
    double worst = 0.0;
    int face = -1;
    for (int i = 0; i < dimension_; ++i) {
      const double up = y(i) - x->upper(i);
      if (up > tolerance(x->upper(i)) && up > worst) {
        worst = up;
        face = 2 * i;
      }
      const double lo = x->lower(i) - y(i);
      if (lo > tolerance(x->lower(i)) && lo > worst) {
        worst = lo;
        face = 2 * i + 1;
      }
    }
    if (face >= 0) {
      Vector g = Vector::Zero(dimension_);
      g(face / 2) = (face % 2 == 0) ? 1.0 : -1.0;
      outside(std::move(g));
    }
  } else if (std::holds_alternative<Simplex>(kind_)) {
    Eigen::Index i = 0;
    const double lowest = y.minCoeff(&i);
    const double sum = y.sum();
    if (lowest < -kMembershipSlack) {
      Vector g = Vector::Zero(dimension_);
      g(i) = -1.0;
      outside(std::move(g));
    } else if (std::abs(sum - 1.0) > kMembershipSlack) {
      outside(Vector::Constant(dimension_, sum > 1.0 ? 1.0 : -1.0));
    }
  } else {
    const auto& p = std::get<HalfspacePolytope>(kind_);
    double worst = 0.0;
    int face = -1;
    for (size_t j = 0; j < p.faces.size(); ++j) {
      const auto& f = p.faces[j];
      const double norm = f.normal.norm();
      const double excess = f.normal.dot(y) - f.offset;
      if (excess > kMembershipSlack * std::max(norm, std::abs(f.offset)) && excess / norm > worst) {
        worst = excess / norm;
        face = static_cast<int>(j);
      }
    }
    if (face >= 0) outside(p.faces[face].normal);
  }
  return out;
}

Vector ConvexBody::affine_projection(const Vector& y) const {
  require_vector(y, dimension_, "point");
  if (full_dimensional()) return y;
  return (y.array() + (1.0 - y.sum()) / dimension_).matrix();
}

Vector ConvexBody::affine_direction_projection(const Vector& g) const {
  require_vector(g, dimension_, "direction");
  Vector out = full_dimensional() ? g : Vector((g.array() - g.mean()).matrix());
  if (out.norm() < kDegenerateNorm) {
    fail(ErrorCode::kDegenerateDirection, "direction is orthogonal to the affine hull");
  }
  return out;
}

Vector shrunk_member(const ConvexBody& body, double delta, const Vector& x) {
  require_delta(delta);
  require_vector(x, body.dimension(), "point");
  return (1.0 - delta) * x + delta * body.anchor();
}

}  // namespace sepoco
