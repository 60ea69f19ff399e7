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

#include "sepoco/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sepoco/error.hpp"
#include "sepoco/exact_projection.hpp"

namespace sepoco {

namespace {

struct Aggregate {
  Vector linear;  // L
  double curvature = 0.0;  // Theta
};

Aggregate aggregate_costs(const ConvexBody& body, const std::vector<RoundOracle>& rounds) {
  Aggregate a;
  a.linear = Vector::Zero(body.dimension());
  for (const auto& o : rounds) {
    require_vector(o.cost.linear, body.dimension(), "cost linear term");
    a.linear += o.cost.linear;
    if (o.cost.curvature != 0.0) {
      a.curvature += o.cost.curvature;
      a.linear -= o.cost.curvature * o.cost.target;
    }
  }
  return a;
}

double total_cost(const std::vector<RoundOracle>& rounds, const Vector& x) {
  double s = 0.0;
  for (const auto& o : rounds) s += o.f(x);
  return s;
}

Vector linear_minimizer(const ConvexBody& body, const Vector& l) {
  if (l.norm() == 0.0) return body.anchor();
  const auto& kind = body.kind();
  if (auto* b = std::get_if<Ball>(&kind)) return b->center - b->radius * l.normalized();
  if (auto* x = std::get_if<Box>(&kind)) {
    Vector out = body.anchor();
    for (int i = 0; i < body.dimension(); ++i) {
      if (l(i) > 0.0) out(i) = x->lower(i);
      if (l(i) < 0.0) out(i) = x->upper(i);
    }
    return out;
  }
  if (std::holds_alternative<Simplex>(kind)) {
    Eigen::Index i = 0;
    l.minCoeff(&i);
    Vector out = Vector::Zero(body.dimension());
    out(i) = 1.0;
    return out;
  }
  const auto& verts = body.vertices();
  size_t best = 0;
  for (size_t i = 1; i < verts.size(); ++i) {
    if (l.dot(verts[i]) < l.dot(verts[best])) best = i;
  }
  return verts[best];
}

bool satisfies(const std::vector<Halfspace>& hs, const Vector& x, double tol) {
  return std::all_of(hs.begin(), hs.end(), [&](const Halfspace& h) {
    return h.normal.dot(x) - h.offset <= tol * std::max(1.0, std::abs(h.offset));
  });
}

// Largest s in [0, 1] with anchor + s (x - anchor) inside every halfspace.
Vector restore_toward(const std::vector<Halfspace>& hs, const Vector& anchor, const Vector& x) {
  double s = 1.0;
  const Vector dir = x - anchor;
  for (const auto& h : hs) {
    const double rate = h.normal.dot(dir);
    const double room = h.offset - h.normal.dot(anchor);
    if (rate > 0.0 && room < s * rate) s = std::max(0.0, room / rate);
  }
  return anchor + s * dir;
}

}  // namespace

HindsightResult hindsight_optimum(const ConvexBody& body, const std::vector<RoundOracle>& rounds) {
  if (rounds.empty()) fail(ErrorCode::kInvalidArgument, "no rounds to optimize over");
  const Aggregate a = aggregate_costs(body, rounds);
  HindsightResult out;
  out.point = a.curvature > 0.0 ? exact::project(body, Vector(-a.linear / a.curvature))
                                : linear_minimizer(body, a.linear);
  out.value = total_cost(rounds, out.point);
  return out;
}

std::vector<Halfspace> distinct_constraints(const std::vector<RoundOracle>& rounds) {
  std::vector<Halfspace> all;
  for (const auto& o : rounds) {
    for (const auto& h : o.constraint.parts()) {
      const double n = h.normal.norm();
      if (n == 0.0) continue;
      all.push_back({h.normal / n, h.offset / n});
    }
  }
  auto less = [](const Halfspace& a, const Halfspace& b) {
    return std::lexicographical_compare(a.normal.data(), a.normal.data() + a.normal.size(),
                                        b.normal.data(), b.normal.data() + b.normal.size());
  };
  std::sort(all.begin(), all.end(), less);
  std::vector<Halfspace> out;
  for (auto& h : all) {
    if (!out.empty() && (out.back().normal - h.normal).lpNorm<Eigen::Infinity>() <= 1e-12) {
      out.back().offset = std::min(out.back().offset, h.offset);
    } else {
      out.push_back(std::move(h));
    }
  }
  return out;
}

HindsightResult feasible_hindsight_optimum(const ConvexBody& body,
                                           const std::vector<RoundOracle>& rounds,
                                           const Vector& anchor) {
  require_vector(anchor, body.dimension(), "feasible anchor");
  const std::vector<Halfspace> hs = distinct_constraints(rounds);
  if (!satisfies(hs, anchor, 1e-12) || !body.contains(anchor)) {
    fail(ErrorCode::kInfeasibleCertificate, "the anchor itself is infeasible");
  }
  HindsightResult free = hindsight_optimum(body, rounds);
  if (satisfies(hs, free.point, 0.0)) return free;

  const Aggregate a = aggregate_costs(body, rounds);
  exact::DykstraOptions opts;
  opts.tolerance = 1e-13;
  auto project = [&](const Vector& y) { return exact::project_intersection(body, hs, y, opts); };
  Vector x;
  if (a.curvature > 0.0) {
    x = project(-a.linear / a.curvature);
  } else {
    // Linear objective: project ever more distant points along -L; the limit
    // is the minimizer.
    const double scale = body.diameter() / a.linear.norm();
    x = project(anchor);
    double value = a.linear.dot(x);
    for (double s = 1.0; s <= 1e6; s *= 4.0) {
      const Vector next = project(anchor - s * scale * a.linear);
      const double v = a.linear.dot(next);
      const bool settled = std::abs(v - value) <= 1e-12 * std::max(1.0, std::abs(value));
      x = next;
      value = v;
      if (settled && s > 1.0) break;
    }
  }
  x = restore_toward(hs, anchor, x);
  for (const auto& o : rounds) {
    if (o.g(x) > 1e-12) {
      fail(ErrorCode::kInfeasibleCertificate,
           "restored comparator violates a constraint by " + echo_number(o.g(x)));
    }
  }
  if (!body.contains(x)) fail(ErrorCode::kInfeasibleCertificate, "restored comparator left K");
  return {x, total_cost(rounds, x)};
}

RunReport evaluate_run(const ConvexBody& body, const std::vector<RoundOracle>& rounds,
                       RunTrace trace, const EvaluateOptions& options) {
  const size_t T = trace.rounds.size();
  if (rounds.size() < T) fail(ErrorCode::kInvalidArgument, "trace is longer than the round list");
  const std::vector<RoundOracle> played(rounds.begin(), rounds.begin() + static_cast<long>(T));
  RunReport r;
  const HindsightResult h = hindsight_optimum(body, played);
  r.hindsight_point = h.point;
  r.hindsight_value = h.value;
  double f_sum = 0.0;
  for (const auto& rec : trace.rounds) {
    f_sum += rec.f_value;
    r.ccv += rec.g_plus_value;
  }
  r.regret = f_sum - h.value;
  if (options.feasible_comparator) {
    const HindsightResult fh = feasible_hindsight_optimum(
        body, played, options.feasible_anchor.value_or(body.anchor()));
    r.feasible_point = fh.point;
    r.feasible_value = fh.value;
  }
  r.total_so_calls = trace.total_so_calls;
  r.final_Q = trace.final_Q;
  r.params_echo = std::move(trace.params);
  r.blocks = std::move(trace.blocks);
  if (options.keep_rounds) r.rounds = std::move(trace.rounds);
  return r;
}

RunTrace projection_baseline_trace(const ConvexBody& body, std::int64_t horizon,
                                   const BagelParams& params,
                                   const std::vector<RoundOracle>& rounds) {
  BlockProjector exact_projector = [&body](const Vector& y) {
    return ProjectionStep{exact::project(body, y), 1, y};
  };
  RunTrace trace = run_coco(body, horizon, params, rounds, std::nullopt, exact_projector);
  trace.params["algorithm"] = "projection_baseline";
  return trace;
}

RunReport projection_baseline_run(const ConvexBody& body, std::int64_t horizon,
                                  const BagelParams& params,
                                  const std::vector<RoundOracle>& rounds,
                                  const EvaluateOptions& options) {
  return evaluate_run(body, rounds, projection_baseline_trace(body, horizon, params, rounds),
                      options);
}

ScalingFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    fail(ErrorCode::kDegenerateFit, "need at least two paired samples");
  }
  const size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i])) {
      fail(ErrorCode::kDegenerateFit, "log-log fit needs positive finite data");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx <= 0.0) fail(ErrorCode::kDegenerateFit, "need at least two distinct x values");
  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

double metric_of(const RunReport& report, Metric metric) {
  switch (metric) {
    case Metric::kRegret: return report.regret;
    case Metric::kCcv: return report.ccv;
    case Metric::kSoCalls: return static_cast<double>(report.total_so_calls);
  }
  return 0.0;
}

ScalingFit fit_scaling(const std::map<std::int64_t, std::vector<double>>& values_by_T,
                       Metric metric) {
  if (values_by_T.size() < 3) fail(ErrorCode::kDegenerateFit, "need at least three horizons");
  std::vector<double> xs, ys;
  for (const auto& [T, values] : values_by_T) {
    if (values.size() < 5) fail(ErrorCode::kDegenerateFit, "need at least five runs per horizon");
    double mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    if (metric == Metric::kCcv) mean += 1.0;
    xs.push_back(static_cast<double>(T));
    ys.push_back(mean);
  }
  return fit_loglog(xs, ys);
}

ScalingFit fit_scaling(const std::map<std::int64_t, std::vector<RunReport>>& reports_by_T,
                       Metric metric) {
  std::map<std::int64_t, std::vector<double>> values;
  for (const auto& [T, reports] : reports_by_T) {
    auto& v = values[T];
    for (const auto& r : reports) v.push_back(metric_of(r, metric));
  }
  return fit_scaling(values, metric);
}

namespace {

double linearized_lhs(const RunTrace& trace, const Vector& comparator, std::int64_t block,
                      double* sq_sum) {
  double lhs = 0.0;
  *sq_sum = 0.0;
  for (const auto& b : trace.blocks) {
    lhs += static_cast<double>(block) * b.mean_gradient.dot(b.action - comparator);
    *sq_sum += b.mean_gradient.squaredNorm();
  }
  return lhs;
}

}  // namespace

Certificate linearized_regret_certificate(const RunTrace& trace, const Vector& comparator,
                                          double diameter, std::int64_t block) {
  double s = 0.0;
  Certificate c;
  c.lhs = linearized_lhs(trace, comparator, block, &s);
  c.rhs = 1.5 * diameter * static_cast<double>(block) * std::sqrt(s) + 1e-6;
  c.holds = c.lhs <= c.rhs;
  return c;
}

Certificate linearized_regret_certificate_eps(const RunTrace& trace, const Vector& comparator,
                                              double diameter, std::int64_t block,
                                              double epsilon) {
  double s = 0.0;
  Certificate c;
  c.lhs = linearized_lhs(trace, comparator, block, &s);
  c.rhs = 0.5 * diameter * static_cast<double>(block) * (std::sqrt(epsilon + s) + 2.0 * std::sqrt(s)) +
          1e-6;
  c.holds = c.lhs <= c.rhs;
  return c;
}

Certificate surrogate_decomposition_certificate(const BagelParams& params,
                                                const std::vector<RoundOracle>& rounds,
                                                const RunTrace& trace, const Vector& comparator) {
  if (rounds.size() < trace.rounds.size()) {
    fail(ErrorCode::kInvalidArgument, "trace is longer than the round list");
  }
  double r_hat = 0.0;
  double r_tilde = 0.0;
  for (size_t i = 0; i < trace.rounds.size(); ++i) {
    const RoundRecord& rec = trace.rounds[i];
    const RoundOracle& o = rounds[i];
    const double f_gap = params.gamma * (rec.f_value - o.f(comparator));
    const double weight = params.phi.derivative(rec.Q_t);
    const double g_gap =
        params.gamma * (rec.g_plus_value - std::max(0.0, o.g(comparator)));
    r_tilde += f_gap;
    r_hat += params.V * f_gap + weight * g_gap;
  }
  const double q_final = trace.rounds.empty() ? 0.0 : trace.rounds.back().Q_t;
  Certificate c;
  c.lhs = r_hat - params.V * r_tilde - params.phi.value(q_final);
  c.rhs = -1e-6;
  c.holds = c.lhs >= c.rhs;
  return c;
}

Certificate so_call_budget_certificate(const ConvexBody& body, const RunTrace& trace,
                                       double delta) {
  const double step = delta * body.inner_radius();
  Certificate c;
  c.lhs = static_cast<double>(trace.total_so_calls);
  for (const auto& b : trace.blocks) {
    const double dist = exact::distance_to_shrunk(body, delta, b.clipped_start);
    c.rhs += dist * dist / (step * step) + 1.0;
  }
  c.holds = c.lhs <= c.rhs;
  return c;
}

}  // namespace sepoco
