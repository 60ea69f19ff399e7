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

#include "sepoco/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "sepoco/adversary.hpp"
#include "sepoco/bagel.hpp"
#include "sepoco/base_ogd.hpp"
#include "sepoco/error.hpp"
#include "sepoco/evaluation.hpp"
#include "sepoco/exact_projection.hpp"
#include "sepoco/ipso.hpp"

namespace sepoco {

namespace {

Vector random_direction(CounterRng& rng, int d) {
  Vector v(d);
  do {
    for (int i = 0; i < d; ++i) v(i) = rng.normal();
  } while (v.norm() < 1e-12);
  return v.normalized();
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

CheckResult finish(std::string name, bool passed, const std::ostringstream& detail,
                   const Timer& timer) {
  return {std::move(name), passed, detail.str(), timer.seconds()};
}

}  // namespace

ConvexBody random_body(CounterRng& rng, int kind) {
  switch (kind) {
    case 0: {
      const int d = 2 + static_cast<int>(rng.below(4));
      Vector c(d);
      for (int i = 0; i < d; ++i) c(i) = 0.5 * rng.normal();
      return ConvexBody::ball(c, rng.uniform(0.5, 2.0));
    }
    case 1: {
      const int d = 2 + static_cast<int>(rng.below(4));
      Vector lo(d), hi(d);
      for (int i = 0; i < d; ++i) {
        lo(i) = rng.uniform(-1.0, 0.0);
        hi(i) = lo(i) + rng.uniform(0.5, 2.0);
      }
      return ConvexBody::box(lo, hi);
    }
    case 2:
      return ConvexBody::simplex(2 + static_cast<int>(rng.below(4)));
    default: {
      const int d = 2 + static_cast<int>(rng.below(2));
      std::vector<Halfspace> faces;
      for (int i = 0; i < d; ++i) {
        Vector e = Vector::Zero(d);
        e(i) = 1.0;
        faces.push_back({e, 1.0});
        faces.push_back({-e, 1.0});
      }
      for (int k = 0; k < 3; ++k) faces.push_back({random_direction(rng, d), rng.uniform(0.3, 0.9)});
      return ConvexBody::polytope(std::move(faces));
    }
  }
}

Vector random_point_in(const ConvexBody& body, CounterRng& rng) {
  const int d = body.dimension();
  const auto& kind = body.kind();
  if (auto* b = std::get_if<Ball>(&kind)) {
    return b->center + b->radius * std::pow(rng.uniform(), 1.0 / d) * random_direction(rng, d);
  }
  if (auto* x = std::get_if<Box>(&kind)) {
    Vector p(d);
    for (int i = 0; i < d; ++i) p(i) = rng.uniform(x->lower(i), x->upper(i));
    return p;
  }
  if (std::holds_alternative<Simplex>(kind)) {
    Vector p(d);
    for (int i = 0; i < d; ++i) p(i) = -std::log(1.0 - rng.uniform());
    return p / p.sum();
  }
  const auto& verts = body.vertices();
  std::vector<double> w(verts.size());
  double total = 0.0;
  for (auto& v : w) total += (v = -std::log(1.0 - rng.uniform()));
  Vector p = Vector::Zero(d);
  for (size_t i = 0; i < verts.size(); ++i) p += (w[i] / total) * verts[i];
  return p;
}

CheckResult check_ipso_contract(int trials, std::uint64_t seed) {
  Timer timer;
  CounterRng rng(seed);
  std::ostringstream detail;
  int failures = 0;
  double worst_ratio = 0.0;
  double worst_step_error = 0.0;
  auto note = [&](int trial, const std::string& what) {
    if (failures++ < 5) detail << "trial " << trial << ": " << what << "; ";
  };
  for (int trial = 0; trial < trials; ++trial) {
    const ConvexBody body = random_body(rng, trial % 4);
    const double delta = rng.uniform(0.02, 0.5);
    const int d = body.dimension();
    const bool start_inside = rng.uniform() < 0.1;
    const Vector y0 = start_inside
                          ? random_point_in(body, rng)
                          : Vector(body.anchor() + body.diameter() * rng.uniform(0.0, 3.0) *
                                                       random_direction(rng, d));
    IpsoTrace trace;
    IpsoOutcome out;
    try {
      out = infeasible_project(body, IpsoConfig::for_body(body, delta), y0, &trace);
    } catch (const Error& e) {
      note(trial, e.what());
      continue;
    }
    if (!body.contains(out.point)) note(trial, "output outside K");
    if (out.so_calls != out.steps_taken + 1) note(trial, "so_calls != steps + 1");
    if (start_inside && body.full_dimensional() && out.point != y0) note(trial, "moved an inside point");
    const double step = delta * body.inner_radius();
    for (size_t i = 1; i < trace.iterates.size(); ++i) {
      const Vector move = trace.iterates[i] - trace.iterates[i - 1];
      const double err = std::abs(move.norm() - step);
      worst_step_error = std::max(worst_step_error, err);
      if (err > 1e-12) note(trial, "step length off by " + echo_number(err));
      if (!body.full_dimensional() && std::abs(move.sum()) > 1e-12) note(trial, "step left aff(K)");
    }
    const double dist = exact::distance_to_shrunk(body, delta, out.clipped_start);
    const double bound = dist * dist / (step * step) + 1.0;
    worst_ratio = std::max(worst_ratio, static_cast<double>(out.so_calls) / bound);
    if (static_cast<double>(out.so_calls) > bound * (1.0 + 1e-9)) {
      note(trial, "so_calls " + std::to_string(out.so_calls) + " above bound " + echo_number(bound));
    }
    for (int k = 0; k < 200; ++k) {
      const Vector x = shrunk_member(body, delta, random_point_in(body, rng));
      if ((out.point - x).norm() > (y0 - x).norm() + 1e-9) {
        note(trial, "expanded toward a point of K_delta");
        break;
      }
    }
  }
  detail << "trials=" << trials << " failures=" << failures
         << " max so_calls/bound=" << echo_number(worst_ratio)
         << " max step error=" << echo_number(worst_step_error);
  return finish("ipso_contract", failures == 0, detail, timer);
}

CheckResult check_regret_certificates(int scenarios, std::uint64_t seed) {
  Timer timer;
  CounterRng rng(seed);
  std::ostringstream detail;
  int failures = 0;
  double worst = -1e300;
  auto note = [&](int i, const std::string& what) {
    if (failures++ < 5) detail << "scenario " << i << ": " << what << "; ";
  };
  for (int i = 0; i < scenarios; ++i) {
    const ConvexBody body = random_body(rng, i % 4);
    ScenarioSpec spec;
    spec.kind = ScenarioKind::kCustomSeeded;
    spec.seed = rng.next_u64();
    spec.horizon = std::int64_t{64} << rng.below(3);
    spec.dimension = body.dimension();
    spec.theta = rng.uniform(0.0, 1.0);
    spec.margin = 0.2;
    const std::int64_t K = std::int64_t{1} << rng.below(4);
    const double delta = rng.uniform(0.05, 0.4);
    try {
      const auto rounds = generate(spec, body);
      const StepRule rule = StepRule::convex(1.0, body.diameter());
      const RunTrace trace = run_oco(body, spec.horizon, K, delta, rule, rounds);
      const Vector x_star = hindsight_optimum(body, rounds).point;
      const Vector x_tilde = shrunk_member(body, delta, x_star);
      const Certificate cert = linearized_regret_certificate(trace, x_tilde, body.diameter(), K);
      worst = std::max(worst, cert.lhs - cert.rhs);
      if (!cert.holds) {
        note(i, "base OGD linearized regret " + echo_number(cert.lhs) + " > " + echo_number(cert.rhs));
      }
      const Certificate budget = so_call_budget_certificate(body, trace, delta);
      if (!budget.holds) note(i, "oracle calls above budget");
      double last_eta = INFINITY;
      for (const auto& b : trace.blocks) {
        if (!body.contains(b.action)) note(i, "played a point outside K");
        if (b.step_size > last_eta) note(i, "step size increased");
        last_eta = b.step_size;
      }

      double M1 = 0.0;
      for (const auto& o : rounds) M1 = std::max(M1, o.declared_M1);
      const BagelParams params = convex_preset(spec.horizon, 0.25 + 0.25 * rng.uniform(), M1,
                                               body.diameter());
      const RunTrace bt = run_coco(body, spec.horizon, params, rounds);
      const Vector bx = shrunk_member(body, params.delta, x_star);
      const Certificate bc = linearized_regret_certificate(bt, bx, body.diameter(), params.block);
      worst = std::max(worst, bc.lhs - bc.rhs);
      if (!bc.holds) {
        note(i, "BAGEL inner linearized regret " + echo_number(bc.lhs) + " > " + echo_number(bc.rhs));
      }
      if (!so_call_budget_certificate(body, bt, params.delta).holds) note(i, "BAGEL calls above budget");
    } catch (const Error& e) {
      note(i, e.what());
    }
  }
  detail << "scenarios=" << scenarios << " failures=" << failures
         << " max(lhs - rhs)=" << echo_number(worst);
  return finish("regret_certificate", failures == 0, detail, timer);
}

CheckResult check_surrogate_decomposition(int runs, std::uint64_t seed) {
  Timer timer;
  CounterRng rng(seed);
  std::ostringstream detail;
  int failures = 0;
  double worst = 1e300;
  auto note = [&](int i, const std::string& what) {
    if (failures++ < 5) detail << "run " << i << ": " << what << "; ";
  };
  for (int i = 0; i < runs; ++i) {
    const ConvexBody body = random_body(rng, i % 4);
    const bool strongly = (i / 4) % 2 == 1;
    ScenarioSpec spec;
    spec.seed = rng.next_u64();
    spec.horizon = 256;
    spec.dimension = body.dimension();
    if (strongly) {
      spec.kind = ScenarioKind::kRotatingQuadratic;
      spec.constraints = ConstraintMode::kSwitching;
      spec.theta = 1.0;
    } else if (i % 3 == 0) {
      spec.kind = ScenarioKind::kSwitchingHalfspaceConstraints;
      spec.bias = rng.uniform(-0.5, 0.5);
    } else {
      spec.kind = ScenarioKind::kCustomSeeded;
      spec.theta = rng.uniform(0.0, 1.0);
      spec.margin = rng.uniform(0.0, 0.3);
    }
    try {
      const auto rounds = generate(spec, body);
      double M1 = 0.0;
      for (const auto& o : rounds) M1 = std::max(M1, o.declared_M1);
      const BagelParams params =
          strongly ? strongly_convex_preset(spec.horizon, 0.5, M1, spec.theta)
                   : convex_preset(spec.horizon, rng.uniform(0.1, 0.5), M1, body.diameter());
      BagelLearner learner(body, spec.horizon, params);
      RunTrace trace;
      double last_q = 0.0;
      for (const auto& o : rounds) {
        RoundRecord rec = learner.step_round(o);
        const double bound = params.gamma * M1 * (params.V + params.phi.derivative(rec.Q_t)) + 1e-9;
        if (learner.last_surrogate_gradient().norm() > bound) note(i, "surrogate gradient above bound");
        if (rec.Q_t < last_q) note(i, "Q decreased");
        last_q = rec.Q_t;
        trace.rounds.push_back(std::move(rec));
      }
      const Vector x_feas = feasible_hindsight_optimum(body, rounds, body.anchor()).point;
      const Certificate cert = surrogate_decomposition_certificate(params, rounds, trace, x_feas);
      worst = std::min(worst, cert.lhs);
      if (!cert.holds) note(i, "decomposition gap " + echo_number(cert.lhs));
    } catch (const Error& e) {
      note(i, e.what());
    }
  }
  detail << "runs=" << runs << " failures=" << failures << " min gap=" << echo_number(worst);
  return finish("surrogate_decomposition", failures == 0, detail, timer);
}

CheckResult check_summation_lemma(int sequences, std::uint64_t seed) {
  Timer timer;
  CounterRng rng(seed);
  std::ostringstream detail;
  int failures = 0;
  double worst = -1e300;
  for (int s = 0; s < sequences; ++s) {
    const int n = 1 + static_cast<int>(rng.below(60));
    const double a0 = rng.uniform() < 0.1 ? 0.0 : std::pow(10.0, rng.uniform(-3.0, 2.0));
    std::vector<double> a(n);
    for (auto& v : a) {
      const double u = rng.uniform();
      v = u < 0.15 ? 0.0 : std::pow(10.0, rng.uniform(-4.0, 3.0));
    }
    double prefix = a0;
    double lhs_sqrt = 0.0, lhs_inv = 0.0;
    for (double v : a) {
      prefix += v;
      if (v > 0.0) {
        lhs_sqrt += v / std::sqrt(prefix);
        lhs_inv += v / prefix;
      }
    }
    const double rhs_sqrt = 2.0 * (std::sqrt(prefix) - std::sqrt(a0));
    const double gap_sqrt = lhs_sqrt - rhs_sqrt;
    worst = std::max(worst, gap_sqrt);
    if (gap_sqrt > 1e-9) ++failures;
    if (a0 > 0.0) {
      const double rhs_inv = std::log(prefix / a0);
      const double gap_inv = lhs_inv - rhs_inv;
      worst = std::max(worst, gap_inv);
      if (gap_inv > 1e-9) ++failures;
    }
  }
  std::ostringstream out;
  out << "sequences=" << sequences << " failures=" << failures << " max(lhs - rhs)=" << echo_number(worst);
  return finish("summation_lemma", failures == 0, out, timer);
}

CheckResult check_zero_violation_reduction(std::uint64_t seed) {
  Timer timer;
  std::ostringstream detail;
  int failures = 0;
  double worst = 0.0;
  const ConvexBody bodies[] = {ConvexBody::ball(Vector::Zero(3), 1.0),
                               ConvexBody::box(Vector::Constant(2, -1.0), Vector::Constant(2, 1.0)),
                               ConvexBody::simplex(4)};
  int run = 0;
  for (const auto& body : bodies) {
    for (int variant = 0; variant < 3; ++variant, ++run) {
      ScenarioSpec spec;
      spec.seed = seed + static_cast<std::uint64_t>(run);
      spec.horizon = 1024;
      spec.dimension = body.dimension();
      spec.constraints = ConstraintMode::kInactive;
      spec.kind = variant == 2 ? ScenarioKind::kRotatingQuadratic : ScenarioKind::kDriftingLinear;
      spec.bias = 0.3;
      try {
        const auto rounds = generate(spec, body);
        double M1 = 0.0;
        for (const auto& o : rounds) M1 = std::max(M1, o.declared_M1);
        const BagelParams params =
            variant == 2 ? strongly_convex_preset(spec.horizon, 0.5, M1, spec.theta)
                         : convex_preset(spec.horizon, variant == 0 ? 0.5 : 0.25, M1, body.diameter());
        const RunTrace bagel = run_coco(body, spec.horizon, params, rounds);
        std::vector<RoundOracle> scaled = rounds;
        const double scale = params.V * params.gamma;
        for (auto& o : scaled) {
          o.cost.linear *= scale;
          o.cost.curvature *= scale;
        }
        const RunTrace base = run_oco(body, spec.horizon, params.block, params.delta,
                                      params.inner_rule, scaled);
        if (bagel.final_Q != 0.0) {
          ++failures;
          detail << "run " << run << ": Q_T = " << echo_number(bagel.final_Q) << "; ";
        }
        for (size_t t = 0; t < bagel.rounds.size(); ++t) {
          worst = std::max(worst, (bagel.rounds[t].action - base.rounds[t].action).lpNorm<Eigen::Infinity>());
        }
      } catch (const Error& e) {
        ++failures;
        detail << "run " << run << ": " << e.what() << "; ";
      }
    }
  }
  if (worst > 1e-12) ++failures;
  detail << "runs=" << run << " max coordinate gap=" << echo_number(worst);
  return finish("zero_violation_reduction", failures == 0, detail, timer);
}

std::vector<CheckResult> run_selftest() {
  return {check_ipso_contract(), check_regret_certificates(), check_surrogate_decomposition(),
          check_summation_lemma(), check_zero_violation_reduction()};
}

}  // namespace sepoco
