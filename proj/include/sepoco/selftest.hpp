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
#include <string>
#include <vector>

#include "sepoco/geometry.hpp"
#include "sepoco/rng.hpp"

namespace sepoco {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// kind: 0 ball, 1 box, 2 simplex, 3 polytope (a box with random cuts).
ConvexBody random_body(CounterRng& rng, int kind);
// A random point of K (uniform for ball and box, Dirichlet(1) on the simplex,
// random vertex mixture on polytopes).
Vector random_point_in(const ConvexBody& body, CounterRng& rng);

// Membership, step length, call bound and non-expansiveness of IP-SO over
// randomized (body, y0, delta) trials.
CheckResult check_ipso_contract(int trials = 1000, std::uint64_t seed = 1);

// Linearized regret certificate, call budget and feasibility on random
// scenarios, for base OGD and for BAGEL's inner learner.
CheckResult check_regret_certificates(int scenarios = 50, std::uint64_t seed = 2);

// R(f_hat) - V R(f_tilde) - Phi(Q_T) >= -1e-6 at the feasible comparator, plus
// the surrogate gradient-norm bound and Q monotonicity.
CheckResult check_surrogate_decomposition(int runs = 40, std::uint64_t seed = 3);

// sum_t a_t f(a_0 + sum_{i<=t} a_i) <= integral of f over [a_0, a_0 + sum a_t]
// for f = 1/sqrt(x) and f = 1/x.
CheckResult check_summation_lemma(int sequences = 10000, std::uint64_t seed = 4);

// With constraints that never bind, BAGEL plays exactly what base OGD plays on
// V gamma f_t.
CheckResult check_zero_violation_reduction(std::uint64_t seed = 5);

std::vector<CheckResult> run_selftest();

}  // namespace sepoco
