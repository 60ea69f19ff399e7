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
#include <charconv>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sepoco/vector.hpp"

namespace sepoco {

struct RoundRecord {
  std::int64_t t = 0;        // 1-based round
  std::int64_t block_m = 0;  // 1-based block
  Vector action;
  double f_value = 0.0;
  double g_plus_value = 0.0;
  double Q_t = 0.0;
  std::int64_t so_calls_cum = 0;
  double eta_current = 0.0;  // step size of the most recent finished block (0 before the first)
};

// One finished block of the inner learner.
struct BlockRecord {
  Vector action;         // x_m, played throughout the block
  Vector mean_gradient;  // average of the fed gradients
  double step_size = 0.0;
  Vector tentative;      // x_m - eta_m * mean_gradient, before the corrective step
  Vector clipped_start;  // tentative after the IP-SO preamble (equal for exact projection)
  std::int64_t so_calls = 0;
};

// Flat key/value record of every parameter a run used.
using ParamsEcho = std::map<std::string, std::string>;

// Shortest round-tripping decimal text for a double.
inline std::string echo_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// What a learner run produces. Scoring against hindsight happens in evaluation.
struct RunTrace {
  std::vector<RoundRecord> rounds;
  std::vector<BlockRecord> blocks;
  std::int64_t total_so_calls = 0;
  double final_Q = 0.0;
  ParamsEcho params;
};

struct RunReport {
  std::vector<RoundRecord> rounds;
  std::vector<BlockRecord> blocks;
  double regret = 0.0;
  double ccv = 0.0;
  std::int64_t total_so_calls = 0;
  double final_Q = 0.0;
  Vector hindsight_point;
  double hindsight_value = 0.0;
  // Filled when the feasible comparator was requested.
  std::optional<Vector> feasible_point;
  std::optional<double> feasible_value;
  ParamsEcho params_echo;
};

}  // namespace sepoco
