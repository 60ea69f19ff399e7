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
#include <string_view>
#include <vector>

#include "sepoco/adversary.hpp"
#include "sepoco/bagel.hpp"
#include "sepoco/evaluation.hpp"
#include "sepoco/geometry.hpp"

namespace sepoco {

// Geometry line, e.g. "ball d=4 radius=1", "box d=2 lower=0 upper=1",
// "simplex d=3", "polytope d=2 faces=1,0:1;0,1:1;-1,-1:0". Scalar box bounds
// and ball centers are broadcast to d coordinates on parse.
struct GeometryConfig {
  std::string kind = "ball";
  int dimension = 2;
  double radius = 1.0;
  Vector center;
  Vector lower;
  Vector upper;
  std::vector<Halfspace> faces;
  std::optional<Vector> anchor;

  ConvexBody build() const;
  std::string format() const;
  bool operator==(const GeometryConfig& other) const;
};

enum class Algorithm { kBagel, kBaseOgd, kProjectionBaseline };

std::string algorithm_name(Algorithm a);

struct ExperimentConfig {
  GeometryConfig geometry;
  Algorithm algorithm = Algorithm::kBagel;
  CostMode mode = CostMode::kConvex;
  std::vector<std::int64_t> horizons;
  double beta = 0.5;
  std::vector<double> betas;
  std::vector<std::uint64_t> seeds;
  PresetConstants constants;
  double theta = 1.0;
  std::optional<double> M1_override;
  // kind and shape parameters; seed, horizon and dimension are set per cell.
  ScenarioSpec scenario;
  std::string output_path = "results";
  std::string name = "suite";
  int threads = 0;  // 0: hardware concurrency

  bool operator==(const ExperimentConfig& other) const;
};

// Flat key=value lines, '#' comments. Throws ConfigError naming the key and
// line. `for_tradeoff` requires betas (>= 2 values) instead of beta.
ExperimentConfig parse_config(std::string_view text, bool for_tradeoff = false);
std::string format_config(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::string& path, bool for_tradeoff = false);

struct CellResult {
  std::int64_t T = 0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  std::int64_t K = 0;
  std::int64_t K_requested = 0;
  double delta = 0.0;
  double regret = 0.0;
  double ccv = 0.0;
  std::int64_t so_calls = 0;
  double hindsight_value = 0.0;
  double runtime_ms = 0.0;
  ParamsEcho params;
  std::optional<std::string> error;
};

// One (T, beta, seed) run of the configured algorithm.
CellResult run_cell(const ExperimentConfig& cfg, std::int64_t T, double beta, std::uint64_t seed);

// Cells in config order: horizons outer, seeds inner, for each beta.
std::vector<CellResult> run_cells(const ExperimentConfig& cfg, const std::vector<double>& betas);

struct SuiteResult {
  std::vector<CellResult> cells;
  std::optional<ScalingFit> regret_fit;
  std::optional<ScalingFit> ccv_fit;
  std::optional<ScalingFit> so_calls_fit;
  std::string runs_csv;
  std::string summary_csv;
  bool ok = true;
};

// Output directory: $SEPOCO_OUTPUT_DIR when set, else cfg.output_path.
std::string output_directory(const ExperimentConfig& cfg);

// Writes <dir>/<name>_runs.csv and <dir>/<name>_summary.csv.
SuiteResult run_suite(const ExperimentConfig& cfg);

struct TradeoffRow {
  double beta = 0.0;
  std::int64_t T = 0;
  std::int64_t K = 0;
  double delta = 0.0;
  double mean_regret = 0.0;
  double mean_ccv = 0.0;
  double mean_so_calls = 0.0;
  std::optional<ScalingFit> regret_fit;
  std::optional<ScalingFit> ccv_fit;
  std::optional<ScalingFit> so_calls_fit;
};

struct TradeoffResult {
  std::vector<TradeoffRow> rows;
  std::string csv;
  bool ok = true;
};

// Writes <dir>/<name>_tradeoff.csv.
TradeoffResult emit_tradeoff_table(const ExperimentConfig& cfg);

// CSV row text for the per-run file; exposed for determinism checks.
std::string runs_csv_header();
std::string runs_csv_row(const CellResult& cell, const ExperimentConfig& cfg);

}  // namespace sepoco
