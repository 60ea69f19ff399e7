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

// Command-line front end. Talks to the library only through sepoco.h.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sepoco/sepoco.h"

namespace {

int report_failure(const char* what, sepoco_status st) {
  std::fprintf(stderr, "sepoco: %s failed (%s): %s\n", what, sepoco_status_name(st),
               sepoco_last_error());
  return 1;
}

sepoco_config* load(const std::string& path, bool tradeoff, int* exit_code) {
  sepoco_config* cfg = nullptr;
  const sepoco_status st = sepoco_config_load(path.c_str(), tradeoff ? 1 : 0, &cfg);
  if (st != SEPOCO_OK) {
    *exit_code = report_failure("loading config", st);
    return nullptr;
  }
  return cfg;
}

int cmd_run(const std::string& path) {
  int code = 0;
  sepoco_config* cfg = load(path, false, &code);
  if (!cfg) return code;
  sepoco_suite_summary summary{};
  const sepoco_status st = sepoco_run_suite(cfg, &summary);
  sepoco_config_destroy(cfg);
  if (summary.cells > 0) {
    std::printf("cells: %zu (failed %zu)\n", summary.cells, summary.failed_cells);
    std::printf("runs: %s\nsummary: %s\n", summary.runs_csv, summary.summary_csv);
    if (summary.has_fits) {
      std::printf("slopes: regret %.4f  ccv %.4f  so_calls %.4f\n", summary.regret_slope,
                  summary.ccv_slope, summary.so_calls_slope);
    }
  }
  if (st != SEPOCO_OK) return report_failure("run", st);
  return 0;
}

int cmd_tradeoff(const std::string& path) {
  int code = 0;
  sepoco_config* cfg = load(path, true, &code);
  if (!cfg) return code;
  size_t rows = 0;
  std::vector<char> csv(4096, '\0');
  const sepoco_status st = sepoco_run_tradeoff(cfg, &rows, csv.data(), csv.size());
  sepoco_config_destroy(cfg);
  if (csv[0] != '\0') std::printf("tradeoff: %s (%zu rows)\n", csv.data(), rows);
  if (st != SEPOCO_OK) return report_failure("tradeoff", st);
  return 0;
}

void print_check(const char* name, int passed, const char* detail, double seconds, void*) {
  std::printf("%s %s (%.2fs) %s\n", passed ? "PASS" : "FAIL", name, seconds, detail);
  std::fflush(stdout);
}

int cmd_selftest() {
  int all = 0;
  const sepoco_status st = sepoco_selftest(print_check, nullptr, &all);
  if (st != SEPOCO_OK) return report_failure("selftest", st);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projection-free constrained online convex optimization benchmarks"};
  app.set_version_flag("--version", std::string(sepoco_version()));
  app.require_subcommand(1);

  std::string run_path;
  auto* run = app.add_subcommand("run", "Run an experiment suite and write CSV output");
  run->add_option("config", run_path, "Config file")->required();

  std::string tradeoff_path;
  auto* tradeoff = app.add_subcommand("tradeoff", "Sweep beta and write the trade-off table");
  tradeoff->add_option("config", tradeoff_path, "Config file")->required();

  auto* selftest = app.add_subcommand("selftest", "Run the invariant suites");

  CLI11_PARSE(app, argc, argv);

  if (*run) return cmd_run(run_path);
  if (*tradeoff) return cmd_tradeoff(tradeoff_path);
  if (*selftest) return cmd_selftest();
  return 2;
}
