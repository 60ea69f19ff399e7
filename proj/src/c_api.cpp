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

#include "sepoco/sepoco.h"

#include <cstring>
#include <memory>
#include <string>

#include "sepoco/bagel.hpp"
#include "sepoco/error.hpp"
#include "sepoco/geometry.hpp"
#include "sepoco/harness.hpp"
#include "sepoco/ipso.hpp"
#include "sepoco/selftest.hpp"

struct sepoco_body {
  sepoco::ConvexBody body;
};

struct sepoco_config {
  sepoco::ExperimentConfig config;
};

struct sepoco_learner {
  sepoco::BagelLearner learner;
};

namespace {

thread_local std::string g_last_error;

sepoco_status to_status(sepoco::ErrorCode code) {
  using sepoco::ErrorCode;
  switch (code) {
    case ErrorCode::kOk: return SEPOCO_OK;
    case ErrorCode::kInvalidArgument: return SEPOCO_INVALID_ARGUMENT;
    case ErrorCode::kDimensionMismatch: return SEPOCO_DIMENSION_MISMATCH;
    case ErrorCode::kDegenerateDirection: return SEPOCO_DEGENERATE_DIRECTION;
    case ErrorCode::kInvalidDelta: return SEPOCO_INVALID_DELTA;
    case ErrorCode::kUnsupported: return SEPOCO_UNSUPPORTED;
    case ErrorCode::kIterationCapExceeded: return SEPOCO_ITERATION_CAP_EXCEEDED;
    case ErrorCode::kInvalidConfig: return SEPOCO_INVALID_CONFIG;
    case ErrorCode::kBlockOverflow: return SEPOCO_BLOCK_OVERFLOW;
    case ErrorCode::kNumericOverflow: return SEPOCO_NUMERIC_OVERFLOW;
    case ErrorCode::kInvalidScenario: return SEPOCO_INVALID_SCENARIO;
    case ErrorCode::kInfeasibleCertificate: return SEPOCO_INFEASIBLE_CERTIFICATE;
    case ErrorCode::kDegenerateFit: return SEPOCO_DEGENERATE_FIT;
    case ErrorCode::kConfigError: return SEPOCO_CONFIG_ERROR;
    case ErrorCode::kIoError: return SEPOCO_IO_ERROR;
    case ErrorCode::kInternal: return SEPOCO_INTERNAL;
  }
  return SEPOCO_INTERNAL;
}

template <typename F>
sepoco_status try_(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const sepoco::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SEPOCO_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return SEPOCO_INTERNAL;
  }
}

template <typename T>
T& deref(T* p) {
  if (p == nullptr) sepoco::fail(sepoco::ErrorCode::kInvalidArgument, "null handle");
  return *p;
}

void require(const void* p, const char* what) {
  if (p == nullptr) {
    sepoco::fail(sepoco::ErrorCode::kInvalidArgument, std::string(what) + " is null");
  }
}

sepoco::Vector view(const double* data, size_t n, const char* what) {
  require(data, what);
  return Eigen::Map<const sepoco::Vector>(data, static_cast<Eigen::Index>(n));
}

void store(const sepoco::Vector& v, double* out) {
  require(out, "output buffer");
  std::memcpy(out, v.data(), sizeof(double) * static_cast<size_t>(v.size()));
}

void copy_path(const std::string& path, char* out, size_t capacity) {
  if (out == nullptr || capacity == 0) return;
  const size_t n = std::min(path.size(), capacity - 1);
  std::memcpy(out, path.data(), n);
  out[n] = '\0';
}

template <typename Make>
sepoco_status make_body(sepoco_body** out, Make&& make) {
  return try_([&] {
    require(out, "out");
    *out = nullptr;
    *out = new sepoco_body{make()};
    return SEPOCO_OK;
  });
}

}  // namespace

extern "C" {

const char* sepoco_version(void) { return "0.1.0"; }

const char* sepoco_status_name(sepoco_status status) {
  if (status == SEPOCO_RUN_FAILED) return "RunFailed";
  if (status < SEPOCO_OK || status > SEPOCO_INTERNAL) return "Unknown";
  return sepoco::error_code_name(static_cast<sepoco::ErrorCode>(status));
}

const char* sepoco_last_error(void) { return g_last_error.c_str(); }

sepoco_status sepoco_body_create_ball(const double* center, size_t dimension, double radius,
                                      sepoco_body** out) {
  return make_body(out, [&] { return sepoco::ConvexBody::ball(view(center, dimension, "center"), radius); });
}

sepoco_status sepoco_body_create_box(const double* lower, const double* upper, size_t dimension,
                                     sepoco_body** out) {
  return make_body(out, [&] {
    return sepoco::ConvexBody::box(view(lower, dimension, "lower"), view(upper, dimension, "upper"));
  });
}

sepoco_status sepoco_body_create_simplex(size_t dimension, sepoco_body** out) {
  return make_body(out, [&] { return sepoco::ConvexBody::simplex(static_cast<int>(dimension)); });
}

sepoco_status sepoco_body_create_polytope(const double* normals, const double* offsets,
                                          size_t faces, size_t dimension, const double* anchor,
                                          sepoco_body** out) {
  return make_body(out, [&] {
    require(normals, "normals");
    require(offsets, "offsets");
    std::vector<sepoco::Halfspace> hs;
    for (size_t i = 0; i < faces; ++i) {
      hs.push_back({view(normals + i * dimension, dimension, "normals"), offsets[i]});
    }
    std::optional<sepoco::Vector> a;
    if (anchor) a = view(anchor, dimension, "anchor");
    return sepoco::ConvexBody::polytope(std::move(hs), std::move(a));
  });
}

void sepoco_body_destroy(sepoco_body* body) { delete body; }

sepoco_status sepoco_body_dimension(const sepoco_body* body, size_t* out) {
  return try_([&] {
    require(out, "out");
    *out = static_cast<size_t>(deref(body).body.dimension());
    return SEPOCO_OK;
  });
}

sepoco_status sepoco_body_anchor(const sepoco_body* body, double* out) {
  return try_([&] {
    store(deref(body).body.anchor(), out);
    return SEPOCO_OK;
  });
}

sepoco_status sepoco_body_inner_radius(const sepoco_body* body, double* out) {
  return try_([&] {
    require(out, "out");
    *out = deref(body).body.inner_radius();
    return SEPOCO_OK;
  });
}

sepoco_status sepoco_body_diameter(const sepoco_body* body, double* out) {
  return try_([&] {
    require(out, "out");
    *out = deref(body).body.diameter();
    return SEPOCO_OK;
  });
}

sepoco_status sepoco_body_separate(const sepoco_body* body, const double* y, int* inside,
                                   double* separator) {
  return try_([&] {
    const auto& b = deref(body).body;
    require(inside, "inside");
    const auto res = b.separate(view(y, static_cast<size_t>(b.dimension()), "y"));
    *inside = res.inside() ? 1 : 0;
    if (!res.inside()) store(*res.separator, separator);
    return SEPOCO_OK;
  });
}

sepoco_status sepoco_body_affine_projection(const sepoco_body* body, const double* y, double* out) {
  return try_([&] {
    const auto& b = deref(body).body;
    store(b.affine_projection(view(y, static_cast<size_t>(b.dimension()), "y")), out);
    return SEPOCO_OK;
  });
}

sepoco_status sepoco_ipso_project(const sepoco_body* body, double delta, const double* y0,
                                  double* point, int64_t* so_calls) {
  return try_([&] {
    const auto& b = deref(body).body;
    const auto res = sepoco::infeasible_project(b, sepoco::IpsoConfig::for_body(b, delta),
                                                view(y0, static_cast<size_t>(b.dimension()), "y0"));
    store(res.point, point);
    if (so_calls) *so_calls = res.so_calls;
    return SEPOCO_OK;
  });
}

sepoco_status sepoco_bagel_create_convex(const sepoco_body* body, int64_t horizon, double beta,
                                         double M1, double c_delta, double c_K, double epsilon,
                                         sepoco_learner** out) {
  return try_([&] {
    require(out, "out");
    *out = nullptr;
    const auto& b = deref(body).body;
    const auto params = sepoco::convex_preset(horizon, beta, M1, b.diameter(), {c_delta, c_K, epsilon});
    *out = new sepoco_learner{sepoco::BagelLearner(b, horizon, params)};
    return SEPOCO_OK;
  });
}

sepoco_status sepoco_bagel_create_strongly_convex(const sepoco_body* body, int64_t horizon,
                                                  double beta, double M1, double theta,
                                                  double c_delta, double c_K,
                                                  sepoco_learner** out) {
  return try_([&] {
    require(out, "out");
    *out = nullptr;
    const auto& b = deref(body).body;
    const auto params = sepoco::strongly_convex_preset(horizon, beta, M1, theta, {c_delta, c_K, 1.0});
    *out = new sepoco_learner{sepoco::BagelLearner(b, horizon, params)};
    return SEPOCO_OK;
  });
}

void sepoco_learner_destroy(sepoco_learner* learner) { delete learner; }

sepoco_status sepoco_learner_action(const sepoco_learner* learner, double* out) {
  return try_([&] {
    store(deref(learner).learner.action(), out);
    return SEPOCO_OK;
  });
}

sepoco_status sepoco_learner_observe(sepoco_learner* learner, double f_value, const double* grad_f,
                                     double g_value, const double* grad_g) {
  return try_([&] {
    auto& l = deref(learner).learner;
    const size_t d = static_cast<size_t>(l.action().size());
    const sepoco::Vector gf = view(grad_f, d, "grad_f");
    const sepoco::Vector gg = g_value > 0.0 ? view(grad_g, d, "grad_g") : sepoco::Vector::Zero(d);
    l.observe(f_value, gf, g_value, gg);
    return SEPOCO_OK;
  });
}

sepoco_status sepoco_learner_violation(const sepoco_learner* learner, double* Q, double* ccv) {
  return try_([&] {
    const auto& v = deref(learner).learner.violation();
    if (Q) *Q = v.Q;
    if (ccv) *ccv = v.raw_ccv;
    return SEPOCO_OK;
  });
}

sepoco_status sepoco_learner_so_calls(const sepoco_learner* learner, int64_t* out) {
  return try_([&] {
    require(out, "out");
    *out = deref(learner).learner.inner().total_so_calls();
    return SEPOCO_OK;
  });
}

sepoco_status sepoco_learner_block_size(const sepoco_learner* learner, int64_t* out) {
  return try_([&] {
    require(out, "out");
    *out = deref(learner).learner.params().block;
    return SEPOCO_OK;
  });
}

sepoco_status sepoco_config_parse(const char* text, int for_tradeoff, sepoco_config** out) {
  return try_([&] {
    require(text, "text");
    require(out, "out");
    *out = nullptr;
    *out = new sepoco_config{sepoco::parse_config(text, for_tradeoff != 0)};
    return SEPOCO_OK;
  });
}

sepoco_status sepoco_config_load(const char* path, int for_tradeoff, sepoco_config** out) {
  return try_([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    *out = new sepoco_config{sepoco::load_config(path, for_tradeoff != 0)};
    return SEPOCO_OK;
  });
}

void sepoco_config_destroy(sepoco_config* config) { delete config; }

sepoco_status sepoco_config_format(const sepoco_config* config, char* buffer, size_t capacity,
                                   size_t* needed) {
  return try_([&] {
    const std::string text = sepoco::format_config(deref(config).config);
    if (needed) *needed = text.size() + 1;
    copy_path(text, buffer, capacity);
    return SEPOCO_OK;
  });
}

sepoco_status sepoco_run_suite(const sepoco_config* config, sepoco_suite_summary* summary) {
  return try_([&] {
    const auto result = sepoco::run_suite(deref(config).config);
    if (summary) {
      *summary = sepoco_suite_summary{};
      summary->cells = result.cells.size();
      for (const auto& c : result.cells) summary->failed_cells += c.error ? 1 : 0;
      summary->has_fits = result.regret_fit && result.ccv_fit && result.so_calls_fit;
      if (summary->has_fits) {
        summary->regret_slope = result.regret_fit->slope;
        summary->ccv_slope = result.ccv_fit->slope;
        summary->so_calls_slope = result.so_calls_fit->slope;
      }
      copy_path(result.runs_csv, summary->runs_csv, sizeof summary->runs_csv);
      copy_path(result.summary_csv, summary->summary_csv, sizeof summary->summary_csv);
    }
    if (!result.ok) {
      g_last_error = "one or more runs failed; see " + result.runs_csv;
      return SEPOCO_RUN_FAILED;
    }
    return SEPOCO_OK;
  });
}

sepoco_status sepoco_run_tradeoff(const sepoco_config* config, size_t* rows, char* csv_path,
                                  size_t csv_path_capacity) {
  return try_([&] {
    const auto result = sepoco::emit_tradeoff_table(deref(config).config);
    if (rows) *rows = result.rows.size();
    copy_path(result.csv, csv_path, csv_path_capacity);
    if (!result.ok) {
      g_last_error = "one or more runs failed; see " + result.csv;
      return SEPOCO_RUN_FAILED;
    }
    return SEPOCO_OK;
  });
}

sepoco_status sepoco_selftest(sepoco_check_callback callback, void* user, int* all_passed) {
  return try_([&] {
    bool ok = true;
    for (const auto& c : sepoco::run_selftest()) {
      ok = ok && c.passed;
      if (callback) callback(c.name.c_str(), c.passed ? 1 : 0, c.detail.c_str(), c.seconds, user);
    }
    if (all_passed) *all_passed = ok ? 1 : 0;
    return SEPOCO_OK;
  });
}

}  // extern "C"
