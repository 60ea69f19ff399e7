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

#ifndef SEPOCO_SEPOCO_H_
#define SEPOCO_SEPOCO_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(SEPOCO_BUILDING_LIBRARY)
#define SEPOCO_API __declspec(dllexport)
#else
#define SEPOCO_API __declspec(dllimport)
#endif
#else
#define SEPOCO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sepoco_status {
  SEPOCO_OK = 0,
  SEPOCO_INVALID_ARGUMENT = 1,
  SEPOCO_DIMENSION_MISMATCH = 2,
  SEPOCO_DEGENERATE_DIRECTION = 3,
  SEPOCO_INVALID_DELTA = 4,
  SEPOCO_UNSUPPORTED = 5,
  SEPOCO_ITERATION_CAP_EXCEEDED = 6,
  SEPOCO_INVALID_CONFIG = 7,
  SEPOCO_BLOCK_OVERFLOW = 8,
  SEPOCO_NUMERIC_OVERFLOW = 9,
  SEPOCO_INVALID_SCENARIO = 10,
  SEPOCO_INFEASIBLE_CERTIFICATE = 11,
  SEPOCO_DEGENERATE_FIT = 12,
  SEPOCO_CONFIG_ERROR = 13,
  SEPOCO_IO_ERROR = 14,
  SEPOCO_INTERNAL = 15,
  SEPOCO_RUN_FAILED = 16
} sepoco_status;

typedef struct sepoco_body sepoco_body;
typedef struct sepoco_config sepoco_config;
typedef struct sepoco_learner sepoco_learner;

SEPOCO_API const char* sepoco_version(void);
SEPOCO_API const char* sepoco_status_name(sepoco_status status);
/* Message of the last failed call on this thread; "" after a success. */
SEPOCO_API const char* sepoco_last_error(void);

/* Action sets. Vectors are arrays of `dimension` doubles; polytope normals
   are row-major m x d. */
SEPOCO_API sepoco_status sepoco_body_create_ball(const double* center, size_t dimension,
                                                 double radius, sepoco_body** out);
SEPOCO_API sepoco_status sepoco_body_create_box(const double* lower, const double* upper,
                                                size_t dimension, sepoco_body** out);
SEPOCO_API sepoco_status sepoco_body_create_simplex(size_t dimension, sepoco_body** out);
SEPOCO_API sepoco_status sepoco_body_create_polytope(const double* normals, const double* offsets,
                                                     size_t faces, size_t dimension,
                                                     const double* anchor /* nullable */,
                                                     sepoco_body** out);
SEPOCO_API void sepoco_body_destroy(sepoco_body* body);

SEPOCO_API sepoco_status sepoco_body_dimension(const sepoco_body* body, size_t* out);
SEPOCO_API sepoco_status sepoco_body_anchor(const sepoco_body* body, double* out);
SEPOCO_API sepoco_status sepoco_body_inner_radius(const sepoco_body* body, double* out);
SEPOCO_API sepoco_status sepoco_body_diameter(const sepoco_body* body, double* out);
/* *inside is 1 or 0; `separator` is written only when *inside == 0. */
SEPOCO_API sepoco_status sepoco_body_separate(const sepoco_body* body, const double* y,
                                              int* inside, double* separator);
SEPOCO_API sepoco_status sepoco_body_affine_projection(const sepoco_body* body, const double* y,
                                                       double* out);

SEPOCO_API sepoco_status sepoco_ipso_project(const sepoco_body* body, double delta,
                                             const double* y0, double* point,
                                             int64_t* so_calls /* nullable */);

/* BAGEL learners with the preset parameters. */
SEPOCO_API sepoco_status sepoco_bagel_create_convex(const sepoco_body* body, int64_t horizon,
                                                    double beta, double M1, double c_delta,
                                                    double c_K, double epsilon,
                                                    sepoco_learner** out);
SEPOCO_API sepoco_status sepoco_bagel_create_strongly_convex(const sepoco_body* body,
                                                             int64_t horizon, double beta,
                                                             double M1, double theta,
                                                             double c_delta, double c_K,
                                                             sepoco_learner** out);
SEPOCO_API void sepoco_learner_destroy(sepoco_learner* learner);
SEPOCO_API sepoco_status sepoco_learner_action(const sepoco_learner* learner, double* out);
/* One round at the current action: f_t value and gradient, g_t value and
   gradient (grad_g may be NULL when g_value <= 0). */
SEPOCO_API sepoco_status sepoco_learner_observe(sepoco_learner* learner, double f_value,
                                                const double* grad_f, double g_value,
                                                const double* grad_g);
SEPOCO_API sepoco_status sepoco_learner_violation(const sepoco_learner* learner, double* Q,
                                                  double* ccv);
SEPOCO_API sepoco_status sepoco_learner_so_calls(const sepoco_learner* learner, int64_t* out);
SEPOCO_API sepoco_status sepoco_learner_block_size(const sepoco_learner* learner, int64_t* out);

/* Experiment configs. for_tradeoff selects the betas= form. */
SEPOCO_API sepoco_status sepoco_config_parse(const char* text, int for_tradeoff,
                                             sepoco_config** out);
SEPOCO_API sepoco_status sepoco_config_load(const char* path, int for_tradeoff,
                                            sepoco_config** out);
SEPOCO_API void sepoco_config_destroy(sepoco_config* config);
/* Writes at most `capacity` bytes including the terminator; *needed gets the
   full size with terminator. */
SEPOCO_API sepoco_status sepoco_config_format(const sepoco_config* config, char* buffer,
                                              size_t capacity, size_t* needed);

typedef struct sepoco_suite_summary {
  size_t cells;
  size_t failed_cells;
  int has_fits;
  double regret_slope;
  double ccv_slope;
  double so_calls_slope;
  char runs_csv[1024];
  char summary_csv[1024];
} sepoco_suite_summary;

/* SEPOCO_RUN_FAILED when any cell failed; the CSV files are still written. */
SEPOCO_API sepoco_status sepoco_run_suite(const sepoco_config* config,
                                          sepoco_suite_summary* summary);
SEPOCO_API sepoco_status sepoco_run_tradeoff(const sepoco_config* config, size_t* rows,
                                             char* csv_path, size_t csv_path_capacity);

typedef void (*sepoco_check_callback)(const char* name, int passed, const char* detail,
                                      double seconds, void* user);
SEPOCO_API sepoco_status sepoco_selftest(sepoco_check_callback callback, void* user,
                                         int* all_passed);

#ifdef __cplusplus
}
#endif

#endif  // SEPOCO_SEPOCO_H_
