/*
 * Copyright 2026 The colormlp Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the colormlp engine: 3D LUTs, the 2-hidden-layer color MLP,
 * LUT distillation, image pipelines and metrics.
 *
 * Conventions:
 *  - Objects are opaque handles created by cmlp_*_create/_load/... and
 *    released with the matching cmlp_*_destroy. Destroy functions accept NULL.
 *  - Every fallible call returns a cmlp_status. On failure, output handles are
 *    left untouched and cmlp_last_error() returns a message for the calling
 *    thread, valid until that thread's next failing call.
 *  - Colors are three floats (r, g, b), nominally in [0, 1]. Pixel buffers are
 *    row-major, interleaved RGB float.
 *  - `threads` arguments: 0 uses every hardware thread.
 */

#ifndef COLORMLP_COLORMLP_H_
#define COLORMLP_COLORMLP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(COLORMLP_BUILDING_LIBRARY)
#define CMLP_API __attribute__((visibility("default")))
#else
#define CMLP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cmlp_status {
  CMLP_OK = 0,
  CMLP_ERR_INVALID_ARGUMENT = 1,
  CMLP_ERR_INVALID_SIZE = 2,
  CMLP_ERR_PARSE = 3,
  CMLP_ERR_FORMAT = 4,
  CMLP_ERR_IO = 5,
  CMLP_ERR_UNSUPPORTED = 6,
  CMLP_ERR_DIVERGED = 7,
  CMLP_ERR_OUT_OF_MEMORY = 8,
  CMLP_ERR_INTERNAL = 9
} cmlp_status;

typedef struct cmlp_lut cmlp_lut;
typedef struct cmlp_params cmlp_params;
typedef struct cmlp_image cmlp_image;
typedef struct cmlp_fit_report cmlp_fit_report;

CMLP_API const char* cmlp_last_error(void);
CMLP_API const char* cmlp_status_name(cmlp_status status);
CMLP_API const char* cmlp_version(void);

/* ---- 3D LUT ----------------------------------------------------------- */

CMLP_API cmlp_status cmlp_lut_identity(uint32_t size, cmlp_lut** out);
/* `rgb` holds 3 * size^3 floats, red index fastest. */
CMLP_API cmlp_status cmlp_lut_create(uint32_t size, const float* rgb, size_t count,
                                     cmlp_lut** out);
CMLP_API cmlp_status cmlp_lut_read_cube(const char* path, cmlp_lut** out);
CMLP_API cmlp_status cmlp_lut_parse_cube(const char* text, size_t length, cmlp_lut** out);
/* `title` may be NULL. */
CMLP_API cmlp_status cmlp_lut_write_cube(const cmlp_lut* lut, const char* path,
                                         const char* title);
CMLP_API void cmlp_lut_destroy(cmlp_lut* lut);

CMLP_API uint32_t cmlp_lut_size(const cmlp_lut* lut);
/* Copies 3 * size^3 floats into `rgb`; `count` is the buffer length. */
CMLP_API cmlp_status cmlp_lut_cells(const cmlp_lut* lut, float* rgb, size_t count);
CMLP_API cmlp_status cmlp_lut_apply_color(const cmlp_lut* lut, const float in[3],
                                          float out[3]);
CMLP_API cmlp_status cmlp_lut_tv(const cmlp_lut* lut, double* out);

/* ---- Color MLP parameters ------------------------------------------- */

/* Number of scalars for n_hidden units: N^2 + 8N + 3. */
CMLP_API size_t cmlp_params_count_for(uint32_t n_hidden);
/* `values` holds cmlp_params_count_for(n_hidden) numbers in flat order
 * W1, b1, W2, b2, W3, b3 (row-major over output units). */
CMLP_API cmlp_status cmlp_params_create(uint32_t n_hidden, const double* values, size_t count,
                                        cmlp_params** out);
CMLP_API cmlp_status cmlp_params_load(const char* path, cmlp_params** out);
CMLP_API cmlp_status cmlp_params_decode(const void* bytes, size_t length, cmlp_params** out);
CMLP_API cmlp_status cmlp_params_save(const cmlp_params* params, const char* path);
CMLP_API void cmlp_params_destroy(cmlp_params* params);

CMLP_API uint32_t cmlp_params_n_hidden(const cmlp_params* params);
CMLP_API cmlp_status cmlp_params_values(const cmlp_params* params, double* values, size_t count);
/* Unclamped network output. */
CMLP_API cmlp_status cmlp_params_forward(const cmlp_params* params, const float in[3],
                                         float out[3]);
CMLP_API cmlp_status cmlp_params_compile(const cmlp_params* params, uint32_t size,
                                         unsigned threads, cmlp_lut** out);

/* ---- Images ------------------------------------------------------------ */

CMLP_API cmlp_status cmlp_image_create(uint32_t width, uint32_t height, const float* rgb,
                                       size_t count, cmlp_image** out);
CMLP_API cmlp_status cmlp_image_load_png(const char* path, cmlp_image** out);
CMLP_API cmlp_status cmlp_image_save_png(const cmlp_image* image, const char* path);
CMLP_API void cmlp_image_destroy(cmlp_image* image);

CMLP_API uint32_t cmlp_image_width(const cmlp_image* image);
CMLP_API uint32_t cmlp_image_height(const cmlp_image* image);
CMLP_API cmlp_status cmlp_image_pixels(const cmlp_image* image, float* rgb, size_t count);

CMLP_API cmlp_status cmlp_apply_lut(const cmlp_image* image, const cmlp_lut* lut,
                                    unsigned threads, cmlp_image** out);
/* Direct pipeline: every pixel through the MLP. */
CMLP_API cmlp_status cmlp_run_direct(const cmlp_image* image, const cmlp_params* params,
                                     unsigned threads, cmlp_image** out);
/* Fast pipeline: compile a size^3 LUT once, then apply it. */
CMLP_API cmlp_status cmlp_run_fast(const cmlp_image* image, const cmlp_params* params,
                                   uint32_t size, unsigned threads, cmlp_image** out);
/* Processes every *.png in in_dir (sorted by name) into out_dir. Frame i uses
 * in_dir/frame_%06d.acm1 instead of `params` when present. `written` may be
 * NULL. */
CMLP_API cmlp_status cmlp_run_sequence(const char* in_dir, const cmlp_params* params,
                                       uint32_t size, const char* out_dir, unsigned threads,
                                       size_t* written);

/* ---- Metrics ----------------------------------------------------------- */

/* Identical images yield +infinity. */
CMLP_API cmlp_status cmlp_psnr(const cmlp_image* a, const cmlp_image* b, double* out);
CMLP_API cmlp_status cmlp_avg_l1_255(const cmlp_image* a, const cmlp_image* b, double* out);
CMLP_API cmlp_status cmlp_tv_image(const cmlp_image* image, double* out);

/* ---- LUT distillation ------------------------------------------------ */

typedef struct cmlp_fit_config {
  uint32_t n_hidden;
  uint64_t steps;
  uint32_t batch_size;
  double learning_rate;
  double adam_beta1;
  double adam_beta2;
  double adam_epsilon;
  uint64_t rng_seed;
  uint32_t eval_grid_size;
  uint32_t trace_every;
} cmlp_fit_config;

/* Called at every recorded trace step. */
typedef void (*cmlp_fit_progress_fn)(uint64_t step, double loss, void* user);

CMLP_API void cmlp_fit_config_default(cmlp_fit_config* cfg);
/* `progress` may be NULL. */
CMLP_API cmlp_status cmlp_fit(const cmlp_lut* lut, const cmlp_fit_config* cfg,
                              cmlp_fit_progress_fn progress, void* user,
                              cmlp_fit_report** out);
CMLP_API void cmlp_fit_report_destroy(cmlp_fit_report* report);
CMLP_API double cmlp_fit_report_error_255(const cmlp_fit_report* report);
/* New handle owned by the caller. */
CMLP_API cmlp_status cmlp_fit_report_params(const cmlp_fit_report* report, cmlp_params** out);
CMLP_API size_t cmlp_fit_report_trace_length(const cmlp_fit_report* report);
CMLP_API cmlp_status cmlp_fit_report_trace_at(const cmlp_fit_report* report, size_t index,
                                              uint64_t* step, double* loss);

/* Fits one MLP per entry of `sizes` (entry i seeded with cfg->rng_seed + i)
 * and writes the lattice errors to `errors_255` in input order. */
CMLP_API cmlp_status cmlp_sweep(const cmlp_lut* lut, const uint32_t* sizes, size_t count,
                                const cmlp_fit_config* cfg, unsigned threads,
                                double* errors_255);

/* Lattice error (0..255 scale) of arbitrary parameters against a LUT. */
CMLP_API cmlp_status cmlp_lattice_error_255(const cmlp_params* params, const cmlp_lut* lut,
                                            uint32_t grid_size, double* out);

/* ---- Benchmark ----------------------------------------------------- */

typedef enum cmlp_bench_pipeline {
  CMLP_BENCH_MLP_DIRECT = 0,
  CMLP_BENCH_LUT_APPLY = 1,
  CMLP_BENCH_COMPILE_ONLY = 2
} cmlp_bench_pipeline;

typedef struct cmlp_bench_row {
  uint32_t resolution;
  cmlp_bench_pipeline pipeline;
  double ms;        /* median; 0 when status != CMLP_OK */
  uint32_t reps;
  cmlp_status status;
} cmlp_bench_row;

/* Writes 3 rows per resolution into `rows` (capacity `capacity`). When
 * `params` is NULL a randomly initialized N=20 network is used. */
CMLP_API cmlp_status cmlp_bench(const cmlp_params* params, uint32_t lut_size,
                                const uint32_t* resolutions, size_t count, uint32_t reps,
                                unsigned threads, cmlp_bench_row* rows, size_t capacity,
                                size_t* written);
CMLP_API const char* cmlp_bench_pipeline_label(cmlp_bench_pipeline pipeline);

#ifdef __cplusplus
}
#endif

#endif /* COLORMLP_COLORMLP_H_ */
