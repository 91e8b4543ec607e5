// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "colormlp/colormlp.h"

#include <cmath>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "bench.hpp"
#include "cube_io.hpp"
#include "fitter.hpp"
#include "metrics.hpp"
#include "param_io.hpp"
#include "pipeline.hpp"
#include "png_io.hpp"

struct cmlp_lut {
  cmlp::Lut3d value;
};

struct cmlp_params {
  cmlp::MlpParams value;
};

struct cmlp_image {
  cmlp::Image value;
};

struct cmlp_fit_report {
  cmlp::FitReport value;
};

namespace {

thread_local std::string g_last_error;

cmlp_status to_status(cmlp::ErrorCode code) {
  switch (code) {
    case cmlp::ErrorCode::kInvalidArgument:
      return CMLP_ERR_INVALID_ARGUMENT;
    case cmlp::ErrorCode::kInvalidSize:
      return CMLP_ERR_INVALID_SIZE;
    case cmlp::ErrorCode::kParse:
      return CMLP_ERR_PARSE;
    case cmlp::ErrorCode::kFormat:
      return CMLP_ERR_FORMAT;
    case cmlp::ErrorCode::kIo:
      return CMLP_ERR_IO;
    case cmlp::ErrorCode::kUnsupported:
      return CMLP_ERR_UNSUPPORTED;
    case cmlp::ErrorCode::kDiverged:
      return CMLP_ERR_DIVERGED;
    case cmlp::ErrorCode::kOutOfMemory:
      return CMLP_ERR_OUT_OF_MEMORY;
  }
  return CMLP_ERR_INTERNAL;
}

cmlp_status fail(cmlp_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename Fn>
cmlp_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return CMLP_OK;
  } catch (const cmlp::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CMLP_ERR_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(CMLP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CMLP_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw cmlp::Error(cmlp::ErrorCode::kInvalidArgument, what);
}

std::vector<cmlp::Color> colors_from(const float* rgb, std::size_t count,
                                     std::size_t expected_colors) {
  require(rgb != nullptr, "null color buffer");
  if (count != 3 * expected_colors) {
    throw cmlp::Error(cmlp::ErrorCode::kInvalidArgument,
                      "color buffer holds " + std::to_string(count) + " floats, expected " +
                          std::to_string(3 * expected_colors));
  }
  std::vector<cmlp::Color> out(expected_colors);
  for (std::size_t i = 0; i < expected_colors; ++i) {
    out[i] = {rgb[3 * i], rgb[3 * i + 1], rgb[3 * i + 2]};
  }
  return out;
}

void colors_to(std::span<const cmlp::Color> colors, float* rgb, std::size_t count) {
  require(rgb != nullptr, "null output buffer");
  if (count < 3 * colors.size()) {
    throw cmlp::Error(cmlp::ErrorCode::kInvalidArgument,
                      "output buffer too small: need " + std::to_string(3 * colors.size()) +
                          " floats");
  }
  for (std::size_t i = 0; i < colors.size(); ++i) {
    rgb[3 * i] = colors[i].r;
    rgb[3 * i + 1] = colors[i].g;
    rgb[3 * i + 2] = colors[i].b;
  }
}

cmlp::FitConfig to_cpp(const cmlp_fit_config& c) {
  cmlp::FitConfig cfg;
  cfg.n_hidden = c.n_hidden;
  cfg.steps = c.steps;
  cfg.batch_size = c.batch_size;
  cfg.learning_rate = c.learning_rate;
  cfg.adam_beta1 = c.adam_beta1;
  cfg.adam_beta2 = c.adam_beta2;
  cfg.adam_epsilon = c.adam_epsilon;
  cfg.rng_seed = c.rng_seed;
  cfg.eval_grid_size = c.eval_grid_size;
  cfg.trace_every = c.trace_every;
  return cfg;
}

cmlp_image* wrap(cmlp::Image img) { return new cmlp_image{std::move(img)}; }

}  // namespace

extern "C" {

const char* cmlp_last_error(void) { return g_last_error.c_str(); }

const char* cmlp_status_name(cmlp_status status) {
  switch (status) {
    case CMLP_OK:
      return "ok";
    case CMLP_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case CMLP_ERR_INVALID_SIZE:
      return "invalid size";
    case CMLP_ERR_PARSE:
      return "parse error";
    case CMLP_ERR_FORMAT:
      return "format error";
    case CMLP_ERR_IO:
      return "I/O error";
    case CMLP_ERR_UNSUPPORTED:
      return "unsupported";
    case CMLP_ERR_DIVERGED:
      return "diverged";
    case CMLP_ERR_OUT_OF_MEMORY:
      return "out of memory";
    case CMLP_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* cmlp_version(void) { return "0.1.0"; }

// ---- LUT ----

cmlp_status cmlp_lut_identity(uint32_t size, cmlp_lut** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    *out = new cmlp_lut{cmlp::identity_lut(size)};
  });
}

cmlp_status cmlp_lut_create(uint32_t size, const float* rgb, size_t count, cmlp_lut** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    if (size < 2) throw cmlp::Error(cmlp::ErrorCode::kInvalidSize, "LUT size must be >= 2");
    const std::size_t cells = std::size_t{size} * size * size;
    *out = new cmlp_lut{cmlp::Lut3d(size, colors_from(rgb, count, cells))};
  });
}

cmlp_status cmlp_lut_read_cube(const char* path, cmlp_lut** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new cmlp_lut{cmlp::read_cube_file(path)};
  });
}

cmlp_status cmlp_lut_parse_cube(const char* text, size_t length, cmlp_lut** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new cmlp_lut{cmlp::read_cube(std::string_view(text, length))};
  });
}

cmlp_status cmlp_lut_write_cube(const cmlp_lut* lut, const char* path, const char* title) {
  return guarded([&] {
    require(lut != nullptr && path != nullptr, "null argument");
    cmlp::write_cube_file(path, lut->value, title ? title : "");
  });
}

void cmlp_lut_destroy(cmlp_lut* lut) { delete lut; }

uint32_t cmlp_lut_size(const cmlp_lut* lut) { return lut ? lut->value.size() : 0; }

cmlp_status cmlp_lut_cells(const cmlp_lut* lut, float* rgb, size_t count) {
  return guarded([&] {
    require(lut != nullptr, "null LUT");
    colors_to(lut->value.cells(), rgb, count);
  });
}

cmlp_status cmlp_lut_apply_color(const cmlp_lut* lut, const float in[3], float out[3]) {
  return guarded([&] {
    require(lut != nullptr && in != nullptr && out != nullptr, "null argument");
    const cmlp::Color c = cmlp::lut_apply({in[0], in[1], in[2]}, lut->value);
    out[0] = c.r;
    out[1] = c.g;
    out[2] = c.b;
  });
}

cmlp_status cmlp_lut_tv(const cmlp_lut* lut, double* out) {
  return guarded([&] {
    require(lut != nullptr && out != nullptr, "null argument");
    *out = cmlp::tv_lut(lut->value);
  });
}

// ---- Params ----

size_t cmlp_params_count_for(uint32_t n_hidden) { return cmlp::MlpTensor::count_for(n_hidden); }

cmlp_status cmlp_params_create(uint32_t n_hidden, const double* values, size_t count,
                               cmlp_params** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    require(values != nullptr || count == 0, "null value buffer");
    std::vector<double> v(values, values + count);
    *out = new cmlp_params{cmlp::MlpParams(n_hidden, std::move(v))};
  });
}

cmlp_status cmlp_params_load(const char* path, cmlp_params** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new cmlp_params{cmlp::load_params_file(path)};
  });
}

cmlp_status cmlp_params_decode(const void* bytes, size_t length, cmlp_params** out) {
  return guarded([&] {
    require(bytes != nullptr && out != nullptr, "null argument");
    *out = new cmlp_params{
        cmlp::load_params(std::string_view(static_cast<const char*>(bytes), length))};
  });
}

cmlp_status cmlp_params_save(const cmlp_params* params, const char* path) {
  return guarded([&] {
    require(params != nullptr && path != nullptr, "null argument");
    cmlp::save_params_file(path, params->value);
  });
}

void cmlp_params_destroy(cmlp_params* params) { delete params; }

uint32_t cmlp_params_n_hidden(const cmlp_params* params) {
  return params ? params->value.n_hidden() : 0;
}

cmlp_status cmlp_params_values(const cmlp_params* params, double* values, size_t count) {
  return guarded([&] {
    require(params != nullptr && values != nullptr, "null argument");
    const auto flat = params->value.flat();
    require(count >= flat.size(), "output buffer too small");
    std::copy(flat.begin(), flat.end(), values);
  });
}

cmlp_status cmlp_params_forward(const cmlp_params* params, const float in[3], float out[3]) {
  return guarded([&] {
    require(params != nullptr && in != nullptr && out != nullptr, "null argument");
    const cmlp::Color c = cmlp::mlp_forward(cmlp::Color{in[0], in[1], in[2]}, params->value);
    out[0] = c.r;
    out[1] = c.g;
    out[2] = c.b;
  });
}

cmlp_status cmlp_params_compile(const cmlp_params* params, uint32_t size, unsigned threads,
                                cmlp_lut** out) {
  return guarded([&] {
    require(params != nullptr && out != nullptr, "null argument");
    *out = new cmlp_lut{cmlp::compile_lut(params->value, size, threads)};
  });
}

// ---- Images ----

cmlp_status cmlp_image_create(uint32_t width, uint32_t height, const float* rgb, size_t count,
                              cmlp_image** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    cmlp::Image img(width, height);
    const auto colors = colors_from(rgb, count, img.pixel_count());
    std::copy(colors.begin(), colors.end(), img.pixels().begin());
    for (const cmlp::Color& c : colors) {
      require(std::isfinite(c.r) && std::isfinite(c.g) && std::isfinite(c.b),
              "image pixels must be finite");
    }
    *out = wrap(std::move(img));
  });
}

cmlp_status cmlp_image_load_png(const char* path, cmlp_image** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = wrap(cmlp::load_png(path));
  });
}

cmlp_status cmlp_image_save_png(const cmlp_image* image, const char* path) {
  return guarded([&] {
    require(image != nullptr && path != nullptr, "null argument");
    cmlp::save_png(image->value, path);
  });
}

void cmlp_image_destroy(cmlp_image* image) { delete image; }

uint32_t cmlp_image_width(const cmlp_image* image) { return image ? image->value.width() : 0; }

uint32_t cmlp_image_height(const cmlp_image* image) {
  return image ? image->value.height() : 0;
}

cmlp_status cmlp_image_pixels(const cmlp_image* image, float* rgb, size_t count) {
  return guarded([&] {
    require(image != nullptr, "null image");
    colors_to(image->value.pixels(), rgb, count);
  });
}

cmlp_status cmlp_apply_lut(const cmlp_image* image, const cmlp_lut* lut, unsigned threads,
                           cmlp_image** out) {
  return guarded([&] {
    require(image != nullptr && lut != nullptr && out != nullptr, "null argument");
    *out = wrap(cmlp::apply_lut_to_image(image->value, lut->value, threads));
  });
}

cmlp_status cmlp_run_direct(const cmlp_image* image, const cmlp_params* params,
                            unsigned threads, cmlp_image** out) {
  return guarded([&] {
    require(image != nullptr && params != nullptr && out != nullptr, "null argument");
    *out = wrap(cmlp::run_direct(image->value, params->value, threads));
  });
}

cmlp_status cmlp_run_fast(const cmlp_image* image, const cmlp_params* params, uint32_t size,
                          unsigned threads, cmlp_image** out) {
  return guarded([&] {
    require(image != nullptr && params != nullptr && out != nullptr, "null argument");
    *out = wrap(cmlp::run_fast(image->value, params->value, size, threads));
  });
}

cmlp_status cmlp_run_sequence(const char* in_dir, const cmlp_params* params, uint32_t size,
                              const char* out_dir, unsigned threads, size_t* written) {
  return guarded([&] {
    require(in_dir != nullptr && params != nullptr && out_dir != nullptr, "null argument");
    const auto seq = cmlp::FrameSequence::from_directory(in_dir);
    const auto outputs = cmlp::run_sequence(seq, params->value, size, out_dir, threads);
    if (written) *written = outputs.size();
  });
}

// ---- Metrics ----

cmlp_status cmlp_psnr(const cmlp_image* a, const cmlp_image* b, double* out) {
  return guarded([&] {
    require(a != nullptr && b != nullptr && out != nullptr, "null argument");
    *out = cmlp::psnr(a->value, b->value);
  });
}

cmlp_status cmlp_avg_l1_255(const cmlp_image* a, const cmlp_image* b, double* out) {
  return guarded([&] {
    require(a != nullptr && b != nullptr && out != nullptr, "null argument");
    *out = cmlp::avg_l1_255(a->value, b->value);
  });
}

cmlp_status cmlp_tv_image(const cmlp_image* image, double* out) {
  return guarded([&] {
    require(image != nullptr && out != nullptr, "null argument");
    *out = cmlp::tv_image(image->value);
  });
}

// ---- Fitting ----

void cmlp_fit_config_default(cmlp_fit_config* cfg) {
  if (!cfg) return;
  const cmlp::FitConfig d;
  cfg->n_hidden = d.n_hidden;
  cfg->steps = d.steps;
  cfg->batch_size = d.batch_size;
  cfg->learning_rate = d.learning_rate;
  cfg->adam_beta1 = d.adam_beta1;
  cfg->adam_beta2 = d.adam_beta2;
  cfg->adam_epsilon = d.adam_epsilon;
  cfg->rng_seed = d.rng_seed;
  cfg->eval_grid_size = d.eval_grid_size;
  cfg->trace_every = d.trace_every;
}

cmlp_status cmlp_fit(const cmlp_lut* lut, const cmlp_fit_config* cfg,
                     cmlp_fit_progress_fn progress, void* user, cmlp_fit_report** out) {
  return guarded([&] {
    require(lut != nullptr && cfg != nullptr && out != nullptr, "null argument");
    cmlp::FitProgress cb;
    if (progress) cb = [progress, user](std::uint64_t step, double loss) { progress(step, loss, user); };
    *out = new cmlp_fit_report{cmlp::fit_mlp_to_lut(lut->value, to_cpp(*cfg), cb)};
  });
}

void cmlp_fit_report_destroy(cmlp_fit_report* report) { delete report; }

double cmlp_fit_report_error_255(const cmlp_fit_report* report) {
  return report ? report->value.final_error_255 : NAN;
}

cmlp_status cmlp_fit_report_params(const cmlp_fit_report* report, cmlp_params** out) {
  return guarded([&] {
    require(report != nullptr && out != nullptr, "null argument");
    *out = new cmlp_params{report->value.final_params};
  });
}

size_t cmlp_fit_report_trace_length(const cmlp_fit_report* report) {
  return report ? report->value.loss_trace.size() : 0;
}

cmlp_status cmlp_fit_report_trace_at(const cmlp_fit_report* report, size_t index,
                                     uint64_t* step, double* loss) {
  return guarded([&] {
    require(report != nullptr && step != nullptr && loss != nullptr, "null argument");
    require(index < report->value.loss_trace.size(), "trace index out of range");
    *step = report->value.loss_trace[index].step;
    *loss = report->value.loss_trace[index].loss;
  });
}

cmlp_status cmlp_sweep(const cmlp_lut* lut, const uint32_t* sizes, size_t count,
                       const cmlp_fit_config* cfg, unsigned threads, double* errors_255) {
  return guarded([&] {
    require(lut != nullptr && sizes != nullptr && cfg != nullptr && errors_255 != nullptr,
            "null argument");
    const auto entries = cmlp::sweep_hidden_units(
        lut->value, std::span<const std::uint32_t>(sizes, count), to_cpp(*cfg), threads);
    for (std::size_t i = 0; i < entries.size(); ++i) errors_255[i] = entries[i].error_255;
  });
}

cmlp_status cmlp_lattice_error_255(const cmlp_params* params, const cmlp_lut* lut,
                                   uint32_t grid_size, double* out) {
  return guarded([&] {
    require(params != nullptr && lut != nullptr && out != nullptr, "null argument");
    *out = cmlp::lattice_error_255(params->value, lut->value, grid_size);
  });
}

// ---- Bench ----

cmlp_status cmlp_bench(const cmlp_params* params, uint32_t lut_size, const uint32_t* resolutions,
                       size_t count, uint32_t reps, unsigned threads, cmlp_bench_row* rows,
                       size_t capacity, size_t* written) {
  return guarded([&] {
    require(resolutions != nullptr && rows != nullptr, "null argument");
    require(capacity >= 3 * count, "row buffer too small: need 3 rows per resolution");
    cmlp::BenchConfig cfg;
    cfg.resolutions.assign(resolutions, resolutions + count);
    cfg.lut_size = lut_size;
    cfg.reps = reps;
    cfg.threads = threads;
    const cmlp::MlpParams p =
        params ? params->value : cmlp::random_mlp_params(cmlp::kDefaultHiddenUnits, 0);
    const auto results = cmlp::run_bench(p, cfg);
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      rows[i].resolution = r.resolution;
      rows[i].pipeline = static_cast<cmlp_bench_pipeline>(r.pipeline);
      rows[i].ms = r.error ? 0.0 : r.ms;
      rows[i].reps = r.reps;
      rows[i].status = r.error ? CMLP_ERR_OUT_OF_MEMORY : CMLP_OK;
    }
    if (written) *written = results.size();
  });
}

const char* cmlp_bench_pipeline_label(cmlp_bench_pipeline pipeline) {
  switch (pipeline) {
    case CMLP_BENCH_MLP_DIRECT:
      return "mlp-direct";
    case CMLP_BENCH_LUT_APPLY:
      return "lut-apply";
    case CMLP_BENCH_COMPILE_ONLY:
      return "compile-only";
  }
  return "unknown";
}

}  // extern "C"
