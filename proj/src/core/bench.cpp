// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <new>
#include <random>

#include "lut.hpp"

namespace cmlp {
namespace {

template <typename Fn>
double median_ms(std::uint32_t reps, Fn&& fn) {
  fn();  // warm-up
  std::vector<double> times;
  times.reserve(reps);
  for (std::uint32_t i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  std::sort(times.begin(), times.end());
  const std::size_t mid = times.size() / 2;
  return times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
}

}  // namespace

std::string_view pipeline_label(BenchPipeline p) {
  switch (p) {
    case BenchPipeline::kMlpDirect:
      return "mlp-direct";
    case BenchPipeline::kLutApply:
      return "lut-apply";
    case BenchPipeline::kCompileOnly:
      return "compile-only";
  }
  return "unknown";
}

Image synthetic_image(std::uint32_t side, std::uint64_t seed) {
  Image img(side, side);
  std::mt19937_64 rng(seed);
  for (Color& c : img.pixels()) {
    c.r = static_cast<float>((rng() >> 40) * 0x1p-24);
    c.g = static_cast<float>((rng() >> 40) * 0x1p-24);
    c.b = static_cast<float>((rng() >> 40) * 0x1p-24);
  }
  return img;
}

std::vector<BenchResult> run_bench(const MlpParams& params, const BenchConfig& cfg) {
  if (cfg.reps < 3) throw Error(ErrorCode::kInvalidArgument, "bench needs at least 3 repetitions");
  if (cfg.resolutions.empty()) throw Error(ErrorCode::kInvalidArgument, "no resolutions given");
  for (std::uint32_t r : cfg.resolutions) {
    if (r == 0) throw Error(ErrorCode::kInvalidArgument, "resolution must be >= 1");
  }
  const Lut3d lut = compile_lut(params, cfg.lut_size, cfg.threads);

  std::vector<BenchResult> rows;
  for (std::uint32_t res : cfg.resolutions) {
    const BenchPipeline order[] = {BenchPipeline::kMlpDirect, BenchPipeline::kLutApply,
                                   BenchPipeline::kCompileOnly};
    std::optional<Image> img;
    std::optional<std::string> alloc_error;
    try {
      img.emplace(synthetic_image(res, cfg.seed + res));
    } catch (const std::bad_alloc&) {
      alloc_error = "out of memory allocating " + std::to_string(res) + "x" +
                    std::to_string(res) + " image";
    }
    for (BenchPipeline p : order) {
      BenchResult row{res, p, 0.0, cfg.reps, alloc_error};
      if (!alloc_error) {
        try {
          switch (p) {
            case BenchPipeline::kMlpDirect:
              row.ms = median_ms(cfg.reps, [&] { apply_mlp_to_image(*img, params, cfg.threads); });
              break;
            case BenchPipeline::kLutApply:
              row.ms = median_ms(cfg.reps, [&] { apply_lut_to_image(*img, lut, cfg.threads); });
              break;
            case BenchPipeline::kCompileOnly:
              row.ms = median_ms(cfg.reps, [&] { compile_lut(params, cfg.lut_size, cfg.threads); });
              break;
          }
        } catch (const std::bad_alloc&) {
          row.error = "out of memory";
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace cmlp
