// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "image.hpp"
#include "mlp.hpp"

namespace cmlp {

enum class BenchPipeline { kMlpDirect, kLutApply, kCompileOnly };

std::string_view pipeline_label(BenchPipeline p);

struct BenchConfig {
  std::vector<std::uint32_t> resolutions{512, 1024, 2000, 4000};
  std::uint32_t lut_size = 33;
  // Timed repetitions after one discarded warm-up run; at least 3.
  std::uint32_t reps = 5;
  unsigned threads = 1;
  std::uint64_t seed = 0;
};

struct BenchResult {
  std::uint32_t resolution = 0;
  BenchPipeline pipeline = BenchPipeline::kMlpDirect;
  double ms = 0.0;  // median wall time
  std::uint32_t reps = 0;
  std::optional<std::string> error;  // set when the row could not run
};

// Square image of uniform random colors.
Image synthetic_image(std::uint32_t side, std::uint64_t seed);

// Three rows per resolution: mlp-direct, lut-apply (LUT compiled beforehand)
// and compile-only. A resolution that cannot be allocated yields error rows
// and the remaining resolutions still run.
std::vector<BenchResult> run_bench(const MlpParams& params, const BenchConfig& cfg);

}  // namespace cmlp
