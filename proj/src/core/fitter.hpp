// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lut.hpp"
#include "mlp.hpp"

namespace cmlp {

struct FitConfig {
  std::uint32_t n_hidden = kDefaultHiddenUnits;
  std::uint64_t steps = 30000;
  std::uint32_t batch_size = 4096;
  double learning_rate = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  std::uint64_t rng_seed = 0;
  std::uint32_t eval_grid_size = 33;
  // Loss is recorded at step 1, every trace_every steps, and the last step.
  std::uint32_t trace_every = 50;

  // Throws kInvalidArgument naming the first bad field.
  void validate() const;
};

struct LossSample {
  std::uint64_t step;
  double loss;
  friend bool operator==(const LossSample&, const LossSample&) = default;
};

struct FitReport {
  // Rounded to float precision, so a saved parameter file reproduces
  // final_error_255 exactly.
  MlpParams final_params;
  // 255 * mean |clamp(mlp) - lut| over the 3 * G^3 channel values of the
  // G = eval_grid_size lattice.
  double final_error_255 = 0.0;
  std::vector<LossSample> loss_trace;

  friend bool operator==(const FitReport&, const FitReport&) = default;
};

using FitProgress = std::function<void(std::uint64_t step, double loss)>;

// Distills `lut` into a fresh MLP: every step draws batch_size uniform colors,
// labels them with lut_apply and takes one Adam step on mean L1. Bit-identical
// for a fixed config. Throws DivergenceError when the loss stops being finite.
FitReport fit_mlp_to_lut(const Lut3d& lut, const FitConfig& cfg,
                         const FitProgress& progress = {});

// Scaled-uniform initialization used by the fitter: every weight uniform in
// +-sqrt(6 / fan_in), biases zero.
MlpParams random_mlp_params(std::uint32_t n_hidden, std::uint64_t seed);

// The final_error_255 metric for arbitrary parameters.
double lattice_error_255(const MlpParams& params, const Lut3d& lut, std::uint32_t grid_size);

struct SweepEntry {
  std::uint32_t n_hidden;
  double error_255;
};

// One fit per entry of `sizes`; entry i uses seed cfg.rng_seed + i. Up to
// `threads` fits run concurrently. Errors are rethrown tagged with their N.
std::vector<SweepEntry> sweep_hidden_units(const Lut3d& lut, std::span<const std::uint32_t> sizes,
                                           const FitConfig& cfg, unsigned threads = 1);

}  // namespace cmlp
