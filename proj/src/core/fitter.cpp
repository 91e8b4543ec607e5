// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "fitter.hpp"

#include <cmath>
#include <random>
#include <string>

#include "parallel.hpp"

namespace cmlp {
namespace {

// 53 random mantissa bits; unlike std::uniform_real_distribution this gives
// the same stream on every standard library.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, std::string("invalid fit config: ") + what);
}

MlpParams init_params(std::uint32_t n_hidden, std::mt19937_64& rng) {
  MlpParams params(n_hidden);
  auto fill = [&](std::span<double> w, double fan_in) {
    const double limit = std::sqrt(6.0 / fan_in);
    for (double& v : w) v = (2.0 * uniform01(rng) - 1.0) * limit;
  };
  fill(params.w1(), 3.0);
  fill(params.w2(), n_hidden);
  fill(params.w3(), n_hidden);
  return params;
}

class Adam {
 public:
  Adam(std::size_t size, const FitConfig& cfg)
      : cfg_(cfg), m_(size, 0.0), v_(size, 0.0) {}

  void step(std::span<double> params, std::span<const double> grad) {
    ++t_;
    const double b1 = cfg_.adam_beta1;
    const double b2 = cfg_.adam_beta2;
    const double c1 = 1.0 - std::pow(b1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(b2, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
      m_[i] = b1 * m_[i] + (1.0 - b1) * grad[i];
      v_[i] = b2 * v_[i] + (1.0 - b2) * grad[i] * grad[i];
      const double m_hat = m_[i] / c1;
      const double v_hat = v_[i] / c2;
      params[i] -= cfg_.learning_rate * m_hat / (std::sqrt(v_hat) + cfg_.adam_epsilon);
    }
  }

 private:
  const FitConfig& cfg_;
  std::vector<double> m_;
  std::vector<double> v_;
  std::uint64_t t_ = 0;
};

}  // namespace

MlpParams random_mlp_params(std::uint32_t n_hidden, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return init_params(n_hidden, rng);
}

void FitConfig::validate() const {
  require(n_hidden >= 1 && n_hidden <= kMaxHiddenUnits, "n_hidden out of range");
  require(steps >= 1, "steps must be >= 1");
  require(batch_size >= 1, "batch_size must be >= 1");
  require(std::isfinite(learning_rate) && learning_rate > 0.0, "learning_rate must be > 0");
  require(adam_beta1 >= 0.0 && adam_beta1 < 1.0, "adam_beta1 must be in [0,1)");
  require(adam_beta2 >= 0.0 && adam_beta2 < 1.0, "adam_beta2 must be in [0,1)");
  require(adam_epsilon > 0.0, "adam_epsilon must be > 0");
  require(eval_grid_size >= 2, "eval_grid_size must be >= 2");
  require(trace_every >= 1, "trace_every must be >= 1");
}

double lattice_error_255(const MlpParams& params, const Lut3d& lut, std::uint32_t grid_size) {
  const Lut3d grid = identity_lut(grid_size);
  const Lut3d predicted = compile_lut(params, grid_size, 1);
  const auto inputs = grid.cells();
  const auto outputs = predicted.cells();
  double sum = 0.0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Color want = lut_apply(inputs[i], lut);
    const Color got = clamp_unit(outputs[i]);
    sum += std::abs(double{got.r} - want.r) + std::abs(double{got.g} - want.g) +
           std::abs(double{got.b} - want.b);
  }
  return 255.0 * sum / (3.0 * static_cast<double>(inputs.size()));
}

FitReport fit_mlp_to_lut(const Lut3d& lut, const FitConfig& cfg, const FitProgress& progress) {
  cfg.validate();
  std::mt19937_64 rng(cfg.rng_seed);
  MlpParams params = init_params(cfg.n_hidden, rng);
  MlpGradient grad(params);
  L1Objective objective(cfg.n_hidden);
  Adam adam(params.size(), cfg);

  std::vector<Color> inputs(cfg.batch_size);
  std::vector<Color> targets(cfg.batch_size);
  std::vector<LossSample> trace;

  for (std::uint64_t step = 1; step <= cfg.steps; ++step) {
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const float r = static_cast<float>(uniform01(rng));
      const float g = static_cast<float>(uniform01(rng));
      const float b = static_cast<float>(uniform01(rng));
      inputs[i] = {r, g, b};
      targets[i] = lut_apply(inputs[i], lut);
    }
    const double loss = objective.evaluate(params, inputs, targets, grad);
    if (!std::isfinite(loss)) {
      throw DivergenceError(step, "fit diverged: loss is not finite at step " +
                                      std::to_string(step));
    }
    if (step == 1 || step % cfg.trace_every == 0 || step == cfg.steps) {
      trace.push_back({step, loss});
      if (progress) progress(step, loss);
    }
    adam.step(params.flat(), grad.flat());
  }

  for (double v : params.flat()) {
    if (!std::isfinite(v)) {
      throw DivergenceError(cfg.steps, "fit diverged: parameters are not finite after step " +
                                           std::to_string(cfg.steps));
    }
  }

  FitReport report{params.rounded_to_float(), 0.0, std::move(trace)};
  report.final_error_255 = lattice_error_255(report.final_params, lut, cfg.eval_grid_size);
  return report;
}

std::vector<SweepEntry> sweep_hidden_units(const Lut3d& lut, std::span<const std::uint32_t> sizes,
                                           const FitConfig& cfg, unsigned threads) {
  if (sizes.empty()) throw Error(ErrorCode::kInvalidArgument, "sweep needs at least one N");
  for (std::uint32_t n : sizes) {
    if (n == 0) throw Error(ErrorCode::kInvalidArgument, "sweep sizes must be >= 1");
  }
  std::vector<SweepEntry> out(sizes.size());
  parallel_for(sizes.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      FitConfig run = cfg;
      run.n_hidden = sizes[i];
      run.rng_seed = cfg.rng_seed + i;
      try {
        out[i] = {sizes[i], fit_mlp_to_lut(lut, run).final_error_255};
      } catch (const DivergenceError& e) {
        throw DivergenceError(e.step(), "N=" + std::to_string(sizes[i]) + ": " + e.what());
      } catch (const Error& e) {
        throw Error(e.code(), "N=" + std::to_string(sizes[i]) + ": " + e.what());
      }
    }
  });
  return out;
}

}  // namespace cmlp
