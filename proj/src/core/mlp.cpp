// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "mlp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parallel.hpp"

namespace cmlp {

MlpTensor::MlpTensor(std::uint32_t n_hidden) : n_hidden_(n_hidden) {
  if (n_hidden == 0 || n_hidden > kMaxHiddenUnits) {
    throw Error(ErrorCode::kInvalidArgument,
                "hidden unit count must be in [1, " + std::to_string(kMaxHiddenUnits) +
                    "], got " + std::to_string(n_hidden));
  }
  values_.assign(count_for(n_hidden), 0.0);
}

MlpTensor::MlpTensor(std::uint32_t n_hidden, std::vector<double> values)
    : MlpTensor(n_hidden) {
  if (values.size() != values_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "N=" + std::to_string(n_hidden) + " needs " + std::to_string(values_.size()) +
                    " parameters, got " + std::to_string(values.size()));
  }
  values_ = std::move(values);
}

void MlpTensor::set_zero() noexcept { std::fill(values_.begin(), values_.end(), 0.0); }

MlpParams::MlpParams(std::uint32_t n_hidden) : MlpTensor(n_hidden) {}

MlpParams::MlpParams(std::uint32_t n_hidden, std::vector<double> values)
    : MlpTensor(n_hidden, std::move(values)) {
  const auto v = flat();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "parameter " + std::to_string(i) + " is not finite");
    }
  }
}

MlpParams MlpParams::rounded_to_float() const {
  MlpParams out(*this);
  for (double& v : out.flat()) v = static_cast<float>(v);
  return out;
}

Rgb64 mlp_forward(const Rgb64& p, const MlpParams& params) {
  const std::size_t n = params.n_hidden();
  const auto w1 = params.w1();
  const auto b1 = params.b1();
  const auto w2 = params.w2();
  const auto b2 = params.b2();
  const auto w3 = params.w3();
  const auto b3 = params.b3();

  std::vector<double> h1(n), h2(n);
  for (std::size_t i = 0; i < n; ++i) {
    double z = b1[i];
    z += w1[3 * i] * p[0];
    z += w1[3 * i + 1] * p[1];
    z += w1[3 * i + 2] * p[2];
    h1[i] = z > 0.0 ? z : 0.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double z = b2[i];
    for (std::size_t j = 0; j < n; ++j) z += w2[i * n + j] * h1[j];
    h2[i] = z > 0.0 ? z : 0.0;
  }
  Rgb64 out{};
  for (std::size_t o = 0; o < 3; ++o) {
    double z = b3[o];
    for (std::size_t j = 0; j < n; ++j) z += w3[o * n + j] * h2[j];
    out[o] = z;
  }
  return out;
}

Color mlp_forward(Color p, const MlpParams& params) {
  const Rgb64 y = mlp_forward(Rgb64{p.r, p.g, p.b}, params);
  return {static_cast<float>(y[0]), static_cast<float>(y[1]), static_cast<float>(y[2])};
}

namespace detail {

constexpr std::size_t kChunk = 64;

// Structure-of-arrays activations for up to kChunk samples; row r of a
// block lives at [r * kChunk, (r + 1) * kChunk). relu'(z) is recovered
// from h > 0, so pre-activations are not stored.
class Workspace {
 public:
  explicit Workspace(std::size_t n_hidden)
      : n_(n_hidden), buf_((12 + 4 * n_hidden) * kChunk, 0.0) {
    double* p = buf_.data();
    x = p;
    p += 3 * kChunk;
    t = p;
    p += 3 * kChunk;
    y = p;
    p += 3 * kChunk;
    dy = p;
    p += 3 * kChunk;
    h1 = p;
    p += n_ * kChunk;
    h2 = p;
    p += n_ * kChunk;
    d1 = p;
    p += n_ * kChunk;
    d2 = p;
  }

  void load_inputs(std::span<const Color> colors) {
    for (std::size_t b = 0; b < colors.size(); ++b) {
      x[b] = colors[b].r;
      x[kChunk + b] = colors[b].g;
      x[2 * kChunk + b] = colors[b].b;
    }
  }

  void load_targets(std::span<const Color> colors) {
    for (std::size_t b = 0; b < colors.size(); ++b) {
      t[b] = colors[b].r;
      t[kChunk + b] = colors[b].g;
      t[2 * kChunk + b] = colors[b].b;
    }
  }

  Color output(std::size_t b) const {
    return {static_cast<float>(y[b]), static_cast<float>(y[kChunk + b]),
            static_cast<float>(y[2 * kChunk + b])};
  }

  // Same accumulation order as the scalar mlp_forward, so results match it
  // bit for bit.
  void forward(const MlpParams& params, std::size_t count) {
    const std::size_t n = n_;
    const double* w1 = params.w1().data();
    const double* b1 = params.b1().data();
    const double* w2 = params.w2().data();
    const double* b2 = params.b2().data();
    const double* w3 = params.w3().data();
    const double* b3 = params.b3().data();
    const double* x0 = x;
    const double* x1 = x + kChunk;
    const double* x2 = x + 2 * kChunk;

    for (std::size_t i = 0; i < n; ++i) {
      double* h = h1 + i * kChunk;
      const double bias = b1[i];
      const double a = w1[3 * i], c = w1[3 * i + 1], e = w1[3 * i + 2];
#pragma omp simd
      for (std::size_t b = 0; b < count; ++b) {
        double z = bias;
        z += a * x0[b];
        z += c * x1[b];
        z += e * x2[b];
        h[b] = z > 0.0 ? z : 0.0;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      double* h = h2 + i * kChunk;
      std::fill(h, h + count, b2[i]);
      for (std::size_t j = 0; j < n; ++j) {
        const double w = w2[i * n + j];
        const double* src = h1 + j * kChunk;
#pragma omp simd
        for (std::size_t b = 0; b < count; ++b) h[b] += w * src[b];
      }
#pragma omp simd
      for (std::size_t b = 0; b < count; ++b) h[b] = h[b] > 0.0 ? h[b] : 0.0;
    }
    for (std::size_t o = 0; o < 3; ++o) {
      double* out = y + o * kChunk;
      std::fill(out, out + count, b3[o]);
      for (std::size_t j = 0; j < n; ++j) {
        const double w = w3[o * n + j];
        const double* src = h2 + j * kChunk;
#pragma omp simd
        for (std::size_t b = 0; b < count; ++b) out[b] += w * src[b];
      }
    }
  }

  // Adds scale * d(sum |y - t|)/d(params) into grad; returns sum |y - t|.
  double backward_l1(const MlpParams& params, std::size_t count, double scale,
                     MlpGradient& grad) {
    const std::size_t n = n_;
    const double* w2 = params.w2().data();
    const double* w3 = params.w3().data();
    double* gw1 = grad.w1().data();
    double* gb1 = grad.b1().data();
    double* gw2 = grad.w2().data();
    double* gb2 = grad.b2().data();
    double* gw3 = grad.w3().data();
    double* gb3 = grad.b3().data();

    double loss = 0.0;
    for (std::size_t o = 0; o < 3; ++o) {
      const double* yo = y + o * kChunk;
      const double* to = t + o * kChunk;
      double* g = dy + o * kChunk;
      double sum = 0.0;
#pragma omp simd reduction(+ : sum)
      for (std::size_t b = 0; b < count; ++b) {
        const double d = yo[b] - to[b];
        sum += d < 0.0 ? -d : d;
        g[b] = d > 0.0 ? scale : (d < 0.0 ? -scale : 0.0);
      }
      loss += sum;
    }

    // Output layer.
    for (std::size_t o = 0; o < 3; ++o) {
      const double* g = dy + o * kChunk;
      gb3[o] += reduce(g, count);
      for (std::size_t j = 0; j < n; ++j) gw3[o * n + j] += dot(g, h2 + j * kChunk, count);
    }
    for (std::size_t j = 0; j < n; ++j) {
      double* d = d2 + j * kChunk;
      const double* h = h2 + j * kChunk;
      const double a = w3[j], c = w3[n + j], e = w3[2 * n + j];
      const double* g0 = dy;
      const double* g1 = dy + kChunk;
      const double* g2 = dy + 2 * kChunk;
#pragma omp simd
      for (std::size_t b = 0; b < count; ++b) {
        double s = a * g0[b];
        s += c * g1[b];
        s += e * g2[b];
        d[b] = h[b] > 0.0 ? s : 0.0;
      }
    }

    // Second hidden layer.
    std::fill(d1, d1 + n * kChunk, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double* d = d2 + i * kChunk;
      gb2[i] += reduce(d, count);
      for (std::size_t j = 0; j < n; ++j) {
        gw2[i * n + j] += dot(d, h1 + j * kChunk, count);
        const double w = w2[i * n + j];
        double* acc = d1 + j * kChunk;
#pragma omp simd
        for (std::size_t b = 0; b < count; ++b) acc[b] += w * d[b];
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      double* d = d1 + j * kChunk;
      const double* h = h1 + j * kChunk;
#pragma omp simd
      for (std::size_t b = 0; b < count; ++b) d[b] = h[b] > 0.0 ? d[b] : 0.0;
    }

    // First hidden layer.
    for (std::size_t i = 0; i < n; ++i) {
      const double* d = d1 + i * kChunk;
      gb1[i] += reduce(d, count);
      for (std::size_t k = 0; k < 3; ++k) gw1[3 * i + k] += dot(d, x + k * kChunk, count);
    }
    return loss;
  }

  double* x;
  double* t;
  double* y;
  double* dy;
  double* h1;
  double* h2;
  double* d1;
  double* d2;

 private:
  static double reduce(const double* a, std::size_t count) {
    double s = 0.0;
#pragma omp simd reduction(+ : s)
    for (std::size_t b = 0; b < count; ++b) s += a[b];
    return s;
  }

  static double dot(const double* a, const double* c, std::size_t count) {
    double s = 0.0;
#pragma omp simd reduction(+ : s)
    for (std::size_t b = 0; b < count; ++b) s += a[b] * c[b];
    return s;
  }

  std::size_t n_;
  std::vector<double> buf_;
};

}  // namespace detail

namespace {

using detail::kChunk;
using detail::Workspace;

// Maps `inputs` through the MLP one chunk at a time; emit(start, count)
// reads the chunk's outputs from `ws`.
template <typename Emit>
void forward_chunks(const MlpParams& params, std::span<const Color> inputs, Workspace& ws,
                    Emit&& emit) {
  for (std::size_t start = 0; start < inputs.size(); start += kChunk) {
    const std::size_t count = std::min(kChunk, inputs.size() - start);
    ws.load_inputs(inputs.subspan(start, count));
    ws.forward(params, count);
    emit(start, count);
  }
}

}  // namespace

L1Objective::L1Objective(std::uint32_t n_hidden)
    : n_hidden_(n_hidden), ws_(std::make_unique<Workspace>(n_hidden)) {}

L1Objective::~L1Objective() = default;
L1Objective::L1Objective(L1Objective&&) noexcept = default;
L1Objective& L1Objective::operator=(L1Objective&&) noexcept = default;

double L1Objective::evaluate(const MlpParams& params, std::span<const Color> inputs,
                             std::span<const Color> targets, MlpGradient& grad) {
  if (inputs.empty()) throw Error(ErrorCode::kInvalidArgument, "empty batch");
  if (inputs.size() != targets.size()) {
    throw Error(ErrorCode::kInvalidArgument, "inputs and targets differ in length");
  }
  if (params.n_hidden() != n_hidden_ || grad.n_hidden() != n_hidden_) {
    throw Error(ErrorCode::kInvalidArgument, "hidden unit count mismatch");
  }
  grad.set_zero();
  const double scale = 1.0 / (3.0 * static_cast<double>(inputs.size()));
  double loss = 0.0;
  for (std::size_t start = 0; start < inputs.size(); start += kChunk) {
    const std::size_t count = std::min(kChunk, inputs.size() - start);
    ws_->load_inputs(inputs.subspan(start, count));
    ws_->load_targets(targets.subspan(start, count));
    ws_->forward(params, count);
    loss += ws_->backward_l1(params, count, scale, grad);
  }
  return loss * scale;
}

std::pair<double, MlpGradient> mlp_backward(std::span<const std::pair<Color, Color>> batch,
                                            const MlpParams& params) {
  if (batch.empty()) throw Error(ErrorCode::kInvalidArgument, "empty batch");
  std::vector<Color> inputs, targets;
  inputs.reserve(batch.size());
  targets.reserve(batch.size());
  for (const auto& [in, target] : batch) {
    inputs.push_back(in);
    targets.push_back(target);
  }
  MlpGradient grad(params);
  L1Objective objective(params.n_hidden());
  const double loss = objective.evaluate(params, inputs, targets, grad);
  return {loss, std::move(grad)};
}

Lut3d compile_lut(const MlpParams& params, std::uint32_t size, unsigned threads) {
  const Lut3d identity = identity_lut(size);
  const auto inputs = identity.cells();
  std::vector<Color> cells(inputs.size());
  const std::size_t blocks = (inputs.size() + kChunk - 1) / kChunk;
  parallel_for(blocks, threads, [&](std::size_t b0, std::size_t b1) {
    Workspace ws(params.n_hidden());
    const std::size_t begin = b0 * kChunk;
    const std::size_t end = std::min(inputs.size(), b1 * kChunk);
    forward_chunks(params, inputs.subspan(begin, end - begin), ws,
                   [&](std::size_t start, std::size_t count) {
                     for (std::size_t k = 0; k < count; ++k) {
                       cells[begin + start + k] = ws.output(k);
                     }
                   });
  });
  return Lut3d(size, std::move(cells));
}

Image apply_mlp_to_image(const Image& img, const MlpParams& params, unsigned threads) {
  Image out(img.width(), img.height());
  const auto src = img.pixels();
  const auto dst = out.pixels();
  parallel_for(img.height(), threads, [&](std::size_t y0, std::size_t y1) {
    Workspace ws(params.n_hidden());
    const std::size_t begin = y0 * img.width();
    const std::size_t end = y1 * img.width();
    forward_chunks(params, src.subspan(begin, end - begin), ws,
                   [&](std::size_t start, std::size_t count) {
                     for (std::size_t k = 0; k < count; ++k) {
                       dst[begin + start + k] = clamp_unit(ws.output(k));
                     }
                   });
  });
  return out;
}

}  // namespace cmlp
