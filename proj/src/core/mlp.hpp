// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "image.hpp"
#include "lut.hpp"

namespace cmlp {

inline constexpr std::uint32_t kDefaultHiddenUnits = 20;
inline constexpr std::uint32_t kMaxHiddenUnits = 4096;

// Flat storage shared by parameters and gradients of the 2-hidden-layer
// color MLP. Layout, all row-major over output units:
//   W1 (N x 3), b1 (N), W2 (N x N), b2 (N), W3 (3 x N), b3 (3)
// for a total of N^2 + 8N + 3 scalars.
class MlpTensor {
 public:
  static constexpr std::size_t count_for(std::uint32_t n_hidden) noexcept {
    const std::size_t n = n_hidden;
    return n * n + 8 * n + 3;
  }

  std::uint32_t n_hidden() const noexcept { return n_hidden_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<double> flat() noexcept { return values_; }
  std::span<const double> flat() const noexcept { return values_; }

  std::span<double> w1() noexcept { return slice(off_w1(), 3 * n()); }
  std::span<double> b1() noexcept { return slice(off_b1(), n()); }
  std::span<double> w2() noexcept { return slice(off_w2(), n() * n()); }
  std::span<double> b2() noexcept { return slice(off_b2(), n()); }
  std::span<double> w3() noexcept { return slice(off_w3(), 3 * n()); }
  std::span<double> b3() noexcept { return slice(off_b3(), 3); }
  std::span<const double> w1() const noexcept { return slice(off_w1(), 3 * n()); }
  std::span<const double> b1() const noexcept { return slice(off_b1(), n()); }
  std::span<const double> w2() const noexcept { return slice(off_w2(), n() * n()); }
  std::span<const double> b2() const noexcept { return slice(off_b2(), n()); }
  std::span<const double> w3() const noexcept { return slice(off_w3(), 3 * n()); }
  std::span<const double> b3() const noexcept { return slice(off_b3(), 3); }

  void set_zero() noexcept;

 protected:
  explicit MlpTensor(std::uint32_t n_hidden);
  MlpTensor(std::uint32_t n_hidden, std::vector<double> values);

  bool equals(const MlpTensor& other) const noexcept {
    return n_hidden_ == other.n_hidden_ && values_ == other.values_;
  }

 private:
  std::size_t n() const noexcept { return n_hidden_; }
  std::size_t off_w1() const noexcept { return 0; }
  std::size_t off_b1() const noexcept { return 3 * n(); }
  std::size_t off_w2() const noexcept { return 4 * n(); }
  std::size_t off_b2() const noexcept { return 4 * n() + n() * n(); }
  std::size_t off_w3() const noexcept { return 5 * n() + n() * n(); }
  std::size_t off_b3() const noexcept { return 8 * n() + n() * n(); }

  std::span<double> slice(std::size_t off, std::size_t len) noexcept {
    return std::span<double>(values_).subspan(off, len);
  }
  std::span<const double> slice(std::size_t off, std::size_t len) const noexcept {
    return std::span<const double>(values_).subspan(off, len);
  }

  std::uint32_t n_hidden_;
  std::vector<double> values_;
};

class MlpParams : public MlpTensor {
 public:
  // All-zero network with n_hidden units per hidden layer.
  explicit MlpParams(std::uint32_t n_hidden = kDefaultHiddenUnits);
  // Throws kInvalidArgument on size mismatch or non-finite values.
  MlpParams(std::uint32_t n_hidden, std::vector<double> values);

  // Copy with every value rounded to the nearest float, i.e. what survives a
  // save/load round-trip.
  MlpParams rounded_to_float() const;

  friend bool operator==(const MlpParams& a, const MlpParams& b) noexcept {
    return a.equals(b);
  }
};

class MlpGradient : public MlpTensor {
 public:
  explicit MlpGradient(std::uint32_t n_hidden) : MlpTensor(n_hidden) {}
  explicit MlpGradient(const MlpParams& like) : MlpTensor(like.n_hidden()) {}
};

using Rgb64 = std::array<double, 3>;

// relu(W1 p + b1) -> relu(W2 h1 + b2) -> W3 h2 + b3. Not clamped.
Rgb64 mlp_forward(const Rgb64& p, const MlpParams& params);
Color mlp_forward(Color p, const MlpParams& params);

namespace detail {
class Workspace;
}

// Mean absolute error over every channel of every sample, with its exact
// gradient. Subgradients: d|x|/dx = 0 at 0, relu'(0) = 0.
class L1Objective {
 public:
  explicit L1Objective(std::uint32_t n_hidden);
  ~L1Objective();
  L1Objective(L1Objective&&) noexcept;
  L1Objective& operator=(L1Objective&&) noexcept;

  // Overwrites `grad`. Throws kInvalidArgument if inputs is empty or the
  // spans differ in length.
  double evaluate(const MlpParams& params, std::span<const Color> inputs,
                  std::span<const Color> targets, MlpGradient& grad);

 private:
  std::uint32_t n_hidden_;
  std::unique_ptr<detail::Workspace> ws_;
};

// Convenience wrapper over L1Objective for a list of (input, target) pairs.
std::pair<double, MlpGradient> mlp_backward(std::span<const std::pair<Color, Color>> batch,
                                            const MlpParams& params);

// Evaluates the MLP on every lattice point of an identity LUT of the given
// size. Cells are stored unclamped.
Lut3d compile_lut(const MlpParams& params, std::uint32_t size, unsigned threads = 0);

// Per-pixel clamp(mlp_forward(pixel)).
Image apply_mlp_to_image(const Image& img, const MlpParams& params, unsigned threads = 0);

}  // namespace cmlp
