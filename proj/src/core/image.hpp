// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "error.hpp"

namespace cmlp {

// One RGB sample. Channels are nominally in [0,1]; unclamped values are
// allowed for intermediate data such as raw MLP outputs and LUT cells.
struct Color {
  float r = 0.0f;
  float g = 0.0f;
  float b = 0.0f;

  friend bool operator==(const Color&, const Color&) = default;
};

inline float clamp_unit(float v) {
  // +0.0f folds a clamped -0.0 onto +0.0.
  return std::clamp(v, 0.0f, 1.0f) + 0.0f;
}

inline Color clamp_unit(Color c) {
  return {clamp_unit(c.r), clamp_unit(c.g), clamp_unit(c.b)};
}

// Row-major grid of colors.
class Image {
 public:
  Image(std::uint32_t width, std::uint32_t height, Color fill = {})
      : width_(width), height_(height) {
    if (width == 0 || height == 0) {
      throw Error(ErrorCode::kInvalidArgument, "image dimensions must be >= 1");
    }
    pixels_.assign(std::size_t{width} * height, fill);
  }

  std::uint32_t width() const noexcept { return width_; }
  std::uint32_t height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return pixels_.size(); }

  Color& at(std::uint32_t x, std::uint32_t y) {
    return pixels_[std::size_t{y} * width_ + x];
  }
  const Color& at(std::uint32_t x, std::uint32_t y) const {
    return pixels_[std::size_t{y} * width_ + x];
  }

  std::span<Color> pixels() noexcept { return pixels_; }
  std::span<const Color> pixels() const noexcept { return pixels_; }

  bool same_shape(const Image& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::uint32_t width_;
  std::uint32_t height_;
  std::vector<Color> pixels_;
};

}  // namespace cmlp
