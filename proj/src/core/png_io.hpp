// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>

#include "image.hpp"

namespace cmlp {

struct ImageSize {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  friend bool operator==(const ImageSize&, const ImageSize&) = default;
};

// 8-bit PNGs only; alpha is discarded. 16-bit input is kUnsupported, any
// other failure kIo. Messages include the path.
Image load_png(const std::filesystem::path& path);
ImageSize probe_png(const std::filesystem::path& path);

// 8-bit RGB; channels are clamped and rounded. Written atomically.
void save_png(const Image& img, const std::filesystem::path& path);

inline std::uint8_t to_8bit(float v) {
  return static_cast<std::uint8_t>(clamp_unit(v) * 255.0f + 0.5f);
}

inline float from_8bit(std::uint8_t v) { return static_cast<float>(v) / 255.0f; }

}  // namespace cmlp
