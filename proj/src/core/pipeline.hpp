// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "image.hpp"
#include "lut.hpp"
#include "mlp.hpp"

namespace cmlp {

inline constexpr std::uint32_t kDefaultLutSize = 33;

// Every pixel goes through the MLP.
Image run_direct(const Image& img, const MlpParams& params, unsigned threads = 0);

// Compiles the MLP into a size^3 LUT once, then applies the LUT per pixel.
Image run_fast(const Image& img, const MlpParams& params,
               std::uint32_t size = kDefaultLutSize, unsigned threads = 0);

struct Frame {
  std::filesystem::path path;
  // Optional per-frame parameters (frame_%06d.acm1 next to the frames).
  std::optional<std::filesystem::path> params;
};

// Numbered PNG frames sharing one set of dimensions.
class FrameSequence {
 public:
  // Lexicographically sorted *.png files in `dir`. Frame i picks up
  // dir/frame_%06d.acm1 (i zero-based) when that file exists. Throws
  // kInvalidArgument when the directory holds no PNG.
  static FrameSequence from_directory(const std::filesystem::path& dir);

  explicit FrameSequence(std::vector<Frame> frames);

  const std::vector<Frame>& frames() const noexcept { return frames_; }

 private:
  std::vector<Frame> frames_;
};

// Applies the compiled LUT to every frame and writes outputs under out_dir
// with the input basenames. All frame sizes are checked before any output is
// written; a mismatch names the offending frame. Returns the written paths in
// frame order.
std::vector<std::filesystem::path> run_sequence(const FrameSequence& seq,
                                                const MlpParams& params,
                                                std::uint32_t size,
                                                const std::filesystem::path& out_dir,
                                                unsigned threads = 0);

}  // namespace cmlp
