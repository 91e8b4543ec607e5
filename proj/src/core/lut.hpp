// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "image.hpp"

namespace cmlp {

// Cubic RGB lookup table with M bins per axis. Cells are stored red-fastest:
// index = r + M*g + M*M*b, the same order as .cube data lines. Cell values are
// kept unclamped; clamping happens when the table is applied or written.
class Lut3d {
 public:
  // Throws kInvalidSize for size < 2, kInvalidArgument when cells.size() !=
  // size^3 or a cell is not finite.
  Lut3d(std::uint32_t size, std::vector<Color> cells);

  std::uint32_t size() const noexcept { return size_; }

  std::size_t index(std::uint32_t r, std::uint32_t g, std::uint32_t b) const noexcept {
    return r + std::size_t{size_} * (g + std::size_t{size_} * b);
  }

  const Color& at(std::uint32_t r, std::uint32_t g, std::uint32_t b) const noexcept {
    return cells_[index(r, g, b)];
  }

  std::span<const Color> cells() const noexcept { return cells_; }

  friend bool operator==(const Lut3d&, const Lut3d&) = default;

 private:
  std::uint32_t size_;
  std::vector<Color> cells_;
};

// Color of lattice point i on an M-bin axis, rounded to float once so that
// identity cells, compiled-LUT inputs and lattice pixels agree bit for bit.
inline float lattice_value(std::uint32_t i, std::uint32_t size) {
  return static_cast<float>(static_cast<double>(i) / (size - 1));
}

Lut3d identity_lut(std::uint32_t size);

// Lookup + trilinear interpolation. Inputs are clamped to [0,1] (NaN to 0)
// before the lookup and the blended result is clamped again. The cell is
// located in double, the blend runs in float; lattice colors return their
// cell exactly.
Color lut_apply(Color p, const Lut3d& lut);

// Pointwise lut_apply over the whole image. threads == 0 uses every core.
Image apply_lut_to_image(const Image& img, const Lut3d& lut, unsigned threads = 0);

// Sum of L2 norms between each cell and its in-bounds forward neighbors
// along r, g and b.
double tv_lut(const Lut3d& lut);

}  // namespace cmlp
