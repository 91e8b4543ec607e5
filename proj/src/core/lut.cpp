// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "lut.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>

#include "parallel.hpp"

namespace cmlp {

Lut3d::Lut3d(std::uint32_t size, std::vector<Color> cells)
    : size_(size), cells_(std::move(cells)) {
  if (size < 2) {
    throw Error(ErrorCode::kInvalidSize,
                "LUT size must be >= 2, got " + std::to_string(size));
  }
  const std::size_t expected = std::size_t{size} * size * size;
  if (cells_.size() != expected) {
    throw Error(ErrorCode::kInvalidArgument,
                "LUT of size " + std::to_string(size) + " needs " +
                    std::to_string(expected) + " cells, got " +
                    std::to_string(cells_.size()));
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const Color& c = cells_[i];
    if (!std::isfinite(c.r) || !std::isfinite(c.g) || !std::isfinite(c.b)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "LUT cell " + std::to_string(i) + " is not finite");
    }
  }
}

Lut3d identity_lut(std::uint32_t size) {
  if (size < 2) {
    throw Error(ErrorCode::kInvalidSize,
                "LUT size must be >= 2, got " + std::to_string(size));
  }
  std::vector<Color> cells;
  cells.reserve(std::size_t{size} * size * size);
  for (std::uint32_t b = 0; b < size; ++b) {
    for (std::uint32_t g = 0; g < size; ++g) {
      for (std::uint32_t r = 0; r < size; ++r) {
        cells.push_back({lattice_value(r, size), lattice_value(g, size),
                         lattice_value(b, size)});
      }
    }
  }
  return Lut3d(size, std::move(cells));
}

namespace {

struct AxisPos {
  std::int32_t base;
  float frac;  // weight of the upper neighbor
};

// NaN and negatives map to 0. Positions are located in double so that
// float-rounded lattice colors, which land within one float ulp of their
// plane, can be snapped onto it and return their cell exactly.
inline AxisPos axis_position(float v, std::int32_t last) {
  const double in = v;
  double x = in > 0.0 ? in : 0.0;
  x = (x < 1.0 ? x : 1.0) * last;
  const std::int32_t nearest = static_cast<std::int32_t>(x + 0.5);
  x = std::abs(x - nearest) <= last * 0x1p-24 ? double(nearest) : x;
  const std::int32_t truncated = static_cast<std::int32_t>(x);
  const std::int32_t base = truncated < last - 1 ? truncated : last - 1;
  return {base, static_cast<float>(x - base)};
}

// Exact at t = 0, at t = 1 and when a == b.
inline float lerp(float a, float b, float t) { return t == 1.0f ? b : a + t * (b - a); }

inline float clamp01(float v) {
  v = v > 0.0f ? v : 0.0f;
  return v < 1.0f ? v : 1.0f;
}

// Corner k of the cell at `q`: bit 0 steps red, bit 1 green, bit 2 blue.
inline const Color* corner(const Color* q, int k, std::size_t dg, std::size_t db) {
  return q + (k & 1) + ((k & 2) ? dg : 0) + ((k & 4) ? db : 0);
}

inline float trilinear(const float c[8], float tr, float tg, float tb) {
  const float c00 = lerp(c[0], c[1], tr);
  const float c10 = lerp(c[2], c[3], tr);
  const float c01 = lerp(c[4], c[5], tr);
  const float c11 = lerp(c[6], c[7], tr);
  return lerp(lerp(c00, c10, tg), lerp(c01, c11, tg), tb);
}

Color sample(Color p, const Color* cells, std::uint32_t m) {
  const std::int32_t last = static_cast<std::int32_t>(m - 1);
  const AxisPos pr = axis_position(p.r, last);
  const AxisPos pg = axis_position(p.g, last);
  const AxisPos pb = axis_position(p.b, last);
  const std::size_t dg = m;
  const std::size_t db = std::size_t{m} * m;
  const Color* q = cells + pr.base + dg * pg.base + db * pb.base;

  float r[8], g[8], b[8];
  for (int k = 0; k < 8; ++k) {
    const Color* c = corner(q, k, dg, db);
    r[k] = c->r;
    g[k] = c->g;
    b[k] = c->b;
  }
  return {clamp01(trilinear(r, pr.frac, pg.frac, pb.frac)),
          clamp01(trilinear(g, pr.frac, pg.frac, pb.frac)),
          clamp01(trilinear(b, pr.frac, pg.frac, pb.frac))};
}

using Vec4 = float __attribute__((vector_size(16)));

inline Vec4 lerp(Vec4 a, Vec4 b, float t) { return t == 1.0f ? b : a + t * (b - a); }

// Same arithmetic as sample(), one lane per channel. Positions are located
// in blocks so that step vectorizes across pixels.
class BlockSampler {
 public:
  BlockSampler(const Vec4* cells, std::uint32_t m)
      : cells_(cells), m_(m), last_(static_cast<std::int32_t>(m - 1)) {}

  void run(const Color* src, Color* dst, std::size_t count) {
    const std::size_t dg = m_;
    const std::size_t db = std::size_t{m_} * m_;
    for (std::size_t start = 0; start < count; start += kBlock) {
      const std::size_t n = std::min(kBlock, count - start);
      for (std::size_t j = 0; j < n; ++j) {
        in_[0][j] = src[start + j].r;
        in_[1][j] = src[start + j].g;
        in_[2][j] = src[start + j].b;
      }
      for (int axis = 0; axis < 3; ++axis) locate(axis);
      for (std::size_t j = 0; j < n; ++j) {
        const Vec4* q = cells_ + base_[0][j] + dg * base_[1][j] + db * base_[2][j];
        const float tr = frac_[0][j];
        const Vec4 c00 = lerp(q[0], q[1], tr);
        const Vec4 c10 = lerp(q[dg], q[dg + 1], tr);
        const Vec4 c01 = lerp(q[db], q[db + 1], tr);
        const Vec4 c11 = lerp(q[db + dg], q[db + dg + 1], tr);
        const float tg = frac_[1][j];
        Vec4 v = lerp(lerp(c00, c10, tg), lerp(c01, c11, tg), frac_[2][j]);
        v = v > 0.0f ? v : 0.0f;
        v = v < 1.0f ? v : 1.0f;
        dst[start + j] = {v[0], v[1], v[2]};
      }
    }
  }

 private:
  static constexpr std::size_t kBlock = 64;

  void locate(int axis) {
#pragma omp simd
    for (std::size_t j = 0; j < kBlock; ++j) {
      const AxisPos pos = axis_position(in_[axis][j], last_);
      base_[axis][j] = pos.base;
      frac_[axis][j] = pos.frac;
    }
  }

  const Vec4* cells_;
  std::uint32_t m_;
  std::int32_t last_;
  alignas(64) float in_[3][kBlock] = {};
  alignas(64) std::int32_t base_[3][kBlock] = {};
  alignas(64) float frac_[3][kBlock] = {};
};

}  // namespace

Color lut_apply(Color p, const Lut3d& lut) { return sample(p, lut.cells().data(), lut.size()); }

Image apply_lut_to_image(const Image& img, const Lut3d& lut, unsigned threads) {
  Image out(img.width(), img.height());
  const Color* src = img.pixels().data();
  Color* dst = out.pixels().data();
  std::vector<Vec4> padded;
  padded.reserve(lut.cells().size());
  for (const Color& c : lut.cells()) padded.push_back(Vec4{c.r, c.g, c.b, 0.0f});
  parallel_for(img.height(), threads, [&](std::size_t y0, std::size_t y1) {
    auto sampler = std::make_unique<BlockSampler>(padded.data(), lut.size());
    sampler->run(src + y0 * img.width(), dst + y0 * img.width(), (y1 - y0) * img.width());
  });
  return out;
}

double tv_lut(const Lut3d& lut) {
  const std::uint32_t m = lut.size();
  auto dist = [](const Color& a, const Color& b) {
    const double dr = double{a.r} - b.r;
    const double dg = double{a.g} - b.g;
    const double db = double{a.b} - b.b;
    return std::sqrt(dr * dr + dg * dg + db * db);
  };
  double total = 0.0;
  for (std::uint32_t b = 0; b < m; ++b) {
    for (std::uint32_t g = 0; g < m; ++g) {
      for (std::uint32_t r = 0; r < m; ++r) {
        const Color& c = lut.at(r, g, b);
        if (r + 1 < m) total += dist(c, lut.at(r + 1, g, b));
        if (g + 1 < m) total += dist(c, lut.at(r, g + 1, b));
        if (b + 1 < m) total += dist(c, lut.at(r, g, b + 1));
      }
    }
  }
  return total;
}

}  // namespace cmlp
