// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace cmlp {
namespace {

void require_same_shape(const Image& a, const Image& b) {
  if (!a.same_shape(b)) {
    throw Error(ErrorCode::kInvalidArgument,
                "image dimensions differ: " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                    std::to_string(b.height()));
  }
}

}  // namespace

double psnr(const Image& a, const Image& b) {
  require_same_shape(a, b);
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  double sum = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double dr = double{pa[i].r} - pb[i].r;
    const double dg = double{pa[i].g} - pb[i].g;
    const double db = double{pa[i].b} - pb[i].b;
    sum += dr * dr + dg * dg + db * db;
  }
  const double mse = sum / (3.0 * static_cast<double>(pa.size()));
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

double avg_l1_255(const Image& a, const Image& b) {
  require_same_shape(a, b);
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  double sum = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    sum += std::abs(double{pa[i].r} - pb[i].r) + std::abs(double{pa[i].g} - pb[i].g) +
           std::abs(double{pa[i].b} - pb[i].b);
  }
  return 255.0 * sum / (3.0 * static_cast<double>(pa.size()));
}

double tv_image(const Image& img) {
  auto dist = [](const Color& p, const Color& q) {
    const double dr = double{p.r} - q.r;
    const double dg = double{p.g} - q.g;
    const double db = double{p.b} - q.b;
    return std::sqrt(dr * dr + dg * dg + db * db);
  };
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::uint32_t y = 0; y < img.height(); ++y) {
    for (std::uint32_t x = 0; x < img.width(); ++x) {
      if (x + 1 < img.width()) {
        sum += dist(img.at(x, y), img.at(x + 1, y));
        ++pairs;
      }
      if (y + 1 < img.height()) {
        sum += dist(img.at(x, y), img.at(x, y + 1));
        ++pairs;
      }
    }
  }
  return pairs == 0 ? 0.0 : sum / static_cast<double>(pairs);
}

}  // namespace cmlp
