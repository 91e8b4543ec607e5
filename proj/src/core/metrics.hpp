// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "image.hpp"

namespace cmlp {

// 10*log10(1/MSE) over all channel values, peak 1.0. Identical images give
// +infinity. Throws kInvalidArgument when dimensions differ.
double psnr(const Image& a, const Image& b);

// 255 * mean |a - b| over all channel values.
double avg_l1_255(const Image& a, const Image& b);

// Mean L2 norm of the RGB difference over all horizontally and vertically
// adjacent pixel pairs; 0 for a 1x1 image.
double tv_image(const Image& img);

}  // namespace cmlp
