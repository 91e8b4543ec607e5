// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mlp.hpp"

namespace cmlp {

// "ACM1" parameter files: 4-byte magic, N as u32 little-endian, then
// N^2 + 8N + 3 little-endian IEEE-754 floats in MlpParams flat order.
inline constexpr std::string_view kParamMagic = "ACM1";

constexpr std::size_t param_file_size(std::uint32_t n_hidden) {
  return 8 + 4 * MlpTensor::count_for(n_hidden);
}

// Values are narrowed to float.
std::string save_params(const MlpParams& params);
// Throws kFormat on bad magic, N == 0, a length mismatch or non-finite values.
MlpParams load_params(std::string_view bytes);

void save_params_file(const std::filesystem::path& path, const MlpParams& params);
MlpParams load_params_file(const std::filesystem::path& path);

}  // namespace cmlp
