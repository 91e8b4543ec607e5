// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "lut.hpp"

namespace cmlp {

// Largest LUT_3D_SIZE accepted by the reader.
inline constexpr std::uint32_t kMaxCubeSize = 256;

// Parses Adobe/Resolve style .cube text. Accepts TITLE, LUT_3D_SIZE,
// DOMAIN_MIN 0 0 0, DOMAIN_MAX 1 1 1 and '#' comments; every failure is a
// ParseError carrying the offending line number.
Lut3d read_cube(std::istream& in);
Lut3d read_cube(std::string_view text);
Lut3d read_cube_file(const std::filesystem::path& path);

// Writes cells clamped to [0,1] with at most 6 decimals (trailing zeros
// dropped), red index fastest.
void write_cube(std::ostream& out, const Lut3d& lut, std::string_view title = {});
std::string write_cube(const Lut3d& lut, std::string_view title = {});
void write_cube_file(const std::filesystem::path& path, const Lut3d& lut,
                     std::string_view title = {});

}  // namespace cmlp
