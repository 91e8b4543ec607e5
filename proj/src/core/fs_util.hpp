// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string_view>

namespace cmlp {

// Writes to a sibling temp file and renames it over `path`, so readers never
// observe a partially written file.
void write_file_atomically(const std::filesystem::path& path, std::string_view bytes);

// Temp-file name next to `path`, unique per process and thread.
std::filesystem::path temp_sibling(const std::filesystem::path& path);

// Renames `tmp` over `path`; removes `tmp` and throws kIo on failure.
void commit_temp(const std::filesystem::path& tmp, const std::filesystem::path& path);

}  // namespace cmlp
