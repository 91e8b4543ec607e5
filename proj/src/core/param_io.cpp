// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "param_io.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>

#include "fs_util.hpp"

namespace cmlp {
namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<char>((v >> shift) & 0xff));
  }
}

std::uint32_t get_u32(std::string_view bytes, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= std::uint32_t{static_cast<unsigned char>(bytes[offset + i])} << (8 * i);
  }
  return v;
}

}  // namespace

std::string save_params(const MlpParams& params) {
  std::string out;
  out.reserve(param_file_size(params.n_hidden()));
  out.append(kParamMagic);
  put_u32(out, params.n_hidden());
  for (double v : params.flat()) put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  return out;
}

MlpParams load_params(std::string_view bytes) {
  if (bytes.size() < 8) {
    throw Error(ErrorCode::kFormat, "parameter stream too short: expected at least 8 bytes, got " +
                                        std::to_string(bytes.size()));
  }
  if (bytes.substr(0, 4) != kParamMagic) {
    throw Error(ErrorCode::kFormat, "bad magic: expected \"ACM1\"");
  }
  const std::uint32_t n = get_u32(bytes, 4);
  if (n == 0) throw Error(ErrorCode::kFormat, "hidden unit count N is 0");
  if (n > kMaxHiddenUnits) {
    throw Error(ErrorCode::kFormat, "hidden unit count N=" + std::to_string(n) +
                                        " exceeds maximum " + std::to_string(kMaxHiddenUnits));
  }
  const std::size_t expected = param_file_size(n);
  if (bytes.size() != expected) {
    throw Error(ErrorCode::kFormat, "parameter stream length mismatch for N=" + std::to_string(n) +
                                        ": expected " + std::to_string(expected) +
                                        " bytes, got " + std::to_string(bytes.size()));
  }
  std::vector<double> values(MlpTensor::count_for(n));
  for (std::size_t i = 0; i < values.size(); ++i) {
    const float f = std::bit_cast<float>(get_u32(bytes, 8 + 4 * i));
    if (!std::isfinite(f)) {
      throw Error(ErrorCode::kFormat, "parameter " + std::to_string(i) + " is not finite");
    }
    values[i] = f;
  }
  return MlpParams(n, std::move(values));
}

void save_params_file(const std::filesystem::path& path, const MlpParams& params) {
  write_file_atomically(path, save_params(params));
}

MlpParams load_params_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  try {
    return load_params(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace cmlp
