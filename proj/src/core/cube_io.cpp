// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "cube_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <vector>

#include "fs_util.hpp"

namespace cmlp {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

bool is_keyword(std::string_view token) {
  const unsigned char c = static_cast<unsigned char>(token.front());
  return std::isupper(c) || c == '_';
}

double parse_number(std::string_view token, std::size_t line) {
  double value = 0.0;
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, "non-numeric token '" + std::string(token) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(line, "non-finite value '" + std::string(token) + "'");
  }
  return value;
}

void expect_domain(const std::vector<std::string_view>& tokens, double want,
                   std::size_t line) {
  if (tokens.size() != 4) {
    throw ParseError(line, std::string(tokens[0]) + " needs 3 values");
  }
  for (std::size_t i = 1; i < 4; ++i) {
    if (parse_number(tokens[i], line) != want) {
      throw ParseError(line, std::string(tokens[0]) +
                                 " other than the unit cube is not supported");
    }
  }
}

std::string format_value(float v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", static_cast<double>(clamp_unit(v)));
  std::string s(buf);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

Lut3d read_cube(std::istream& in) {
  std::optional<std::uint32_t> size;
  std::size_t expected = 0;
  std::vector<Color> cells;
  std::string raw;
  std::size_t line = 0;

  while (std::getline(in, raw)) {
    ++line;
    const auto tokens = split_ws(raw);
    if (tokens.empty() || tokens[0].front() == '#') continue;

    if (is_keyword(tokens[0])) {
      const std::string_view key = tokens[0];
      if (!cells.empty()) {
        throw ParseError(line, "keyword '" + std::string(key) + "' after data lines");
      }
      if (key == "TITLE") continue;
      if (key == "LUT_3D_SIZE") {
        if (size) throw ParseError(line, "duplicate LUT_3D_SIZE");
        if (tokens.size() != 2) throw ParseError(line, "LUT_3D_SIZE needs one value");
        std::uint32_t m = 0;
        const char* end = tokens[1].data() + tokens[1].size();
        const auto [ptr, ec] = std::from_chars(tokens[1].data(), end, m);
        if (ec != std::errc() || ptr != end) {
          throw ParseError(line, "LUT_3D_SIZE is not an integer: '" +
                                     std::string(tokens[1]) + "'");
        }
        if (m < 2) throw ParseError(line, "LUT_3D_SIZE must be >= 2, got " + std::to_string(m));
        if (m > kMaxCubeSize) {
          throw ParseError(line, "LUT_3D_SIZE " + std::to_string(m) + " exceeds maximum " +
                                     std::to_string(kMaxCubeSize));
        }
        size = m;
        expected = std::size_t{m} * m * m;
        cells.reserve(expected);
        continue;
      }
      if (key == "DOMAIN_MIN") {
        expect_domain(tokens, 0.0, line);
        continue;
      }
      if (key == "DOMAIN_MAX") {
        expect_domain(tokens, 1.0, line);
        continue;
      }
      if (key == "LUT_1D_SIZE") throw ParseError(line, "1D LUTs are not supported");
      throw ParseError(line, "unknown keyword '" + std::string(key) + "'");
    }

    if (!size) throw ParseError(line, "missing LUT_3D_SIZE before first data line");
    if (tokens.size() != 3) {
      throw ParseError(line, "data line needs 3 values, got " + std::to_string(tokens.size()));
    }
    if (cells.size() == expected) {
      throw ParseError(line, "expected " + std::to_string(expected) +
                                 " data lines, found more");
    }
    cells.push_back({static_cast<float>(parse_number(tokens[0], line)),
                     static_cast<float>(parse_number(tokens[1], line)),
                     static_cast<float>(parse_number(tokens[2], line))});
  }

  if (!size) throw ParseError(line, "missing LUT_3D_SIZE");
  if (cells.size() != expected) {
    throw ParseError(line, "expected " + std::to_string(expected) + " data lines, found " +
                               std::to_string(cells.size()));
  }
  return Lut3d(*size, std::move(cells));
}

Lut3d read_cube(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_cube(in);
}

Lut3d read_cube_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  try {
    return read_cube(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path.string());
  }
}

void write_cube(std::ostream& out, const Lut3d& lut, std::string_view title) {
  if (!title.empty()) out << "TITLE \"" << title << "\"\n";
  out << "LUT_3D_SIZE " << lut.size() << "\n";
  out << "DOMAIN_MIN 0 0 0\n";
  out << "DOMAIN_MAX 1 1 1\n";
  for (const Color& c : lut.cells()) {
    out << format_value(c.r) << ' ' << format_value(c.g) << ' ' << format_value(c.b) << '\n';
  }
}

std::string write_cube(const Lut3d& lut, std::string_view title) {
  std::ostringstream out;
  write_cube(out, lut, title);
  return out.str();
}

void write_cube_file(const std::filesystem::path& path, const Lut3d& lut,
                     std::string_view title) {
  write_file_atomically(path, write_cube(lut, title));
}

}  // namespace cmlp
