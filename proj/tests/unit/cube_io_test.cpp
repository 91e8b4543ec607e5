// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cube_io.hpp"
#include "error.hpp"
#include "test_support.hpp"

namespace cmlp {
namespace {

using cmlp_test::Rng;
using cmlp_test::TempDir;

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && (std::isdigit(static_cast<unsigned char>(line[0])) || line[0] == '-')) {
      out.push_back(line);
    }
  }
  return out;
}

std::string identity_body(std::uint32_t m) {
  std::string body;
  for (std::uint32_t b = 0; b < m; ++b)
    for (std::uint32_t g = 0; g < m; ++g)
      for (std::uint32_t r = 0; r < m; ++r)
        body += std::to_string(double(r) / (m - 1)) + " " + std::to_string(double(g) / (m - 1)) +
                " " + std::to_string(double(b) / (m - 1)) + "\n";
  return body;
}

TEST(WriteCubeTest, IdentityTwoIsRedFastest) {
  const std::string text = write_cube(identity_lut(2));
  const auto lines = data_lines(text);
  ASSERT_EQ(lines.size(), 8u);
  EXPECT_EQ(lines[0], "0 0 0");
  EXPECT_EQ(lines[1], "1 0 0");
  EXPECT_EQ(lines[2], "0 1 0");
  EXPECT_EQ(lines[4], "0 0 1");
  EXPECT_EQ(lines[7], "1 1 1");
}

TEST(WriteCubeTest, HeaderAndSixDecimals) {
  const Lut3d lut(2, std::vector<Color>(8, Color{0.1234567f, 0.5f, 1.0f / 3.0f}));
  const std::string text = write_cube(lut, "grade");
  EXPECT_EQ(text.rfind("TITLE \"grade\"\nLUT_3D_SIZE 2\nDOMAIN_MIN 0 0 0\nDOMAIN_MAX 1 1 1\n", 0),
            0u);
  EXPECT_EQ(data_lines(text)[0], "0.123457 0.5 0.333333");
}

TEST(WriteCubeTest, ClampsOutOfRangeCells) {
  const Lut3d lut(2, std::vector<Color>(8, Color{-0.25f, 1.75f, 0.5f}));
  EXPECT_EQ(data_lines(write_cube(lut))[0], "0 1 0.5");
}

TEST(CubeRoundTripTest, RandomLutsWithinOneMillionth) {
  Rng rng(21);
  for (std::uint32_t m : {2u, 3u, 17u, 33u}) {
    std::vector<Color> cells(std::size_t{m} * m * m);
    for (Color& c : cells) c = {rng.uniform(), rng.uniform(), rng.uniform()};
    const Lut3d lut(m, cells);
    const Lut3d back = read_cube(write_cube(lut, "rt"));
    ASSERT_EQ(back.size(), m);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      ASSERT_NEAR(back.cells()[i].r, cells[i].r, 1e-6);
      ASSERT_NEAR(back.cells()[i].g, cells[i].g, 1e-6);
      ASSERT_NEAR(back.cells()[i].b, cells[i].b, 1e-6);
    }
    // A second pass is a fixed point: written text is reproduced exactly.
    EXPECT_EQ(write_cube(back, "rt"), write_cube(read_cube(write_cube(back, "rt")), "rt"));
  }
}

TEST(ReadCubeTest, DataOrderFillsRedFastest) {
  std::string text = "LUT_3D_SIZE 2\n";
  for (int i = 0; i < 8; ++i) text += std::to_string(i / 10.0) + " 0 0\n";
  const Lut3d lut = read_cube(text);
  EXPECT_FLOAT_EQ(lut.at(1, 0, 0).r, 0.1f);
  EXPECT_FLOAT_EQ(lut.at(0, 1, 0).r, 0.2f);
  EXPECT_FLOAT_EQ(lut.at(0, 0, 1).r, 0.4f);
  EXPECT_FLOAT_EQ(lut.at(1, 1, 1).r, 0.7f);
}

TEST(ReadCubeTest, AcceptsCommentsTitleDomainAndCrlf) {
  const std::string text =
      "# produced by hand\r\n"
      "TITLE \"Warm look\"\r\n"
      "\r\n"
      "DOMAIN_MIN 0 0 0\r\n"
      "DOMAIN_MAX 1.0 1.0 1.0\r\n"
      "LUT_3D_SIZE 2\r\n"
      "# data follows\r\n" +
      identity_body(2) + "# trailing comment\n\n";
  EXPECT_EQ(read_cube(text), identity_lut(2));
}

TEST(ReadCubeTest, KeepsValuesOutsideUnitRange) {
  std::string text = "LUT_3D_SIZE 2\n-0.5 1.5 2e-1\n";
  for (int i = 0; i < 7; ++i) text += "0 0 0\n";
  const Lut3d lut = read_cube(text);
  EXPECT_EQ(lut.at(0, 0, 0), (Color{-0.5f, 1.5f, 0.2f}));
}

TEST(ReadCubeTest, BundledReferenceLutsLoad) {
  for (const char* name : {"teal_orange", "faded_film", "cross_process"}) {
    const Lut3d lut = read_cube_file(cmlp_test::data_path(std::string("luts/") + name + ".cube"));
    EXPECT_EQ(lut.size(), 33u) << name;
    EXPECT_GT(tv_lut(lut), 0.0) << name;
  }
}

TEST(CubeFileTest, WriteThenReadFile) {
  TempDir dir("cube");
  Rng rng(22);
  std::vector<Color> cells(27);
  for (Color& c : cells) c = {rng.uniform(), rng.uniform(), rng.uniform()};
  const Lut3d lut(3, cells);
  write_cube_file(dir / "a.cube", lut, "x");
  EXPECT_EQ(read_cube_file(dir / "a.cube"), read_cube(write_cube(lut, "x")));
  EXPECT_EQ(std::distance(std::filesystem::directory_iterator(dir.path()),
                          std::filesystem::directory_iterator()),
            1);
}

TEST(CubeFileTest, MissingFileIsIoErrorWithPath) {
  try {
    read_cube_file("/nonexistent/dir/x.cube");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/x.cube"), std::string::npos);
  }
}

TEST(CubeFileTest, ParseErrorsNamePathAndLine) {
  TempDir dir("cube");
  cmlp_test::write_bytes(dir / "bad.cube", "LUT_3D_SIZE 2\n0 0 0\n0 zero 0\n");
  try {
    read_cube_file(dir / "bad.cube");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    const std::string what = e.what();
    EXPECT_NE(what.find("bad.cube: line 3: non-numeric token 'zero'"), std::string::npos) << what;
  }
}

struct MalformedCase {
  const char* name;
  std::string text;
  std::size_t line;
  const char* message;
};

std::string seven_lines() {
  std::string s;
  for (int i = 0; i < 7; ++i) s += "0 0 0\n";
  return s;
}

class MalformedCubeTest : public ::testing::TestWithParam<MalformedCase> {};

TEST_P(MalformedCubeTest, ReportsLineAndReason) {
  const MalformedCase& c = GetParam();
  try {
    read_cube(c.text);
    FAIL() << "accepted malformed input";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_EQ(e.line(), c.line) << e.what();
    EXPECT_EQ(e.detail(), c.message);
  }
}

std::string size33_short() {
  std::string s = "LUT_3D_SIZE 33\n";
  for (int i = 0; i < 35936; ++i) s += "0 0 0\n";
  return s;
}

INSTANTIATE_TEST_SUITE_P(
    Corpus, MalformedCubeTest,
    ::testing::Values(
        MalformedCase{"missing_size", "TITLE \"x\"\n# no size\n", 2, "missing LUT_3D_SIZE"},
        MalformedCase{"data_before_size", "0 0 0\nLUT_3D_SIZE 2\n", 1,
                      "missing LUT_3D_SIZE before first data line"},
        MalformedCase{"short_by_one", size33_short(), 35937,
                      "expected 35937 data lines, found 35936"},
        MalformedCase{"too_many_lines", "LUT_3D_SIZE 2\n" + seven_lines() + "0 0 0\n1 1 1\n", 10,
                      "expected 8 data lines, found more"},
        MalformedCase{"non_numeric", "LUT_3D_SIZE 2\n0 0 0\n0.5 abc 1\n", 3,
                      "non-numeric token 'abc'"},
        MalformedCase{"size_one", "LUT_3D_SIZE 1\n0 0 0\n", 1, "LUT_3D_SIZE must be >= 2, got 1"},
        MalformedCase{"size_not_integer", "LUT_3D_SIZE 2.5\n", 1,
                      "LUT_3D_SIZE is not an integer: '2.5'"},
        MalformedCase{"size_too_large", "LUT_3D_SIZE 257\n", 1,
                      "LUT_3D_SIZE 257 exceeds maximum 256"},
        MalformedCase{"duplicate_size", "LUT_3D_SIZE 2\nLUT_3D_SIZE 2\n", 2,
                      "duplicate LUT_3D_SIZE"},
        MalformedCase{"two_values", "LUT_3D_SIZE 2\n0 0\n", 2, "data line needs 3 values, got 2"},
        MalformedCase{"four_values", "LUT_3D_SIZE 2\n0 0 0 0\n", 2,
                      "data line needs 3 values, got 4"},
        MalformedCase{"non_finite", "LUT_3D_SIZE 2\n0 inf 0\n", 2, "non-finite value 'inf'"},
        MalformedCase{"overflow", "LUT_3D_SIZE 2\n0 1e999 0\n", 2, "non-numeric token '1e999'"},
        MalformedCase{"domain_not_unit", "DOMAIN_MAX 1 1 2\n", 1,
                      "DOMAIN_MAX other than the unit cube is not supported"},
        MalformedCase{"domain_arity", "DOMAIN_MIN 0 0\n", 1, "DOMAIN_MIN needs 3 values"},
        MalformedCase{"one_d_lut", "LUT_1D_SIZE 1024\n", 1, "1D LUTs are not supported"},
        MalformedCase{"unknown_keyword", "LUT_3D_SIZE 2\nGAMMA 2.2\n", 2,
                      "unknown keyword 'GAMMA'"},
        MalformedCase{"keyword_after_data", "LUT_3D_SIZE 2\n0 0 0\nTITLE \"late\"\n", 3,
                      "keyword 'TITLE' after data lines"},
        MalformedCase{"empty", "", 0, "missing LUT_3D_SIZE"}),
    [](const ::testing::TestParamInfo<MalformedCase>& info) { return info.param.name; });

}  // namespace
}  // namespace cmlp
