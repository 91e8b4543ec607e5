// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <png.h>

#include <cstdint>
#include <vector>

#include "error.hpp"
#include "png_io.hpp"
#include "test_support.hpp"

namespace cmlp {
namespace {

using cmlp_test::TempDir;

bool write_raw(const std::filesystem::path& path, std::uint32_t w, std::uint32_t h,
               std::uint32_t format, const void* data) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = w;
  image.height = h;
  image.format = format;
  return png_image_write_to_file(&image, path.c_str(), 0, data, 0, nullptr) != 0;
}

TEST(EightBitTest, ConversionRoundsAndClamps) {
  EXPECT_EQ(to_8bit(0.0f), 0);
  EXPECT_EQ(to_8bit(1.0f), 255);
  EXPECT_EQ(to_8bit(-0.3f), 0);
  EXPECT_EQ(to_8bit(7.0f), 255);
  EXPECT_EQ(to_8bit(0.5f), 128);
  EXPECT_EQ(to_8bit(NAN), 0);
  for (int v = 0; v < 256; ++v) {
    EXPECT_EQ(to_8bit(from_8bit(static_cast<std::uint8_t>(v))), v);
  }
  EXPECT_EQ(from_8bit(255), 1.0f);
}

TEST(PngTest, RoundTripOfQuantizedImage) {
  TempDir dir("png");
  Image img(37, 11);
  for (std::uint32_t y = 0; y < 11; ++y)
    for (std::uint32_t x = 0; x < 37; ++x)
      img.at(x, y) = {from_8bit(static_cast<std::uint8_t>(x * 7)),
                      from_8bit(static_cast<std::uint8_t>(y * 23)),
                      from_8bit(static_cast<std::uint8_t>((x * y) & 0xff))};
  save_png(img, dir / "a.png");
  EXPECT_EQ(probe_png(dir / "a.png"), (ImageSize{37, 11}));
  EXPECT_EQ(load_png(dir / "a.png"), img);
}

TEST(PngTest, SavingQuantizesToNearestLevel) {
  TempDir dir("png");
  const Image img(2, 2, Color{0.3f, 1.4f, -0.2f});
  save_png(img, dir / "q.png");
  const Color c = load_png(dir / "q.png").at(1, 1);
  EXPECT_EQ(c, (Color{from_8bit(77), 1.0f, 0.0f}));
}

TEST(PngTest, RgbaInputDropsAlpha) {
  TempDir dir("png");
  const std::vector<std::uint8_t> rgba = {10, 20, 30, 128, 200, 100, 50, 0};
  ASSERT_TRUE(write_raw(dir / "rgba.png", 2, 1, PNG_FORMAT_RGBA, rgba.data()));
  const Image img = load_png(dir / "rgba.png");
  EXPECT_EQ(img.at(0, 0), (Color{from_8bit(10), from_8bit(20), from_8bit(30)}));
  EXPECT_EQ(img.at(1, 0), (Color{from_8bit(200), from_8bit(100), from_8bit(50)}));
}

TEST(PngTest, SixteenBitIsUnsupported) {
  TempDir dir("png");
  const std::vector<std::uint16_t> rgb(3 * 4, 30000);
  ASSERT_TRUE(write_raw(dir / "deep.png", 2, 2, PNG_FORMAT_LINEAR_RGB, rgb.data()));
  try {
    load_png(dir / "deep.png");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupported);
    EXPECT_NE(std::string(e.what()).find("16-bit"), std::string::npos);
  }
}

TEST(PngTest, MissingOrCorruptFileIsIoError) {
  TempDir dir("png");
  try {
    load_png(dir / "none.png");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
    EXPECT_NE(std::string(e.what()).find("none.png"), std::string::npos);
  }
  cmlp_test::write_bytes(dir / "bad.png", "definitely not a png");
  EXPECT_THROW(load_png(dir / "bad.png"), Error);
}

TEST(PngTest, UnwritableDestinationIsIoError) {
  try {
    save_png(Image(1, 1), "/nonexistent/dir/out.png");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(PngTest, BundledImageLoads) {
  const Image img = load_png(cmlp_test::data_path("images/landscape.png"));
  EXPECT_EQ(img.width(), 480u);
  EXPECT_EQ(img.height(), 320u);
}

}  // namespace
}  // namespace cmlp
