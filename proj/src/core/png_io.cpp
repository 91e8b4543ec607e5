// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "png_io.hpp"

#include <png.h>

#include <string>
#include <vector>

#include "fs_util.hpp"

namespace cmlp {
namespace {

// RAII over libpng's simplified read state.
class PngReader {
 public:
  explicit PngReader(const std::filesystem::path& path) : path_(path) {
    image_.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image_, path.c_str())) {
      throw Error(ErrorCode::kIo, "cannot read PNG " + path.string() + ": " + image_.message);
    }
    if (image_.format & PNG_FORMAT_FLAG_LINEAR) {
      throw Error(ErrorCode::kUnsupported,
                  "unsupported PNG " + path.string() + ": 16-bit channels");
    }
  }
  ~PngReader() { png_image_free(&image_); }
  PngReader(const PngReader&) = delete;
  PngReader& operator=(const PngReader&) = delete;

  png_image& image() { return image_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  png_image image_{};
  std::filesystem::path path_;
};

}  // namespace

ImageSize probe_png(const std::filesystem::path& path) {
  PngReader reader(path);
  return {reader.image().width, reader.image().height};
}

Image load_png(const std::filesystem::path& path) {
  PngReader reader(path);
  png_image& image = reader.image();
  image.format = PNG_FORMAT_RGBA;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    throw Error(ErrorCode::kIo, "cannot decode PNG " + path.string() + ": " + image.message);
  }
  Image out(image.width, image.height);
  auto pixels = out.pixels();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = {from_8bit(buffer[4 * i]), from_8bit(buffer[4 * i + 1]),
                 from_8bit(buffer[4 * i + 2])};
  }
  return out;
}

void save_png(const Image& img, const std::filesystem::path& path) {
  std::vector<std::uint8_t> buffer(img.pixel_count() * 3);
  const auto pixels = img.pixels();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    buffer[3 * i] = to_8bit(pixels[i].r);
    buffer[3 * i + 1] = to_8bit(pixels[i].g);
    buffer[3 * i + 2] = to_8bit(pixels[i].b);
  }
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = img.width();
  image.height = img.height();
  image.format = PNG_FORMAT_RGB;

  const auto tmp = temp_sibling(path);
  if (!png_image_write_to_file(&image, tmp.c_str(), 0, buffer.data(), 0, nullptr)) {
    const std::string why = image.message;
    png_image_free(&image);
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot write PNG " + path.string() + ": " + why);
  }
  commit_temp(tmp, path);
}

}  // namespace cmlp
