// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "pipeline.hpp"

#include <algorithm>
#include <cstdio>

#include "parallel.hpp"
#include "param_io.hpp"
#include "png_io.hpp"

namespace cmlp {

Image run_direct(const Image& img, const MlpParams& params, unsigned threads) {
  return apply_mlp_to_image(img, params, threads);
}

Image run_fast(const Image& img, const MlpParams& params, std::uint32_t size,
               unsigned threads) {
  const Lut3d lut = compile_lut(params, size, threads);
  return apply_lut_to_image(img, lut, threads);
}

FrameSequence::FrameSequence(std::vector<Frame> frames) : frames_(std::move(frames)) {
  if (frames_.empty()) throw Error(ErrorCode::kInvalidArgument, "frame sequence is empty");
}

FrameSequence FrameSequence::from_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::kInvalidArgument, "not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> pngs;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      pngs.push_back(entry.path());
    }
  }
  if (pngs.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no *.png frames in " + dir.string());
  }
  std::sort(pngs.begin(), pngs.end(), [](const auto& a, const auto& b) {
    return a.filename().string() < b.filename().string();
  });

  std::vector<Frame> frames;
  frames.reserve(pngs.size());
  for (std::size_t i = 0; i < pngs.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%06zu.acm1", i);
    Frame frame{pngs[i], std::nullopt};
    if (std::filesystem::is_regular_file(dir / name, ec)) frame.params = dir / name;
    frames.push_back(std::move(frame));
  }
  return FrameSequence(std::move(frames));
}

std::vector<std::filesystem::path> run_sequence(const FrameSequence& seq,
                                                const MlpParams& params, std::uint32_t size,
                                                const std::filesystem::path& out_dir,
                                                unsigned threads) {
  const auto& frames = seq.frames();
  const ImageSize first = probe_png(frames.front().path);
  for (const Frame& f : frames) {
    const ImageSize s = probe_png(f.path);
    if (s != first) {
      throw Error(ErrorCode::kInvalidArgument,
                  "frame " + f.path.string() + " is " + std::to_string(s.width) + "x" +
                      std::to_string(s.height) + ", expected " + std::to_string(first.width) +
                      "x" + std::to_string(first.height));
    }
  }

  std::filesystem::create_directories(out_dir);
  const Lut3d shared = compile_lut(params, size, threads);
  std::vector<std::filesystem::path> outputs(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    outputs[i] = out_dir / frames[i].path.filename();
  }

  parallel_for(frames.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Frame& f = frames[i];
      const Image img = load_png(f.path);
      if (f.params) {
        const Lut3d own = compile_lut(load_params_file(*f.params), size, 1);
        save_png(apply_lut_to_image(img, own, 1), outputs[i]);
      } else {
        save_png(apply_lut_to_image(img, shared, 1), outputs[i]);
      }
    }
  });
  return outputs;
}

}  // namespace cmlp
