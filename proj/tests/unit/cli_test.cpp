// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "colormlp/colormlp.h"
#include "test_support.hpp"

namespace {

using cmlp_test::TempDir;

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

RunResult run(const std::string& args) {
  TempDir tmp("cli");
  const std::string err_path = (tmp / "stderr").string();
  const std::string cmd = std::string(CMLP_CLI_PATH) + " " + args + " 2>" + err_path;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}, {}};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, cmlp_test::read_bytes(err_path)};
}

std::string data(const std::string& rel) { return cmlp_test::data_path(rel).string(); }

std::string field(const std::string& out, const std::string& key) {
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
  }
  return {};
}

void save_random_params(const std::string& path, uint32_t n, uint64_t seed) {
  cmlp_test::Rng rng(seed);
  std::vector<double> v(cmlp_params_count_for(n));
  for (double& x : v) x = rng.uniform_d(-0.5, 0.5);
  cmlp_params* p = nullptr;
  ASSERT_EQ(cmlp_params_create(n, v.data(), v.size(), &p), CMLP_OK);
  ASSERT_EQ(cmlp_params_save(p, path.c_str()), CMLP_OK);
  cmlp_params_destroy(p);
}

std::vector<float> png_pixels(const std::string& path) {
  cmlp_image* img = nullptr;
  EXPECT_EQ(cmlp_image_load_png(path.c_str(), &img), CMLP_OK) << cmlp_last_error();
  if (!img) return {};
  std::vector<float> px(3 * cmlp_image_width(img) * cmlp_image_height(img));
  EXPECT_EQ(cmlp_image_pixels(img, px.data(), px.size()), CMLP_OK);
  cmlp_image_destroy(img);
  return px;
}

TEST(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(run("").exit_code, 1);
  EXPECT_EQ(run("frobnicate").exit_code, 1);
  EXPECT_EQ(run("fit --out x.acm1").exit_code, 1);
  EXPECT_EQ(run("fit --lut /nonexistent.cube --out x.acm1").exit_code, 1);
  EXPECT_EQ(run("bench --reps 2").exit_code, 1);
  EXPECT_EQ(run("apply --in a.png --out b.png").exit_code, 1);
  const RunResult r = run("psnr only_one.png");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(CliTest, HelpExitsZero) {
  const RunResult r = run("--help");
  EXPECT_EQ(r.exit_code, 0);
  for (const char* sub : {"fit", "sweep", "compile", "apply", "psnr", "tv", "bench"}) {
    EXPECT_NE(r.out.find(sub), std::string::npos) << sub;
  }
}

TEST(CliTest, RuntimeFailuresExitTwo) {
  TempDir dir("cli");
  cmlp_test::write_bytes(dir / "bad.acm1", "nope");
  const RunResult r =
      run("compile --params " + (dir / "bad.acm1").string() + " --out " + (dir / "x.cube").string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("bad.acm1"), std::string::npos) << r.err;
  cmlp_test::write_bytes(dir / "bad.cube", "LUT_3D_SIZE 2\n0 0\n");
  const RunResult t = run("tv --lut " + (dir / "bad.cube").string());
  EXPECT_EQ(t.exit_code, 2);
  EXPECT_NE(t.err.find("line 2"), std::string::npos) << t.err;
}

TEST(CliTest, CompileWritesReadableCube) {
  TempDir dir("cli");
  const std::string params = (dir / "p.acm1").string();
  save_random_params(params, 6, 1);
  const std::string cube = (dir / "p.cube").string();
  const RunResult r = run("compile --params " + params + " --size 9 --out " + cube);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  cmlp_lut* lut = nullptr;
  ASSERT_EQ(cmlp_lut_read_cube(cube.c_str(), &lut), CMLP_OK) << cmlp_last_error();
  EXPECT_EQ(cmlp_lut_size(lut), 9u);
  cmlp_lut_destroy(lut);
}

TEST(CliTest, ApplyMatchesLibraryPipelines) {
  TempDir dir("cli");
  const std::string params = (dir / "p.acm1").string();
  save_random_params(params, 6, 2);
  const std::string in = data("images/landscape.png");
  const std::string fast = (dir / "fast.png").string();
  const std::string direct = (dir / "direct.png").string();
  ASSERT_EQ(run("apply --params " + params + " --in " + in + " --out " + fast).exit_code, 0);
  ASSERT_EQ(run("apply --params " + params + " --direct --in " + in + " --out " + direct).exit_code,
            0);

  cmlp_params* p = nullptr;
  cmlp_image* img = nullptr;
  ASSERT_EQ(cmlp_params_load(params.c_str(), &p), CMLP_OK);
  ASSERT_EQ(cmlp_image_load_png(in.c_str(), &img), CMLP_OK);
  cmlp_image *f = nullptr, *d = nullptr;
  ASSERT_EQ(cmlp_run_fast(img, p, 33, 1, &f), CMLP_OK);
  ASSERT_EQ(cmlp_run_direct(img, p, 1, &d), CMLP_OK);
  const std::string lib_fast = (dir / "lib_fast.png").string();
  const std::string lib_direct = (dir / "lib_direct.png").string();
  ASSERT_EQ(cmlp_image_save_png(f, lib_fast.c_str()), CMLP_OK);
  ASSERT_EQ(cmlp_image_save_png(d, lib_direct.c_str()), CMLP_OK);
  EXPECT_EQ(png_pixels(fast), png_pixels(lib_fast));
  EXPECT_EQ(png_pixels(direct), png_pixels(lib_direct));
  cmlp_image_destroy(f);
  cmlp_image_destroy(d);
  cmlp_image_destroy(img);
  cmlp_params_destroy(p);

  const RunResult same = run("psnr " + fast + " " + lib_fast);
  EXPECT_EQ(same.exit_code, 0);
  EXPECT_EQ(same.out, "inf\n");
  const RunResult l1 = run("psnr --l1 " + fast + " " + lib_fast);
  EXPECT_EQ(l1.out, "0.0000\n");
}

TEST(CliTest, ApplyWithLutAndTv) {
  TempDir dir("cli");
  const std::string out = (dir / "graded.png").string();
  const RunResult r = run("apply --lut " + data("luts/teal_orange.cube") + " --in " +
                          data("images/landscape.png") + " --out " + out);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(png_pixels(out).size(), 3u * 480 * 320);
  cmlp_lut* id = nullptr;
  ASSERT_EQ(cmlp_lut_identity(33, &id), CMLP_OK);
  const std::string id_path = (dir / "id.cube").string();
  ASSERT_EQ(cmlp_lut_write_cube(id, id_path.c_str(), nullptr), CMLP_OK);
  cmlp_lut_destroy(id);
  EXPECT_EQ(run("tv --lut " + id_path).out, "3267.0000\n");
  const RunResult tv_img = run("tv --in " + out);
  EXPECT_EQ(tv_img.exit_code, 0);
  EXPECT_GT(std::stod(tv_img.out), 0.0);
}

TEST(CliTest, ApplyDirectoryRunsSequence) {
  TempDir in("cli-in"), out("cli-out");
  cmlp_image* img = nullptr;
  ASSERT_EQ(cmlp_image_load_png(data("images/landscape.png").c_str(), &img), CMLP_OK);
  for (const char* name : {"f0.png", "f1.png"}) {
    ASSERT_EQ(cmlp_image_save_png(img, (in / name).c_str()), CMLP_OK);
  }
  cmlp_image_destroy(img);
  const std::string params = (in / "p.bin").string();
  save_random_params(params, 4, 3);
  const RunResult r = run("apply --params " + params + " --in " + in.path().string() + " --out " +
                          out.path().string());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(png_pixels((out / "f0.png").string()), png_pixels((out / "f1.png").string()));
  EXPECT_EQ(run("apply --params " + params + " --direct --in " + in.path().string() +
                " --out " + out.path().string())
                .exit_code,
            1);
}

TEST(CliTest, FitReportsErrorThatMatchesSavedParams) {
  TempDir dir("cli");
  const std::string params = (dir / "fit.acm1").string();
  const std::string report = (dir / "trace.csv").string();
  const std::string lut = data("luts/teal_orange.cube");
  const RunResult r = run("fit --lut " + lut + " --n 5 --steps 200 --batch 256 --size 9 --seed 3 " +
                          "--quiet --out " + params + " --report " + report);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(field(r.out, "n_hidden"), "5");
  EXPECT_EQ(field(r.out, "steps"), "200");
  EXPECT_EQ(field(r.out, "seed"), "3");
  const std::string reported = field(r.out, "final_error_255");
  ASSERT_FALSE(reported.empty());
  EXPECT_TRUE(r.err.empty()) << r.err;

  cmlp_params* p = nullptr;
  cmlp_lut* l = nullptr;
  ASSERT_EQ(cmlp_params_load(params.c_str(), &p), CMLP_OK);
  ASSERT_EQ(cmlp_lut_read_cube(lut.c_str(), &l), CMLP_OK);
  double err = 0;
  ASSERT_EQ(cmlp_lattice_error_255(p, l, 9, &err), CMLP_OK);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", err);
  EXPECT_EQ(reported, buf);
  cmlp_params_destroy(p);
  cmlp_lut_destroy(l);

  const std::string csv = cmlp_test::read_bytes(report);
  EXPECT_EQ(csv.rfind("step,loss\n1,", 0), 0u) << csv.substr(0, 40);
  EXPECT_NE(csv.find("\n200,"), std::string::npos);
}

TEST(CliTest, SweepPrintsCsv) {
  const RunResult r = run("sweep --lut " + data("luts/teal_orange.cube") +
                          " --n 2,4 --steps 50 --batch 64 --size 5");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("N,error_255\n2,", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("\n4,"), std::string::npos);
}

TEST(CliTest, BenchPrintsCsv) {
  const RunResult r = run("bench --resolutions 8,16 --reps 3 --size 5");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 7u) << r.out;
  EXPECT_EQ(lines[0], "resolution,pipeline,ms,reps");
  EXPECT_EQ(lines[1].rfind("8,mlp-direct,", 0), 0u);
  EXPECT_EQ(lines[2].rfind("8,lut-apply,", 0), 0u);
  EXPECT_EQ(lines[6].rfind("16,compile-only,", 0), 0u);
  EXPECT_EQ(lines[6].substr(lines[6].rfind(',') + 1), "3");
}

}  // namespace
