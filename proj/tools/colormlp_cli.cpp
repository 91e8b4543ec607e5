// Copyright 2026 The colormlp Authors
// SPDX-License-Identifier: Apache-2.0

// colormlp: command-line front end over the libcolormlp C API.
//
//   colormlp fit     --lut ref.cube --n 20 --out fit.acm1 [--report fit.csv]
//   colormlp sweep   --lut ref.cube --n 5,10,20
//   colormlp compile --params fit.acm1 --size 33 --out fit.cube
//   colormlp apply   (--lut x.cube | --params x.acm1 [--size M] [--direct])
//                    --in a.png|frames/ --out b.png|out/
//   colormlp psnr    a.png b.png [--l1]
//   colormlp tv      (--lut x.cube | --in a.png)
//   colormlp bench   [--params x.acm1] [--resolutions 512,1024,2000,4000]
//
// Exit status: 0 success, 1 usage error, 2 runtime error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "colormlp/colormlp.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct RuntimeFailure {
  std::string message;
};

void check(cmlp_status status) {
  if (status != CMLP_OK) throw RuntimeFailure{cmlp_last_error()};
}

struct LutDeleter {
  void operator()(cmlp_lut* p) const { cmlp_lut_destroy(p); }
};
struct ParamsDeleter {
  void operator()(cmlp_params* p) const { cmlp_params_destroy(p); }
};
struct ImageDeleter {
  void operator()(cmlp_image* p) const { cmlp_image_destroy(p); }
};
struct ReportDeleter {
  void operator()(cmlp_fit_report* p) const { cmlp_fit_report_destroy(p); }
};
using LutPtr = std::unique_ptr<cmlp_lut, LutDeleter>;
using ParamsPtr = std::unique_ptr<cmlp_params, ParamsDeleter>;
using ImagePtr = std::unique_ptr<cmlp_image, ImageDeleter>;
using ReportPtr = std::unique_ptr<cmlp_fit_report, ReportDeleter>;

LutPtr read_lut(const std::string& path) {
  cmlp_lut* lut = nullptr;
  check(cmlp_lut_read_cube(path.c_str(), &lut));
  return LutPtr(lut);
}

ParamsPtr read_params(const std::string& path) {
  cmlp_params* params = nullptr;
  check(cmlp_params_load(path.c_str(), &params));
  return ParamsPtr(params);
}

ImagePtr read_image(const std::string& path) {
  cmlp_image* img = nullptr;
  check(cmlp_image_load_png(path.c_str(), &img));
  return ImagePtr(img);
}

std::string fixed4(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

struct FitFlags {
  std::string lut;
  std::uint32_t n = 20;
  std::vector<std::uint32_t> sizes{5, 10, 20};
  std::string out;
  std::string report;
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;
  std::uint32_t batch = 0;
  double lr = 0.0;
  std::uint32_t eval_size = 0;
  unsigned threads = 1;
  bool quiet = false;
};

void add_training_flags(CLI::App* cmd, FitFlags& f) {
  cmd->add_option("--lut", f.lut, "Reference LUT (.cube)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "RNG seed");
  cmd->add_option("--steps", f.steps, "Adam steps (default 30000)")->check(CLI::PositiveNumber);
  cmd->add_option("--batch", f.batch, "Colors per step (default 4096)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--lr", f.lr, "Learning rate (default 1e-3)")->check(CLI::PositiveNumber);
  cmd->add_option("--size", f.eval_size, "Evaluation lattice size (default 33)")
      ->check(CLI::Range(2u, 256u));
}

cmlp_fit_config make_config(const FitFlags& f) {
  cmlp_fit_config cfg;
  cmlp_fit_config_default(&cfg);
  cfg.rng_seed = f.seed;
  if (f.steps) cfg.steps = f.steps;
  if (f.batch) cfg.batch_size = f.batch;
  if (f.lr > 0.0) cfg.learning_rate = f.lr;
  if (f.eval_size) cfg.eval_grid_size = f.eval_size;
  return cfg;
}

void progress_to_stderr(std::uint64_t step, double loss, void*) {
  if (step % 1000 == 0) std::fprintf(stderr, "step %llu loss_255 %.4f\n",
                                     static_cast<unsigned long long>(step), loss * 255.0);
}

int run_fit(const FitFlags& f) {
  const LutPtr lut = read_lut(f.lut);
  cmlp_fit_config cfg = make_config(f);
  cfg.n_hidden = f.n;
  cmlp_fit_report* raw = nullptr;
  check(cmlp_fit(lut.get(), &cfg, f.quiet ? nullptr : progress_to_stderr, nullptr, &raw));
  const ReportPtr report(raw);

  cmlp_params* params_raw = nullptr;
  check(cmlp_fit_report_params(report.get(), &params_raw));
  const ParamsPtr params(params_raw);
  check(cmlp_params_save(params.get(), f.out.c_str()));

  if (!f.report.empty()) {
    std::ofstream csv(f.report);
    if (!csv) throw RuntimeFailure{"cannot write " + f.report};
    csv << "step,loss\n";
    const std::size_t n = cmlp_fit_report_trace_length(report.get());
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t step = 0;
      double loss = 0.0;
      check(cmlp_fit_report_trace_at(report.get(), i, &step, &loss));
      char line[64];
      std::snprintf(line, sizeof line, "%llu,%.8f\n", static_cast<unsigned long long>(step), loss);
      csv << line;
    }
  }

  std::printf("n_hidden=%u\n", cfg.n_hidden);
  std::printf("steps=%llu\n", static_cast<unsigned long long>(cfg.steps));
  std::printf("seed=%llu\n", static_cast<unsigned long long>(cfg.rng_seed));
  std::printf("final_error_255=%s\n", fixed4(cmlp_fit_report_error_255(report.get())).c_str());
  return 0;
}

int run_sweep(const FitFlags& f) {
  const LutPtr lut = read_lut(f.lut);
  const cmlp_fit_config cfg = make_config(f);
  std::vector<double> errors(f.sizes.size());
  check(cmlp_sweep(lut.get(), f.sizes.data(), f.sizes.size(), &cfg, f.threads, errors.data()));
  std::printf("N,error_255\n");
  for (std::size_t i = 0; i < f.sizes.size(); ++i) {
    std::printf("%u,%s\n", f.sizes[i], fixed4(errors[i]).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Color MLP / 3D LUT engine"};
  app.require_subcommand(1);

  FitFlags fit;
  auto* fit_cmd = app.add_subcommand("fit", "Distill a .cube LUT into a color MLP");
  add_training_flags(fit_cmd, fit);
  fit_cmd->add_option("--n", fit.n, "Hidden units per layer")->check(CLI::Range(1u, 4096u));
  fit_cmd->add_option("--out", fit.out, "Output parameter file (.acm1)")->required();
  fit_cmd->add_option("--report", fit.report, "Write the loss trace as CSV");
  fit_cmd->add_flag("--quiet", fit.quiet, "No progress on stderr");

  FitFlags sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Fit error versus hidden unit count");
  add_training_flags(sweep_cmd, sweep);
  sweep_cmd->add_option("--n", sweep.sizes, "Comma-separated hidden unit counts")
      ->delimiter(',')
      ->check(CLI::Range(1u, 4096u));
  sweep_cmd->add_option("--threads", sweep.threads, "Concurrent fits");

  std::string params_path, lut_path, in_path, out_path;
  std::uint32_t lut_size = 33;
  unsigned threads = 0;

  auto* compile_cmd = app.add_subcommand("compile", "Compile MLP parameters into a .cube LUT");
  compile_cmd->add_option("--params", params_path, "Parameter file (.acm1)")
      ->required()
      ->check(CLI::ExistingFile);
  compile_cmd->add_option("--size", lut_size, "Bins per axis")->check(CLI::Range(2u, 256u));
  compile_cmd->add_option("--out", out_path, "Output .cube")->required();
  compile_cmd->add_option("--threads", threads, "Worker threads (0 = all)");

  bool direct = false;
  auto* apply_cmd = app.add_subcommand("apply", "Color-transform a PNG or a directory of frames");
  auto* apply_lut = apply_cmd->add_option("--lut", lut_path, "LUT (.cube)")->check(CLI::ExistingFile);
  auto* apply_params =
      apply_cmd->add_option("--params", params_path, "Parameter file (.acm1)")->check(CLI::ExistingFile);
  apply_lut->excludes(apply_params);
  apply_cmd->add_option("--size", lut_size, "Bins for the fast pipeline")
      ->check(CLI::Range(2u, 256u));
  apply_cmd->add_flag("--direct", direct, "Evaluate the MLP per pixel instead of via a LUT");
  apply_cmd->add_option("--in", in_path, "Input PNG or frame directory")->required();
  apply_cmd->add_option("--out", out_path, "Output PNG or directory")->required();
  apply_cmd->add_option("--threads", threads, "Worker threads (0 = all)");

  std::vector<std::string> psnr_inputs;
  bool want_l1 = false;
  auto* psnr_cmd = app.add_subcommand("psnr", "PSNR (peak 1.0) between two PNGs");
  psnr_cmd->add_option("images", psnr_inputs, "Two PNG files")->required()->expected(2);
  psnr_cmd->add_flag("--l1", want_l1, "Print the average L1 error (0-255 scale) instead");

  auto* tv_cmd = app.add_subcommand("tv", "Total variation of a LUT or an image");
  auto* tv_lut_opt = tv_cmd->add_option("--lut", lut_path, "LUT (.cube)")->check(CLI::ExistingFile);
  auto* tv_in_opt = tv_cmd->add_option("--in", in_path, "PNG image")->check(CLI::ExistingFile);
  tv_lut_opt->excludes(tv_in_opt);

  std::vector<std::uint32_t> resolutions{512, 1024, 2000, 4000};
  std::uint32_t reps = 5;
  unsigned bench_threads = 1;
  auto* bench_cmd = app.add_subcommand("bench", "Time direct MLP vs LUT application");
  bench_cmd->add_option("--params", params_path, "Parameter file (.acm1); random N=20 if omitted")
      ->check(CLI::ExistingFile);
  bench_cmd->add_option("--size", lut_size, "LUT bins")->check(CLI::Range(2u, 256u));
  bench_cmd->add_option("--resolutions", resolutions, "Comma-separated image sides")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--reps", reps, "Timed repetitions (>= 3)")->check(CLI::Range(3u, 1000u));
  bench_cmd->add_option("--threads", bench_threads, "Worker threads (0 = all)");
  bench_cmd->add_option("--out", out_path, "Write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n\n%s", e.what(), app.help().c_str());
    return kExitUsage;
  }

  try {
    if (*fit_cmd) return run_fit(fit);
    if (*sweep_cmd) return run_sweep(sweep);

    if (*compile_cmd) {
      const ParamsPtr params = read_params(params_path);
      cmlp_lut* raw = nullptr;
      check(cmlp_params_compile(params.get(), lut_size, threads, &raw));
      const LutPtr lut(raw);
      check(cmlp_lut_write_cube(lut.get(), out_path.c_str(), nullptr));
      return 0;
    }

    if (*apply_cmd) {
      if (lut_path.empty() && params_path.empty()) {
        std::fprintf(stderr, "error: apply needs --lut or --params\n\n%s",
                     apply_cmd->help().c_str());
        return kExitUsage;
      }
      if (direct && params_path.empty()) {
        std::fprintf(stderr, "error: --direct requires --params\n");
        return kExitUsage;
      }
      if (std::filesystem::is_directory(in_path)) {
        if (params_path.empty() || direct) {
          std::fprintf(stderr, "error: frame directories need --params and the LUT pipeline\n");
          return kExitUsage;
        }
        const ParamsPtr params = read_params(params_path);
        std::size_t written = 0;
        check(cmlp_run_sequence(in_path.c_str(), params.get(), lut_size, out_path.c_str(),
                                threads, &written));
        std::fprintf(stderr, "wrote %zu frames to %s\n", written, out_path.c_str());
        return 0;
      }
      const ImagePtr img = read_image(in_path);
      cmlp_image* raw = nullptr;
      if (!lut_path.empty()) {
        const LutPtr lut = read_lut(lut_path);
        check(cmlp_apply_lut(img.get(), lut.get(), threads, &raw));
      } else {
        const ParamsPtr params = read_params(params_path);
        check(direct ? cmlp_run_direct(img.get(), params.get(), threads, &raw)
                     : cmlp_run_fast(img.get(), params.get(), lut_size, threads, &raw));
      }
      const ImagePtr out(raw);
      check(cmlp_image_save_png(out.get(), out_path.c_str()));
      return 0;
    }

    if (*psnr_cmd) {
      const ImagePtr a = read_image(psnr_inputs[0]);
      const ImagePtr b = read_image(psnr_inputs[1]);
      double v = 0.0;
      check(want_l1 ? cmlp_avg_l1_255(a.get(), b.get(), &v) : cmlp_psnr(a.get(), b.get(), &v));
      std::printf("%s\n", fixed4(v).c_str());
      return 0;
    }

    if (*tv_cmd) {
      double v = 0.0;
      if (!lut_path.empty()) {
        const LutPtr lut = read_lut(lut_path);
        check(cmlp_lut_tv(lut.get(), &v));
      } else if (!in_path.empty()) {
        const ImagePtr img = read_image(in_path);
        check(cmlp_tv_image(img.get(), &v));
      } else {
        std::fprintf(stderr, "error: tv needs --lut or --in\n\n%s", tv_cmd->help().c_str());
        return kExitUsage;
      }
      std::printf("%s\n", fixed4(v).c_str());
      return 0;
    }

    if (*bench_cmd) {
      ParamsPtr params;
      if (!params_path.empty()) params = read_params(params_path);
      std::vector<cmlp_bench_row> rows(3 * resolutions.size());
      std::size_t written = 0;
      check(cmlp_bench(params.get(), lut_size, resolutions.data(), resolutions.size(), reps,
                       bench_threads, rows.data(), rows.size(), &written));
      std::string csv = "resolution,pipeline,ms,reps\n";
      for (std::size_t i = 0; i < written; ++i) {
        const cmlp_bench_row& r = rows[i];
        if (r.status != CMLP_OK) {
          std::fprintf(stderr, "resolution %u %s: %s\n", r.resolution,
                       cmlp_bench_pipeline_label(r.pipeline), cmlp_status_name(r.status));
        }
        csv += std::to_string(r.resolution) + "," + cmlp_bench_pipeline_label(r.pipeline) + "," +
               (r.status == CMLP_OK ? fixed4(r.ms) : std::string("error")) + "," +
               std::to_string(r.reps) + "\n";
      }
      if (out_path.empty()) {
        std::fputs(csv.c_str(), stdout);
      } else {
        std::ofstream out(out_path);
        if (!(out << csv)) throw RuntimeFailure{"cannot write " + out_path};
      }
      return 0;
    }
  } catch (const RuntimeFailure& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return kExitRuntime;
  }
  return kExitUsage;
}
