// Copyright 2026 The PolarForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// polarforge: CPFA capture simulation, polarized reconstruction and
// super-resolution, metric evaluation, and the verification experiments.
//
// Exit codes: 0 success, 2 usage/config error, 3 I/O error, 4 numerical
// failure (non-finite values in a pipeline output are never written to disk).

#include <CLI11.hpp>

#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "polarforge/core/image.hpp"
#include "polarforge/dataset/sample.hpp"
#include "polarforge/dataset/scene.hpp"
#include "polarforge/dataset/stack_io.hpp"
#include "polarforge/metrics/metrics.hpp"
#include "polarforge/mosaic/demosaic.hpp"
#include "polarforge/mosaic/pattern.hpp"
#include "polarforge/pipeline/pidsr.hpp"
#include "polarforge/polarimetry/polarimetry.hpp"

namespace {

namespace pf = polarforge;
namespace ds = polarforge::dataset;
using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

/// Raised when a pipeline output contains non-finite samples.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned default_jobs() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs fn(0..count-1) on up to `jobs` threads. Results must be written to
/// per-index slots by the callers, which keeps every output independent of
/// the schedule; the first exception is rethrown after the join.
template <typename Fn>
void parallel_for(int count, unsigned jobs, const Fn& fn) {
  if (count <= 0) return;
  const unsigned workers =
      std::min<unsigned>(std::max(1u, jobs), static_cast<unsigned>(count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

pf::CpfaPattern load_pattern_arg(const std::string& arg) {
  if (arg.empty() || arg == "standard") {
    return pf::CpfaPattern::standard();
  }
  if (!std::filesystem::exists(arg)) {
    throw ds::FileMissingError("missing pattern file: " + arg);
  }
  std::ifstream in(arg);
  if (!in) {
    throw ds::IoError("cannot open for reading: " + arg);
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ds::CorruptHeaderError("invalid pattern JSON in " + arg + ": " + e.what());
  }
  return pf::CpfaPattern::from_json(j);
}

void require_finite(const pf::PolarStack& stack, const std::string& what) {
  if (!pf::all_finite(stack)) {
    throw NumericalError("non-finite values in " + what);
  }
}

void write_report(const std::string& path, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ds::IoError("cannot open for writing: " + path);
  }
  out << text;
  out.flush();
  if (!out) {
    throw ds::IoError("write failed: " + path);
  }
}

/// Writes the 12-plane stack plus derived S0/p/theta planes per channel.
void write_stack_with_derived(const std::filesystem::path& dir,
                              const pf::PolarStack& stack, ds::StackFormat format) {
  ds::save_stack(dir, stack, format);
  const pf::StokesStack stokes = pf::polar::compute_stokes(stack);
  const pf::PolarParams params = pf::polar::compute_params(stokes);
  const std::string ext = ds::format_extension(format);
  for (int c = 0; c < 3; ++c) {
    const std::string ch(1, pf::kChannelNames[static_cast<size_t>(c)]);
    ds::save_plane(dir / ("S0_" + ch + ext), stokes.s0.channels[c], format);
    ds::save_plane(dir / ("p_" + ch + ext), params.dop.channels[c], format);
    ds::save_plane(dir / ("theta_" + ch + ext), params.aop.channels[c], format);
  }
}

ds::SceneKind kind_for_index(const std::string& kind_arg, int index) {
  if (kind_arg == "mix") {
    static const std::array<ds::SceneKind, 4> cycle = {
        ds::SceneKind::kGradient, ds::SceneKind::kBlobs, ds::SceneKind::kTexture,
        ds::SceneKind::kPiecewise};
    return cycle[static_cast<size_t>(index) % 4];
  }
  return ds::scene_kind_from_string(kind_arg);
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::uint64_t seed = 1;
  int size = 128;
  int width = 0;  // 0: square
  int rounds = 1;
  int count = 1;
  std::string kind = "gradient";
  double p_lo = 0.2;
  double p_hi = 0.8;
  double noise_sigma = 0.0;
  std::string pattern_arg;
  std::string format = "pfm";
  std::string out_dir = ".";
  unsigned jobs = default_jobs();
};

int run_simulate(const SimulateArgs& args) {
  if (args.count < 1) {
    throw std::invalid_argument("--count must be >= 1");
  }
  const ds::StackFormat format = ds::stack_format_from_string(args.format);
  const pf::CpfaPattern pattern = load_pattern_arg(args.pattern_arg);

  auto spec_for = [&](int i) {
    ds::SceneSpec spec;
    spec.seed = args.seed + static_cast<std::uint64_t>(i);
    spec.height = args.size;
    spec.width = args.width > 0 ? args.width : args.size;
    spec.kind = kind_for_index(args.kind, i);
    spec.p_range = {args.p_lo, args.p_hi};
    spec.noise_sigma = args.noise_sigma;
    return spec;
  };
  spec_for(0).validate_for_rounds(args.rounds);  // fail on config before any I/O

  std::vector<std::string> manifest_paths(static_cast<size_t>(args.count));
  parallel_for(args.count, args.jobs, [&](int i) {
    const ds::SceneSpec spec = spec_for(i);
    const std::filesystem::path dir =
        std::filesystem::path(args.out_dir) / ("scene_" + std::to_string(spec.seed));
    ds::make_pair(spec, args.rounds, pattern, dir, format);
    manifest_paths[static_cast<size_t>(i)] = (dir / "manifest.json").string();
  });
  for (const std::string& path : manifest_paths) {
    std::cout << path << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// reconstruct

struct ReconstructArgs {
  std::string manifest_path;
  std::string raw_path;
  std::string pattern_arg;
  std::string method = "pidsr";
  int rounds = -1;  // -1: manifest's rounds (or the per-method default)
  int f_median_radius = 1;
  bool f_denoise = false;
  bool g_sharpen = false;
  std::string format = "pfm";
  std::string out_dir = ".";
};

int run_reconstruct(const ReconstructArgs& args) {
  if (args.manifest_path.empty() == args.raw_path.empty()) {
    throw std::invalid_argument("exactly one of --manifest or --raw is required");
  }
  if (args.method != "pidsr" && args.method != "bilinear" &&
      args.method != "sequential") {
    throw std::invalid_argument("--method must be pidsr|bilinear|sequential, got '" +
                                args.method + "'");
  }
  const ds::StackFormat format = ds::stack_format_from_string(args.format);

  pf::CpfaRaw raw;
  int default_rounds = args.method == "bilinear" ? 0 : 1;
  if (!args.manifest_path.empty()) {
    const ds::SampleManifest manifest = ds::load_manifest(args.manifest_path);
    raw = ds::load_raw(manifest);
    if (args.method != "bilinear") {
      default_rounds = manifest.rounds;
    }
  } else {
    const std::filesystem::path path = args.raw_path;
    const ds::StackFormat raw_format =
        path.extension() == ".png" ? ds::StackFormat::kPng16 : ds::StackFormat::kPfm;
    raw.plane = ds::load_plane(path, raw_format);
    raw.pattern = load_pattern_arg(args.pattern_arg);
  }
  if (!pf::all_finite(raw.plane)) {
    throw NumericalError("non-finite values in raw input");
  }
  const int rounds = args.rounds >= 0 ? args.rounds : default_rounds;
  if (args.method == "bilinear" && rounds != 0) {
    throw std::invalid_argument(
        "--method bilinear writes only the demosaiced stack; use --rounds 0");
  }
  if (args.method == "sequential" && rounds < 1) {
    throw std::invalid_argument("--method sequential requires --rounds >= 1");
  }

  pf::pipeline::StageConfig config;
  config.f_median_radius = args.f_median_radius;
  config.f_denoise = args.f_denoise;
  config.g_sharpen = args.g_sharpen;
  config.rounds = rounds;
  config.validate();

  pf::PolarStack demosaiced;
  pf::PolarStack super_resolved;
  bool has_sr = false;
  if (args.method == "pidsr") {
    pf::pipeline::PidsrOutput out = pf::pipeline::run_pidsr(raw, config);
    demosaiced = std::move(out.demosaiced);
    has_sr = out.has_super_resolved;
    if (has_sr) super_resolved = std::move(out.super_resolved);
  } else if (args.method == "bilinear") {
    demosaiced = pf::mosaic::cpfa_demosaic_bilinear(raw);
  } else {  // sequential
    demosaiced = pf::mosaic::cpfa_demosaic_bilinear(raw);
    super_resolved = pf::pipeline::run_sequential_baseline(raw, rounds);
    has_sr = true;
  }

  require_finite(demosaiced, "demosaiced stack");
  if (has_sr) require_finite(super_resolved, "super-resolved stack");

  const std::filesystem::path out_dir = args.out_dir;
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw ds::IoError("cannot create directory " + out_dir.string() + ": " +
                      ec.message());
  }
  write_stack_with_derived(out_dir / "demosaiced", demosaiced, format);
  if (has_sr) {
    write_stack_with_derived(out_dir / "sr", super_resolved, format);
  }

  json dims = {{"raw", {raw.plane.height, raw.plane.width}},
               {"demosaiced", {demosaiced.height(), demosaiced.width()}},
               {"sr", nullptr}};
  if (has_sr) {
    dims["sr"] = {super_resolved.height(), super_resolved.width()};
  }
  const json report = {
      {"version", 1},
      {"config",
       {{"method", args.method},
        {"rounds", rounds},
        {"stage", config.to_json()},
        {"format", ds::to_string(format)},
        {"input", args.manifest_path.empty() ? args.raw_path : args.manifest_path},
        {"pattern", raw.pattern.to_json()}}},
      {"dims", dims}};
  write_report((out_dir / "reconstruct.json").string(), report);
  return 0;
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::vector<std::string> pred_dirs;
  std::vector<std::string> manifest_paths;
  std::string method = "external";
  std::string report_path;
  unsigned jobs = default_jobs();
};

int run_eval(const EvalArgs& args) {
  if (args.pred_dirs.empty() || args.pred_dirs.size() != args.manifest_paths.size()) {
    throw std::invalid_argument(
        "--pred and --manifest must be given the same number of times (>= 1)");
  }
  const int count = static_cast<int>(args.pred_dirs.size());
  std::vector<pf::metrics::EvalReport> reports(static_cast<size_t>(count));
  parallel_for(count, args.jobs, [&](int i) {
    const ds::SampleManifest manifest =
        ds::load_manifest(args.manifest_paths[static_cast<size_t>(i)]);
    const pf::PolarStack pred =
        ds::load_external_dir(args.pred_dirs[static_cast<size_t>(i)]);
    const int lr_h = manifest.scene.height / (1 << manifest.rounds);
    const int lr_w = manifest.scene.width / (1 << manifest.rounds);
    std::string scale_tag;
    pf::PolarStack gt;
    if (pred.height() == lr_h && pred.width() == lr_w) {
      scale_tag = "1x";
      gt = ds::load_gt_lr(manifest);
    } else if (pred.height() == manifest.scene.height &&
               pred.width() == manifest.scene.width) {
      scale_tag = std::to_string(1 << manifest.rounds) + "x";
      gt = ds::load_gt_hr(manifest);
    } else {
      throw std::invalid_argument(
          "prediction dims " + std::to_string(pred.height()) + "x" +
          std::to_string(pred.width()) + " match neither GT LR scale 1x (" +
          std::to_string(lr_h) + "x" + std::to_string(lr_w) + ") nor GT HR scale " +
          std::to_string(1 << manifest.rounds) + "x (" +
          std::to_string(manifest.scene.height) + "x" +
          std::to_string(manifest.scene.width) + ")");
    }
    reports[static_cast<size_t>(i)] =
        pf::metrics::evaluate(pred, gt, scale_tag, args.method);
  });
  for (int i = 1; i < count; ++i) {
    if (reports[static_cast<size_t>(i)].scale != reports[0].scale) {
      throw std::invalid_argument("mixed evaluation scales: scene 0 is " +
                                  reports[0].scale + ", scene " + std::to_string(i) +
                                  " is " + reports[static_cast<size_t>(i)].scale);
    }
  }

  json scenes = json::array();
  for (const auto& report : reports) {
    scenes.push_back(report.to_json());
  }
  const json out = {{"version", 1},
                    {"config",
                     {{"pred", args.pred_dirs},
                      {"manifest", args.manifest_paths},
                      {"method", args.method}}},
                    {"scenes", scenes},
                    {"aggregate", pf::metrics::aggregate(reports).to_json()}};
  write_report(args.report_path, out);
  return 0;
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentArgs {
  std::uint64_t seed = 1;
  int count = 24;
  int size = 64;
  int rounds = 1;
  std::string kind = "mix";
  double p_lo = 0.2;
  double p_hi = 0.8;
  double noise_sigma = 0.0;
  std::vector<int> sizes = {64, 128, 256, 512};
  std::string report_path;
  unsigned jobs = default_jobs();
};

ds::SceneSpec experiment_spec(const ExperimentArgs& args, int index, int size) {
  ds::SceneSpec spec;
  spec.seed = args.seed + static_cast<std::uint64_t>(index);
  spec.height = size;
  spec.width = size;
  spec.kind = kind_for_index(args.kind, index);
  spec.p_range = {args.p_lo, args.p_hi};
  spec.noise_sigma = args.noise_sigma;
  return spec;
}

json experiment_config_json(const ExperimentArgs& args) {
  return json{{"seed", args.seed},      {"count", args.count},
              {"size", args.size},      {"rounds", args.rounds},
              {"kind", args.kind},      {"p_range", {args.p_lo, args.p_hi}},
              {"noise_sigma", args.noise_sigma}};
}

struct ErTriple {
  double s0 = 0.0;
  double p = 0.0;
  double theta = 0.0;
};

/// Error rates of a plain full-resolution bilinear demosaic against the
/// scene's ground-truth fields.
ErTriple demosaic_error_rates(const ds::SceneSpec& spec) {
  const ds::SceneFields fields = ds::synth_scene(spec);
  const ds::SamplePair pair =
      ds::make_pair_in_memory(spec, 0, pf::CpfaPattern::standard());
  const pf::PolarStack pred = pf::mosaic::cpfa_demosaic_bilinear(pair.raw);
  const pf::StokesStack stokes = pf::polar::compute_stokes(pred);
  const pf::PolarParams params = pf::polar::compute_params(stokes);
  ErTriple er;
  er.s0 = pf::metrics::error_rate(stokes.s0, fields.s0);
  er.p = pf::metrics::error_rate(params.dop, fields.params.dop);
  er.theta = pf::metrics::error_rate_angular(params.aop, fields.params.aop);
  return er;
}

int run_experiment_err_gap(const ExperimentArgs& args) {
  if (args.count < 1) {
    throw std::invalid_argument("--count must be >= 1");
  }
  experiment_spec(args, 0, args.size).validate_for_rounds(0);

  std::vector<ErTriple> per_scene(static_cast<size_t>(args.count));
  parallel_for(args.count, args.jobs, [&](int i) {
    per_scene[static_cast<size_t>(i)] =
        demosaic_error_rates(experiment_spec(args, i, args.size));
  });

  ErTriple mean;
  json scenes = json::array();
  for (int i = 0; i < args.count; ++i) {
    const ErTriple& er = per_scene[static_cast<size_t>(i)];
    mean.s0 += er.s0 / args.count;
    mean.p += er.p / args.count;
    mean.theta += er.theta / args.count;
    scenes.push_back({{"seed", args.seed + static_cast<std::uint64_t>(i)},
                      {"er_s0", er.s0},
                      {"er_p", er.p},
                      {"er_theta", er.theta}});
  }
  const json out = {
      {"version", 1},
      {"experiment", "err-gap"},
      {"config", experiment_config_json(args)},
      {"scenes", scenes},
      {"mean", {{"er_s0", mean.s0}, {"er_p", mean.p}, {"er_theta", mean.theta}}},
      {"direction_ok", mean.p > mean.s0 && mean.theta > mean.s0}};
  write_report(args.report_path, out);
  return 0;
}

int run_experiment_input_quality(const ExperimentArgs& args) {
  if (args.count < 1) {
    throw std::invalid_argument("--count must be >= 1");
  }
  if (args.rounds < 1) {
    throw std::invalid_argument("input-quality requires --rounds >= 1");
  }
  experiment_spec(args, 0, args.size).validate_for_rounds(args.rounds);

  struct ArmScores {
    double gt_psnr_s0 = 0.0;
    double gt_theta_mae = 0.0;
    double dm_psnr_s0 = 0.0;
    double dm_theta_mae = 0.0;
  };
  std::vector<ArmScores> per_scene(static_cast<size_t>(args.count));
  parallel_for(args.count, args.jobs, [&](int i) {
    const ds::SceneSpec spec = experiment_spec(args, i, args.size);
    const ds::SamplePair pair =
        ds::make_pair_in_memory(spec, args.rounds, pf::CpfaPattern::standard());
    pf::pipeline::StageConfig config;
    config.rounds = args.rounds;

    const pf::PolarStack from_gt =
        pf::pipeline::run_sr_rounds(pair.gt_lr, config, args.rounds);
    const pf::PolarStack from_demosaic = pf::pipeline::run_sr_rounds(
        pf::mosaic::cpfa_demosaic_bilinear(pair.raw), config, args.rounds);

    const std::string tag = std::to_string(1 << args.rounds) + "x";
    const pf::metrics::EvalReport gt_report =
        pf::metrics::evaluate(from_gt, pair.gt_hr, tag, "sr-from-gt");
    const pf::metrics::EvalReport dm_report =
        pf::metrics::evaluate(from_demosaic, pair.gt_hr, tag, "sr-from-demosaic");
    ArmScores& s = per_scene[static_cast<size_t>(i)];
    s.gt_psnr_s0 = gt_report.s0.psnr;
    s.gt_theta_mae = gt_report.aop_mae_deg;
    s.dm_psnr_s0 = dm_report.s0.psnr;
    s.dm_theta_mae = dm_report.aop_mae_deg;
  });

  ArmScores mean;
  json scenes = json::array();
  for (int i = 0; i < args.count; ++i) {
    const ArmScores& s = per_scene[static_cast<size_t>(i)];
    mean.gt_psnr_s0 += s.gt_psnr_s0 / args.count;
    mean.gt_theta_mae += s.gt_theta_mae / args.count;
    mean.dm_psnr_s0 += s.dm_psnr_s0 / args.count;
    mean.dm_theta_mae += s.dm_theta_mae / args.count;
    scenes.push_back(
        {{"seed", args.seed + static_cast<std::uint64_t>(i)},
         {"gt_input", {{"psnr_s0", s.gt_psnr_s0}, {"theta_mae_deg", s.gt_theta_mae}}},
         {"demosaic_input",
          {{"psnr_s0", s.dm_psnr_s0}, {"theta_mae_deg", s.dm_theta_mae}}}});
  }
  const json out = {
      {"version", 1},
      {"experiment", "input-quality"},
      {"config", experiment_config_json(args)},
      {"scenes", scenes},
      {"mean",
       {{"gt_input",
         {{"psnr_s0", mean.gt_psnr_s0}, {"theta_mae_deg", mean.gt_theta_mae}}},
        {"demosaic_input",
         {{"psnr_s0", mean.dm_psnr_s0}, {"theta_mae_deg", mean.dm_theta_mae}}}}},
      {"direction_ok", mean.gt_psnr_s0 >= mean.dm_psnr_s0 &&
                           mean.gt_theta_mae <= mean.dm_theta_mae}};
  write_report(args.report_path, out);
  return 0;
}

int run_experiment_err_vs_res(const ExperimentArgs& args) {
  if (args.sizes.size() < 2) {
    throw std::invalid_argument("--sizes needs at least two entries");
  }
  std::vector<int> sizes = args.sizes;
  for (size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) {
      throw std::invalid_argument("--sizes must be strictly increasing");
    }
  }
  for (const int size : sizes) {
    experiment_spec(args, 0, size).validate_for_rounds(0);
  }

  const int count = static_cast<int>(sizes.size());
  std::vector<ErTriple> per_size(static_cast<size_t>(count));
  parallel_for(count, args.jobs, [&](int i) {
    // Same seed at every size: the sweep samples one continuous scene at
    // increasing sensor resolutions.
    per_size[static_cast<size_t>(i)] =
        demosaic_error_rates(experiment_spec(args, 0, sizes[static_cast<size_t>(i)]));
  });

  json entries = json::array();
  for (int i = 0; i < count; ++i) {
    const ErTriple& er = per_size[static_cast<size_t>(i)];
    entries.push_back({{"size", sizes[static_cast<size_t>(i)]},
                       {"er_s0", er.s0},
                       {"er_p", er.p},
                       {"er_theta", er.theta}});
  }
  const json out = {{"version", 1},
                    {"experiment", "err-vs-res"},
                    {"config", experiment_config_json(args)},
                    {"entries", entries}};
  write_report(args.report_path, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "polarforge: polarized-imaging toolkit (CPFA simulation, reconstruction, "
      "evaluation)"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Generate ground-truth scenes and degraded CPFA raws");
  simulate->add_option("--seed", sim.seed, "Base scene seed");
  simulate->add_option("--size", sim.size, "Scene height (and width unless --width)");
  simulate->add_option("--width", sim.width, "Scene width override");
  simulate->add_option("--rounds", sim.rounds, "Super-resolution rounds the pair targets");
  simulate->add_option("--count", sim.count, "Number of scenes (seeds seed..seed+N-1)");
  simulate->add_option("--kind", sim.kind,
                       "Scene kind: gradient|blobs|texture|piecewise|mix");
  simulate->add_option("--p-lo", sim.p_lo, "DoP range lower bound");
  simulate->add_option("--p-hi", sim.p_hi, "DoP range upper bound");
  simulate->add_option("--noise-sigma", sim.noise_sigma, "Raw noise std dev");
  simulate->add_option("--pattern", sim.pattern_arg,
                       "Pattern JSON file or 'standard'");
  simulate->add_option("--format", sim.format, "Plane format: pfm|png16");
  simulate->add_option("--out", sim.out_dir, "Output directory");
  simulate->add_option("--jobs", sim.jobs, "Worker threads")
      ->envname("POLARFORGE_JOBS");

  ReconstructArgs rec;
  CLI::App* reconstruct = app.add_subcommand(
      "reconstruct", "Run a reconstruction method on a CPFA raw");
  reconstruct->add_option("--manifest", rec.manifest_path, "Sample manifest path");
  reconstruct->add_option("--raw", rec.raw_path, "Standalone raw plane file");
  reconstruct->add_option("--pattern", rec.pattern_arg,
                          "Pattern JSON for --raw (default: standard)");
  reconstruct->add_option("--method", rec.method, "pidsr|bilinear|sequential");
  reconstruct->add_option("--rounds", rec.rounds, "Super-resolution rounds");
  reconstruct->add_option("--f-median-radius", rec.f_median_radius,
                          "Coherence-stage median radius (0..2)");
  reconstruct->add_flag("--f-denoise", rec.f_denoise,
                        "Median-filter s0 in the coherence stage");
  reconstruct->add_flag("--g-sharpen", rec.g_sharpen,
                        "s0-guided sharpening in the enhancement stage");
  reconstruct->add_option("--format", rec.format, "Plane format: pfm|png16");
  reconstruct->add_option("--out", rec.out_dir, "Output directory");

  EvalArgs ev;
  CLI::App* eval = app.add_subcommand(
      "eval", "Evaluate reconstruction directories against ground truth");
  eval->add_option("--pred", ev.pred_dirs, "Reconstruction stack directory")
      ->required();
  eval->add_option("--manifest", ev.manifest_paths, "Matching sample manifest")
      ->required();
  eval->add_option("--method", ev.method, "Method label echoed in the report");
  eval->add_option("--report", ev.report_path, "Report JSON path (default stdout)");
  eval->add_option("--jobs", ev.jobs, "Worker threads")->envname("POLARFORGE_JOBS");

  ExperimentArgs exp;
  CLI::App* experiment =
      app.add_subcommand("experiment", "Run one of the verification experiments");
  experiment->require_subcommand(1);
  CLI::App* err_gap = experiment->add_subcommand(
      "err-gap", "DoP/AoP vs S0 error rates of a plain bilinear demosaic");
  CLI::App* input_quality = experiment->add_subcommand(
      "input-quality", "SR rounds fed ground-truth LR vs demosaiced inputs");
  CLI::App* err_vs_res = experiment->add_subcommand(
      "err-vs-res", "Demosaic error rates across sensor resolutions");
  for (CLI::App* sub : {err_gap, input_quality, err_vs_res}) {
    sub->add_option("--seed", exp.seed, "Base scene seed");
    sub->add_option("--count", exp.count, "Number of scenes");
    sub->add_option("--size", exp.size, "Scene size");
    sub->add_option("--kind", exp.kind,
                    "Scene kind: gradient|blobs|texture|piecewise|mix");
    sub->add_option("--p-lo", exp.p_lo, "DoP range lower bound");
    sub->add_option("--p-hi", exp.p_hi, "DoP range upper bound");
    sub->add_option("--noise-sigma", exp.noise_sigma, "Raw noise std dev");
    sub->add_option("--report", exp.report_path, "Report JSON path (default stdout)");
    sub->add_option("--jobs", exp.jobs, "Worker threads")->envname("POLARFORGE_JOBS");
  }
  input_quality->add_option("--rounds", exp.rounds, "Super-resolution rounds");
  err_vs_res->add_option("--sizes", exp.sizes, "Strictly increasing size sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (reconstruct->parsed()) return run_reconstruct(rec);
    if (eval->parsed()) return run_eval(ev);
    if (err_gap->parsed()) return run_experiment_err_gap(exp);
    if (input_quality->parsed()) return run_experiment_input_quality(exp);
    if (err_vs_res->parsed()) return run_experiment_err_vs_res(exp);
    std::cerr << "no subcommand selected\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const ds::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
