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

#include "polarforge/pipeline/pidsr.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "polarforge/core/filters.hpp"
#include "polarforge/core/resample.hpp"
#include "polarforge/mosaic/demosaic.hpp"
#include "polarforge/polarimetry/polarimetry.hpp"

namespace polarforge::pipeline {

namespace {

// Adds 0.25 * (plane - box3(plane)) of the s0 channel to every angle image,
// per color channel. Adding the same detail plane to all four images leaves
// both sides of the polarization identity shifted by twice that plane, so the
// identity residual is unchanged; constants are exact fixed points because
// box3 reproduces them bit-for-bit.
void apply_s0_sharpen(PolarStack& stack, const StokesStack& stokes) {
  for (int c = 0; c < 3; ++c) {
    const Plane& s0 = stokes.s0.channels[c];
    const Plane blurred = core::box_filter3(s0);
    for (auto& image : stack.images) {
      Plane& plane = image.channels[c];
      for (int y = 0; y < plane.height; ++y) {
        for (int x = 0; x < plane.width; ++x) {
          const double detail = static_cast<double>(s0.at(y, x)) -
                                static_cast<double>(blurred.at(y, x));
          plane.at(y, x) =
              static_cast<float>(static_cast<double>(plane.at(y, x)) + 0.25 * detail);
        }
      }
    }
  }
}

}  // namespace

void StageConfig::validate() const {
  if (f_median_radius < 0 || f_median_radius > 2) {
    throw std::invalid_argument("f_median_radius must be in {0, 1, 2}, got " +
                                std::to_string(f_median_radius));
  }
  if (rounds < 0) {
    throw std::invalid_argument("rounds must be >= 0, got " + std::to_string(rounds));
  }
}

nlohmann::json StageConfig::to_json() const {
  return nlohmann::json{{"f_median_radius", f_median_radius},
                        {"f_denoise", f_denoise},
                        {"g_sharpen", g_sharpen},
                        {"rounds", rounds}};
}

StageConfig StageConfig::from_json(const nlohmann::json& j) {
  StageConfig config;
  config.f_median_radius = j.value("f_median_radius", config.f_median_radius);
  config.f_denoise = j.value("f_denoise", config.f_denoise);
  config.g_sharpen = j.value("g_sharpen", config.g_sharpen);
  config.rounds = j.value("rounds", config.rounds);
  config.validate();
  return config;
}

PolarStack stage_f(const PolarStack& input, const StageConfig& config) {
  config.validate();
  StokesStack stokes = polar::compute_stokes(input);
  for (int c = 0; c < 3; ++c) {
    stokes.s1.channels[c] = core::median_filter(stokes.s1.channels[c], config.f_median_radius);
    stokes.s2.channels[c] = core::median_filter(stokes.s2.channels[c], config.f_median_radius);
    if (config.f_denoise) {
      stokes.s0.channels[c] = core::median_filter(stokes.s0.channels[c], config.f_median_radius);
    }
  }
  // Filtering s1/s2 independently of s0 can leave a polarized magnitude
  // above s0; project back so synthesis stays in range and the final clamp
  // cannot disturb the polarization identity.
  polar::clamp_to_physical(stokes);
  PolarStack out = polar::consistency_project(polar::synthesize_from_stokes(stokes));
  clamp_stack(out, 0.0f, 1.0f);
  return out;
}

PolarStack stage_g(const PolarStack& input, const StageConfig& config) {
  config.validate();
  const StokesStack stokes = polar::compute_stokes(input);
  const int out_h = input.i000().r().height * 2;
  const int out_w = input.i000().r().width * 2;
  StokesStack up;
  up.s0 = core::resample_bilinear(stokes.s0, out_h, out_w);
  up.s1 = core::resample_bilinear(stokes.s1, out_h, out_w);
  up.s2 = core::resample_bilinear(stokes.s2, out_h, out_w);
  polar::clamp_to_physical(up);
  PolarStack out = polar::synthesize_from_stokes(up);
  if (config.g_sharpen) {
    apply_s0_sharpen(out, up);
  }
  clamp_stack(out, 0.0f, 1.0f);
  return out;
}

PolarStack run_sr_rounds(const PolarStack& input, const StageConfig& config, int rounds) {
  if (rounds < 0) {
    throw std::invalid_argument("rounds must be >= 0, got " + std::to_string(rounds));
  }
  PolarStack current = input;
  for (int r = 0; r < rounds; ++r) {
    current = stage_g(stage_f(current, config), config);
  }
  return current;
}

PidsrOutput run_pidsr(const CpfaRaw& raw, const StageConfig& config,
                      bool keep_intermediates) {
  config.validate();
  PidsrOutput out;
  const PolarStack halfres = mosaic::convert_raw_to_halfres(raw);
  PolarStack coherent = stage_f(halfres, config);
  if (keep_intermediates) {
    out.intermediates.push_back(coherent);
  }
  out.demosaiced = stage_g(coherent, config);
  if (config.rounds >= 1) {
    PolarStack current = out.demosaiced;
    for (int r = 0; r < config.rounds; ++r) {
      coherent = stage_f(current, config);
      if (keep_intermediates) {
        out.intermediates.push_back(coherent);
      }
      current = stage_g(coherent, config);
    }
    out.super_resolved = std::move(current);
    out.has_super_resolved = true;
  }
  return out;
}

PolarStack run_sequential_baseline(const CpfaRaw& raw, int rounds) {
  if (rounds < 0) {
    throw std::invalid_argument("rounds must be >= 0, got " + std::to_string(rounds));
  }
  PolarStack demosaiced = mosaic::cpfa_demosaic_bilinear(raw);
  if (rounds == 0) {
    return demosaiced;
  }
  const int scale = 1 << rounds;
  const int out_h = demosaiced.i000().r().height * scale;
  const int out_w = demosaiced.i000().r().width * scale;
  PolarStack out;
  for (int a = 0; a < 4; ++a) {
    out.images[a] = core::resample_bilinear(demosaiced.images[a], out_h, out_w);
  }
  clamp_stack(out, 0.0f, 1.0f);
  return out;
}

}  // namespace polarforge::pipeline
