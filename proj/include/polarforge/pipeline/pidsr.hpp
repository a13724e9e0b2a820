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

#pragma once

#include <vector>

#include <json.hpp>

#include "polarforge/core/image.hpp"
#include "polarforge/mosaic/pattern.hpp"

namespace polarforge::pipeline {

/// Deterministic stage parameters. `rounds` is the number of super-resolution
/// rounds after the demosaicing round; the output scale factor is 2^rounds.
struct StageConfig {
  int f_median_radius = 1;  // window side 2r+1; r in {0, 1, 2}
  bool f_denoise = false;   // median-filter s0 as well
  bool g_sharpen = false;   // s0-guided high-frequency boost after upsampling
  int rounds = 1;

  void validate() const;
  nlohmann::json to_json() const;
  static StageConfig from_json(const nlohmann::json& j);
};

/// Both outputs of a run: the full-resolution demosaiced stack and, when
/// rounds >= 1, the super-resolved stack at 2^rounds scale.
struct PidsrOutput {
  PolarStack demosaiced;
  PolarStack super_resolved;
  bool has_super_resolved = false;
  std::vector<PolarStack> intermediates;  // stage_f outputs, when retained
};

/// Intra-resolution coherence stage: median-filters the s1/s2 Stokes planes
/// (and s0 under f_denoise), resynthesizes the quadruple exactly, projects
/// onto the polarization identity, and clamps to [0,1]. Constants are fixed
/// points.
PolarStack stage_f(const PolarStack& input, const StageConfig& config = {});

/// Cross-resolution enhancement stage: bilinear 2x upsampling in the Stokes
/// domain followed by exact resynthesis, which carries the polarization
/// identity through the scale change. Output dims are exactly doubled.
PolarStack stage_g(const PolarStack& input, const StageConfig& config = {});

/// stage_f followed by stage_g, `rounds` times; each application doubles the
/// resolution.
PolarStack run_sr_rounds(const PolarStack& input, const StageConfig& config, int rounds);

/// The full recurrent pipeline: raw -> half-resolution conversion -> one
/// demosaicing round restoring (h, w) -> config.rounds additional
/// super-resolution rounds.
PidsrOutput run_pidsr(const CpfaRaw& raw, const StageConfig& config,
                      bool keep_intermediates = false);

/// Sequential comparison arm: full-resolution baseline demosaic, then plain
/// per-image bilinear upsampling by 2^rounds with no Stokes coupling.
PolarStack run_sequential_baseline(const CpfaRaw& raw, int rounds);

}  // namespace polarforge::pipeline
