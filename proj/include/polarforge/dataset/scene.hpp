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

#include <array>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "polarforge/core/image.hpp"
#include "polarforge/polarimetry/polarimetry.hpp"

namespace polarforge::dataset {

enum class SceneKind { kGradient, kBlobs, kTexture, kPiecewise };

std::string to_string(SceneKind kind);
SceneKind scene_kind_from_string(const std::string& name);

/// Procedural scene description. All fields drawn from `seed` are evaluated
/// as continuous functions of normalized pixel-center coordinates, so the
/// same spec rendered at different resolutions samples the same underlying
/// scene.
struct SceneSpec {
  std::uint64_t seed = 0;
  int height = 0;
  int width = 0;
  SceneKind kind = SceneKind::kGradient;
  std::array<double, 2> p_range = {0.2, 0.8};
  double noise_sigma = 0.0;  // additive Gaussian on the raw mosaic

  void validate() const;
  /// Additionally requires dims divisible by 4 * 2^rounds.
  void validate_for_rounds(int rounds) const;

  nlohmann::json to_json() const;
  static SceneSpec from_json(const nlohmann::json& j);
};

/// Ground-truth polarization fields: total intensity s0, plus per-channel
/// DoP in p_range and AoP in [0, pi) with at least one wrap crossing.
struct SceneFields {
  ColorImage s0;
  PolarParams params;
};

/// Deterministic ground-truth fields at the requested dims. Same SceneSpec ->
/// bit-identical output, independent of thread count or call order.
SceneFields synth_scene(const SceneSpec& spec);

/// The synthesized polarized quadruple of the scene fields (exact Stokes
/// inverse, so the ground truth satisfies the polarization identity by
/// construction).
PolarStack synth_scene_stack(const SceneSpec& spec);

}  // namespace polarforge::dataset
