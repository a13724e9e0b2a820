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

#include <filesystem>
#include <string>

#include <json.hpp>

#include "polarforge/dataset/scene.hpp"
#include "polarforge/dataset/stack_io.hpp"
#include "polarforge/mosaic/pattern.hpp"

namespace polarforge::dataset {

/// Index of one generated sample: ground truth at high and low resolution,
/// the mosaicked (optionally noisy) raw, and the pattern that produced it.
/// All paths are relative to the directory holding the manifest file.
struct SampleManifest {
  int version = 1;
  SceneSpec scene;
  int rounds = 0;  // GT LR dims = scene dims / 2^rounds
  StackFormat format = StackFormat::kPfm;
  std::string gt_hr = "gt_hr";
  std::string gt_lr = "gt_lr";
  std::string raw = "raw.pfm";
  std::string pattern = "pattern.json";

  std::filesystem::path root;  // resolved on load/save; not serialized

  nlohmann::json to_json() const;
  static SampleManifest from_json(const nlohmann::json& j);
};

/// Ground-truth pair plus degraded raw, kept in memory. The raw equals
/// mosaic(gt_lr) plus optional clamped Gaussian noise keyed per pixel by the
/// scene seed, so results never depend on generation order.
struct SamplePair {
  PolarStack gt_hr;
  PolarStack gt_lr;
  CpfaRaw raw;
};

SamplePair make_pair_in_memory(const SceneSpec& spec, int rounds,
                               const CpfaPattern& pattern);

/// Generates a sample and writes every artifact under `dir` (created if
/// needed): gt_hr/, gt_lr/, the raw plane, pattern.json, and manifest.json
/// (written atomically via temp-file rename). Returns the loaded-back
/// manifest with `root` set.
SampleManifest make_pair(const SceneSpec& spec, int rounds,
                         const CpfaPattern& pattern,
                         const std::filesystem::path& dir, StackFormat format);

void save_manifest(const SampleManifest& manifest, const std::filesystem::path& path);
SampleManifest load_manifest(const std::filesystem::path& path);

// Artifact loaders; each validates dims against the manifest's scene spec.
PolarStack load_gt_hr(const SampleManifest& manifest);
PolarStack load_gt_lr(const SampleManifest& manifest);
CpfaRaw load_raw(const SampleManifest& manifest);

}  // namespace polarforge::dataset
