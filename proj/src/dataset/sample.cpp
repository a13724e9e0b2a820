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

#include "polarforge/dataset/sample.hpp"

#include <algorithm>
#include <fstream>

#include "polarforge/core/resample.hpp"
#include "polarforge/dataset/rng.hpp"
#include "polarforge/mosaic/demosaic.hpp"

namespace polarforge::dataset {

namespace {

// Distinct from the field streams used by scene synthesis (0x501..0x503).
constexpr std::uint64_t kStreamNoise = 0x504;

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) {
      throw IoError("cannot open for writing: " + tmp.string());
    }
    out << text;
    out.flush();
    if (!out) {
      throw IoError("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                  ec.message());
  }
}

}  // namespace

nlohmann::json SampleManifest::to_json() const {
  return nlohmann::json{{"version", version},
                        {"scene", scene.to_json()},
                        {"rounds", rounds},
                        {"format", dataset::to_string(format)},
                        {"paths",
                         {{"gt_hr", gt_hr},
                          {"gt_lr", gt_lr},
                          {"raw", raw},
                          {"pattern", pattern}}}};
}

SampleManifest SampleManifest::from_json(const nlohmann::json& j) {
  SampleManifest m;
  m.version = j.at("version").get<int>();
  if (m.version != 1) {
    throw IoError("unsupported manifest version " + std::to_string(m.version));
  }
  m.scene = SceneSpec::from_json(j.at("scene"));
  m.rounds = j.at("rounds").get<int>();
  m.format = stack_format_from_string(j.at("format").get<std::string>());
  const nlohmann::json& paths = j.at("paths");
  m.gt_hr = paths.at("gt_hr").get<std::string>();
  m.gt_lr = paths.at("gt_lr").get<std::string>();
  m.raw = paths.at("raw").get<std::string>();
  m.pattern = paths.at("pattern").get<std::string>();
  return m;
}

SamplePair make_pair_in_memory(const SceneSpec& spec, int rounds,
                               const CpfaPattern& pattern) {
  spec.validate_for_rounds(rounds);
  SamplePair pair;
  pair.gt_hr = synth_scene_stack(spec);
  const int factor = 1 << rounds;
  pair.gt_lr = factor == 1 ? pair.gt_hr : core::downsample_area(pair.gt_hr, factor);
  pair.raw = mosaic::mosaic(pair.gt_lr, pattern);
  if (spec.noise_sigma > 0.0) {
    Plane& plane = pair.raw.plane;
    for (int y = 0; y < plane.height; ++y) {
      for (int x = 0; x < plane.width; ++x) {
        const double noisy =
            static_cast<double>(plane.at(y, x)) +
            spec.noise_sigma *
                rng::gaussian(spec.seed, kStreamNoise,
                              static_cast<std::uint64_t>(y),
                              static_cast<std::uint64_t>(x));
        plane.at(y, x) = static_cast<float>(std::clamp(noisy, 0.0, 1.0));
      }
    }
  }
  return pair;
}

SampleManifest make_pair(const SceneSpec& spec, int rounds,
                         const CpfaPattern& pattern,
                         const std::filesystem::path& dir, StackFormat format) {
  const SamplePair pair = make_pair_in_memory(spec, rounds, pattern);

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  }

  SampleManifest manifest;
  manifest.scene = spec;
  manifest.rounds = rounds;
  manifest.format = format;
  manifest.raw = "raw" + format_extension(format);
  manifest.root = dir;

  save_stack(dir / manifest.gt_hr, pair.gt_hr, format);
  save_stack(dir / manifest.gt_lr, pair.gt_lr, format);
  save_plane(dir / manifest.raw, pair.raw.plane, format);
  write_text_atomic(dir / manifest.pattern, pattern.to_json().dump(2) + "\n");
  save_manifest(manifest, dir / "manifest.json");
  return manifest;
}

void save_manifest(const SampleManifest& manifest, const std::filesystem::path& path) {
  write_text_atomic(path, manifest.to_json().dump(2) + "\n");
}

SampleManifest load_manifest(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw FileMissingError("missing file: " + path.string());
  }
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open for reading: " + path.string());
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CorruptHeaderError("invalid manifest JSON in " + path.string() + ": " +
                             e.what());
  }
  SampleManifest manifest = SampleManifest::from_json(j);
  manifest.root = path.parent_path();
  return manifest;
}

PolarStack load_gt_hr(const SampleManifest& manifest) {
  return load_stack(manifest.root / manifest.gt_hr, manifest.format,
                    manifest.scene.height, manifest.scene.width);
}

PolarStack load_gt_lr(const SampleManifest& manifest) {
  const int factor = 1 << manifest.rounds;
  return load_stack(manifest.root / manifest.gt_lr, manifest.format,
                    manifest.scene.height / factor, manifest.scene.width / factor);
}

CpfaRaw load_raw(const SampleManifest& manifest) {
  const int factor = 1 << manifest.rounds;
  Plane plane = load_plane(manifest.root / manifest.raw, manifest.format);
  const int expect_h = manifest.scene.height / factor;
  const int expect_w = manifest.scene.width / factor;
  if (plane.height != expect_h || plane.width != expect_w) {
    throw DimensionMismatchError(
        "raw plane " + (manifest.root / manifest.raw).string() + " is " +
        std::to_string(plane.height) + "x" + std::to_string(plane.width) +
        ", expected " + std::to_string(expect_h) + "x" + std::to_string(expect_w));
  }

  std::ifstream in(manifest.root / manifest.pattern);
  if (!in) {
    throw FileMissingError("missing file: " +
                           (manifest.root / manifest.pattern).string());
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CorruptHeaderError("invalid pattern JSON in " +
                             (manifest.root / manifest.pattern).string() + ": " +
                             e.what());
  }
  return CpfaRaw{std::move(plane), CpfaPattern::from_json(j)};
}

}  // namespace polarforge::dataset
