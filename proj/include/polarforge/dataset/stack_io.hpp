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
#include <stdexcept>
#include <string>

#include "polarforge/core/image.hpp"

namespace polarforge::dataset {

/// Base class for all file I/O failures (CLI exit code 3).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A referenced file or directory does not exist.
struct FileMissingError : IoError {
  using IoError::IoError;
};

/// A file decodes but its dims disagree with what the caller declared.
struct DimensionMismatchError : IoError {
  using IoError::IoError;
};

/// A file exists but its header or payload is not a valid image of the
/// expected format.
struct CorruptHeaderError : IoError {
  using IoError::IoError;
};

/// A stack directory mixes plane formats.
struct InconsistentFormatError : IoError {
  using IoError::IoError;
};

/// On-disk plane encodings: lossless 32-bit float PFM, or 16-bit grayscale
/// PNG quantized as round(clamp(x,0,1) * 65535).
enum class StackFormat { kPfm, kPng16 };

std::string to_string(StackFormat format);
StackFormat stack_format_from_string(const std::string& name);
std::string format_extension(StackFormat format);  // ".pfm" / ".png"

// Single-plane codecs. PFM payloads are little-endian (header scale -1.0)
// and bit-exact over float32; the PFM reader also accepts big-endian files.
void save_pfm(const std::filesystem::path& path, const Plane& plane);
Plane load_pfm(const std::filesystem::path& path);
void save_png16(const std::filesystem::path& path, const Plane& plane);
Plane load_png16(const std::filesystem::path& path);

void save_plane(const std::filesystem::path& path, const Plane& plane, StackFormat format);
Plane load_plane(const std::filesystem::path& path, StackFormat format);

/// Canonical plane file name, e.g. "I045_g.pfm".
std::string plane_filename(int angle_index, int channel, StackFormat format);

/// Writes the 12 planes of a stack into `dir` (created if needed).
void save_stack(const std::filesystem::path& dir, const PolarStack& stack,
                StackFormat format);

/// Loads the 12 canonical planes; all must share dims. When expect_h/expect_w
/// are positive the dims are also checked against them.
PolarStack load_stack(const std::filesystem::path& dir, StackFormat format,
                      int expect_h = 0, int expect_w = 0);

/// Ingests a third-party stack directory: detects the format, requires
/// exactly the 12 canonical files, and enumerates every missing or unexpected
/// plane file in a single error. No polarization consistency is enforced.
PolarStack load_external_dir(const std::filesystem::path& dir);

}  // namespace polarforge::dataset
