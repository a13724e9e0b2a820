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
#include <string>
#include <utility>

#include <json.hpp>

#include "polarforge/core/image.hpp"

namespace polarforge {

/// One CPFA tile cell: polarizer-angle index (into kAngleDegrees) and color
/// channel index (0 = r, 1 = g, 2 = b).
struct CpfaCell {
  int angle = 0;
  int channel = 0;

  bool operator==(const CpfaCell&) const = default;
};

/// 2x2 color arrangement of an angle-extracted sub-grid, row-major.
struct BayerDescriptor {
  std::array<int, 4> channels{};

  int channel_at(int y, int x) const { return channels[(y & 1) * 2 + (x & 1)]; }
  bool operator==(const BayerDescriptor&) const = default;
};

/// 4x4 CPFA tile: a 2x2 Bayer arrangement of 2x2 polarization blocks. The
/// angle layout repeats with period 2 in both axes (one angle per position in
/// every 2x2 block) and each 2x2 block carries a single color, with the block
/// colors forming a valid Bayer arrangement. Construction validates this
/// structure, which every commercial DoFP sensor layout satisfies.
class CpfaPattern {
 public:
  /// Quad-Bayer layout of the common DoFP sensor family: polarization block
  /// rows (90, 45 / 135, 0) degrees, color blocks (R, G / G, B).
  static CpfaPattern standard();

  /// Builds from 16 row-major tile cells; throws std::invalid_argument when
  /// the layout is not a Bayer arrangement of polarization blocks.
  static CpfaPattern from_cells(const std::array<CpfaCell, 16>& cells);

  /// Cell at image coordinates (tiles with period 4).
  const CpfaCell& cell(int y, int x) const {
    return cells_[static_cast<size_t>(((y % 4) + 4) % 4) * 4 + (((x % 4) + 4) % 4)];
  }
  int angle_at(int y, int x) const { return cell(y, x).angle; }
  int channel_at(int y, int x) const { return cell(y, x).channel; }

  /// Block-level color arrangement, shared by all four angle sub-grids.
  BayerDescriptor bayer() const { return bayer_; }

  /// Within-2x2-block position (row, col) of the given angle index.
  std::pair<int, int> angle_offset(int angle) const { return angle_offsets_[angle]; }

  /// 16-entry array of "deg:channel" strings, row-major (e.g. "90:r").
  nlohmann::json to_json() const;
  static CpfaPattern from_json(const nlohmann::json& j);

  bool operator==(const CpfaPattern& o) const { return cells_ == o.cells_; }

 private:
  CpfaPattern() = default;

  std::array<CpfaCell, 16> cells_{};
  BayerDescriptor bayer_{};
  std::array<std::pair<int, int>, 4> angle_offsets_{};
};

/// CPFA raw capture: one mosaic plane plus the pattern that produced it.
/// Dimensions are full tile periods (divisible by 4) in both axes.
struct CpfaRaw {
  Plane plane;
  CpfaPattern pattern = CpfaPattern::standard();
};

}  // namespace polarforge
