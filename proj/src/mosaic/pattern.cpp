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

#include "polarforge/mosaic/pattern.hpp"

#include <algorithm>

namespace polarforge {

namespace {

int angle_index_from_degrees(int deg) {
  for (int i = 0; i < 4; ++i)
    if (kAngleDegrees[i] == deg) return i;
  throw std::invalid_argument("unknown polarizer angle: " + std::to_string(deg));
}

int channel_index_from_name(char name) {
  for (int i = 0; i < 3; ++i)
    if (kChannelNames[i] == name) return i;
  throw std::invalid_argument(std::string("unknown channel: ") + name);
}

}  // namespace

CpfaPattern CpfaPattern::standard() {
  // Angles within every 2x2 block: (90, 45 / 135, 0). Block colors (R, G / G, B).
  const std::array<int, 4> block_angles = {2, 1, 3, 0};
  const std::array<int, 4> block_colors = {0, 1, 1, 2};
  std::array<CpfaCell, 16> cells;
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) {
      cells[y * 4 + x].angle = block_angles[(y % 2) * 2 + (x % 2)];
      cells[y * 4 + x].channel = block_colors[(y / 2) * 2 + (x / 2)];
    }
  }
  return from_cells(cells);
}

CpfaPattern CpfaPattern::from_cells(const std::array<CpfaCell, 16>& cells) {
  for (const CpfaCell& c : cells) {
    if (c.angle < 0 || c.angle > 3 || c.channel < 0 || c.channel > 2)
      throw std::invalid_argument("pattern cell out of range");
  }

  // Angle layout must repeat with period 2 and cover all four angles.
  std::array<int, 4> block_angles{};
  for (int k = 0; k < 4; ++k) block_angles[k] = cells[(k / 2) * 4 + (k % 2)].angle;
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x)
      if (cells[y * 4 + x].angle != block_angles[(y % 2) * 2 + (x % 2)])
        throw std::invalid_argument("pattern angles must tile with period 2");
  {
    std::array<int, 4> sorted = block_angles;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<int, 4>{0, 1, 2, 3})
      throw std::invalid_argument("each 2x2 block must contain all four angles");
  }

  // Each 2x2 block must be single-color and the block colors a valid Bayer.
  std::array<int, 4> block_colors{};
  for (int by = 0; by < 2; ++by) {
    for (int bx = 0; bx < 2; ++bx) {
      const int c = cells[(by * 2) * 4 + bx * 2].channel;
      for (int dy = 0; dy < 2; ++dy)
        for (int dx = 0; dx < 2; ++dx)
          if (cells[(by * 2 + dy) * 4 + bx * 2 + dx].channel != c)
            throw std::invalid_argument("each 2x2 polarization block must be single-color");
      block_colors[by * 2 + bx] = c;
    }
  }
  const int greens = static_cast<int>(std::count(block_colors.begin(), block_colors.end(), 1));
  const bool green_diagonal =
      (block_colors[0] == 1 && block_colors[3] == 1) ||
      (block_colors[1] == 1 && block_colors[2] == 1);
  const bool has_r = std::count(block_colors.begin(), block_colors.end(), 0) == 1;
  const bool has_b = std::count(block_colors.begin(), block_colors.end(), 2) == 1;
  if (greens != 2 || !green_diagonal || !has_r || !has_b)
    throw std::invalid_argument("block colors must form a Bayer arrangement");

  CpfaPattern p;
  p.cells_ = cells;
  p.bayer_.channels = block_colors;
  for (int k = 0; k < 4; ++k) p.angle_offsets_[block_angles[k]] = {k / 2, k % 2};
  return p;
}

nlohmann::json CpfaPattern::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const CpfaCell& c : cells_) {
    arr.push_back(std::to_string(kAngleDegrees[c.angle]) + ":" + kChannelNames[c.channel]);
  }
  return arr;
}

CpfaPattern CpfaPattern::from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 16)
    throw std::invalid_argument("pattern JSON must be a 16-entry array");
  std::array<CpfaCell, 16> cells;
  for (size_t k = 0; k < 16; ++k) {
    const std::string s = j[k].get<std::string>();
    const size_t colon = s.find(':');
    if (colon == std::string::npos || colon + 2 != s.size())
      throw std::invalid_argument("pattern entry must be \"angle:channel\": " + s);
    cells[k].angle = angle_index_from_degrees(std::stoi(s.substr(0, colon)));
    cells[k].channel = channel_index_from_name(s[colon + 1]);
  }
  return from_cells(cells);
}

}  // namespace polarforge
