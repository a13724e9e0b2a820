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

#include "polarforge/core/filters.hpp"

#include <algorithm>
#include <array>

namespace polarforge::core {

Plane median_filter(const Plane& src, int radius) {
  if (src.empty()) throw std::invalid_argument("empty plane");
  if (radius < 0 || radius > 2) throw std::invalid_argument("median radius must be in {0, 1, 2}");
  if (radius == 0) return src;

  const int h = src.height;
  const int w = src.width;
  const int side = 2 * radius + 1;
  Plane out(h, w);
  std::array<float, 25> window{};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int n = 0;
      for (int dy = -radius; dy <= radius; ++dy) {
        const int sy = std::clamp(y + dy, 0, h - 1);
        for (int dx = -radius; dx <= radius; ++dx) {
          const int sx = std::clamp(x + dx, 0, w - 1);
          window[n++] = src.at(sy, sx);
        }
      }
      auto mid = window.begin() + (side * side) / 2;
      std::nth_element(window.begin(), mid, window.begin() + n);
      out.at(y, x) = *mid;
    }
  }
  return out;
}

Plane box_filter3(const Plane& src) {
  if (src.empty()) throw std::invalid_argument("empty plane");
  const int h = src.height;
  const int w = src.width;
  Plane out(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int dy = -1; dy <= 1; ++dy) {
        const int sy = std::clamp(y + dy, 0, h - 1);
        for (int dx = -1; dx <= 1; ++dx) {
          acc += src.at(sy, std::clamp(x + dx, 0, w - 1));
        }
      }
      out.at(y, x) = static_cast<float>(acc / 9.0);
    }
  }
  return out;
}

}  // namespace polarforge::core
