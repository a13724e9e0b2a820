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

#include "polarforge/core/image.hpp"

#include <algorithm>
#include <cmath>

namespace polarforge {

void require_same_dims(const Plane& a, const Plane& b, const char* what) {
  if (!a.same_dims(b)) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.height) + "x" + std::to_string(a.width) +
                                " vs " + std::to_string(b.height) + "x" +
                                std::to_string(b.width) + ")");
  }
}

void require_same_dims(const ColorImage& a, const ColorImage& b, const char* what) {
  require_same_dims(a.channels[0], b.channels[0], what);
}

void require_same_dims(const PolarStack& a, const PolarStack& b, const char* what) {
  require_same_dims(a.images[0].channels[0], b.images[0].channels[0], what);
}

bool all_finite(const Plane& p) {
  return std::all_of(p.data.begin(), p.data.end(),
                     [](float v) { return std::isfinite(v); });
}

bool all_finite(const ColorImage& img) {
  for (const Plane& p : img.channels)
    if (!all_finite(p)) return false;
  return true;
}

bool all_finite(const PolarStack& stack) {
  for (const ColorImage& img : stack.images)
    if (!all_finite(img)) return false;
  return true;
}

void clamp_plane(Plane& p, float lo, float hi) {
  for (float& v : p.data) v = std::clamp(v, lo, hi);
}

void clamp_image(ColorImage& img, float lo, float hi) {
  for (Plane& p : img.channels) clamp_plane(p, lo, hi);
}

void clamp_stack(PolarStack& stack, float lo, float hi) {
  for (ColorImage& img : stack.images) clamp_image(img, lo, hi);
}

}  // namespace polarforge
