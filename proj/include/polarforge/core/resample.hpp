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

#include "polarforge/core/image.hpp"

namespace polarforge::core {

/// Bilinear resize with half-pixel-center alignment: output pixel i samples
/// source coordinate (i + 0.5) * (src / dst) - 0.5, clamped to the border.
/// Identity resizes are bit-exact, as are constant planes at any scale.
Plane resample_bilinear(const Plane& src, int out_h, int out_w);

/// Mean over non-overlapping factor x factor blocks. Dimensions must divide.
Plane downsample_area(const Plane& src, int factor);

/// Mean absolute difference of forward-difference gradients, per axis
/// (last column excluded for x, last row for y), the two axis means added.
double gradient_l1(const Plane& a, const Plane& b);

ColorImage resample_bilinear(const ColorImage& src, int out_h, int out_w);
ColorImage downsample_area(const ColorImage& src, int factor);
PolarStack resample_bilinear(const PolarStack& src, int out_h, int out_w);
PolarStack downsample_area(const PolarStack& src, int factor);

}  // namespace polarforge::core
