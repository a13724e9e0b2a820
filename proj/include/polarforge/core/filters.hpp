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

/// Square median filter with window side 2*radius + 1, clamp-to-edge borders.
/// radius 0 is the identity. radius must be in {0, 1, 2}.
Plane median_filter(const Plane& src, int radius);

/// 3x3 box blur, clamp-to-edge borders.
Plane box_filter3(const Plane& src);

}  // namespace polarforge::core
