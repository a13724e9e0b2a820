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
#include "polarforge/mosaic/pattern.hpp"

namespace polarforge::mosaic {

/// Binary masks indexed [angle][channel]; together they partition the pixel grid.
using MaskSet = std::array<std::array<Plane, 3>, 4>;

/// The twelve 0/1 masks of the pattern tiled over an h x w grid.
MaskSet build_masks(const CpfaPattern& pattern, int h, int w);

/// Forward CPFA sampling: each raw pixel takes the one source sample selected
/// by the pattern.
CpfaRaw mosaic(const PolarStack& stack, const CpfaPattern& pattern);

/// Half-resolution single-angle mosaic plus its color arrangement.
struct AngleCfa {
  Plane plane;
  BayerDescriptor bayer;
};

/// Gathers the pixels of one polarizer angle into an (h/2, w/2) CFA mosaic.
/// A pure permutation of raw samples; the half-pixel positional offsets
/// between angle sub-grids are deliberately left uncorrected.
AngleCfa extract_angle_cfa(const CpfaRaw& raw, int angle);

/// Classic bilinear CFA interpolation. Sampled sites keep their measured
/// value bit-exactly; missing channels average the nearest same-channel
/// neighbors (borders fall back to the nearest same-channel sample).
ColorImage cfa_demosaic_bilinear(const Plane& cfa, const BayerDescriptor& bayer);

/// extract_angle_cfa + cfa_demosaic_bilinear for all four angles: the
/// canonical raw-to-half-resolution pre-processing of the pipeline.
PolarStack convert_raw_to_halfres(const CpfaRaw& raw);

/// Full-resolution baseline demosaicer: each (angle, channel) sparse plane is
/// interpolated independently by normalized tent-kernel splatting (radius one
/// tile period), then measured samples are restored bit-exactly.
PolarStack cpfa_demosaic_bilinear(const CpfaRaw& raw);

}  // namespace polarforge::mosaic
