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

namespace polarforge {

/// Per-channel linear Stokes planes. Convention: s1 = I90 - I0, s2 = I135 - I45,
/// s0 = (I0 + I45 + I90 + I135) / 2. Note the s1 sign is the reverse of the
/// I0 - I90 convention used in part of the literature, so angles of
/// polarization computed here may differ from the physical orientation by 90
/// degrees. The toolkit is internally consistent throughout.
struct StokesStack {
  ColorImage s0;
  ColorImage s1;
  ColorImage s2;

  StokesStack() = default;
  StokesStack(int h, int w) : s0(h, w), s1(h, w), s2(h, w) {}

  int height() const { return s0.height(); }
  int width() const { return s0.width(); }
};

/// Degree of polarization in [0,1] and angle of polarization in [0, pi),
/// one plane per color channel.
struct PolarParams {
  ColorImage dop;
  ColorImage aop;

  PolarParams() = default;
  PolarParams(int h, int w) : dop(h, w), aop(h, w) {}

  int height() const { return dop.height(); }
  int width() const { return dop.width(); }
};

namespace polar {

/// atan2 guard: denominator for DoP at s0 near zero.
inline constexpr double kS0Epsilon = 1e-8;

/// Wrap an angle into [0, pi) in the float domain. Values that round up to
/// float(pi) are folded back to keep stored AoP planes strictly below pi.
float wrap_half_circle(double theta);

/// Smallest distance between two angles on the half circle, in radians
/// (values in [0, pi/2]).
double angular_distance(double a, double b);

/// Stokes parameters of a polarized quadruple, per channel.
StokesStack compute_stokes(const PolarStack& stack);

/// DoP and AoP per channel. DoP is clamped to [0,1]; pixels with
/// s1 = s2 = 0 get the convention angle 0.
PolarParams compute_params(const StokesStack& stokes);

/// Exact inverse of compute_stokes/compute_params: builds the quadruple whose
/// Stokes parameters are (s0, s0*p*cos 2theta, s0*p*sin 2theta). All output
/// samples are >= 0 when p <= 1 and s0 >= 0.
PolarStack synthesize_from_params(const ColorImage& s0, const PolarParams& params);

/// Quadruple with the given Stokes planes: I0 = (s0-s1)/2, I90 = (s0+s1)/2,
/// I45 = (s0-s2)/2, I135 = (s0+s2)/2.
PolarStack synthesize_from_stokes(const StokesStack& stokes);

/// Projects every pixel onto the physically admissible set: s0 clamped into
/// [0,1], then (s1, s2) rescaled so the polarized magnitude never exceeds
/// s0. A projected stack synthesizes to samples in [0, s0], so downstream
/// range clamps cannot disturb the polarization identity.
void clamp_to_physical(StokesStack& stokes);

/// Minimum-L2 projection onto the identity I0 + I90 = I45 + I135, then a
/// clamp of negative samples to zero. Clamping can reintroduce a violation of
/// at most the projection step size at extreme pixels.
PolarStack consistency_project(const PolarStack& stack);

/// Elementwise mean of the four polarized images (equals s0 / 2).
ColorImage average_image(const PolarStack& stack);

/// Largest per-pixel violation of I0 + I90 = I45 + I135 over all channels.
double max_identity_violation(const PolarStack& stack);

}  // namespace polar
}  // namespace polarforge
