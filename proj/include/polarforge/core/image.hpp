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
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace polarforge {

/// Single-channel raster of real samples, row-major. Samples are nominally in
/// [0,1] but intermediate residuals may leave that range.
struct Plane {
  int height = 0;
  int width = 0;
  std::vector<float> data;

  Plane() = default;
  Plane(int h, int w, float fill = 0.0f)
      : height(h), width(w), data(static_cast<size_t>(h) * static_cast<size_t>(w), fill) {
    if (h < 0 || w < 0) throw std::invalid_argument("negative plane dimensions");
  }

  bool empty() const { return height == 0 || width == 0; }
  size_t size() const { return data.size(); }

  float& at(int y, int x) { return data[static_cast<size_t>(y) * width + x]; }
  float at(int y, int x) const { return data[static_cast<size_t>(y) * width + x]; }

  bool same_dims(const Plane& o) const { return height == o.height && width == o.width; }
};

/// Three planes in fixed (r, g, b) order, all sharing dimensions.
struct ColorImage {
  std::array<Plane, 3> channels;

  ColorImage() = default;
  ColorImage(int h, int w, float fill = 0.0f)
      : channels{Plane(h, w, fill), Plane(h, w, fill), Plane(h, w, fill)} {}

  int height() const { return channels[0].height; }
  int width() const { return channels[0].width; }

  Plane& r() { return channels[0]; }
  Plane& g() { return channels[1]; }
  Plane& b() { return channels[2]; }
  const Plane& r() const { return channels[0]; }
  const Plane& g() const { return channels[1]; }
  const Plane& b() const { return channels[2]; }

  bool same_dims(const ColorImage& o) const {
    return height() == o.height() && width() == o.width();
  }
};

/// Four full-color polarized images in fixed polarizer-angle order
/// (0, 45, 90, 135 degrees).
struct PolarStack {
  std::array<ColorImage, 4> images;

  PolarStack() = default;
  PolarStack(int h, int w, float fill = 0.0f)
      : images{ColorImage(h, w, fill), ColorImage(h, w, fill), ColorImage(h, w, fill),
               ColorImage(h, w, fill)} {}

  int height() const { return images[0].height(); }
  int width() const { return images[0].width(); }

  ColorImage& i000() { return images[0]; }
  ColorImage& i045() { return images[1]; }
  ColorImage& i090() { return images[2]; }
  ColorImage& i135() { return images[3]; }
  const ColorImage& i000() const { return images[0]; }
  const ColorImage& i045() const { return images[1]; }
  const ColorImage& i090() const { return images[2]; }
  const ColorImage& i135() const { return images[3]; }
};

/// Polarizer angles in stack order, degrees.
inline constexpr std::array<int, 4> kAngleDegrees = {0, 45, 90, 135};

/// Channel suffixes in storage order.
inline constexpr std::array<char, 3> kChannelNames = {'r', 'g', 'b'};

void require_same_dims(const Plane& a, const Plane& b, const char* what);
void require_same_dims(const ColorImage& a, const ColorImage& b, const char* what);
void require_same_dims(const PolarStack& a, const PolarStack& b, const char* what);

/// True when every sample is finite (no NaN/Inf).
bool all_finite(const Plane& p);
bool all_finite(const ColorImage& img);
bool all_finite(const PolarStack& stack);

/// Per-sample clamp into [lo, hi].
void clamp_plane(Plane& p, float lo, float hi);
void clamp_image(ColorImage& img, float lo, float hi);
void clamp_stack(PolarStack& stack, float lo, float hi);

}  // namespace polarforge
