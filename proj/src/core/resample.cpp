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

#include "polarforge/core/resample.hpp"

#include <algorithm>
#include <cmath>

namespace polarforge::core {

namespace {

// lerp keeps constants exact: a + t*(a-a) == a for any t.
inline double lerp(double a, double b, double t) { return a + t * (b - a); }

struct AxisSample {
  int lo;
  int hi;
  double frac;
};

inline AxisSample axis_sample(int i, int out_n, int src_n) {
  const double scale = static_cast<double>(src_n) / out_n;
  double coord = (i + 0.5) * scale - 0.5;
  coord = std::clamp(coord, 0.0, static_cast<double>(src_n - 1));
  const int lo = static_cast<int>(coord);
  const int hi = std::min(lo + 1, src_n - 1);
  return {lo, hi, coord - lo};
}

}  // namespace

Plane resample_bilinear(const Plane& src, int out_h, int out_w) {
  if (src.empty()) throw std::invalid_argument("empty plane");
  if (out_h < 1 || out_w < 1) throw std::invalid_argument("output dimensions must be >= 1");
  if (out_h == src.height && out_w == src.width) return src;

  Plane out(out_h, out_w);
  std::vector<AxisSample> cols(out_w);
  for (int x = 0; x < out_w; ++x) cols[x] = axis_sample(x, out_w, src.width);

  for (int y = 0; y < out_h; ++y) {
    const AxisSample ys = axis_sample(y, out_h, src.height);
    const float* row_lo = &src.data[static_cast<size_t>(ys.lo) * src.width];
    const float* row_hi = &src.data[static_cast<size_t>(ys.hi) * src.width];
    float* dst = &out.data[static_cast<size_t>(y) * out_w];
    for (int x = 0; x < out_w; ++x) {
      const AxisSample& xs = cols[x];
      const double top = lerp(row_lo[xs.lo], row_lo[xs.hi], xs.frac);
      const double bot = lerp(row_hi[xs.lo], row_hi[xs.hi], xs.frac);
      dst[x] = static_cast<float>(lerp(top, bot, ys.frac));
    }
  }
  return out;
}

Plane downsample_area(const Plane& src, int factor) {
  if (src.empty()) throw std::invalid_argument("empty plane");
  if (factor < 2) throw std::invalid_argument("downsample factor must be >= 2");
  if (src.height % factor != 0 || src.width % factor != 0)
    throw std::invalid_argument("dimension not divisible by factor");

  const int oh = src.height / factor;
  const int ow = src.width / factor;
  const double inv = 1.0 / (static_cast<double>(factor) * factor);
  Plane out(oh, ow);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int dy = 0; dy < factor; ++dy)
        for (int dx = 0; dx < factor; ++dx) acc += src.at(y * factor + dy, x * factor + dx);
      out.at(y, x) = static_cast<float>(acc * inv);
    }
  }
  return out;
}

double gradient_l1(const Plane& a, const Plane& b) {
  require_same_dims(a, b, "gradient_l1");
  double sum_x = 0.0;
  double sum_y = 0.0;
  const int h = a.height;
  const int w = a.width;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x + 1 < w; ++x) {
      const double ga = static_cast<double>(a.at(y, x + 1)) - a.at(y, x);
      const double gb = static_cast<double>(b.at(y, x + 1)) - b.at(y, x);
      sum_x += std::abs(ga - gb);
    }
  }
  for (int y = 0; y + 1 < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double ga = static_cast<double>(a.at(y + 1, x)) - a.at(y, x);
      const double gb = static_cast<double>(b.at(y + 1, x)) - b.at(y, x);
      sum_y += std::abs(ga - gb);
    }
  }
  const size_t nx = static_cast<size_t>(h) * (w > 0 ? w - 1 : 0);
  const size_t ny = static_cast<size_t>(w) * (h > 0 ? h - 1 : 0);
  double result = 0.0;
  if (nx > 0) result += sum_x / nx;
  if (ny > 0) result += sum_y / ny;
  return result;
}

ColorImage resample_bilinear(const ColorImage& src, int out_h, int out_w) {
  ColorImage out;
  for (int c = 0; c < 3; ++c) out.channels[c] = resample_bilinear(src.channels[c], out_h, out_w);
  return out;
}

ColorImage downsample_area(const ColorImage& src, int factor) {
  ColorImage out;
  for (int c = 0; c < 3; ++c) out.channels[c] = downsample_area(src.channels[c], factor);
  return out;
}

PolarStack resample_bilinear(const PolarStack& src, int out_h, int out_w) {
  PolarStack out;
  for (int i = 0; i < 4; ++i) out.images[i] = resample_bilinear(src.images[i], out_h, out_w);
  return out;
}

PolarStack downsample_area(const PolarStack& src, int factor) {
  PolarStack out;
  for (int i = 0; i < 4; ++i) out.images[i] = downsample_area(src.images[i], factor);
  return out;
}

}  // namespace polarforge::core
