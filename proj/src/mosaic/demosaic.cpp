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

#include "polarforge/mosaic/demosaic.hpp"

#include <cmath>
#include <vector>

namespace polarforge::mosaic {

namespace {

void require_tile_dims(int h, int w) {
  if (h % 4 != 0 || w % 4 != 0 || h == 0 || w == 0)
    throw std::invalid_argument("raw dimensions must be non-zero multiples of 4");
}

// Neighbor fetch for half-res CFA planes: out-of-range coordinates step back
// by 2 so the read stays on a same-channel site.
inline float fetch2(const Plane& p, int y, int x) {
  if (y < 0) y += 2;
  else if (y >= p.height) y -= 2;
  if (x < 0) x += 2;
  else if (x >= p.width) x -= 2;
  return p.at(y, x);
}

enum class FillRule { Copy, HorizontalPair, VerticalPair, Diagonal4, Cross4 };

// How to obtain `channel` at a pixel whose 2x2 position class is `pos`.
FillRule fill_rule(const BayerDescriptor& bayer, int pos, int channel) {
  const int py = pos / 2;
  const int px = pos % 2;
  if (bayer.channels[pos] == channel) return FillRule::Copy;
  const bool row = bayer.channels[py * 2 + (1 - px)] == channel;
  const bool col = bayer.channels[(1 - py) * 2 + px] == channel;
  if (row && col) return FillRule::Cross4;
  if (row) return FillRule::HorizontalPair;
  if (col) return FillRule::VerticalPair;
  return FillRule::Diagonal4;
}

}  // namespace

MaskSet build_masks(const CpfaPattern& pattern, int h, int w) {
  require_tile_dims(h, w);
  MaskSet masks;
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 3; ++c) masks[a][c] = Plane(h, w, 0.0f);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const CpfaCell& cell = pattern.cell(y, x);
      masks[cell.angle][cell.channel].at(y, x) = 1.0f;
    }
  }
  return masks;
}

CpfaRaw mosaic(const PolarStack& stack, const CpfaPattern& pattern) {
  const int h = stack.height();
  const int w = stack.width();
  require_tile_dims(h, w);
  CpfaRaw raw;
  raw.pattern = pattern;
  raw.plane = Plane(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const CpfaCell& cell = pattern.cell(y, x);
      raw.plane.at(y, x) = stack.images[cell.angle].channels[cell.channel].at(y, x);
    }
  }
  return raw;
}

AngleCfa extract_angle_cfa(const CpfaRaw& raw, int angle) {
  require_tile_dims(raw.plane.height, raw.plane.width);
  if (angle < 0 || angle > 3) throw std::invalid_argument("angle index out of range");
  const auto [ry, rx] = raw.pattern.angle_offset(angle);
  AngleCfa out;
  out.bayer = raw.pattern.bayer();
  out.plane = Plane(raw.plane.height / 2, raw.plane.width / 2);
  for (int y = 0; y < out.plane.height; ++y)
    for (int x = 0; x < out.plane.width; ++x)
      out.plane.at(y, x) = raw.plane.at(2 * y + ry, 2 * x + rx);
  return out;
}

ColorImage cfa_demosaic_bilinear(const Plane& cfa, const BayerDescriptor& bayer) {
  if (cfa.empty()) throw std::invalid_argument("empty plane");
  if (cfa.height % 2 != 0 || cfa.width % 2 != 0)
    throw std::invalid_argument("CFA dimensions must be even");

  FillRule rules[4][3];
  for (int pos = 0; pos < 4; ++pos)
    for (int c = 0; c < 3; ++c) rules[pos][c] = fill_rule(bayer, pos, c);

  const int h = cfa.height;
  const int w = cfa.width;
  ColorImage out(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int pos = (y & 1) * 2 + (x & 1);
      for (int c = 0; c < 3; ++c) {
        float v = 0.0f;
        switch (rules[pos][c]) {
          case FillRule::Copy:
            v = cfa.at(y, x);
            break;
          case FillRule::HorizontalPair:
            v = static_cast<float>(
                (static_cast<double>(fetch2(cfa, y, x - 1)) + fetch2(cfa, y, x + 1)) * 0.5);
            break;
          case FillRule::VerticalPair:
            v = static_cast<float>(
                (static_cast<double>(fetch2(cfa, y - 1, x)) + fetch2(cfa, y + 1, x)) * 0.5);
            break;
          case FillRule::Diagonal4:
            v = static_cast<float>((static_cast<double>(fetch2(cfa, y - 1, x - 1)) +
                                    fetch2(cfa, y - 1, x + 1) + fetch2(cfa, y + 1, x - 1) +
                                    fetch2(cfa, y + 1, x + 1)) *
                                   0.25);
            break;
          case FillRule::Cross4:
            v = static_cast<float>((static_cast<double>(fetch2(cfa, y - 1, x)) +
                                    fetch2(cfa, y + 1, x) + fetch2(cfa, y, x - 1) +
                                    fetch2(cfa, y, x + 1)) *
                                   0.25);
            break;
        }
        out.channels[c].at(y, x) = v;
      }
    }
  }
  return out;
}

PolarStack convert_raw_to_halfres(const CpfaRaw& raw) {
  PolarStack out;
  for (int a = 0; a < 4; ++a) {
    const AngleCfa cfa = extract_angle_cfa(raw, a);
    out.images[a] = cfa_demosaic_bilinear(cfa.plane, cfa.bayer);
  }
  return out;
}

PolarStack cpfa_demosaic_bilinear(const CpfaRaw& raw) {
  const int h = raw.plane.height;
  const int w = raw.plane.width;
  require_tile_dims(h, w);

  struct Entry {
    int dy, dx;
    double weight;
  };
  // Splat weights depend only on the pixel's 4x4 phase; precompute the
  // normalized gather list per (angle, channel, phase).
  std::vector<Entry> tables[4][3][16];
  for (int a = 0; a < 4; ++a) {
    for (int c = 0; c < 3; ++c) {
      for (int phase = 0; phase < 16; ++phase) {
        const int py = phase / 4;
        const int px = phase % 4;
        double wsum = 0.0;
        std::vector<Entry>& entries = tables[a][c][phase];
        for (int dy = -3; dy <= 3; ++dy) {
          for (int dx = -3; dx <= 3; ++dx) {
            const CpfaCell& cell = raw.pattern.cell(py + dy, px + dx);
            if (cell.angle != a || cell.channel != c) continue;
            const double weight = (1.0 - std::abs(dy) / 4.0) * (1.0 - std::abs(dx) / 4.0);
            entries.push_back({dy, dx, weight});
            wsum += weight;
          }
        }
        for (Entry& e : entries) e.weight /= wsum;
      }
    }
  }

  PolarStack out(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int phase = (y % 4) * 4 + (x % 4);
      for (int a = 0; a < 4; ++a) {
        for (int c = 0; c < 3; ++c) {
          double acc = 0.0;
          for (const Entry& e : tables[a][c][phase]) {
            int sy = y + e.dy;
            int sx = x + e.dx;
            // Step back one tile period to stay in range on the same lattice.
            if (sy < 0) sy += 4;
            else if (sy >= h) sy -= 4;
            if (sx < 0) sx += 4;
            else if (sx >= w) sx -= 4;
            acc += e.weight * raw.plane.at(sy, sx);
          }
          out.images[a].channels[c].at(y, x) = static_cast<float>(acc);
        }
      }
    }
  }

  // Measured samples pass through bit-exactly.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const CpfaCell& cell = raw.pattern.cell(y, x);
      out.images[cell.angle].channels[cell.channel].at(y, x) = raw.plane.at(y, x);
    }
  }
  return out;
}

}  // namespace polarforge::mosaic
