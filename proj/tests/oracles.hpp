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
//
// Independent brute-force reference implementations of the quality metrics.
// These are deliberately naive (direct formulas, no shared code with the
// library) so library results can be validated against them.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "polarforge/core/image.hpp"

namespace pftest::oracle {

using polarforge::ColorImage;
using polarforge::Plane;

inline double psnr(const ColorImage& x, const ColorImage& gt) {
  double sq = 0.0;
  std::int64_t n = 0;
  for (int c = 0; c < 3; ++c) {
    for (size_t k = 0; k < x.channels[c].size(); ++k) {
      const double d = static_cast<double>(x.channels[c].data[k]) -
                       static_cast<double>(gt.channels[c].data[k]);
      sq += d * d;
      ++n;
    }
  }
  const double mse = sq / static_cast<double>(n);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

/// Direct per-window SSIM: explicit 11x11 normalized Gaussian, sigma 1.5,
/// K1 = 0.01, K2 = 0.03, dynamic range 1, valid window positions only.
inline double ssim(const ColorImage& x, const ColorImage& gt) {
  constexpr int kHalf = 5;
  constexpr double kSigma = 1.5;
  constexpr double kC1 = 0.01 * 0.01;
  constexpr double kC2 = 0.03 * 0.03;

  double kernel[11][11];
  double total = 0.0;
  for (int dy = -kHalf; dy <= kHalf; ++dy) {
    for (int dx = -kHalf; dx <= kHalf; ++dx) {
      const double w = std::exp(-(dy * dy + dx * dx) / (2.0 * kSigma * kSigma));
      kernel[dy + kHalf][dx + kHalf] = w;
      total += w;
    }
  }
  for (auto& row : kernel) {
    for (double& w : row) w /= total;
  }

  double channel_sum = 0.0;
  for (int c = 0; c < 3; ++c) {
    const Plane& a = x.channels[c];
    const Plane& b = gt.channels[c];
    double acc = 0.0;
    std::int64_t windows = 0;
    for (int y = kHalf; y < a.height - kHalf; ++y) {
      for (int xx = kHalf; xx < a.width - kHalf; ++xx) {
        double mu_a = 0.0, mu_b = 0.0;
        for (int dy = -kHalf; dy <= kHalf; ++dy) {
          for (int dx = -kHalf; dx <= kHalf; ++dx) {
            const double w = kernel[dy + kHalf][dx + kHalf];
            mu_a += w * a.at(y + dy, xx + dx);
            mu_b += w * b.at(y + dy, xx + dx);
          }
        }
        double var_a = 0.0, var_b = 0.0, cov = 0.0;
        for (int dy = -kHalf; dy <= kHalf; ++dy) {
          for (int dx = -kHalf; dx <= kHalf; ++dx) {
            const double w = kernel[dy + kHalf][dx + kHalf];
            const double da = a.at(y + dy, xx + dx) - mu_a;
            const double db = b.at(y + dy, xx + dx) - mu_b;
            var_a += w * da * da;
            var_b += w * db * db;
            cov += w * da * db;
          }
        }
        acc += ((2.0 * mu_a * mu_b + kC1) * (2.0 * cov + kC2)) /
               ((mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2));
        ++windows;
      }
    }
    channel_sum += acc / static_cast<double>(windows);
  }
  return channel_sum / 3.0;
}

inline double mae_angular_deg(const ColorImage& theta, const ColorImage& theta_gt) {
  double acc = 0.0;
  std::int64_t n = 0;
  for (int c = 0; c < 3; ++c) {
    for (size_t k = 0; k < theta.channels[c].size(); ++k) {
      double d = std::abs(static_cast<double>(theta.channels[c].data[k]) -
                          static_cast<double>(theta_gt.channels[c].data[k]));
      d = std::fmod(d, std::numbers::pi);
      if (d < 0.0) d += std::numbers::pi;
      acc += std::min(d, std::numbers::pi - d);
      ++n;
    }
  }
  return (acc / static_cast<double>(n)) * 180.0 / std::numbers::pi;
}

inline double error_rate(const ColorImage& v, const ColorImage& v_gt) {
  double num = 0.0;
  double den = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (size_t k = 0; k < v.channels[c].size(); ++k) {
      num += std::abs(static_cast<double>(v.channels[c].data[k]) -
                      static_cast<double>(v_gt.channels[c].data[k]));
      den += v.channels[c].data[k];
    }
  }
  return num / den;
}

}  // namespace pftest::oracle
