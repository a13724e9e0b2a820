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

#include <string>
#include <vector>

#include <json.hpp>

#include "polarforge/core/image.hpp"
#include "polarforge/polarimetry/polarimetry.hpp"

namespace polarforge::metrics {

/// Peak signal-to-noise ratio in dB with peak 1.0, MSE pooled over channels.
/// Returns +infinity for identical inputs.
double psnr(const ColorImage& x, const ColorImage& gt);

/// Single-scale SSIM: 11x11 Gaussian window (sigma 1.5), K1 = 0.01,
/// K2 = 0.03, dynamic range 1.0, averaged over valid window positions and
/// channels. Requires dims >= 11.
double ssim(const ColorImage& x, const ColorImage& gt);

/// Mean angular error in degrees with pi-periodic distance; inputs in radians.
double mae_angular(const ColorImage& theta, const ColorImage& theta_gt);

/// Error rate: sum |v - v_gt| / sum v, pooled over channels. The prediction
/// sum must be positive.
double error_rate(const ColorImage& v, const ColorImage& v_gt);

/// Error rate for angle planes: pi-periodic distances in the numerator; the
/// [0,1] normalization by pi cancels between numerator and denominator.
double error_rate_angular(const ColorImage& theta, const ColorImage& theta_gt);

/// Loss decomposition: image term (polarization identity L1 of the prediction
/// plus gradient loss against ground truth), Stokes term (S0 gradient loss
/// plus S1/S2 L1), polarization term (DoP L1 plus pi-periodic AoP L1), and
/// the 1/10/10 weighted total.
struct LossTerms {
  double img = 0.0;
  double stokes = 0.0;
  double pol = 0.0;
  double total = 0.0;
};

inline constexpr double kLossWeightImg = 1.0;
inline constexpr double kLossWeightStokes = 10.0;
inline constexpr double kLossWeightPol = 10.0;

LossTerms loss_terms(const PolarStack& pred, const PolarStack& gt);

/// One PSNR/SSIM row of the evaluation report.
struct QualityEntry {
  double psnr = 0.0;
  double ssim = 0.0;
  bool identical = false;  // true when PSNR is the infinite sentinel
};

/// Per-quantity evaluation: the four polarized images, S0 and DoP
/// (PSNR + SSIM each), and AoP (MAE in degrees).
struct EvalReport {
  std::string method;
  std::string scale;
  int scene_count = 1;
  std::array<QualityEntry, 4> images{};
  QualityEntry s0{};
  QualityEntry dop{};
  double aop_mae_deg = 0.0;

  nlohmann::json to_json() const;
  static EvalReport from_json(const nlohmann::json& j);
};

EvalReport evaluate(const PolarStack& pred, const PolarStack& gt,
                    const std::string& scale_tag, const std::string& method_name);

/// Unweighted mean of per-scene reports (method/scale taken from the first).
EvalReport aggregate(const std::vector<EvalReport>& reports);

}  // namespace polarforge::metrics
