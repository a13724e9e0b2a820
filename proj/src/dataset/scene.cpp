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

#include "polarforge/dataset/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "polarforge/dataset/rng.hpp"

namespace polarforge::dataset {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * std::numbers::pi;

// Draw streams; the scene seed plus one of these tags keys every parameter.
constexpr std::uint64_t kStreamS0 = 0x501;
constexpr std::uint64_t kStreamDop = 0x502;
constexpr std::uint64_t kStreamAop = 0x503;

// Smooth 0->1 ramp over x in [-1, 1], clamped outside.
double smooth_edge(double x) {
  const double t = std::clamp(0.5 * (x + 1.0), 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

// Half-width (in normalized units) of piecewise-kind edge transitions; wide
// enough that area downsampling by 2 stays within the resolution-consistency
// budget at the smallest supported sizes.
constexpr double kEdgeHalfWidth = 0.03;

// A normalized pattern in [-1, 1] as a continuous function of (u, v),
// parameterized entirely by counter-based draws from (seed, stream).
class PatternField {
 public:
  PatternField(SceneKind kind, std::uint64_t seed, std::uint64_t stream)
      : kind_(kind) {
    auto draw = [&](std::uint64_t idx) { return rng::uniform(seed, stream, idx); };
    switch (kind_) {
      case SceneKind::kGradient: {
        phi_[0] = draw(0) * kTau;
        break;
      }
      case SceneKind::kBlobs: {
        double total = 0.0;
        for (int k = 0; k < kBlobCount; ++k) {
          const std::uint64_t base = 8ULL * static_cast<std::uint64_t>(k);
          cx_[k] = 0.15 + 0.70 * draw(base + 0);
          cy_[k] = 0.15 + 0.70 * draw(base + 1);
          sigma_[k] = 0.08 + 0.10 * draw(base + 2);
          w_[k] = (0.5 + 0.5 * draw(base + 3)) * (draw(base + 4) < 0.5 ? -1.0 : 1.0);
          total += std::abs(w_[k]);
        }
        norm_ = total;
        break;
      }
      case SceneKind::kTexture: {
        double total = 0.0;
        for (int k = 0; k < kWaveCount; ++k) {
          const std::uint64_t base = 8ULL * static_cast<std::uint64_t>(k);
          fu_[k] = 0.8 + 2.4 * draw(base + 0);
          fv_[k] = 0.8 + 2.4 * draw(base + 1);
          ph_[k] = draw(base + 2) * kTau;
          w_[k] = 0.5 + 0.5 * draw(base + 3);
          total += w_[k];
        }
        norm_ = total;
        break;
      }
      case SceneKind::kPiecewise: {
        double total = 0.0;
        for (int k = 0; k < kEdgeCount; ++k) {
          const std::uint64_t base = 8ULL * static_cast<std::uint64_t>(k);
          phi_[k] = draw(base + 0) * kTau;
          th_[k] = -0.2 + 0.4 * draw(base + 1);
          w_[k] = (0.5 + 0.5 * draw(base + 2)) * (draw(base + 3) < 0.5 ? -1.0 : 1.0);
          total += std::abs(w_[k]);
        }
        norm_ = total;
        break;
      }
    }
  }

  double value(double u, double v) const {
    switch (kind_) {
      case SceneKind::kGradient: {
        const double c = std::cos(phi_[0]);
        const double s = std::sin(phi_[0]);
        const double d = (u - 0.5) * c + (v - 0.5) * s;
        return d / (0.5 * (std::abs(c) + std::abs(s)));
      }
      case SceneKind::kBlobs: {
        double acc = 0.0;
        for (int k = 0; k < kBlobCount; ++k) {
          const double du = u - cx_[k];
          const double dv = v - cy_[k];
          acc += w_[k] * std::exp(-(du * du + dv * dv) / (2.0 * sigma_[k] * sigma_[k]));
        }
        return acc / norm_;
      }
      case SceneKind::kTexture: {
        double acc = 0.0;
        for (int k = 0; k < kWaveCount; ++k) {
          acc += w_[k] * std::sin(kTau * (fu_[k] * u + fv_[k] * v) + ph_[k]);
        }
        return acc / norm_;
      }
      case SceneKind::kPiecewise: {
        double acc = 0.0;
        for (int k = 0; k < kEdgeCount; ++k) {
          const double d =
              (u - 0.5) * std::cos(phi_[k]) + (v - 0.5) * std::sin(phi_[k]) - th_[k];
          acc += w_[k] * (2.0 * smooth_edge(d / kEdgeHalfWidth) - 1.0);
        }
        return acc / norm_;
      }
    }
    return 0.0;
  }

 private:
  static constexpr int kBlobCount = 5;
  static constexpr int kWaveCount = 4;
  static constexpr int kEdgeCount = 3;

  SceneKind kind_;
  double norm_ = 1.0;
  std::array<double, kEdgeCount> phi_{};
  std::array<double, kEdgeCount> th_{};
  std::array<double, kBlobCount> cx_{};
  std::array<double, kBlobCount> cy_{};
  std::array<double, kBlobCount> sigma_{};
  std::array<double, kBlobCount> w_{};
  std::array<double, kWaveCount> fu_{};
  std::array<double, kWaveCount> fv_{};
  std::array<double, kWaveCount> ph_{};
};

}  // namespace

std::string to_string(SceneKind kind) {
  switch (kind) {
    case SceneKind::kGradient:
      return "gradient";
    case SceneKind::kBlobs:
      return "blobs";
    case SceneKind::kTexture:
      return "texture";
    case SceneKind::kPiecewise:
      return "piecewise";
  }
  throw std::invalid_argument("unknown scene kind");
}

SceneKind scene_kind_from_string(const std::string& name) {
  if (name == "gradient") return SceneKind::kGradient;
  if (name == "blobs") return SceneKind::kBlobs;
  if (name == "texture") return SceneKind::kTexture;
  if (name == "piecewise") return SceneKind::kPiecewise;
  throw std::invalid_argument("unknown scene kind '" + name +
                              "' (expected gradient|blobs|texture|piecewise)");
}

void SceneSpec::validate() const {
  if (height <= 0 || width <= 0) {
    throw std::invalid_argument("scene dims must be positive, got " +
                                std::to_string(height) + "x" + std::to_string(width));
  }
  if (!(p_range[0] >= 0.0 && p_range[0] <= p_range[1] && p_range[1] <= 1.0)) {
    throw std::invalid_argument("p_range must satisfy 0 <= lo <= hi <= 1");
  }
  if (!(noise_sigma >= 0.0)) {
    throw std::invalid_argument("noise_sigma must be >= 0");
  }
}

void SceneSpec::validate_for_rounds(int rounds) const {
  validate();
  if (rounds < 0) {
    throw std::invalid_argument("rounds must be >= 0, got " + std::to_string(rounds));
  }
  const int divisor = 4 * (1 << rounds);
  if (height % divisor != 0 || width % divisor != 0) {
    throw std::invalid_argument(
        "scene dims " + std::to_string(height) + "x" + std::to_string(width) +
        " must be divisible by " + std::to_string(divisor) + " (4 * 2^rounds)");
  }
}

nlohmann::json SceneSpec::to_json() const {
  return nlohmann::json{{"seed", seed},
                        {"height", height},
                        {"width", width},
                        {"kind", to_string(kind)},
                        {"p_range", p_range},
                        {"noise_sigma", noise_sigma}};
}

SceneSpec SceneSpec::from_json(const nlohmann::json& j) {
  SceneSpec spec;
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.height = j.at("height").get<int>();
  spec.width = j.at("width").get<int>();
  spec.kind = scene_kind_from_string(j.at("kind").get<std::string>());
  spec.p_range = j.at("p_range").get<std::array<double, 2>>();
  spec.noise_sigma = j.at("noise_sigma").get<double>();
  spec.validate();
  return spec;
}

SceneFields synth_scene(const SceneSpec& spec) {
  spec.validate();
  const int h = spec.height;
  const int w = spec.width;
  const std::uint64_t seed = spec.seed;

  // Intensity carries the kind's full structure (albedo and shading may be
  // arbitrarily textured); the polarization state follows surface geometry,
  // which is piecewise-smooth at object scale, so the texture kind swaps its
  // dense waves for smooth blobs in the DoP/AoP fields.
  const SceneKind pol_kind =
      spec.kind == SceneKind::kTexture ? SceneKind::kBlobs : spec.kind;

  const PatternField s0_field(spec.kind, seed, kStreamS0);
  const PatternField dop_field(pol_kind, seed, kStreamDop);
  const PatternField aop_field(pol_kind, seed, kStreamAop);

  // s0 = mid + half * pattern stays in [0.04, 0.91] by the analytic bounds of
  // the drawn levels and the [-1, 1] pattern range, so every synthesized
  // intensity lives strictly inside [0, 1].
  const double mid = rng::uniform_in(0.40, 0.55, seed, kStreamS0, 100);
  const double half = rng::uniform_in(0.15, 0.30, seed, kStreamS0, 101);

  const double p_lo = spec.p_range[0];
  const double p_span = spec.p_range[1] - spec.p_range[0];

  // AoP = theta0 + swing * fold + wobble (+ small per-channel shift). The
  // wobble gives the angle surface-orientation-scale variation everywhere,
  // and the fold is one smooth oriented step that sweeps the angle past the
  // nearest end of [0, pi), so every scene crosses the wrap seam exactly
  // once. The overshoot exceeds the wobble-plus-shift amplitude, which keeps
  // the crossing guaranteed per channel, and the total range stays inside a
  // single wrap for any theta0 draw. DoP relaxes toward its lower bound
  // inside the fold band: where the angle turns fastest the light is least
  // polarized, mirroring how the angle loses definition as the polarized
  // fraction vanishes.
  const double theta0 = rng::uniform_in(0.10 * kPi, 0.90 * kPi, seed, kStreamAop, 200);
  const double fold_phi = rng::uniform(seed, kStreamAop, 201) * kTau;
  const double fold_t = -0.2 + 0.4 * rng::uniform(seed, kStreamAop, 202);
  constexpr double kFoldHalfWidth = 0.10;
  constexpr double kWobble = 0.30 * kPi;
  constexpr double kOvershoot = 0.40 * kPi;
  const bool sweep_up = theta0 >= 0.5 * kPi;
  const double swing = sweep_up ? (kPi - theta0) + kOvershoot : -(theta0 + kOvershoot);

  SceneFields fields;
  fields.s0 = ColorImage(h, w);
  fields.params = PolarParams(h, w);

  for (int c = 0; c < 3; ++c) {
    // Mild per-channel decorrelation, bounded so the analytic ranges hold.
    const double mid_c = mid + (rng::uniform(seed, kStreamS0, 110, c) - 0.5) * 0.06;
    const double half_c = half * (0.9 + 0.2 * rng::uniform(seed, kStreamS0, 111, c));
    const double dop_shift = (c - 1) * 0.15;
    const double aop_shift = (c - 1) * 0.02 * kPi;

    Plane& s0_plane = fields.s0.channels[c];
    Plane& dop_plane = fields.params.dop.channels[c];
    Plane& aop_plane = fields.params.aop.channels[c];
    for (int y = 0; y < h; ++y) {
      const double v = (y + 0.5) / h;
      for (int x = 0; x < w; ++x) {
        const double u = (x + 0.5) / w;

        const double s0 = mid_c + half_c * s0_field.value(u, v);
        s0_plane.at(y, x) = static_cast<float>(s0);

        const double d =
            (u - 0.5) * std::cos(fold_phi) + (v - 0.5) * std::sin(fold_phi) - fold_t;
        const double fold = smooth_edge(d / kFoldHalfWidth);
        const double depolarized = 4.0 * fold * (1.0 - fold);  // peaks mid-fold

        const double q =
            0.5 + 0.5 * std::sin(dop_field.value(u, v) * kPi + dop_shift);
        dop_plane.at(y, x) =
            static_cast<float>(p_lo + p_span * q * (1.0 - 0.85 * depolarized));

        const double theta = theta0 + swing * fold +
                             kWobble * aop_field.value(u, v) + aop_shift;
        aop_plane.at(y, x) = polar::wrap_half_circle(theta);
      }
    }
  }
  return fields;
}

PolarStack synth_scene_stack(const SceneSpec& spec) {
  const SceneFields fields = synth_scene(spec);
  return polar::synthesize_from_params(fields.s0, fields.params);
}

}  // namespace polarforge::dataset
