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

#include "polarforge/polarimetry/polarimetry.hpp"

#include <algorithm>
#include <cmath>

namespace polarforge::polar {

namespace {
constexpr double kPi = 3.14159265358979323846;
const float kPiF = static_cast<float>(kPi);  // rounds up, slightly above pi
}  // namespace

float wrap_half_circle(double theta) {
  theta = std::fmod(theta, kPi);
  if (theta < 0.0) theta += kPi;
  float t = static_cast<float>(theta);
  if (t >= kPiF) t -= kPiF;
  if (t < 0.0f) t = 0.0f;
  return t;
}

double angular_distance(double a, double b) {
  double d = std::abs(a - b);
  d = std::fmod(d, kPi);
  return std::min(d, kPi - d);
}

StokesStack compute_stokes(const PolarStack& stack) {
  const int h = stack.height();
  const int w = stack.width();
  StokesStack out(h, w);
  for (int c = 0; c < 3; ++c) {
    const Plane& i000 = stack.i000().channels[c];
    const Plane& i045 = stack.i045().channels[c];
    const Plane& i090 = stack.i090().channels[c];
    const Plane& i135 = stack.i135().channels[c];
    Plane& s0 = out.s0.channels[c];
    Plane& s1 = out.s1.channels[c];
    Plane& s2 = out.s2.channels[c];
    for (size_t k = 0; k < i000.size(); ++k) {
      const double a = i000.data[k];
      const double b = i045.data[k];
      const double cc = i090.data[k];
      const double d = i135.data[k];
      s0.data[k] = static_cast<float>((a + b + cc + d) * 0.5);
      s1.data[k] = static_cast<float>(cc - a);
      s2.data[k] = static_cast<float>(d - b);
    }
  }
  return out;
}

PolarParams compute_params(const StokesStack& stokes) {
  const int h = stokes.height();
  const int w = stokes.width();
  PolarParams out(h, w);
  for (int c = 0; c < 3; ++c) {
    const Plane& s0 = stokes.s0.channels[c];
    const Plane& s1 = stokes.s1.channels[c];
    const Plane& s2 = stokes.s2.channels[c];
    Plane& dop = out.dop.channels[c];
    Plane& aop = out.aop.channels[c];
    for (size_t k = 0; k < s0.size(); ++k) {
      const double x = s1.data[k];
      const double y = s2.data[k];
      const double denom = std::max(static_cast<double>(s0.data[k]), kS0Epsilon);
      dop.data[k] = static_cast<float>(std::clamp(std::hypot(x, y) / denom, 0.0, 1.0));
      if (x == 0.0 && y == 0.0) {
        aop.data[k] = 0.0f;
      } else {
        aop.data[k] = wrap_half_circle(0.5 * std::atan2(y, x));
      }
    }
  }
  return out;
}

PolarStack synthesize_from_params(const ColorImage& s0, const PolarParams& params) {
  require_same_dims(s0, params.dop, "synthesize_from_params");
  require_same_dims(s0, params.aop, "synthesize_from_params");
  const int h = s0.height();
  const int w = s0.width();
  StokesStack stokes(h, w);
  stokes.s0 = s0;
  for (int c = 0; c < 3; ++c) {
    const Plane& s0c = s0.channels[c];
    const Plane& p = params.dop.channels[c];
    const Plane& theta = params.aop.channels[c];
    Plane& s1 = stokes.s1.channels[c];
    Plane& s2 = stokes.s2.channels[c];
    for (size_t k = 0; k < s0c.size(); ++k) {
      const double amp = static_cast<double>(s0c.data[k]) * p.data[k];
      const double two_theta = 2.0 * theta.data[k];
      s1.data[k] = static_cast<float>(amp * std::cos(two_theta));
      s2.data[k] = static_cast<float>(amp * std::sin(two_theta));
    }
  }
  return synthesize_from_stokes(stokes);
}

PolarStack synthesize_from_stokes(const StokesStack& stokes) {
  const int h = stokes.height();
  const int w = stokes.width();
  PolarStack out(h, w);
  for (int c = 0; c < 3; ++c) {
    const Plane& s0 = stokes.s0.channels[c];
    const Plane& s1 = stokes.s1.channels[c];
    const Plane& s2 = stokes.s2.channels[c];
    Plane& i000 = out.i000().channels[c];
    Plane& i045 = out.i045().channels[c];
    Plane& i090 = out.i090().channels[c];
    Plane& i135 = out.i135().channels[c];
    for (size_t k = 0; k < s0.size(); ++k) {
      const double a = s0.data[k];
      const double x = s1.data[k];
      const double y = s2.data[k];
      i000.data[k] = static_cast<float>(std::max(0.0, (a - x) * 0.5));
      i090.data[k] = static_cast<float>(std::max(0.0, (a + x) * 0.5));
      i045.data[k] = static_cast<float>(std::max(0.0, (a - y) * 0.5));
      i135.data[k] = static_cast<float>(std::max(0.0, (a + y) * 0.5));
    }
  }
  return out;
}

void clamp_to_physical(StokesStack& stokes) {
  for (int c = 0; c < 3; ++c) {
    Plane& s0 = stokes.s0.channels[c];
    Plane& s1 = stokes.s1.channels[c];
    Plane& s2 = stokes.s2.channels[c];
    for (size_t k = 0; k < s0.size(); ++k) {
      const double a = std::clamp(static_cast<double>(s0.data[k]), 0.0, 1.0);
      s0.data[k] = static_cast<float>(a);
      const double norm = std::hypot(static_cast<double>(s1.data[k]),
                                     static_cast<double>(s2.data[k]));
      if (norm > a) {  // norm > a >= 0, so norm > 0 and the quotient is safe
        const double scale = a / norm;
        s1.data[k] = static_cast<float>(s1.data[k] * scale);
        s2.data[k] = static_cast<float>(s2.data[k] * scale);
      }
    }
  }
}

PolarStack consistency_project(const PolarStack& stack) {
  const int h = stack.height();
  const int w = stack.width();
  PolarStack out(h, w);
  for (int c = 0; c < 3; ++c) {
    const Plane& i000 = stack.i000().channels[c];
    const Plane& i045 = stack.i045().channels[c];
    const Plane& i090 = stack.i090().channels[c];
    const Plane& i135 = stack.i135().channels[c];
    Plane& o000 = out.i000().channels[c];
    Plane& o045 = out.i045().channels[c];
    Plane& o090 = out.i090().channels[c];
    Plane& o135 = out.i135().channels[c];
    for (size_t k = 0; k < i000.size(); ++k) {
      const double d = (static_cast<double>(i000.data[k]) + i090.data[k] -
                        i045.data[k] - i135.data[k]) * 0.25;
      o000.data[k] = static_cast<float>(std::max(0.0, i000.data[k] - d));
      o090.data[k] = static_cast<float>(std::max(0.0, i090.data[k] - d));
      o045.data[k] = static_cast<float>(std::max(0.0, i045.data[k] + d));
      o135.data[k] = static_cast<float>(std::max(0.0, i135.data[k] + d));
    }
  }
  return out;
}

ColorImage average_image(const PolarStack& stack) {
  const int h = stack.height();
  const int w = stack.width();
  ColorImage out(h, w);
  for (int c = 0; c < 3; ++c) {
    Plane& dst = out.channels[c];
    for (size_t k = 0; k < dst.size(); ++k) {
      const double sum = static_cast<double>(stack.i000().channels[c].data[k]) +
                         stack.i045().channels[c].data[k] +
                         stack.i090().channels[c].data[k] +
                         stack.i135().channels[c].data[k];
      dst.data[k] = static_cast<float>(sum * 0.25);
    }
  }
  return out;
}

double max_identity_violation(const PolarStack& stack) {
  double worst = 0.0;
  for (int c = 0; c < 3; ++c) {
    const Plane& i000 = stack.i000().channels[c];
    const Plane& i045 = stack.i045().channels[c];
    const Plane& i090 = stack.i090().channels[c];
    const Plane& i135 = stack.i135().channels[c];
    for (size_t k = 0; k < i000.size(); ++k) {
      const double v = std::abs(static_cast<double>(i000.data[k]) + i090.data[k] -
                                i045.data[k] - i135.data[k]);
      worst = std::max(worst, v);
    }
  }
  return worst;
}

}  // namespace polarforge::polar
