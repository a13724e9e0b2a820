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

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "polarforge/core/filters.hpp"
#include "polarforge/core/image.hpp"
#include "polarforge/core/resample.hpp"
#include "test_util.hpp"

using namespace polarforge;
using namespace polarforge::core;

TEST_CASE("plane storage is row-major with the declared dims") {
  Plane p(2, 3, 0.0f);
  CHECK(p.height == 2);
  CHECK(p.width == 3);
  CHECK(p.size() == 6);
  p.at(1, 2) = 7.0f;
  CHECK(p.data[5] == 7.0f);
}

TEST_CASE("require_same_dims names both shapes") {
  Plane a(2, 3);
  Plane b(4, 5);
  CHECK_THROWS_WITH_AS(require_same_dims(a, b, "test"),
                       doctest::Contains("2x3"), std::invalid_argument);
  CHECK_NOTHROW(require_same_dims(a, a, "test"));
}

TEST_CASE("clamp and finiteness helpers") {
  Plane p(1, 3);
  p.at(0, 0) = -1.0f;
  p.at(0, 1) = 0.5f;
  p.at(0, 2) = 2.0f;
  CHECK(all_finite(p));
  clamp_plane(p, 0.0f, 1.0f);
  CHECK(p.at(0, 0) == 0.0f);
  CHECK(p.at(0, 1) == 0.5f);
  CHECK(p.at(0, 2) == 1.0f);
  p.at(0, 1) = std::nanf("");
  CHECK_FALSE(all_finite(p));
}

TEST_CASE("bilinear resample of a constant plane is that constant") {
  Plane p(5, 3, 0.7f);
  const Plane up = resample_bilinear(p, 12, 9);
  CHECK(up.height == 12);
  CHECK(up.width == 9);
  for (const float v : up.data) {
    CHECK(v == 0.7f);
  }
}

TEST_CASE("bilinear resample 2x1 -> 4x1 hand values") {
  // Half-pixel centers: target rows map to source rows -0.25, 0.25, 0.75,
  // 1.25; the outer two clamp to the border samples.
  Plane p(2, 1);
  p.at(0, 0) = 0.0f;
  p.at(1, 0) = 1.0f;
  const Plane up = resample_bilinear(p, 4, 1);
  CHECK(up.at(0, 0) == 0.0f);
  CHECK(up.at(1, 0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(up.at(2, 0) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(up.at(3, 0) == 1.0f);
}

TEST_CASE("identity resize is bit-identical") {
  const Plane p = pftest::random_plane(7, 5, 42);
  const Plane same = resample_bilinear(p, 7, 5);
  CHECK(pftest::bit_equal(p, same));
}

TEST_CASE("bilinear resample is exact on affine planes at interior targets") {
  Plane p(8, 8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      p.at(y, x) = static_cast<float>(0.1 + 0.02 * x + 0.03 * y);
    }
  }
  const Plane up = resample_bilinear(p, 16, 16);
  for (int y = 1; y < 15; ++y) {
    for (int x = 1; x < 15; ++x) {
      const double sy = (y + 0.5) * 0.5 - 0.5;
      const double sx = (x + 0.5) * 0.5 - 0.5;
      const double expected = 0.1 + 0.02 * sx + 0.03 * sy;
      CHECK(up.at(y, x) == doctest::Approx(expected).epsilon(1e-6));
    }
  }
}

TEST_CASE("resample rejects empty planes and bad dims") {
  Plane empty;
  CHECK_THROWS_WITH_AS(resample_bilinear(empty, 2, 2), doctest::Contains("empty plane"),
                       std::invalid_argument);
  Plane p(2, 2, 0.0f);
  CHECK_THROWS_AS(resample_bilinear(p, 0, 2), std::invalid_argument);
}

TEST_CASE("area downsample examples") {
  Plane p(2, 2);
  p.at(0, 0) = 0.0f;
  p.at(0, 1) = 1.0f;
  p.at(1, 0) = 1.0f;
  p.at(1, 1) = 0.0f;
  const Plane down = downsample_area(p, 2);
  CHECK(down.height == 1);
  CHECK(down.width == 1);
  CHECK(down.at(0, 0) == 0.5f);

  const Plane c(6, 4, 0.3f);
  const Plane down_c = downsample_area(c, 2);
  for (const float v : down_c.data) CHECK(v == 0.3f);
}

TEST_CASE("area downsample of a 4x4 ramp matches block means") {
  Plane p(4, 4);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) {
      p.at(y, x) = static_cast<float>(y * 4 + x) / 16.0f;
    }
  }
  const Plane down = downsample_area(p, 2);
  for (int by = 0; by < 2; ++by) {
    for (int bx = 0; bx < 2; ++bx) {
      double mean = 0.0;
      for (int dy = 0; dy < 2; ++dy) {
        for (int dx = 0; dx < 2; ++dx) {
          mean += p.at(2 * by + dy, 2 * bx + dx) / 4.0;
        }
      }
      CHECK(down.at(by, bx) == doctest::Approx(mean).epsilon(1e-9));
    }
  }
}

TEST_CASE("area downsample errors and mean preservation") {
  Plane p(6, 6, 0.0f);
  CHECK_THROWS_WITH_AS(downsample_area(p, 4),
                       doctest::Contains("dimension not divisible by factor"),
                       std::invalid_argument);

  const Plane r = pftest::random_plane(8, 8, 9);
  const Plane down = downsample_area(r, 2);
  double mean_src = 0.0, mean_down = 0.0;
  for (const float v : r.data) mean_src += v / static_cast<double>(r.size());
  for (const float v : down.data) mean_down += v / static_cast<double>(down.size());
  CHECK(mean_down == doctest::Approx(mean_src).epsilon(1e-6));
}

TEST_CASE("downsample then upsample of a constant returns that constant") {
  const Plane c(8, 8, 0.7f);
  const Plane round = resample_bilinear(downsample_area(c, 2), 8, 8);
  for (const float v : round.data) CHECK(v == 0.7f);
}

TEST_CASE("gradient_l1 examples") {
  const Plane a = pftest::random_plane(5, 5, 3);
  CHECK(gradient_l1(a, a) == 0.0);

  const Plane c1(4, 4, 0.2f);
  const Plane c2(4, 4, 0.9f);
  CHECK(gradient_l1(c1, c2) == 0.0);

  // x-ramp with step 0.1 vs constant on 3x3: the six x-pairs each contribute
  // 0.1, the six y-pairs contribute 0.
  Plane ramp(3, 3);
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 3; ++x) {
      ramp.at(y, x) = 0.1f * static_cast<float>(x);
    }
  }
  const Plane flat(3, 3, 0.4f);
  CHECK(gradient_l1(ramp, flat) == doctest::Approx(0.1).epsilon(1e-6));

  Plane other(3, 4, 0.0f);
  CHECK_THROWS_AS(gradient_l1(ramp, other), std::invalid_argument);
}

TEST_CASE("median filter radius 0 is the identity") {
  const Plane p = pftest::random_plane(6, 7, 11);
  CHECK(pftest::bit_equal(median_filter(p, 0), p));
}

TEST_CASE("median filter removes an isolated impulse") {
  Plane p(5, 5, 0.0f);
  p.at(2, 2) = 1.0f;
  const Plane filtered = median_filter(p, 1);
  for (const float v : filtered.data) CHECK(v == 0.0f);
}

TEST_CASE("median filter preserves constants and clamps at borders") {
  const Plane c(4, 4, 0.6f);
  const Plane filtered = median_filter(c, 1);
  for (const float v : filtered.data) CHECK(v == 0.6f);

  // 3x3 ramp corner: the clamped window multiset is {0,0,0,0,1,1,3,3,4},
  // median 1.
  Plane ramp(3, 3);
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 3; ++x) {
      ramp.at(y, x) = static_cast<float>(y * 3 + x);
    }
  }
  CHECK(median_filter(ramp, 1).at(0, 0) == 1.0f);

  CHECK_THROWS_AS(median_filter(c, 3), std::invalid_argument);
}

TEST_CASE("3x3 box filter preserves constants exactly") {
  const Plane c(5, 5, 0.37f);
  const Plane blurred = box_filter3(c);
  for (const float v : blurred.data) CHECK(v == 0.37f);
}
