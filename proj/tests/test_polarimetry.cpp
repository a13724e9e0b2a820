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

#include "polarforge/polarimetry/polarimetry.hpp"
#include "test_util.hpp"

using namespace polarforge;
using namespace polarforge::polar;

namespace {

// One-pixel stack with the same quadruple in every channel.
PolarStack pixel_stack(float i0, float i45, float i90, float i135) {
  PolarStack stack(1, 1);
  for (int c = 0; c < 3; ++c) {
    stack.i000().channels[c].at(0, 0) = i0;
    stack.i045().channels[c].at(0, 0) = i45;
    stack.i090().channels[c].at(0, 0) = i90;
    stack.i135().channels[c].at(0, 0) = i135;
  }
  return stack;
}

}  // namespace

TEST_CASE("stokes of the quadruple (0, 0.5, 1, 0.5)") {
  const StokesStack s = compute_stokes(pixel_stack(0.0f, 0.5f, 1.0f, 0.5f));
  for (int c = 0; c < 3; ++c) {
    CHECK(s.s0.channels[c].at(0, 0) == 1.0f);
    CHECK(s.s1.channels[c].at(0, 0) == 1.0f);
    CHECK(s.s2.channels[c].at(0, 0) == 0.0f);
  }
}

TEST_CASE("stokes of an unpolarized quadruple") {
  const StokesStack s = compute_stokes(pixel_stack(0.5f, 0.5f, 0.5f, 0.5f));
  for (int c = 0; c < 3; ++c) {
    CHECK(s.s0.channels[c].at(0, 0) == 1.0f);
    CHECK(s.s1.channels[c].at(0, 0) == 0.0f);
    CHECK(s.s2.channels[c].at(0, 0) == 0.0f);
  }
}

TEST_CASE("s0 equals I0 + I90 exactly on identity-satisfying stacks") {
  // Samples are dyadic so the float sums below are exact.
  const PolarStack stack = pixel_stack(0.25f, 0.375f, 0.5f, 0.375f);
  const StokesStack s = compute_stokes(stack);
  CHECK(s.s0.r().at(0, 0) ==
        stack.i000().r().at(0, 0) + stack.i090().r().at(0, 0));
}

TEST_CASE("params of cardinal Stokes vectors") {
  StokesStack s(1, 1);
  for (int c = 0; c < 3; ++c) {
    s.s0.channels[c].at(0, 0) = 1.0f;
    s.s1.channels[c].at(0, 0) = 1.0f;
    s.s2.channels[c].at(0, 0) = 0.0f;
  }
  PolarParams p = compute_params(s);
  CHECK(p.dop.r().at(0, 0) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(p.aop.r().at(0, 0) == 0.0f);

  for (int c = 0; c < 3; ++c) {
    s.s1.channels[c].at(0, 0) = 0.0f;
    s.s2.channels[c].at(0, 0) = 1.0f;
  }
  p = compute_params(s);
  CHECK(p.dop.r().at(0, 0) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(p.aop.r().at(0, 0) == doctest::Approx(M_PI / 4).epsilon(1e-7));

  for (int c = 0; c < 3; ++c) {
    s.s2.channels[c].at(0, 0) = 0.0f;
  }
  p = compute_params(s);
  CHECK(p.dop.r().at(0, 0) == 0.0f);
  // The degenerate direction uses the convention angle 0.
  CHECK(p.aop.r().at(0, 0) == 0.0f);
}

TEST_CASE("dop is clamped to [0, 1] when the identity is violated") {
  StokesStack s(1, 1);
  for (int c = 0; c < 3; ++c) {
    s.s0.channels[c].at(0, 0) = 0.5f;
    s.s1.channels[c].at(0, 0) = 1.0f;
    s.s2.channels[c].at(0, 0) = 0.0f;
  }
  const PolarParams p = compute_params(s);
  CHECK(p.dop.r().at(0, 0) == 1.0f);
}

TEST_CASE("synthesis hand examples") {
  ColorImage s0(1, 1);
  PolarParams params(1, 1);
  for (int c = 0; c < 3; ++c) {
    s0.channels[c].at(0, 0) = 1.0f;
    params.dop.channels[c].at(0, 0) = 1.0f;
    params.aop.channels[c].at(0, 0) = 0.0f;
  }
  PolarStack stack = synthesize_from_params(s0, params);
  // (s0, p, theta) = (1, 1, 0) -> s1 = 1, s2 = 0 -> I = (0, 0.5, 1, 0.5).
  CHECK(stack.i000().r().at(0, 0) == 0.0f);
  CHECK(stack.i045().r().at(0, 0) == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(stack.i090().r().at(0, 0) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(stack.i135().r().at(0, 0) == doctest::Approx(0.5).epsilon(1e-7));

  for (int c = 0; c < 3; ++c) {
    params.aop.channels[c].at(0, 0) = static_cast<float>(M_PI / 4);
  }
  stack = synthesize_from_params(s0, params);
  // theta = pi/4 -> s1 = 0, s2 = 1 -> I = (0.5, 0, 0.5, 1).
  CHECK(stack.i000().r().at(0, 0) == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(stack.i045().r().at(0, 0) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(stack.i090().r().at(0, 0) == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(stack.i135().r().at(0, 0) == doctest::Approx(1.0).epsilon(1e-7));

  for (int c = 0; c < 3; ++c) {
    params.dop.channels[c].at(0, 0) = 0.0f;
  }
  stack = synthesize_from_params(s0, params);
  for (int a = 0; a < 4; ++a) {
    CHECK(stack.images[a].r().at(0, 0) == doctest::Approx(0.5).epsilon(1e-7));
  }
}

TEST_CASE("analysis then synthesis round-trips random scenes") {
  const PolarStack stack = pftest::random_valid_stack(25, 40, 77);
  const StokesStack s = compute_stokes(stack);
  const PolarParams p = compute_params(s);
  const PolarStack rebuilt = synthesize_from_params(s.s0, p);
  CHECK(pftest::max_abs_diff(stack, rebuilt) <= 1e-5);
}

TEST_CASE("synthesized samples are nonnegative for p <= 1") {
  const PolarStack stack = pftest::random_valid_stack(16, 16, 5);
  for (const auto& img : stack.images) {
    for (const auto& ch : img.channels) {
      for (const float v : ch.data) CHECK(v >= 0.0f);
    }
  }
}

TEST_CASE("consistency projection fixes the hand example") {
  // (1, 0, 0, 0): violation d = (1 + 0 - 0 - 0) / 4 = 0.25.
  const PolarStack projected = consistency_project(pixel_stack(1.0f, 0.0f, 0.0f, 0.0f));
  CHECK(projected.i000().r().at(0, 0) == doctest::Approx(0.75).epsilon(1e-7));
  CHECK(projected.i045().r().at(0, 0) == doctest::Approx(0.25).epsilon(1e-7));
  CHECK(projected.i090().r().at(0, 0) == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(projected.i135().r().at(0, 0) == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("consistency projection is a fixed point on valid stacks") {
  const PolarStack stack = pftest::random_valid_stack(12, 12, 3);
  const PolarStack projected = consistency_project(stack);
  CHECK(pftest::max_abs_diff(stack, projected) <= 1e-6);
}

TEST_CASE("consistency projection is idempotent") {
  PolarStack stack = pftest::random_valid_stack(10, 10, 8);
  // Perturb to violate the identity.
  for (auto& img : stack.images) {
    for (auto& ch : img.channels) {
      for (std::size_t i = 0; i < ch.data.size(); ++i) {
        ch.data[i] += 0.01f * static_cast<float>((i % 7) - 3);
      }
    }
  }
  clamp_stack(stack, 0.0f, 1.0f);
  const PolarStack once = consistency_project(stack);
  const PolarStack twice = consistency_project(once);
  CHECK(pftest::max_abs_diff(once, twice) <= 1e-6);
  CHECK(max_identity_violation(once) <= 1e-5);
}

TEST_CASE("projection reduces the identity violation") {
  PolarStack stack = pixel_stack(0.9f, 0.1f, 0.3f, 0.2f);
  const double before = max_identity_violation(stack);
  const double after = max_identity_violation(consistency_project(stack));
  CHECK(after < before);
}

TEST_CASE("wrap_half_circle folds to [0, pi)") {
  CHECK(wrap_half_circle(0.0) == 0.0f);
  CHECK(wrap_half_circle(M_PI) == 0.0f);
  CHECK(wrap_half_circle(-0.1) == doctest::Approx(M_PI - 0.1).epsilon(1e-6));
  CHECK(wrap_half_circle(M_PI + 0.1) == doctest::Approx(0.1).epsilon(1e-6));
  // Values that would round up to float(pi) are folded below pi.
  const float near_pi = wrap_half_circle(std::nextafter(M_PI, 0.0));
  CHECK(near_pi < static_cast<float>(M_PI));
  for (double t : {-5.0, -1.0, 0.0, 1.0, 3.0, 6.0, 9.0}) {
    const float w = wrap_half_circle(t);
    CHECK(w >= 0.0f);
    CHECK(static_cast<double>(w) < M_PI);
  }
}

TEST_CASE("angular_distance on the half circle") {
  CHECK(angular_distance(0.0, 0.0) == 0.0);
  CHECK(angular_distance(0.0, M_PI) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(angular_distance(M_PI - 1e-4, 1e-4) == doctest::Approx(2e-4).epsilon(1e-6));
  CHECK(angular_distance(0.0, M_PI / 2) == doctest::Approx(M_PI / 2).epsilon(1e-12));
  // Symmetry and the triangle inequality on a sample of angles.
  const double xs[] = {0.1, 0.9, 1.7, 2.5, 3.0};
  for (double a : xs) {
    for (double b : xs) {
      CHECK(angular_distance(a, b) == doctest::Approx(angular_distance(b, a)).epsilon(1e-12));
      for (double c : xs) {
        CHECK(angular_distance(a, c) <=
              angular_distance(a, b) + angular_distance(b, c) + 1e-12);
      }
    }
  }
}

TEST_CASE("computed parameters satisfy range invariants") {
  const PolarStack stack = pftest::random_valid_stack(20, 20, 13);
  const StokesStack s = compute_stokes(stack);
  const PolarParams p = compute_params(s);
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < p.dop.channels[c].data.size(); ++i) {
      const float dop = p.dop.channels[c].data[i];
      const float aop = p.aop.channels[c].data[i];
      CHECK(dop >= 0.0f);
      CHECK(dop <= 1.0f);
      CHECK(aop >= 0.0f);
      CHECK(static_cast<double>(aop) < M_PI);
      // |s1|, |s2| <= s0 within float tolerance on physical stacks.
      const float s0 = s.s0.channels[c].data[i];
      CHECK(std::abs(s.s1.channels[c].data[i]) <= s0 + 1e-6f);
      CHECK(std::abs(s.s2.channels[c].data[i]) <= s0 + 1e-6f);
    }
  }
}

TEST_CASE("average image equals s0 / 2") {
  const PolarStack stack = pftest::random_valid_stack(9, 9, 21);
  const ColorImage avg = average_image(stack);
  const StokesStack s = compute_stokes(stack);
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < avg.channels[c].data.size(); ++i) {
      CHECK(avg.channels[c].data[i] ==
            doctest::Approx(0.5 * s.s0.channels[c].data[i]).epsilon(1e-6));
    }
  }
}
