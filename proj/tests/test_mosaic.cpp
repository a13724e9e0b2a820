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

#include "polarforge/mosaic/demosaic.hpp"
#include "polarforge/mosaic/pattern.hpp"
#include "polarforge/polarimetry/polarimetry.hpp"
#include "test_util.hpp"

using namespace polarforge;
using namespace polarforge::mosaic;


namespace {

// Stack whose (angle, channel) planes are the distinct constants
// 0.01 * (4 * channel + angle) + 0.1, so any sampling mistake is visible.
PolarStack coded_stack(int h, int w) {
  PolarStack stack(h, w);
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 3; ++c)
      for (float& v : stack.images[a].channels[c].data)
        v = 0.01f * static_cast<float>(4 * c + a) + 0.1f;
  return stack;
}

}  // namespace

TEST_CASE("standard pattern tile layout") {
  const CpfaPattern p = CpfaPattern::standard();
  // Angle indices into {0, 45, 90, 135}: top-left block row is (90, 45),
  // bottom row (135, 0); repeated with period 2.
  CHECK(p.cell(0, 0).angle == 2);
  CHECK(p.cell(0, 1).angle == 1);
  CHECK(p.cell(1, 0).angle == 3);
  CHECK(p.cell(1, 1).angle == 0);
  CHECK(p.cell(2, 2).angle == 2);
  // Block colors: (R, G / G, B).
  CHECK(p.cell(0, 0).channel == 0);
  CHECK(p.cell(0, 2).channel == 1);
  CHECK(p.cell(2, 0).channel == 1);
  CHECK(p.cell(2, 2).channel == 2);
  CHECK(p.bayer().channels == std::array<int, 4>{0, 1, 1, 2});
  // Within-block offsets per angle index.
  CHECK(p.angle_offset(2) == std::pair<int, int>{0, 0});
  CHECK(p.angle_offset(1) == std::pair<int, int>{0, 1});
  CHECK(p.angle_offset(3) == std::pair<int, int>{1, 0});
  CHECK(p.angle_offset(0) == std::pair<int, int>{1, 1});
  // Tiling with period 4 and negative-coordinate robustness.
  CHECK(p.cell(4, 4) == p.cell(0, 0));
  CHECK(p.cell(-1, -1) == p.cell(3, 3));
}

TEST_CASE("from_cells rejects malformed layouts") {
  const CpfaPattern std_p = CpfaPattern::standard();
  std::array<CpfaCell, 16> cells;
  for (int k = 0; k < 16; ++k) cells[k] = std_p.cell(k / 4, k % 4);

  SUBCASE("angle period violated") {
    std::array<CpfaCell, 16> bad = cells;
    std::swap(bad[0], bad[1]);  // breaks the period-2 angle tiling vs row 2
    CHECK_THROWS_AS(CpfaPattern::from_cells(bad), std::invalid_argument);
  }
  SUBCASE("missing angle in block") {
    std::array<CpfaCell, 16> bad = cells;
    for (int y = 0; y < 4; ++y)
      for (int x = 0; x < 4; ++x) bad[y * 4 + x].angle = (y % 2) * 2 + (x % 2) ? 1 : 1;
    CHECK_THROWS_WITH_AS(CpfaPattern::from_cells(bad),
                         doctest::Contains("all four angles"), std::invalid_argument);
  }
  SUBCASE("block not single-color") {
    std::array<CpfaCell, 16> bad = cells;
    bad[0].channel = 1;
    CHECK_THROWS_WITH_AS(CpfaPattern::from_cells(bad),
                         doctest::Contains("single-color"), std::invalid_argument);
  }
  SUBCASE("colors not a Bayer arrangement") {
    std::array<CpfaCell, 16> bad = cells;
    for (auto& c : bad) c.channel = 0;
    CHECK_THROWS_WITH_AS(CpfaPattern::from_cells(bad),
                         doctest::Contains("Bayer"), std::invalid_argument);
  }
  SUBCASE("cell out of range") {
    std::array<CpfaCell, 16> bad = cells;
    bad[5].angle = 9;
    CHECK_THROWS_WITH_AS(CpfaPattern::from_cells(bad),
                         doctest::Contains("out of range"), std::invalid_argument);
  }
}

TEST_CASE("pattern JSON round trip") {
  const CpfaPattern p = CpfaPattern::standard();
  const nlohmann::json j = p.to_json();
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 16);
  CHECK(j[0].get<std::string>() == "90:r");
  CHECK(j[1].get<std::string>() == "45:r");
  CHECK(j[4].get<std::string>() == "135:r");
  CHECK(j[15].get<std::string>() == "0:b");
  CHECK(CpfaPattern::from_json(j) == p);

  CHECK_THROWS_AS(CpfaPattern::from_json(nlohmann::json::array()), std::invalid_argument);
  nlohmann::json bad = j;
  bad[3] = "91:r";
  CHECK_THROWS_WITH_AS(CpfaPattern::from_json(bad), doctest::Contains("91"),
                       std::invalid_argument);
  bad[3] = "90:x";
  CHECK_THROWS_AS(CpfaPattern::from_json(bad), std::invalid_argument);
}

TEST_CASE("masks partition the grid with the expected multiplicities") {
  const CpfaPattern p = CpfaPattern::standard();
  const MaskSet masks = build_masks(p, 8, 8);

  // Per 4x4 tile each angle covers one pixel of each block: colors r, g, g, b.
  // Over an 8x8 grid (four tiles) that is 4 red, 8 green, 4 blue per angle.
  for (int a = 0; a < 4; ++a) {
    double sums[3] = {0.0, 0.0, 0.0};
    for (int c = 0; c < 3; ++c)
      for (const float v : masks[a][c].data) sums[c] += v;
    CHECK(sums[0] == 4.0);
    CHECK(sums[1] == 8.0);
    CHECK(sums[2] == 4.0);
  }

  // Exactly one mask is set at every pixel.
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      double total = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 3; ++c) total += masks[a][c].at(y, x);
      CHECK(total == 1.0);
    }
  }

  // Masks repeat with the tile period.
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 3; ++c)
      for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x)
          CHECK(masks[a][c].at(y, x) == masks[a][c].at(y + 4, x + 4));

  CHECK_THROWS_WITH_AS(build_masks(p, 6, 8), doctest::Contains("multiples of 4"),
                       std::invalid_argument);
}

TEST_CASE("mosaic picks the pattern-selected sample at every site") {
  const CpfaPattern p = CpfaPattern::standard();
  const PolarStack stack = coded_stack(8, 8);
  const CpfaRaw raw = mosaic::mosaic(stack, p);
  REQUIRE(raw.plane.height == 8);
  REQUIRE(raw.plane.width == 8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      const CpfaCell& cell = p.cell(y, x);
      CHECK(raw.plane.at(y, x) ==
            stack.images[cell.angle].channels[cell.channel].at(y, x));
    }
  }

  const PolarStack random = pftest::random_valid_stack(8, 8, 123);
  const CpfaRaw rraw = mosaic::mosaic(random, p);
  // Spot-check bit exactness at a few sites.
  CHECK(rraw.plane.at(0, 0) == random.i090().r().at(0, 0));
  CHECK(rraw.plane.at(1, 1) == random.i000().r().at(1, 1));
  CHECK(rraw.plane.at(2, 3) == random.i045().b().at(2, 3));

  PolarStack small(6, 6);
  CHECK_THROWS_AS(mosaic::mosaic(small, p), std::invalid_argument);
}

TEST_CASE("extract_angle_cfa gathers each angle sub-grid") {
  const CpfaPattern p = CpfaPattern::standard();
  const PolarStack stack = pftest::random_valid_stack(8, 12, 7);
  const CpfaRaw raw = mosaic::mosaic(stack, p);

  for (int a = 0; a < 4; ++a) {
    const AngleCfa cfa = extract_angle_cfa(raw, a);
    CHECK(cfa.plane.height == 4);
    CHECK(cfa.plane.width == 6);
    CHECK(cfa.bayer == p.bayer());
    const auto [ry, rx] = p.angle_offset(a);
    for (int y = 0; y < cfa.plane.height; ++y)
      for (int x = 0; x < cfa.plane.width; ++x)
        CHECK(cfa.plane.at(y, x) == raw.plane.at(2 * y + ry, 2 * x + rx));
  }
  CHECK_THROWS_AS(extract_angle_cfa(raw, 4), std::invalid_argument);
}

TEST_CASE("extract covers all raw pixels exactly once across angles") {
  const CpfaPattern p = CpfaPattern::standard();
  Plane coded(8, 8);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) coded.at(y, x) = static_cast<float>(y * 8 + x);
  CpfaRaw raw;
  raw.plane = coded;
  raw.pattern = p;

  std::array<bool, 64> seen{};
  for (int a = 0; a < 4; ++a) {
    const AngleCfa cfa = extract_angle_cfa(raw, a);
    for (const float v : cfa.plane.data) {
      const int idx = static_cast<int>(v);
      CHECK_FALSE(seen[idx]);
      seen[idx] = true;
    }
  }
  for (bool b : seen) CHECK(b);
}

TEST_CASE("cfa demosaic preserves constants and sampled sites") {
  const BayerDescriptor bayer{{0, 1, 1, 2}};
  const Plane constant(6, 6, 0.42f);
  const ColorImage out = cfa_demosaic_bilinear(constant, bayer);
  for (int c = 0; c < 3; ++c)
    for (const float v : out.channels[c].data) CHECK(v == 0.42f);

  const Plane noise = pftest::random_plane(8, 8, 55);
  const ColorImage demo = cfa_demosaic_bilinear(noise, bayer);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      const int c = bayer.channel_at(y, x);
      CHECK(demo.channels[c].at(y, x) == noise.at(y, x));
    }
  }
  CHECK_THROWS_AS(cfa_demosaic_bilinear(Plane(5, 6, 0.0f), bayer), std::invalid_argument);
}

TEST_CASE("cfa demosaic interior estimates are neighbor means") {
  const BayerDescriptor bayer{{0, 1, 1, 2}};
  const Plane cfa = pftest::random_plane(8, 8, 99);
  const ColorImage out = cfa_demosaic_bilinear(cfa, bayer);

  // At an interior red site (even, even): green is the 4-cross mean, blue the
  // 4-diagonal mean.
  const int y = 2, x = 2;
  const double green = (cfa.at(y - 1, x) + cfa.at(y + 1, x) + cfa.at(y, x - 1) +
                        cfa.at(y, x + 1)) /
                       4.0;
  const double blue = (cfa.at(y - 1, x - 1) + cfa.at(y - 1, x + 1) +
                       cfa.at(y + 1, x - 1) + cfa.at(y + 1, x + 1)) /
                      4.0;
  CHECK(out.g().at(y, x) == doctest::Approx(green).epsilon(1e-7));
  CHECK(out.b().at(y, x) == doctest::Approx(blue).epsilon(1e-7));

  // At a green site in a red row (even, odd): red is the horizontal pair mean,
  // blue the vertical pair mean.
  const double red_h = (cfa.at(2, 2) + cfa.at(2, 4)) / 2.0;
  const double blue_v = (cfa.at(1, 3) + cfa.at(3, 3)) / 2.0;
  CHECK(out.r().at(2, 3) == doctest::Approx(red_h).epsilon(1e-7));
  CHECK(out.b().at(2, 3) == doctest::Approx(blue_v).epsilon(1e-7));
}

TEST_CASE("convert_raw_to_halfres recovers constant polarization states") {
  const CpfaPattern p = CpfaPattern::standard();
  const PolarStack gt = pftest::constant_stack(8, 8, 0.8f, 0.4f, 0.7f);
  const CpfaRaw raw = mosaic::mosaic(gt, p);
  const PolarStack half = convert_raw_to_halfres(raw);
  REQUIRE(half.height() == 4);
  REQUIRE(half.width() == 4);

  const StokesStack s = polar::compute_stokes(half);
  const PolarParams params = polar::compute_params(s);
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < params.dop.channels[c].data.size(); ++i) {
      CHECK(params.dop.channels[c].data[i] == doctest::Approx(0.4).epsilon(1e-5));
      CHECK(polar::angular_distance(params.aop.channels[c].data[i], 0.7) <= 1e-5);
    }
  }
}

TEST_CASE("full-resolution demosaic: constants, sampled sites, re-mosaic") {
  const CpfaPattern p = CpfaPattern::standard();
  const PolarStack coded = coded_stack(8, 8);
  const CpfaRaw craw = mosaic::mosaic(coded, p);
  const PolarStack demo_coded = cpfa_demosaic_bilinear(craw);
  // Per-(angle, channel) constants are reproduced exactly everywhere.
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 3; ++c)
      for (const float v : demo_coded.images[a].channels[c].data)
        CHECK(v == coded.images[a].channels[c].at(0, 0));

  const PolarStack random = pftest::random_valid_stack(8, 8, 31);
  const CpfaRaw raw = mosaic::mosaic(random, p);
  const PolarStack demo = cpfa_demosaic_bilinear(raw);
  REQUIRE(demo.height() == 8);
  REQUIRE(demo.width() == 8);

  // Measured samples pass through bit-exactly, so re-mosaicking the demosaiced
  // stack reproduces the raw plane bit for bit.
  const CpfaRaw again = mosaic::mosaic(demo, p);
  CHECK(pftest::bit_equal(again.plane, raw.plane));
}

TEST_CASE("full-resolution demosaic is exact on affine ramps away from borders") {
  const CpfaPattern p = CpfaPattern::standard();
  const int n = 16;
  PolarStack ramp(n, n);
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 3; ++c)
      for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
          ramp.images[a].channels[c].at(y, x) =
              static_cast<float>(0.1 + 0.002 * (4 * c + a) + 0.01 * x + 0.015 * y);
  const CpfaRaw raw = mosaic::mosaic(ramp, p);
  const PolarStack demo = cpfa_demosaic_bilinear(raw);
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 3; ++c)
      for (int y = 4; y < n - 4; ++y)
        for (int x = 4; x < n - 4; ++x)
          CHECK(demo.images[a].channels[c].at(y, x) ==
                doctest::Approx(ramp.images[a].channels[c].at(y, x)).epsilon(1e-5));
}
