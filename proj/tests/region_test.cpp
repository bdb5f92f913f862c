// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <vector>

#include "violin/error.hpp"
#include "violin/region.hpp"

namespace violin {
namespace {

TEST(RegionPixels, Examples) {
  EXPECT_EQ(region_pixels(FullFrame{}, 256, 256), (PixelRect{0, 0, 256, 256}));
  EXPECT_EQ(region_pixels(HorizontalSplit{0.5, Side::first}, 256, 256),
            (PixelRect{0, 0, 128, 256}));
  EXPECT_EQ(region_pixels(HorizontalSplit{0.5, Side::second}, 256, 256),
            (PixelRect{128, 0, 256, 256}));
  EXPECT_EQ(region_pixels(VerticalSplit{0.5, Side::second}, 256, 256),
            (PixelRect{0, 128, 256, 256}));
  // 0.315 * 256 = 80.64 rounds to 81.
  EXPECT_EQ(region_pixels(HorizontalSplit{0.315, Side::first}, 256, 256),
            (PixelRect{0, 0, 81, 256}));
  EXPECT_EQ(region_pixels(Quadrant{3}, 255, 255), (PixelRect{127, 127, 255, 255}));
  EXPECT_EQ(region_pixels(Quadrant{0}, 255, 255), (PixelRect{0, 0, 127, 127}));
  EXPECT_THROW(region_pixels(HorizontalSplit{0.0, Side::first}, 256, 256), Error);
  EXPECT_THROW(region_pixels(Quadrant{4}, 256, 256), Error);
}

TEST(CheckTiling, AcceptsPartitionsRejectsGapsAndOverlaps) {
  const ExactColor c{{1, 2, 3}};
  std::vector<RegionSpec> quads;
  for (int i = 0; i < 4; ++i) quads.push_back({Quadrant{i}, c});
  EXPECT_NO_THROW(check_tiling(quads, 255, 255));

  std::vector<RegionSpec> gap = {quads[0], quads[1], quads[2]};
  EXPECT_THROW(check_tiling(gap, 256, 256), Error);

  std::vector<RegionSpec> overlap = {{FullFrame{}, c}, {Quadrant{0}, c}};
  EXPECT_THROW(check_tiling(overlap, 256, 256), Error);

  std::vector<RegionSpec> halves = {{VerticalSplit{0.3, Side::first}, c},
                                    {VerticalSplit{0.3, Side::second}, c}};
  EXPECT_NO_THROW(check_tiling(halves, 256, 256));
}

TEST(Fuzzy, EndpointsMidpointAndClamp) {
  const Rgb8 low = hsl_to_rgb({200, 0.5, 0.3});
  const Rgb8 high = hsl_to_rgb({240, 0.5, 0.6});

  const auto at_low = project_onto_range(low, low, high);
  EXPECT_NEAR(at_low.t, 0.0, 1e-3);
  EXPECT_EQ(at_low.reference, low);

  const auto at_high = project_onto_range(high, low, high);
  EXPECT_NEAR(at_high.t, 1.0, 1e-3);
  EXPECT_EQ(at_high.reference, high);

  const Rgb8 mid = hsl_to_rgb(range_point(low, high, 0.5));
  const auto at_mid = project_onto_range(mid, low, high);
  EXPECT_NEAR(at_mid.t, 0.5, 0.01);
  EXPECT_EQ(at_mid.reference, mid);

  // Beyond the high end along the segment direction.
  const Rgb8 past = hsl_to_rgb({250, 0.5, 0.75});
  const auto clamped = project_onto_range(past, low, high);
  EXPECT_EQ(clamped.t, 1.0);
  EXPECT_EQ(clamped.reference, high);

  const Rgb8 before = hsl_to_rgb({190, 0.5, 0.15});
  EXPECT_EQ(project_onto_range(before, low, high).t, 0.0);
}

TEST(Fuzzy, HueTakesShorterArc) {
  const Rgb8 low = hsl_to_rgb({350, 1.0, 0.5});
  const Rgb8 high = hsl_to_rgb({10, 1.0, 0.5});
  const Hsl mid = range_point(low, high, 0.5);
  EXPECT_NEAR(mid.h, 0.0, 1.0);
  EXPECT_EQ(hsl_to_rgb(mid), (Rgb8{255, 0, 0}));
}

TEST(Fuzzy, ReferenceLiesOnSegment) {
  const Rgb8 low{20, 60, 120};
  const Rgb8 high{200, 180, 40};
  for (int r = 0; r < 256; r += 51) {
    for (int g = 0; g < 256; g += 51) {
      const auto p = project_onto_range(RgbF(r, g, 90), low, high);
      EXPECT_GE(p.t, 0.0);
      EXPECT_LE(p.t, 1.0);
      const Hsl expect = range_point(low, high, p.t);
      EXPECT_NEAR(p.point.s, expect.s, 1e-9);
      EXPECT_NEAR(p.point.l, expect.l, 1e-9);
    }
  }
}

TEST(EvaluateSample, GroundTruthScoresZero) {
  EvalConfig cfg;
  cfg.resolution = 64;
  std::vector<RegionSpec> regions;
  const Rgb8 colors[4] = {{255, 0, 0}, {0, 255, 0}, {0, 0, 255}, {250, 250, 10}};
  RgbImage img(64, 64);
  for (int i = 0; i < 4; ++i) {
    regions.push_back({Quadrant{i}, ExactColor{colors[i]}});
    img.fill(region_pixels(Quadrant{i}, 64, 64), colors[i]);
  }
  const auto rep = evaluate_sample(img, regions, cfg);
  EXPECT_EQ(rep.regions.size(), 4u);
  EXPECT_EQ(rep.pre_mean, 0.0);
  EXPECT_EQ(rep.pur_mean, 0.0);

  const Rgb8 low = hsl_to_rgb({30, 0.6, 0.3});
  const Rgb8 high = hsl_to_rgb({60, 0.8, 0.6});
  const std::vector<RegionSpec> fuzzy = {{FullFrame{}, ColorRange{low, high}}};
  RgbImage mid(64, 64, hsl_to_rgb(range_point(low, high, 0.5)));
  const auto frep = evaluate_sample(mid, fuzzy, cfg);
  EXPECT_EQ(frep.pre_mean, 0.0);
  ASSERT_TRUE(frep.regions[0].range_t.has_value());
  EXPECT_NEAR(*frep.regions[0].range_t, 0.5, 0.01);
}

TEST(EvaluateSample, OffsetRaisesPrecisionOnly) {
  EvalConfig cfg;
  cfg.resolution = 32;
  const std::vector<RegionSpec> regions = {{FullFrame{}, ExactColor{{100, 100, 100}}}};
  RgbImage img(32, 32, {110, 100, 100});
  const auto rep = evaluate_sample(img, regions, cfg);
  EXPECT_DOUBLE_EQ(rep.precision_raw[0], 10.0);
  EXPECT_GT(rep.pre_mean, 0.0);
  EXPECT_EQ(rep.pur_mean, 0.0);
}

TEST(EvaluateSample, RejectsWrongSizeAndBadTiling) {
  EvalConfig cfg;
  cfg.resolution = 32;
  const std::vector<RegionSpec> regions = {{FullFrame{}, ExactColor{{1, 1, 1}}}};
  try {
    evaluate_sample(RgbImage(16, 16), regions, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::dimension_mismatch);
  }
  const std::vector<RegionSpec> half = {{HorizontalSplit{0.5, Side::first}, ExactColor{{1, 1, 1}}}};
  try {
    evaluate_sample(RgbImage(32, 32), half, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::untiled_regions);
  }
}

TEST(EvaluateSample, ErosionShrinksMeasuredRect) {
  EvalConfig cfg;
  cfg.resolution = 32;
  cfg.erosion = 2;
  const std::vector<RegionSpec> regions = {{FullFrame{}, ExactColor{{0, 0, 0}}}};
  RgbImage img(32, 32, {0, 0, 0});
  // A white border that erosion trims away.
  img.fill({0, 0, 32, 2}, {255, 255, 255});
  const auto rep = evaluate_sample(img, regions, cfg);
  EXPECT_EQ(rep.regions[0].rect, (PixelRect{2, 2, 30, 30}));
  EXPECT_EQ(rep.pre_mean, 0.0);
}

TEST(SplitRatio, RecoversBoundary) {
  RgbImage img(256, 256, {171, 18, 19});
  img.fill({128, 0, 256, 256}, {0, 0, 0});
  const auto half = measure_split_ratio(img, SplitAxis::horizontal);
  EXPECT_EQ(half.boundary, 128);
  EXPECT_DOUBLE_EQ(half.fraction, 0.5);
  EXPECT_FALSE(half.degenerate);

  RgbImage narrow(256, 256, {171, 18, 19});
  narrow.fill({81, 0, 256, 256}, {0, 0, 0});
  EXPECT_DOUBLE_EQ(measure_split_ratio(narrow, SplitAxis::horizontal).fraction, 81.0 / 256.0);

  RgbImage tall(64, 100, {0, 0, 0});
  tall.fill({0, 30, 64, 100}, {255, 255, 255});
  const auto v = measure_split_ratio(tall, SplitAxis::vertical);
  EXPECT_EQ(v.boundary, 30);
  EXPECT_DOUBLE_EQ(v.fraction, 0.3);
}

TEST(SplitRatio, SwappedColorsAndDegenerate) {
  RgbImage a(100, 10, {255, 255, 255});
  a.fill({40, 0, 100, 10}, {0, 0, 0});
  RgbImage b(100, 10, {0, 0, 0});
  b.fill({40, 0, 100, 10}, {255, 255, 255});
  EXPECT_EQ(measure_split_ratio(a, SplitAxis::horizontal).boundary,
            measure_split_ratio(b, SplitAxis::horizontal).boundary);

  const auto flat = measure_split_ratio(RgbImage(50, 50, {7, 7, 7}), SplitAxis::horizontal);
  EXPECT_TRUE(flat.degenerate);
  EXPECT_DOUBLE_EQ(flat.fraction, 0.5);
}

}  // namespace
}  // namespace violin
