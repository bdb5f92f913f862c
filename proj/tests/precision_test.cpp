// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracle_data.hpp"
#include "violin/error.hpp"
#include "violin/precision.hpp"

namespace violin {
namespace {

Lab lab(double l, double a, double b) { return {l, a, b}; }

TEST(RgbDistances, Examples) {
  EXPECT_EQ(rgb_euclidean(Rgb8{10, 20, 30}, Rgb8{10, 20, 30}), 0.0);
  EXPECT_EQ(rgb_euclidean(Rgb8{255, 0, 0}, Rgb8{0, 0, 0}), 255.0);
  EXPECT_NEAR(rgb_euclidean(Rgb8{255, 255, 255}, Rgb8{0, 0, 0}), 441.673, 1e-3);
  EXPECT_EQ(rgb_redmean(Rgb8{1, 2, 3}, Rgb8{1, 2, 3}), 0.0);
}

TEST(RgbDistances, RedmeanWeightsSumToConstant) {
  for (int i = 0; i <= 255; ++i) {
    const auto w = redmean_weights(i);
    EXPECT_NEAR(w.red + w.blue, 4.0 + 255.0 / 256.0, 1e-12);
  }
  // Hand value: rbar = 128, dR = 10 only -> sqrt((2 + 0.5) * 100).
  EXPECT_NEAR(rgb_redmean(RgbF{133, 0, 0}, RgbF{123, 0, 0}), std::sqrt(250.0), 1e-12);
}

TEST(Ciede2000, PublishedPairs) {
  for (const auto& p : oracle::kCiede2000Pairs) {
    const Lab a = lab(p.l1, p.a1, p.b1);
    const Lab b = lab(p.l2, p.a2, p.b2);
    EXPECT_NEAR(ciede2000(a, b), p.expected, 1e-4);
    EXPECT_NEAR(ciede2000(b, a), p.expected, 1e-4);
  }
  EXPECT_EQ(ciede2000(lab(50, 10, -10), lab(50, 10, -10)), 0.0);
}

TEST(HueMae, Examples) {
  EXPECT_DOUBLE_EQ(hue_mae({50, 10, 10}, {50, 10, 350}), 20.0);
  EXPECT_DOUBLE_EQ(hue_mae({50, 10, 90}, {50, 10, 270}), 180.0);
  EXPECT_EQ(hue_mae({50, 0, 0}, {50, 30, 200}), 0.0);
  EXPECT_EQ(hue_mae({50, 30, 200}, {50, 5e-5, 10}), 0.0);
}

TEST(DeltaChroma, Examples) {
  EXPECT_EQ(delta_chroma(lab(10, 5, 5), lab(90, 5, 5)), 0.0);
  EXPECT_DOUBLE_EQ(delta_chroma(lab(50, 0, 0), lab(50, 3, 4)), 5.0);
  EXPECT_NEAR(delta_chroma(lab(50, -10, 20), lab(50, 15, -16)), 43.829214001622255, 1e-12);
}

TEST(Hyab, Examples) {
  EXPECT_EQ(hyab(lab(40, 1, 2), lab(40, 1, 2)), 0.0);
  EXPECT_DOUBLE_EQ(hyab(lab(50, 0, 0), lab(59, 0, 0)), 3.0);
  EXPECT_DOUBLE_EQ(hyab(lab(50, 0, 0), lab(61, 3, 4)), 6.0);
  EXPECT_DOUBLE_EQ(hyab(lab(50, 0, 0), lab(61, 3, 4), HyabForm::literature), 16.0);
}

TEST(Hyab, SquareDecomposesIntoChromaAndLightness) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> l(0, 100), ab(-100, 100);
  for (int i = 0; i < 10000; ++i) {
    const Lab a = lab(l(rng), ab(rng), ab(rng));
    const Lab b = lab(l(rng), ab(rng), ab(rng));
    const double h = hyab(a, b);
    const double c = delta_chroma(a, b);
    EXPECT_NEAR(h * h, c * c + std::abs(a.l - b.l), 1e-9 * (1 + h * h));
    EXPECT_LE(c, h + 1e-12);
  }
}

TEST(Distances, SymmetricNonNegativeAndZeroOnIdentity) {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int i = 0; i < 5000; ++i) {
    const Rgb8 a{static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng)),
                 static_cast<std::uint8_t>(byte(rng))};
    const Rgb8 b{static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng)),
                 static_cast<std::uint8_t>(byte(rng))};
    const auto ab = precision_distances(a, b);
    const auto ba = precision_distances(b, a);
    const auto aa = precision_distances(a, a);
    for (std::size_t m = 0; m < kPrecisionMetricCount; ++m) {
      EXPECT_GE(ab[m], 0.0);
      EXPECT_NEAR(ab[m], ba[m], 1e-9) << kPrecisionMetricNames[m];
      EXPECT_EQ(aa[m], 0.0) << kPrecisionMetricNames[m];
    }
  }
}

TEST(RepresentativeColor, Means) {
  RgbImage img(4, 4, {7, 8, 9});
  const RgbF c = representative_color(img, img.bounds());
  EXPECT_EQ(c, (RgbF{7, 8, 9}));

  RgbImage split(4, 2, {0, 0, 0});
  split.fill({2, 0, 4, 2}, {255, 255, 255});
  EXPECT_EQ(representative_color(split, split.bounds()), (RgbF{127.5, 127.5, 127.5}));

  RgbImage pair(2, 1);
  pair.set(0, 0, {10, 0, 0});
  pair.set(1, 0, {20, 0, 0});
  EXPECT_EQ(representative_color(pair, pair.bounds()), (RgbF{15, 0, 0}));

  EXPECT_THROW(representative_color(img, {1, 1, 1, 3}), Error);
}

TEST(Normalization, DefaultsAndValidation) {
  const auto k = NormalizationConstants::defaults();
  EXPECT_NEAR(k.maxima[0], 441.6729559300637, 1e-9);
  EXPECT_NEAR(k.maxima[1], 255.0 * std::sqrt(8.0 + 255.0 / 256.0), 1e-9);
  EXPECT_EQ(k.maxima[3], 180.0);
  // Lattice sweep values, cross-checked against an independent implementation.
  EXPECT_NEAR(k.maxima[2], 119.46565369520663, 1e-9);
  EXPECT_NEAR(k.maxima[4], 252.78218426414617, 1e-9);
  EXPECT_NEAR(k.maxima[5], 252.67250537361744, 1e-9);
  EXPECT_NO_THROW(k.validate());

  auto bad = k;
  bad.weights[0] += 0.1;
  EXPECT_THROW(bad.validate(), Error);
  bad = k;
  bad.maxima[2] = 0;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Normalization, SweepReproducesFrozenMaxima) {
  const auto g = sweep_gamut_maxima(17);
  const auto k = NormalizationConstants::defaults();
  EXPECT_DOUBLE_EQ(g.lab_00, k.maxima[2]);
  EXPECT_DOUBLE_EQ(g.lab_hyab, k.maxima[4]);
  EXPECT_DOUBLE_EQ(g.lab_ch, k.maxima[5]);
}

TEST(Normalization, TextRoundTrip) {
  auto k = NormalizationConstants::defaults();
  k.maxima[3] = 90.0;
  const auto back = NormalizationConstants::from_text(k.to_text());
  EXPECT_EQ(back.maxima, k.maxima);
  EXPECT_EQ(back.weights, k.weights);
  const auto partial = NormalizationConstants::from_text("# comment\nlab_hue.max = 45\n");
  EXPECT_EQ(partial.maxima[3], 45.0);
  EXPECT_THROW(NormalizationConstants::from_text("rgb_ed.max=abc\n"), Error);
  EXPECT_THROW(NormalizationConstants::from_text("rgb_ed.weight=0.5\n"), Error);
}

TEST(Normalization, AggregateExamples) {
  const auto k = NormalizationConstants::defaults();
  EXPECT_EQ(normalize_and_aggregate({0, 0, 0, 0, 0, 0}, k).pre_mean, 0.0);

  auto unit = k;
  unit.maxima.fill(1.0);
  EXPECT_NEAR(normalize_and_aggregate({.288, .284, .331, .375, .145, .477}, unit).pre_mean, 0.319,
              0.005);
  EXPECT_NEAR(normalize_and_aggregate({.156, .153, .180, .206, .077, .246}, unit).pre_mean, 0.171,
              0.005);

  const auto clipped = normalize_and_aggregate({1e6, 0, 0, 0, 0, 0}, k);
  EXPECT_EQ(clipped.normalized[0], 1.0);
  EXPECT_THROW(normalize_and_aggregate({std::nan(""), 0, 0, 0, 0, 0}, k), Error);
  EXPECT_THROW(normalize_and_aggregate({std::numeric_limits<double>::infinity(), 0, 0, 0, 0, 0}, k),
               Error);
}

TEST(Normalization, ScaleInvarianceAndUniformMean) {
  const auto k = NormalizationConstants::defaults();
  const PrecisionVector raw = {12.5, 20.25, 7.0, 33.0, 18.0, 9.5};
  auto scaled_k = k;
  PrecisionVector scaled_raw = raw;
  for (std::size_t i = 0; i < kPrecisionMetricCount; ++i) {
    scaled_k.maxima[i] *= 8.0;
    scaled_raw[i] *= 8.0;
  }
  const auto a = normalize_and_aggregate(raw, k);
  const auto b = normalize_and_aggregate(scaled_raw, scaled_k);
  for (std::size_t i = 0; i < kPrecisionMetricCount; ++i) {
    EXPECT_DOUBLE_EQ(a.normalized[i], b.normalized[i]);
  }
  double mean = 0;
  for (double v : a.normalized) mean += v;
  EXPECT_NEAR(a.pre_mean, mean / 6.0, 1e-12);
}

TEST(EvaluatePrecision, IdentityIsZero) {
  const auto r = evaluate_precision(Rgb8{0x99, 0x66, 0xCC}, Rgb8{0x99, 0x66, 0xCC},
                                    NormalizationConstants::defaults());
  for (double v : r.raw) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(r.pre_mean, 0.0);
}

}  // namespace
}  // namespace violin
