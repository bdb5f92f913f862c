// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

// Reference-free uniformity metrics. All three are zero on a constant region.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "violin/image.hpp"

namespace violin {

inline constexpr std::size_t kPurityMetricCount = 3;
using PurityVector = std::array<double, kPurityMetricCount>;
inline constexpr std::array<std::string_view, kPurityMetricCount> kPurityMetricNames = {
    "sd", "ced", "hf"};

struct CannyParams {
  double sigma = 1.4;
  int kernel_size = 5;
  /// Hysteresis thresholds on the Sobel gradient magnitude of 0..255 luma.
  double low = 50.0;
  double high = 150.0;

  void validate() const;
};

/// Population standard deviation of the region's channel samples, each taken
/// about its own channel mean and pooled over all 3N samples.
double channel_stddev(const RgbImage& image, const PixelRect& region);

/// Binary edge map of the region (row-major, region-sized, 1 = edge).
/// Gaussian blur, Sobel, non-maximum suppression and 8-connected hysteresis
/// on Rec.601 luma, with reflect-101 borders at the region boundary.
std::vector<std::uint8_t> canny_edges(const RgbImage& image, const PixelRect& region,
                                      const CannyParams& params = {});
/// Edge pixels / region pixels. Throws Error{region_too_small} below 5x5.
double canny_edge_density(const RgbImage& image, const PixelRect& region,
                          const CannyParams& params = {});

/// Share of non-DC spectral energy of the luma channel whose normalized
/// radius (1 = corner of the centered spectrum) exceeds `cutoff_fraction`.
/// Zero for constant regions. Throws Error{region_too_small} below 8x8.
double high_freq_ratio(const RgbImage& image, const PixelRect& region,
                       double cutoff_fraction = 0.25);

struct PurityConstants {
  double sd_max = 127.5;
  PurityVector weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

  void validate() const;
  std::string to_text() const;
  /// Reads `sd.max` and `<metric>.weight`; other keys are ignored.
  static PurityConstants from_text(std::string_view text, const PurityConstants& base);
  static PurityConstants from_text(std::string_view text);
};

struct PurityReport {
  PurityVector raw{};
  PurityVector normalized{};
  double pur_mean = 0;
};

/// sd is divided by sd_max and clipped to 1; ced and hf are already ratios.
PurityReport purity_aggregate(const PurityVector& raw, const PurityConstants& k = {});

}  // namespace violin
