// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

// Color-precision distances between a region's representative color and its
// target, and their [0,1] normalization into a single pre_mean score.

#pragma once

#include <array>
#include <string>
#include <string_view>

#include "violin/color.hpp"
#include "violin/image.hpp"

namespace violin {

inline constexpr std::size_t kPrecisionMetricCount = 6;
using PrecisionVector = std::array<double, kPrecisionMetricCount>;

/// Column order used everywhere: reports, config keys, normalization.
inline constexpr std::array<std::string_view, kPrecisionMetricCount> kPrecisionMetricNames = {
    "rgb_ed", "rgb_rm", "lab_00", "lab_hue", "lab_hyab", "lab_ch"};

double rgb_euclidean(const RgbF& c1, const RgbF& c2);

struct RedmeanWeights {
  double red = 0;   // c1
  double blue = 0;  // c3
};
/// Channel weights for mean red level `rbar`; the green weight is fixed at 4.
RedmeanWeights redmean_weights(double rbar);
double rgb_redmean(const RgbF& c1, const RgbF& c2);

/// CIEDE2000 with kL = kC = kH = 1.
double ciede2000(const Lab& v1, const Lab& v2);

/// Circular hue distance in degrees, [0, 180]. Zero when either chroma is
/// below 1e-4.
double hue_mae(const Lch& v1, const Lch& v2);

/// Euclidean distance in the (a, b) plane only.
double delta_chroma(const Lab& v1, const Lab& v2);

enum class HyabForm {
  /// sqrt(da^2 + db^2 + |dL|): |dL| sits inside the radical.
  printed,
  /// |dL| + sqrt(da^2 + db^2), the form common in the literature.
  literature,
};
double hyab(const Lab& v1, const Lab& v2, HyabForm form = HyabForm::printed);

/// Per-channel mean over the region. Throws Error{empty_region} when the
/// rectangle is empty or not inside the image.
RgbF representative_color(const RgbImage& image, const PixelRect& region);

/// The six raw distances, in kPrecisionMetricNames order.
PrecisionVector precision_distances(const RgbF& measured, const RgbF& target,
                                    HyabForm form = HyabForm::printed);

struct NormalizationConstants {
  PrecisionVector maxima{};
  PrecisionVector weights{};

  /// Closed-form maxima for the RGB and hue metrics; the CIELAB maxima come
  /// from sweep_gamut_maxima(17). Uniform weights.
  static NormalizationConstants defaults();

  /// Throws Error{invalid_argument} unless maxima > 0, weights >= 0 and the
  /// weights sum to 1 within 1e-9.
  void validate() const;

  /// `rgb_ed.max=...` / `rgb_ed.weight=...` lines.
  std::string to_text() const;
  /// Starts from `base` and overrides the keys present in `text`. Keys owned
  /// by other sections are ignored here.
  static NormalizationConstants from_text(std::string_view text,
                                          const NormalizationConstants& base = defaults());
};

struct PrecisionReport {
  PrecisionVector raw{};
  PrecisionVector normalized{};
  double pre_mean = 0;
};

/// d_hat = min(d / max, 1); pre_mean = sum(w_i * d_hat_i). Throws
/// Error{non_finite} for NaN/inf input and Error{invalid_argument} for
/// negative distances.
PrecisionReport normalize_and_aggregate(const PrecisionVector& raw,
                                        const NormalizationConstants& k);

PrecisionReport evaluate_precision(const RgbF& measured, const RgbF& target,
                                   const NormalizationConstants& k,
                                   HyabForm form = HyabForm::printed);

struct GamutMaxima {
  double lab_00 = 0;
  double lab_hyab = 0;
  double lab_ch = 0;
};
/// Largest pairwise CIELAB distances over a `levels`^3 lattice of the 8-bit
/// cube (lattice values round(k * 255 / (levels - 1))).
GamutMaxima sweep_gamut_maxima(int levels = 17, HyabForm form = HyabForm::printed);

}  // namespace violin
