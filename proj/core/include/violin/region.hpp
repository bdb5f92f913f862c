// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

// Sample-level evaluation: region geometry, fuzzy-range references, and the
// per-region metric pipeline averaged into one sample score.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "violin/color.hpp"
#include "violin/image.hpp"
#include "violin/precision.hpp"
#include "violin/purity.hpp"

namespace violin {

struct ExactColor {
  Rgb8 color;
  friend bool operator==(const ExactColor&, const ExactColor&) = default;
};

/// Acceptable interval between two distinct endpoint colors.
struct ColorRange {
  Rgb8 low;
  Rgb8 high;
  friend bool operator==(const ColorRange&, const ColorRange&) = default;
};

using ColorTarget = std::variant<ExactColor, ColorRange>;

/// Which of the two blocks of a split a region covers.
enum class Side { first, second };

struct FullFrame {
  friend bool operator==(const FullFrame&, const FullFrame&) = default;
};
/// Left/right blocks; the boundary column is round(left_fraction * W).
struct HorizontalSplit {
  double left_fraction = 0.5;
  Side side = Side::first;
  friend bool operator==(const HorizontalSplit&, const HorizontalSplit&) = default;
};
/// Top/bottom blocks; the boundary row is round(top_fraction * H).
struct VerticalSplit {
  double top_fraction = 0.5;
  Side side = Side::first;
  friend bool operator==(const VerticalSplit&, const VerticalSplit&) = default;
};
/// 0 top-left, 1 top-right, 2 bottom-left, 3 bottom-right.
struct Quadrant {
  int index = 0;
  friend bool operator==(const Quadrant&, const Quadrant&) = default;
};

using RegionGeometry = std::variant<FullFrame, HorizontalSplit, VerticalSplit, Quadrant>;

struct RegionSpec {
  RegionGeometry geometry;
  ColorTarget target;
  friend bool operator==(const RegionSpec&, const RegionSpec&) = default;
};

/// Fractional boundaries round half-up; quadrants split at floor(W/2),
/// floor(H/2). Throws Error{empty_region} when the result is empty.
PixelRect region_pixels(const RegionGeometry& geometry, int width, int height);

/// Throws Error{untiled_regions} unless the regions cover every pixel exactly
/// once.
void check_tiling(std::span<const RegionSpec> regions, int width, int height);

/// Point at parameter t on the HSL segment low -> high. Hue is unwrapped
/// along the shorter arc from low's hue.
Hsl range_point(Rgb8 low, Rgb8 high, double t);

struct FuzzyProjection {
  double t = 0;     // clamped to [0, 1]
  Hsl point;        // on the segment, hue wrapped to [0, 360)
  Rgb8 reference;   // point quantized to 8 bits
};

/// Projects `v` onto the HSL segment between the endpoints. Coordinates are
/// (hue / 360, s, l) so all three axes span a unit range. When round(v) is
/// the 8-bit rounding of some segment point, that color is the reference.
FuzzyProjection project_onto_range(const RgbF& v, Rgb8 low, Rgb8 high);
inline Rgb8 fuzzy_reference(const RgbF& v, Rgb8 low, Rgb8 high) {
  return project_onto_range(v, low, high).reference;
}

struct EvalConfig {
  int resolution = 256;
  NormalizationConstants precision = NormalizationConstants::defaults();
  PurityConstants purity;
  CannyParams canny;
  double hf_cutoff = 0.25;
  /// Pixels trimmed from every side of a region before measuring.
  int erosion = 0;
  HyabForm hyab_form = HyabForm::printed;

  void validate() const;
};

struct RegionReport {
  PixelRect rect;
  RgbF representative;
  Rgb8 reference;
  std::optional<double> range_t;  // set for fuzzy targets
  PrecisionReport precision;
  PurityReport purity;
};

struct SampleReport {
  std::vector<RegionReport> regions;
  // Arithmetic means over regions.
  PrecisionVector precision_raw{};
  PrecisionVector precision_normalized{};
  PurityVector purity_raw{};
  PurityVector purity_normalized{};
  double pre_mean = 0;
  double pur_mean = 0;
};

/// Throws Error{dimension_mismatch} when the image is not
/// resolution x resolution and Error{untiled_regions} for a bad region set.
SampleReport evaluate_sample(const RgbImage& image, std::span<const RegionSpec> regions,
                             const EvalConfig& config);

enum class SplitAxis {
  horizontal,  // left | right, boundary is a column index
  vertical,    // top / bottom, boundary is a row index
};

struct SplitMeasurement {
  double fraction = 0.5;  // share of the left (or top) block
  int boundary = 0;
  bool degenerate = false;
};

/// Two-segment changepoint on the per-column (per-row) mean color profile:
/// the boundary minimizing total within-segment squared deviation.
SplitMeasurement measure_split_ratio(const RgbImage& image, SplitAxis axis);

}  // namespace violin
