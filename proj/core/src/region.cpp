// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#include "violin/region.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "violin/error.hpp"

namespace violin {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

int split_point(double fraction, int extent) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error(Errc::invalid_argument, "split fraction must lie in (0, 1)");
  }
  return static_cast<int>(std::floor(fraction * extent + 0.5));
}

// Shortest signed angular difference to - from, in (-180, 180].
double signed_hue_delta(double from, double to) {
  double d = std::fmod(to - from, 360.0);
  if (d > 180.0) d -= 360.0;
  if (d <= -180.0) d += 360.0;
  return d;
}

using Vec3 = std::array<double, 3>;

// Segment samples for the in-range test; consecutive samples differ by far
// less than one 8-bit step.
constexpr int kSegmentSteps = 4096;

Vec3 unit_coords(const Hsl& c, double hue_origin) {
  return {(hue_origin + signed_hue_delta(hue_origin, c.h)) / 360.0, c.s, c.l};
}

Hsl from_unit_coords(const Vec3& v) {
  double h = std::fmod(v[0] * 360.0, 360.0);
  if (h < 0) h += 360.0;
  return {h, v[1], v[2]};
}

}  // namespace

PixelRect region_pixels(const RegionGeometry& geometry, int width, int height) {
  if (width < 2 || height < 2) {
    throw Error(Errc::invalid_argument, "region geometry needs an image of at least 2x2");
  }
  const PixelRect rect = std::visit(
      Overloaded{
          [&](const FullFrame&) { return PixelRect{0, 0, width, height}; },
          [&](const HorizontalSplit& g) {
            const int cut = split_point(g.left_fraction, width);
            return g.side == Side::first ? PixelRect{0, 0, cut, height}
                                         : PixelRect{cut, 0, width, height};
          },
          [&](const VerticalSplit& g) {
            const int cut = split_point(g.top_fraction, height);
            return g.side == Side::first ? PixelRect{0, 0, width, cut}
                                         : PixelRect{0, cut, width, height};
          },
          [&](const Quadrant& g) {
            if (g.index < 0 || g.index > 3) {
              throw Error(Errc::invalid_argument, "quadrant index must be 0..3");
            }
            const int mx = width / 2;
            const int my = height / 2;
            const bool right = g.index % 2 == 1;
            const bool bottom = g.index >= 2;
            return PixelRect{right ? mx : 0, bottom ? my : 0, right ? width : mx,
                             bottom ? height : my};
          },
      },
      geometry);
  if (rect.empty()) {
    throw Error(Errc::empty_region, "region geometry yields an empty rectangle at " +
                                        std::to_string(width) + "x" + std::to_string(height));
  }
  return rect;
}

void check_tiling(std::span<const RegionSpec> regions, int width, int height) {
  if (regions.empty()) throw Error(Errc::untiled_regions, "sample has no regions");
  std::vector<PixelRect> rects;
  long long covered = 0;
  for (const auto& r : regions) {
    rects.push_back(region_pixels(r.geometry, width, height));
    covered += rects.back().area();
  }
  for (std::size_t i = 0; i < rects.size(); ++i) {
    for (std::size_t j = i + 1; j < rects.size(); ++j) {
      if (rects[i].overlaps(rects[j])) {
        throw Error(Errc::untiled_regions, "regions " + std::to_string(i) + " and " +
                                               std::to_string(j) + " overlap");
      }
    }
  }
  if (covered != static_cast<long long>(width) * height) {
    throw Error(Errc::untiled_regions, "regions cover " + std::to_string(covered) + " of " +
                                           std::to_string(static_cast<long long>(width) * height) +
                                           " pixels");
  }
}

Hsl range_point(Rgb8 low, Rgb8 high, double t) {
  const Hsl lo = rgb_to_hsl(low);
  const Vec3 a = unit_coords(lo, lo.h);
  const Vec3 b = unit_coords(rgb_to_hsl(high), lo.h);
  return from_unit_coords({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]),
                           a[2] + t * (b[2] - a[2])});
}

FuzzyProjection project_onto_range(const RgbF& v, Rgb8 low, Rgb8 high) {
  if (low == high) throw Error(Errc::invalid_argument, "color range endpoints must differ");
  const Hsl lo = rgb_to_hsl(low);
  const Vec3 a = unit_coords(lo, lo.h);
  const Vec3 b = unit_coords(rgb_to_hsl(high), lo.h);
  const Vec3 p = unit_coords(rgb_to_hsl(v), lo.h);

  Vec3 d{};
  double dd = 0.0;
  double num = 0.0;
  for (int i = 0; i < 3; ++i) {
    d[i] = b[i] - a[i];
    dd += d[i] * d[i];
    num += (p[i] - a[i]) * d[i];
  }
  FuzzyProjection out;
  out.t = dd > 0.0 ? std::clamp(num / dd, 0.0, 1.0) : 0.0;
  out.point = from_unit_coords({a[0] + out.t * d[0], a[1] + out.t * d[1], a[2] + out.t * d[2]});
  out.reference = hsl_to_rgb(out.point);

  // An 8-bit color that is itself the rounding of a segment point lies in
  // the range; it is its own reference.
  const Rgb8 q = quantize(v);
  if (q != out.reference) {
    for (int k = 0; k <= kSegmentSteps; ++k) {
      const double t = static_cast<double>(k) / kSegmentSteps;
      const Hsl h = from_unit_coords({a[0] + t * d[0], a[1] + t * d[1], a[2] + t * d[2]});
      if (hsl_to_rgb(h) == q) {
        out.t = t;
        out.point = h;
        out.reference = q;
        break;
      }
    }
  }
  return out;
}

void EvalConfig::validate() const {
  if (resolution < 8) throw Error(Errc::invalid_argument, "resolution must be at least 8");
  if (erosion < 0) throw Error(Errc::invalid_argument, "erosion margin must be >= 0");
  if (!(hf_cutoff > 0.0 && hf_cutoff < 1.0)) {
    throw Error(Errc::invalid_argument, "high-frequency cutoff must lie in (0, 1)");
  }
  precision.validate();
  purity.validate();
  canny.validate();
}

SampleReport evaluate_sample(const RgbImage& image, std::span<const RegionSpec> regions,
                             const EvalConfig& config) {
  if (image.width() != config.resolution || image.height() != config.resolution) {
    throw Error(Errc::dimension_mismatch,
                "image is " + std::to_string(image.width()) + "x" + std::to_string(image.height()) +
                    ", expected " + std::to_string(config.resolution) + "x" +
                    std::to_string(config.resolution));
  }
  check_tiling(regions, image.width(), image.height());

  SampleReport report;
  for (const auto& spec : regions) {
    RegionReport r;
    r.rect = region_pixels(spec.geometry, image.width(), image.height()).eroded(config.erosion);
    if (r.rect.empty()) {
      throw Error(Errc::empty_region, "erosion margin leaves an empty region");
    }
    r.representative = representative_color(image, r.rect);
    if (const auto* exact = std::get_if<ExactColor>(&spec.target)) {
      r.reference = exact->color;
    } else {
      const auto& range = std::get<ColorRange>(spec.target);
      const auto projection = project_onto_range(r.representative, range.low, range.high);
      r.reference = projection.reference;
      r.range_t = projection.t;
    }
    r.precision =
        evaluate_precision(r.representative, r.reference, config.precision, config.hyab_form);
    r.purity = purity_aggregate({channel_stddev(image, r.rect),
                                 canny_edge_density(image, r.rect, config.canny),
                                 high_freq_ratio(image, r.rect, config.hf_cutoff)},
                                config.purity);
    report.regions.push_back(r);
  }

  const double n = static_cast<double>(report.regions.size());
  for (const auto& r : report.regions) {
    for (std::size_t i = 0; i < kPrecisionMetricCount; ++i) {
      report.precision_raw[i] += r.precision.raw[i] / n;
      report.precision_normalized[i] += r.precision.normalized[i] / n;
    }
    for (std::size_t i = 0; i < kPurityMetricCount; ++i) {
      report.purity_raw[i] += r.purity.raw[i] / n;
      report.purity_normalized[i] += r.purity.normalized[i] / n;
    }
    report.pre_mean += r.precision.pre_mean / n;
    report.pur_mean += r.purity.pur_mean / n;
  }
  return report;
}

SplitMeasurement measure_split_ratio(const RgbImage& image, SplitAxis axis) {
  const bool columns = axis == SplitAxis::horizontal;
  const int n = columns ? image.width() : image.height();
  const int across = columns ? image.height() : image.width();
  if (n < 2 || across < 1) {
    throw Error(Errc::invalid_argument, "split measurement needs at least 2 lines");
  }

  // Mean color of every column (or row).
  std::vector<Vec3> profile(static_cast<std::size_t>(n), Vec3{0, 0, 0});
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const Rgb8 c = image.at(x, y);
      auto& acc = profile[static_cast<std::size_t>(columns ? x : y)];
      acc[0] += c.r;
      acc[1] += c.g;
      acc[2] += c.b;
    }
  }
  for (auto& p : profile) {
    for (auto& v : p) v /= across;
  }

  // Prefix sums give each segment's squared deviation in O(1).
  std::vector<Vec3> sum(n + 1, Vec3{0, 0, 0});
  std::vector<double> sum_sq(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    double sq = 0;
    for (int c = 0; c < 3; ++c) {
      sum[i + 1][c] = sum[i][c] + profile[i][c];
      sq += profile[i][c] * profile[i][c];
    }
    sum_sq[i + 1] = sum_sq[i] + sq;
  }
  const auto sse = [&](int from, int to) {
    double s = sum_sq[to] - sum_sq[from];
    for (int c = 0; c < 3; ++c) {
      const double m = sum[to][c] - sum[from][c];
      s -= m * m / (to - from);
    }
    return std::max(0.0, s);
  };

  SplitMeasurement out;
  if (sse(0, n) <= 1e-9) {
    out.fraction = 0.5;
    out.boundary = n / 2;
    out.degenerate = true;
    return out;
  }
  double best = std::numeric_limits<double>::infinity();
  for (int b = 1; b < n; ++b) {
    const double cost = sse(0, b) + sse(b, n);
    if (cost < best - 1e-9) {
      best = cost;
      out.boundary = b;
    }
  }
  out.fraction = static_cast<double>(out.boundary) / n;
  return out;
}

}  // namespace violin
