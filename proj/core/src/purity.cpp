// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#include "violin/purity.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "constants_text.hpp"
#include "text_util.hpp"
#include "violin/error.hpp"

namespace violin {

namespace {

// Rec.601 luma scaled by 1000 so it stays integral.
std::vector<std::int64_t> luma_x1000(const RgbImage& image, const PixelRect& region) {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(region.area()));
  for (int y = region.y0; y < region.y1; ++y) {
    const std::uint8_t* p = image.row(y) + static_cast<std::size_t>(region.x0) * 3;
    for (int x = region.x0; x < region.x1; ++x, p += 3) {
      out.push_back(299 * p[0] + 587 * p[1] + 114 * p[2]);
    }
  }
  return out;
}

void require_region(const RgbImage& image, const PixelRect& region, int min_side,
                    const char* metric) {
  if (region.empty() || !image.contains(region)) {
    throw Error(Errc::empty_region, std::string(metric) + " needs a non-empty region inside the image");
  }
  if (region.width() < min_side || region.height() < min_side) {
    throw Error(Errc::region_too_small,
                std::string(metric) + " needs at least " + std::to_string(min_side) + "x" +
                    std::to_string(min_side) + " pixels, got " + std::to_string(region.width()) +
                    "x" + std::to_string(region.height()));
  }
}

int reflect101(int i, int n) {
  if (i < 0) return -i;
  if (i >= n) return 2 * n - 2 - i;
  return i;
}

std::vector<std::int64_t> gaussian_weights(const CannyParams& p) {
  const int radius = p.kernel_size / 2;
  std::vector<double> g;
  double total = 0;
  for (int k = -radius; k <= radius; ++k) {
    g.push_back(std::exp(-(k * k) / (2.0 * p.sigma * p.sigma)));
    total += g.back();
  }
  std::vector<std::int64_t> w;
  for (double v : g) w.push_back(std::max<std::int64_t>(1, std::llround(v / total * 4096.0)));
  return w;
}

// FFTW planning is not thread-safe; executing an existing plan on new arrays is.
class PlanCache {
 public:
  fftw_plan get(int rows, int cols) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find({rows, cols});
    if (it != plans_.end()) return it->second;
    const std::size_t n = static_cast<std::size_t>(rows) * cols;
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_2d(rows, cols, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(std::make_pair(rows, cols), plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {}
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

// Signed frequency in cycles per sample, [-0.5, 0.5).
double signed_frequency(int k, int n) {
  return (k <= (n - 1) / 2 ? k : k - n) / static_cast<double>(n);
}

}  // namespace

void CannyParams::validate() const {
  if (!(sigma > 0) || !std::isfinite(sigma)) {
    throw Error(Errc::invalid_argument, "canny sigma must be positive");
  }
  if (kernel_size < 3 || kernel_size % 2 == 0) {
    throw Error(Errc::invalid_argument, "canny kernel size must be odd and >= 3");
  }
  if (!(low >= 0) || !(low < high)) {
    throw Error(Errc::invalid_argument, "canny thresholds need 0 <= low < high");
  }
}

double channel_stddev(const RgbImage& image, const PixelRect& region) {
  if (region.empty() || !image.contains(region)) {
    throw Error(Errc::empty_region, "stddev needs a non-empty region inside the image");
  }
  std::uint64_t sum[3] = {0, 0, 0};
  std::uint64_t sum_sq[3] = {0, 0, 0};
  for (int y = region.y0; y < region.y1; ++y) {
    const std::uint8_t* p = image.row(y) + static_cast<std::size_t>(region.x0) * 3;
    for (int x = region.x0; x < region.x1; ++x, p += 3) {
      for (int c = 0; c < 3; ++c) {
        sum[c] += p[c];
        sum_sq[c] += static_cast<std::uint64_t>(p[c]) * p[c];
      }
    }
  }
  // N^2 * variance per channel, exact in integers.
  __extension__ using U128 = unsigned __int128;
  const auto n = static_cast<U128>(region.area());
  U128 scaled = 0;
  for (int c = 0; c < 3; ++c) {
    scaled += n * sum_sq[c] - static_cast<U128>(sum[c]) * sum[c];
  }
  if (scaled == 0) return 0.0;
  const double nd = static_cast<double>(region.area());
  return std::sqrt(static_cast<double>(scaled) / (3.0 * nd * nd));
}

std::vector<std::uint8_t> canny_edges(const RgbImage& image, const PixelRect& region,
                                      const CannyParams& params) {
  params.validate();
  const int radius = params.kernel_size / 2;
  require_region(image, region, std::max(5, radius + 1), "canny edge density");

  const int w = region.width();
  const int h = region.height();
  const auto at = [w](int x, int y) { return static_cast<std::size_t>(y) * w + x; };
  const auto luma = luma_x1000(image, region);
  const auto kernel = gaussian_weights(params);

  // Separable blur in exact integer arithmetic: luma inversion then maps to
  // an exact negation of the gradient field.
  std::vector<std::int64_t> horiz(luma.size());
  std::vector<std::int64_t> blur(luma.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::int64_t acc = 0;
      for (int k = -radius; k <= radius; ++k) acc += kernel[k + radius] * luma[at(reflect101(x + k, w), y)];
      horiz[at(x, y)] = acc;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::int64_t acc = 0;
      for (int k = -radius; k <= radius; ++k) acc += kernel[k + radius] * horiz[at(x, reflect101(y + k, h))];
      blur[at(x, y)] = acc;
    }
  }

  std::int64_t kernel_sum = 0;
  for (auto v : kernel) kernel_sum += v;
  const double scale = static_cast<double>(kernel_sum) * static_cast<double>(kernel_sum) * 1000.0;

  std::vector<double> magnitude(luma.size());
  std::vector<std::int64_t> gx(luma.size());
  std::vector<std::int64_t> gy(luma.size());
  for (int y = 0; y < h; ++y) {
    const int ym = reflect101(y - 1, h);
    const int yp = reflect101(y + 1, h);
    for (int x = 0; x < w; ++x) {
      const int xm = reflect101(x - 1, w);
      const int xp = reflect101(x + 1, w);
      const std::int64_t dx = (blur[at(xp, ym)] + 2 * blur[at(xp, y)] + blur[at(xp, yp)]) -
                              (blur[at(xm, ym)] + 2 * blur[at(xm, y)] + blur[at(xm, yp)]);
      const std::int64_t dy = (blur[at(xm, yp)] + 2 * blur[at(x, yp)] + blur[at(xp, yp)]) -
                              (blur[at(xm, ym)] + 2 * blur[at(x, ym)] + blur[at(xp, ym)]);
      gx[at(x, y)] = dx;
      gy[at(x, y)] = dy;
      magnitude[at(x, y)] =
          std::hypot(static_cast<double>(dx < 0 ? -dx : dx), static_cast<double>(dy < 0 ? -dy : dy)) / scale;
    }
  }

  // Non-maximum suppression along the quantized gradient direction. Ties are
  // broken towards the lower-index neighbor so a symmetric ridge keeps one pixel.
  constexpr double kTan22 = 0.41421356237309503;
  constexpr double kTan67 = 2.4142135623730949;
  enum : std::uint8_t { kNone = 0, kWeak = 1, kStrong = 2 };
  std::vector<std::uint8_t> cls(luma.size(), kNone);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double m = magnitude[at(x, y)];
      if (m <= params.low) continue;
      const double ax = std::abs(static_cast<double>(gx[at(x, y)]));
      const double ay = std::abs(static_cast<double>(gy[at(x, y)]));
      int dx1, dy1;
      if (ay <= ax * kTan22) {
        dx1 = -1, dy1 = 0;
      } else if (ay >= ax * kTan67) {
        dx1 = 0, dy1 = -1;
      } else if ((gx[at(x, y)] < 0) == (gy[at(x, y)] < 0)) {
        dx1 = -1, dy1 = -1;
      } else {
        dx1 = 1, dy1 = -1;
      }
      const double before = magnitude[at(reflect101(x + dx1, w), reflect101(y + dy1, h))];
      const double after = magnitude[at(reflect101(x - dx1, w), reflect101(y - dy1, h))];
      if (m > before && m >= after) cls[at(x, y)] = m > params.high ? kStrong : kWeak;
    }
  }

  std::vector<std::uint8_t> edges(luma.size(), 0);
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (cls[at(x, y)] != kStrong || edges[at(x, y)]) continue;
      edges[at(x, y)] = 1;
      stack.emplace_back(x, y);
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        for (int ny = std::max(0, cy - 1); ny <= std::min(h - 1, cy + 1); ++ny) {
          for (int nx = std::max(0, cx - 1); nx <= std::min(w - 1, cx + 1); ++nx) {
            if (cls[at(nx, ny)] != kNone && !edges[at(nx, ny)]) {
              edges[at(nx, ny)] = 1;
              stack.emplace_back(nx, ny);
            }
          }
        }
      }
    }
  }
  return edges;
}

double canny_edge_density(const RgbImage& image, const PixelRect& region,
                          const CannyParams& params) {
  const auto edges = canny_edges(image, region, params);
  const auto count = std::count(edges.begin(), edges.end(), std::uint8_t{1});
  return static_cast<double>(count) / static_cast<double>(edges.size());
}

double high_freq_ratio(const RgbImage& image, const PixelRect& region, double cutoff_fraction) {
  if (!(cutoff_fraction > 0.0 && cutoff_fraction < 1.0)) {
    throw Error(Errc::invalid_argument, "high-frequency cutoff must lie in (0, 1)");
  }
  require_region(image, region, 8, "high-frequency ratio");

  const int w = region.width();
  const int h = region.height();
  const auto luma = luma_x1000(image, region);
  std::int64_t total = 0;
  for (auto v : luma) total += v;
  if (std::all_of(luma.begin(), luma.end(), [&](auto v) { return v == luma.front(); })) return 0.0;

  const std::size_t n = luma.size();
  const double mean = static_cast<double>(total) / static_cast<double>(n);
  FftwBuffer in(n);
  FftwBuffer out(n);
  for (std::size_t i = 0; i < n; ++i) {
    in.data[i][0] = (static_cast<double>(luma[i]) - mean) / 1000.0;
    in.data[i][1] = 0.0;
  }
  fftw_execute_dft(plan_cache().get(h, w), in.data, out.data);

  const double half_diagonal = std::sqrt(0.5);
  double high = 0.0;
  double all = 0.0;
  for (int v = 0; v < h; ++v) {
    const double fv = signed_frequency(v, h);
    for (int u = 0; u < w; ++u) {
      if (u == 0 && v == 0) continue;
      const auto& c = out.data[static_cast<std::size_t>(v) * w + u];
      const double energy = c[0] * c[0] + c[1] * c[1];
      all += energy;
      const double radius = std::hypot(signed_frequency(u, w), fv) / half_diagonal;
      if (radius > cutoff_fraction) high += energy;
    }
  }
  return all > 0.0 ? high / all : 0.0;
}

void PurityConstants::validate() const {
  if (!(sd_max > 0) || !std::isfinite(sd_max)) {
    throw Error(Errc::invalid_argument, "sd.max must be a positive finite number");
  }
  double total = 0;
  for (std::size_t i = 0; i < kPurityMetricCount; ++i) {
    if (!(weights[i] >= 0) || !std::isfinite(weights[i])) {
      throw Error(Errc::invalid_argument,
                  std::string(kPurityMetricNames[i]) + ".weight must be non-negative");
    }
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(Errc::invalid_argument, "purity weights must sum to 1");
  }
}

std::string PurityConstants::to_text() const {
  std::string out;
  detail::append_key_value(out, "sd.max", sd_max);
  for (std::size_t i = 0; i < kPurityMetricCount; ++i) {
    detail::append_key_value(out, std::string(kPurityMetricNames[i]) + ".weight", weights[i]);
  }
  return out;
}

PurityConstants PurityConstants::from_text(std::string_view text) {
  return from_text(text, PurityConstants{});
}

PurityConstants PurityConstants::from_text(std::string_view text, const PurityConstants& base) {
  PurityConstants k = base;
  for (const auto& [key, value] : detail::parse_key_values(text)) {
    if (key == "sd.max") k.sd_max = detail::parse_double(value, key);
    for (std::size_t i = 0; i < kPurityMetricCount; ++i) {
      if (key == std::string(kPurityMetricNames[i]) + ".weight") {
        k.weights[i] = detail::parse_double(value, key);
      }
    }
  }
  k.validate();
  return k;
}

PurityReport purity_aggregate(const PurityVector& raw, const PurityConstants& k) {
  PurityReport report;
  report.raw = raw;
  for (std::size_t i = 0; i < kPurityMetricCount; ++i) {
    if (!std::isfinite(raw[i])) {
      throw Error(Errc::non_finite, "non-finite " + std::string(kPurityMetricNames[i]) + " value");
    }
    if (raw[i] < 0) {
      throw Error(Errc::invalid_argument, "negative " + std::string(kPurityMetricNames[i]) + " value");
    }
  }
  if (raw[1] > 1.0 || raw[2] > 1.0) {
    throw Error(Errc::invalid_argument, "ced and hf must be ratios in [0, 1]");
  }
  report.normalized = {std::min(raw[0] / k.sd_max, 1.0), raw[1], raw[2]};
  for (std::size_t i = 0; i < kPurityMetricCount; ++i) {
    report.pur_mean += k.weights[i] * report.normalized[i];
  }
  return report;
}

}  // namespace violin
