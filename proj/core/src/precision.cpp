// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#include "violin/precision.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include "constants_text.hpp"
#include "text_util.hpp"
#include "violin/error.hpp"

namespace violin {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double hue_degrees(double b, double a) {
  if (a == 0.0 && b == 0.0) return 0.0;
  double h = std::atan2(b, a) / kDeg;
  if (h < 0) h += 360.0;
  return h;
}

double pow7(double x) {
  const double x2 = x * x;
  return x2 * x2 * x2 * x;
}

}  // namespace

double rgb_euclidean(const RgbF& c1, const RgbF& c2) {
  const double dr = c1.r - c2.r;
  const double dg = c1.g - c2.g;
  const double db = c1.b - c2.b;
  return std::sqrt(dr * dr + dg * dg + db * db);
}

RedmeanWeights redmean_weights(double rbar) {
  return {2.0 + rbar / 256.0, 2.0 + (255.0 - rbar) / 256.0};
}

double rgb_redmean(const RgbF& c1, const RgbF& c2) {
  const auto w = redmean_weights((c1.r + c2.r) / 2.0);
  const double dr = c1.r - c2.r;
  const double dg = c1.g - c2.g;
  const double db = c1.b - c2.b;
  return std::sqrt(w.red * dr * dr + 4.0 * dg * dg + w.blue * db * db);
}

double ciede2000(const Lab& v1, const Lab& v2) {
  const double c1 = std::hypot(v1.a, v1.b);
  const double c2 = std::hypot(v2.a, v2.b);
  const double c_bar7 = pow7((c1 + c2) / 2.0);
  const double g = 0.5 * (1.0 - std::sqrt(c_bar7 / (c_bar7 + pow7(25.0))));

  const double a1p = (1.0 + g) * v1.a;
  const double a2p = (1.0 + g) * v2.a;
  const double c1p = std::hypot(a1p, v1.b);
  const double c2p = std::hypot(a2p, v2.b);
  const double h1p = hue_degrees(v1.b, a1p);
  const double h2p = hue_degrees(v2.b, a2p);

  const double dl = v2.l - v1.l;
  const double dc = c2p - c1p;
  const double chroma_product = c1p * c2p;

  double dh = 0.0;
  if (chroma_product != 0.0) {
    dh = h2p - h1p;
    if (dh > 180.0) dh -= 360.0;
    else if (dh < -180.0) dh += 360.0;
  }
  const double d_big_h = 2.0 * std::sqrt(chroma_product) * std::sin(dh * kDeg / 2.0);

  const double l_bar = (v1.l + v2.l) / 2.0;
  const double c_bar_p = (c1p + c2p) / 2.0;
  double h_bar = h1p + h2p;
  if (chroma_product != 0.0) {
    if (std::abs(h1p - h2p) <= 180.0) h_bar /= 2.0;
    else if (h_bar < 360.0) h_bar = (h_bar + 360.0) / 2.0;
    else h_bar = (h_bar - 360.0) / 2.0;
  }

  const double t = 1.0 - 0.17 * std::cos((h_bar - 30.0) * kDeg) +
                   0.24 * std::cos(2.0 * h_bar * kDeg) +
                   0.32 * std::cos((3.0 * h_bar + 6.0) * kDeg) -
                   0.20 * std::cos((4.0 * h_bar - 63.0) * kDeg);
  const double d_theta = 30.0 * std::exp(-std::pow((h_bar - 275.0) / 25.0, 2.0));
  const double c_bar_p7 = pow7(c_bar_p);
  const double rc = 2.0 * std::sqrt(c_bar_p7 / (c_bar_p7 + pow7(25.0)));
  const double l50 = (l_bar - 50.0) * (l_bar - 50.0);
  const double sl = 1.0 + 0.015 * l50 / std::sqrt(20.0 + l50);
  const double sc = 1.0 + 0.045 * c_bar_p;
  const double sh = 1.0 + 0.015 * c_bar_p * t;
  const double rt = -std::sin(2.0 * d_theta * kDeg) * rc;

  const double tl = dl / sl;
  const double tc = dc / sc;
  const double th = d_big_h / sh;
  return std::sqrt(std::max(0.0, tl * tl + tc * tc + th * th + rt * tc * th));
}

double hue_mae(const Lch& v1, const Lch& v2) {
  if (v1.c < 1e-4 || v2.c < 1e-4) return 0.0;
  const double d = std::abs(v1.h - v2.h);
  return std::min(d, 360.0 - d);
}

double delta_chroma(const Lab& v1, const Lab& v2) {
  return std::hypot(v2.a - v1.a, v2.b - v1.b);
}

double hyab(const Lab& v1, const Lab& v2, HyabForm form) {
  const double da = v2.a - v1.a;
  const double db = v2.b - v1.b;
  const double dl = std::abs(v2.l - v1.l);
  if (form == HyabForm::literature) return dl + std::sqrt(da * da + db * db);
  return std::sqrt(da * da + db * db + dl);
}

RgbF representative_color(const RgbImage& image, const PixelRect& region) {
  if (region.empty() || !image.contains(region)) {
    throw Error(Errc::empty_region, "representative color needs a non-empty region inside the image");
  }
  std::uint64_t sum[3] = {0, 0, 0};
  for (int y = region.y0; y < region.y1; ++y) {
    const std::uint8_t* p = image.row(y) + static_cast<std::size_t>(region.x0) * 3;
    for (int x = region.x0; x < region.x1; ++x, p += 3) {
      sum[0] += p[0];
      sum[1] += p[1];
      sum[2] += p[2];
    }
  }
  const double n = static_cast<double>(region.area());
  return {static_cast<double>(sum[0]) / n, static_cast<double>(sum[1]) / n,
          static_cast<double>(sum[2]) / n};
}

PrecisionVector precision_distances(const RgbF& measured, const RgbF& target, HyabForm form) {
  const Lab lab_m = srgb_to_lab(measured);
  const Lab lab_t = srgb_to_lab(target);
  return {rgb_euclidean(measured, target),
          rgb_redmean(measured, target),
          ciede2000(lab_m, lab_t),
          hue_mae(lab_to_lch(lab_m), lab_to_lch(lab_t)),
          hyab(lab_m, lab_t, form),
          delta_chroma(lab_m, lab_t)};
}

NormalizationConstants NormalizationConstants::defaults() {
  NormalizationConstants k;
  // lab_00 / lab_hyab / lab_ch: sweep_gamut_maxima(17), frozen.
  k.maxima = {255.0 * std::sqrt(3.0),
              255.0 * std::sqrt(4.0 + 255.0 / 256.0 + 4.0),
              detail::kGamutMaxLab00,
              180.0,
              detail::kGamutMaxLabHyab,
              detail::kGamutMaxLabCh};
  k.weights.fill(1.0 / 6.0);
  return k;
}

void NormalizationConstants::validate() const {
  double total = 0;
  for (std::size_t i = 0; i < kPrecisionMetricCount; ++i) {
    const auto name = std::string(kPrecisionMetricNames[i]);
    if (!(maxima[i] > 0) || !std::isfinite(maxima[i])) {
      throw Error(Errc::invalid_argument, name + ".max must be a positive finite number");
    }
    if (!(weights[i] >= 0) || !std::isfinite(weights[i])) {
      throw Error(Errc::invalid_argument, name + ".weight must be non-negative");
    }
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(Errc::invalid_argument, "precision weights must sum to 1");
  }
}

std::string NormalizationConstants::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < kPrecisionMetricCount; ++i) {
    detail::append_key_value(out, std::string(kPrecisionMetricNames[i]) + ".max", maxima[i]);
    detail::append_key_value(out, std::string(kPrecisionMetricNames[i]) + ".weight", weights[i]);
  }
  return out;
}

NormalizationConstants NormalizationConstants::from_text(std::string_view text,
                                                         const NormalizationConstants& base) {
  NormalizationConstants k = base;
  for (const auto& [key, value] : detail::parse_key_values(text)) {
    for (std::size_t i = 0; i < kPrecisionMetricCount; ++i) {
      const std::string name(kPrecisionMetricNames[i]);
      if (key == name + ".max") k.maxima[i] = detail::parse_double(value, key);
      if (key == name + ".weight") k.weights[i] = detail::parse_double(value, key);
    }
  }
  k.validate();
  return k;
}

PrecisionReport normalize_and_aggregate(const PrecisionVector& raw,
                                        const NormalizationConstants& k) {
  PrecisionReport report;
  report.raw = raw;
  for (std::size_t i = 0; i < kPrecisionMetricCount; ++i) {
    if (!std::isfinite(raw[i])) {
      throw Error(Errc::non_finite,
                  "non-finite " + std::string(kPrecisionMetricNames[i]) + " distance");
    }
    if (raw[i] < 0) {
      throw Error(Errc::invalid_argument,
                  "negative " + std::string(kPrecisionMetricNames[i]) + " distance");
    }
    report.normalized[i] = std::min(raw[i] / k.maxima[i], 1.0);
    report.pre_mean += k.weights[i] * report.normalized[i];
  }
  return report;
}

PrecisionReport evaluate_precision(const RgbF& measured, const RgbF& target,
                                   const NormalizationConstants& k, HyabForm form) {
  return normalize_and_aggregate(precision_distances(measured, target, form), k);
}

GamutMaxima sweep_gamut_maxima(int levels, HyabForm form) {
  if (levels < 2) throw Error(Errc::invalid_argument, "sweep needs at least 2 levels per axis");
  std::vector<Lab> lattice;
  lattice.reserve(static_cast<std::size_t>(levels) * levels * levels);
  auto value = [levels](int k) {
    return static_cast<double>(std::lround(k * 255.0 / (levels - 1)));
  };
  for (int r = 0; r < levels; ++r)
    for (int g = 0; g < levels; ++g)
      for (int b = 0; b < levels; ++b) lattice.push_back(srgb_to_lab(RgbF{value(r), value(g), value(b)}));

  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<GamutMaxima> partial(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        GamutMaxima m;
        for (std::size_t i = w; i < lattice.size(); i += workers) {
          for (std::size_t j = i + 1; j < lattice.size(); ++j) {
            m.lab_00 = std::max(m.lab_00, ciede2000(lattice[i], lattice[j]));
            m.lab_hyab = std::max(m.lab_hyab, hyab(lattice[i], lattice[j], form));
            m.lab_ch = std::max(m.lab_ch, delta_chroma(lattice[i], lattice[j]));
          }
        }
        partial[w] = m;
      });
    }
  }
  GamutMaxima out;
  for (const auto& m : partial) {
    out.lab_00 = std::max(out.lab_00, m.lab_00);
    out.lab_hyab = std::max(out.lab_hyab, m.lab_hyab);
    out.lab_ch = std::max(out.lab_ch, m.lab_ch);
  }
  return out;
}

}  // namespace violin
