// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#include "violin/color.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <utility>

#include "builtin_data.hpp"
#include "text_util.hpp"
#include "violin/error.hpp"

namespace violin {

namespace {

int hex_digit(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
  return -1;
}

double srgb_decode(double v) {
  v /= 255.0;
  return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

struct Xyz {
  double x, y, z;
};

Xyz linear_to_xyz(double r, double g, double b) {
  return {0.4124564 * r + 0.3575761 * g + 0.1804375 * b,
          0.2126729 * r + 0.7151522 * g + 0.0721750 * b,
          0.0193339 * r + 0.1191920 * g + 0.9503041 * b};
}

// D65 reference white taken through the same matrix, so sRGB white lands on
// L = 100, a = b = 0 without rounding residue.
const Xyz kWhite = linear_to_xyz(1.0, 1.0, 1.0);

double lab_f(double t) {
  constexpr double delta = 6.0 / 29.0;
  constexpr double delta3 = delta * delta * delta;
  return t > delta3 ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

double hue_channel(double p, double q, double t) {
  if (t < 0) t += 1;
  if (t > 1) t -= 1;
  if (t < 1.0 / 6.0) return p + (q - p) * 6.0 * t;
  if (t < 0.5) return q;
  if (t < 2.0 / 3.0) return p + (q - p) * (2.0 / 3.0 - t) * 6.0;
  return p;
}

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

}  // namespace

Rgb8 parse_hex(std::string_view text) {
  if (text.size() != 7) {
    throw Error(Errc::malformed_hex,
                "hex color must be 7 characters (#RRGGBB), got " +
                    std::to_string(text.size()) + " in '" + std::string(text) + "'");
  }
  if (text[0] != '#') {
    throw Error(Errc::malformed_hex,
                "expected '#' at position 0 in '" + std::string(text) + "'");
  }
  std::array<int, 6> digits{};
  for (std::size_t i = 1; i < 7; ++i) {
    digits[i - 1] = hex_digit(text[i]);
    if (digits[i - 1] < 0) {
      throw Error(Errc::malformed_hex, "non-hex digit at position " + std::to_string(i) +
                                           " in '" + std::string(text) + "'");
    }
  }
  return {static_cast<std::uint8_t>(digits[0] * 16 + digits[1]),
          static_cast<std::uint8_t>(digits[2] * 16 + digits[3]),
          static_cast<std::uint8_t>(digits[4] * 16 + digits[5])};
}

std::string format_hex(Rgb8 c) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string out = "#";
  for (std::uint8_t v : {c.r, c.g, c.b}) {
    out.push_back(kDigits[v >> 4]);
    out.push_back(kDigits[v & 0xF]);
  }
  return out;
}

Lab srgb_to_lab(const RgbF& c) {
  const Xyz xyz = linear_to_xyz(srgb_decode(c.r), srgb_decode(c.g), srgb_decode(c.b));
  const double fx = lab_f(xyz.x / kWhite.x);
  const double fy = lab_f(xyz.y / kWhite.y);
  const double fz = lab_f(xyz.z / kWhite.z);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

Lch lab_to_lch(const Lab& v) {
  const double chroma = std::hypot(v.a, v.b);
  if (chroma < 1e-6) return {v.l, chroma, 0.0};
  double h = std::atan2(v.b, v.a) * 180.0 / std::numbers::pi;
  if (h < 0) h += 360.0;
  if (h >= 360.0) h -= 360.0;
  return {v.l, chroma, h};
}

Hsl rgb_to_hsl(const RgbF& c) {
  const double r = c.r / 255.0;
  const double g = c.g / 255.0;
  const double b = c.b / 255.0;
  const double hi = std::max({r, g, b});
  const double lo = std::min({r, g, b});
  const double l = (hi + lo) / 2.0;
  if (hi == lo) return {0.0, 0.0, l};

  const double d = hi - lo;
  const double s = l > 0.5 ? d / (2.0 - hi - lo) : d / (hi + lo);
  double h;
  if (hi == r) {
    h = (g - b) / d + (g < b ? 6.0 : 0.0);
  } else if (hi == g) {
    h = (b - r) / d + 2.0;
  } else {
    h = (r - g) / d + 4.0;
  }
  h *= 60.0;
  if (h >= 360.0) h -= 360.0;
  return {h, s, l};
}

RgbF hsl_to_rgbf(const Hsl& v) {
  const double s = std::clamp(v.s, 0.0, 1.0);
  const double l = std::clamp(v.l, 0.0, 1.0);
  if (s == 0.0) return {l * 255.0, l * 255.0, l * 255.0};
  double h = std::fmod(v.h, 360.0);
  if (h < 0) h += 360.0;
  h /= 360.0;
  const double q = l < 0.5 ? l * (1.0 + s) : l + s - l * s;
  const double p = 2.0 * l - q;
  return {hue_channel(p, q, h + 1.0 / 3.0) * 255.0, hue_channel(p, q, h) * 255.0,
          hue_channel(p, q, h - 1.0 / 3.0) * 255.0};
}

Rgb8 hsl_to_rgb(const Hsl& v) { return quantize(hsl_to_rgbf(v)); }

Rgb8 quantize(const RgbF& c) { return {to_byte(c.r), to_byte(c.g), to_byte(c.b)}; }

std::size_t expected_cardinality(ColorLevel level) noexcept {
  return kLevelCardinality[static_cast<std::size_t>(level) - 1];
}

std::string_view to_string(ColorLevel level) noexcept {
  switch (level) {
    case ColorLevel::level1: return "level-1";
    case ColorLevel::level2: return "level-2";
    case ColorLevel::level3: return "level-3";
  }
  return "level-?";
}

ColorTable ColorTable::parse(std::string_view text) {
  ColorTable table;
  std::set<std::pair<int, std::string>> seen;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto fields = detail::split(line, '\t');
    const auto where = "centroid table line " + std::to_string(line_no);
    if (fields.size() != 3) {
      throw Error(Errc::parse_error, where + ": expected 3 tab-separated fields");
    }
    int level = 0;
    if (fields[0] == "1") level = 1;
    else if (fields[0] == "2") level = 2;
    else if (fields[0] == "3") level = 3;
    else throw Error(Errc::parse_error, where + ": level must be 1, 2 or 3");
    std::string name(fields[1]);
    if (name.empty()) throw Error(Errc::parse_error, where + ": empty name");
    if (!seen.emplace(level, name).second) {
      throw Error(Errc::parse_error, where + ": duplicate entry '" + name + "'");
    }
    table.levels_[level - 1].push_back(
        {static_cast<ColorLevel>(level), std::move(name), parse_hex(fields[2])});
  }
  for (int level = 1; level <= 3; ++level) {
    const auto have = table.levels_[level - 1].size();
    const auto want = kLevelCardinality[level - 1];
    if (have != want) {
      throw Error(Errc::parse_error, "centroid table level " + std::to_string(level) + " has " +
                                         std::to_string(have) + " entries, expected " +
                                         std::to_string(want));
    }
  }
  return table;
}

ColorTable ColorTable::load(const std::string& path) {
  return parse(detail::read_file(path));
}

const ColorTable& ColorTable::builtin() {
  static const ColorTable table = parse(detail::kBuiltinCentroids);
  return table;
}

std::span<const NamedColor> ColorTable::level(ColorLevel level) const {
  return levels_[static_cast<std::size_t>(level) - 1];
}

Rgb8 sample_color(ColorLevel level, std::uint64_t seed, const ColorTable& table) {
  std::mt19937_64 rng(seed);
  return table.sample(level, rng).color;
}

}  // namespace violin
