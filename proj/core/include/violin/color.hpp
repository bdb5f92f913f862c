// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

// Color values and the conversions between sRGB, CIELAB, LCh and HSL.
//
// All math runs in double precision. Quantization to 8 bits happens only
// when a caller asks for an Rgb8 back (hsl_to_rgb, image rendering).

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace violin {

struct Rgb8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb8&, const Rgb8&) = default;
};

/// Real-valued RGB on the 0..255 scale, e.g. the mean color of a region.
struct RgbF {
  double r = 0;
  double g = 0;
  double b = 0;

  RgbF() = default;
  RgbF(double r_, double g_, double b_) : r(r_), g(g_), b(b_) {}
  RgbF(Rgb8 c) : r(c.r), g(c.g), b(c.b) {}  // NOLINT(google-explicit-constructor)

  friend bool operator==(const RgbF&, const RgbF&) = default;
};

struct Lab {
  double l = 0;
  double a = 0;
  double b = 0;
};

struct Lch {
  double l = 0;
  double c = 0;
  double h = 0;  // degrees in [0, 360)
};

struct Hsl {
  double h = 0;  // degrees in [0, 360)
  double s = 0;  // [0, 1]
  double l = 0;  // [0, 1]
};

/// Accepts "#RRGGBB" in either case. Throws Error{malformed_hex} naming the
/// offending character position.
Rgb8 parse_hex(std::string_view text);
/// Uppercase "#RRGGBB".
std::string format_hex(Rgb8 c);

/// sRGB (IEC 61966-2-1) -> XYZ -> CIELAB under D65 with the 2 degree observer.
Lab srgb_to_lab(const RgbF& c);
inline Lab srgb_to_lab(Rgb8 c) { return srgb_to_lab(RgbF{c}); }

/// Hue is 0 whenever chroma is below 1e-6.
Lch lab_to_lch(const Lab& v);

Hsl rgb_to_hsl(const RgbF& c);
inline Hsl rgb_to_hsl(Rgb8 c) { return rgb_to_hsl(RgbF{c}); }
RgbF hsl_to_rgbf(const Hsl& v);
/// Rounds each channel half-up and clamps to [0,255].
Rgb8 hsl_to_rgb(const Hsl& v);
Rgb8 quantize(const RgbF& c);

// ---------------------------------------------------------------------------
// ISCC-NBS style color tables.

enum class ColorLevel : int { level1 = 1, level2 = 2, level3 = 3 };

inline constexpr std::array<std::size_t, 3> kLevelCardinality = {13, 29, 267};

std::size_t expected_cardinality(ColorLevel level) noexcept;

struct NamedColor {
  ColorLevel level = ColorLevel::level1;
  std::string name;
  Rgb8 color;
};

/// Centroid tables for the three granularity levels. Immutable after load.
class ColorTable {
 public:
  /// Parses `level<TAB>name<TAB>#RRGGBB` lines. Blank lines and lines
  /// starting with '#' are skipped. Rejects duplicate (level, name) keys and
  /// any level whose cardinality differs from 13 / 29 / 267.
  static ColorTable parse(std::string_view text);
  static ColorTable load(const std::string& path);
  /// The table bundled into the library.
  static const ColorTable& builtin();

  std::span<const NamedColor> level(ColorLevel level) const;

  /// Uniform draw over the level's centroids.
  template <typename Rng>
  const NamedColor& sample(ColorLevel lvl, Rng& rng) const {
    auto entries = level(lvl);
    std::uniform_int_distribution<std::size_t> pick(0, entries.size() - 1);
    return entries[pick(rng)];
  }

 private:
  std::array<std::vector<NamedColor>, 3> levels_;
};

/// Deterministic in `seed`.
Rgb8 sample_color(ColorLevel level, std::uint64_t seed,
                  const ColorTable& table = ColorTable::builtin());

std::string_view to_string(ColorLevel level) noexcept;

}  // namespace violin
