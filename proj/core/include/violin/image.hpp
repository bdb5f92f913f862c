// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "violin/color.hpp"

namespace violin {

/// Half-open pixel rectangle [x0, x1) x [y0, y1).
struct PixelRect {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int width() const noexcept { return x1 - x0; }
  int height() const noexcept { return y1 - y0; }
  long long area() const noexcept {
    return empty() ? 0 : static_cast<long long>(width()) * height();
  }
  bool empty() const noexcept { return x1 <= x0 || y1 <= y0; }
  bool overlaps(const PixelRect& o) const noexcept {
    return x0 < o.x1 && o.x0 < x1 && y0 < o.y1 && o.y0 < y1;
  }
  /// Shrinks every side by `margin`; may produce an empty rectangle.
  PixelRect eroded(int margin) const noexcept {
    return {x0 + margin, y0 + margin, x1 - margin, y1 - margin};
  }

  friend bool operator==(const PixelRect&, const PixelRect&) = default;
};

/// Interleaved 8-bit RGB raster, row-major.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(int width, int height, Rgb8 fill = {});

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  PixelRect bounds() const noexcept { return {0, 0, width_, height_}; }
  bool contains(const PixelRect& r) const noexcept {
    return r.x0 >= 0 && r.y0 >= 0 && r.x1 <= width_ && r.y1 <= height_;
  }

  Rgb8 at(int x, int y) const noexcept {
    const auto* p = &data_[index(x, y)];
    return {p[0], p[1], p[2]};
  }
  void set(int x, int y, Rgb8 c) noexcept {
    auto* p = &data_[index(x, y)];
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
  }
  void fill(const PixelRect& r, Rgb8 c);

  std::span<const std::uint8_t> bytes() const noexcept { return data_; }
  std::span<std::uint8_t> bytes() noexcept { return data_; }
  const std::uint8_t* row(int y) const noexcept { return &data_[index(0, y)]; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * width_ + x) * 3;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Decodes any PNG into 8-bit RGB. Throws Error{io_error} on malformed input.
RgbImage decode_png(std::span<const std::uint8_t> bytes);
RgbImage read_png(const std::string& path);
std::vector<std::uint8_t> encode_png(const RgbImage& image);
/// Lossless, 8-bit RGB, no alpha. Written via temp file + rename.
void write_png(const std::string& path, const RgbImage& image);

/// Box-filter downscale by an integer factor per axis. Throws
/// Error{dimension_mismatch} when the source is not an exact multiple.
RgbImage box_downscale(const RgbImage& image, int width, int height);

}  // namespace violin
