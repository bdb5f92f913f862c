// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#include "violin/image.hpp"

#include <png.h>

#include <cmath>
#include <cstring>

#include "text_util.hpp"
#include "violin/error.hpp"

namespace violin {

RgbImage::RgbImage(int width, int height, Rgb8 fill_color) : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw Error(Errc::invalid_argument, "image dimensions must be non-negative");
  }
  data_.resize(static_cast<std::size_t>(width) * height * 3);
  fill(bounds(), fill_color);
}

void RgbImage::fill(const PixelRect& r, Rgb8 c) {
  if (!contains(r)) throw Error(Errc::invalid_argument, "fill rectangle outside image");
  for (int y = r.y0; y < r.y1; ++y) {
    for (int x = r.x0; x < r.x1; ++x) set(x, y, c);
  }
}

RgbImage decode_png(std::span<const std::uint8_t> bytes) {
  png_image img;
  std::memset(&img, 0, sizeof img);
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&img, bytes.data(), bytes.size())) {
    throw Error(Errc::io_error, std::string("png decode failed: ") + img.message);
  }
  img.format = PNG_FORMAT_RGB;
  RgbImage out(static_cast<int>(img.width), static_cast<int>(img.height));
  if (!png_image_finish_read(&img, nullptr, out.bytes().data(), 0, nullptr)) {
    std::string msg = img.message;
    png_image_free(&img);
    throw Error(Errc::io_error, "png decode failed: " + msg);
  }
  return out;
}

RgbImage read_png(const std::string& path) {
  const std::string data = detail::read_file(path);
  return decode_png(
      {reinterpret_cast<const std::uint8_t*>(data.data()), data.size()});
}

std::vector<std::uint8_t> encode_png(const RgbImage& image) {
  png_image img;
  std::memset(&img, 0, sizeof img);
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(image.width());
  img.height = static_cast<png_uint_32>(image.height());
  img.format = PNG_FORMAT_RGB;

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&img, nullptr, &size, 0, image.bytes().data(), 0, nullptr)) {
    throw Error(Errc::io_error, std::string("png encode failed: ") + img.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&img, out.data(), &size, 0, image.bytes().data(), 0,
                                 nullptr)) {
    throw Error(Errc::io_error, std::string("png encode failed: ") + img.message);
  }
  out.resize(size);
  return out;
}

void write_png(const std::string& path, const RgbImage& image) {
  const auto bytes = encode_png(image);
  detail::write_file_atomic(
      path, {reinterpret_cast<const char*>(bytes.data()), bytes.size()});
}

RgbImage box_downscale(const RgbImage& image, int width, int height) {
  if (width <= 0 || height <= 0 || image.width() % width != 0 ||
      image.height() % height != 0) {
    throw Error(Errc::dimension_mismatch,
                "cannot downscale " + std::to_string(image.width()) + "x" +
                    std::to_string(image.height()) + " to " + std::to_string(width) + "x" +
                    std::to_string(height) + " by an integer factor");
  }
  const int fx = image.width() / width;
  const int fy = image.height() / height;
  const double n = static_cast<double>(fx) * fy;
  RgbImage out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double r = 0, g = 0, b = 0;
      for (int dy = 0; dy < fy; ++dy) {
        for (int dx = 0; dx < fx; ++dx) {
          const Rgb8 c = image.at(x * fx + dx, y * fy + dy);
          r += c.r;
          g += c.g;
          b += c.b;
        }
      }
      out.set(x, y, quantize({r / n, g / n, b / n}));
    }
  }
  return out;
}

}  // namespace violin
