// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace violin {

/// Machine-readable failure categories. The CLI prints these verbatim.
enum class Errc {
  invalid_argument,
  malformed_hex,
  parse_error,
  empty_region,
  region_too_small,
  non_finite,
  dimension_mismatch,
  untiled_regions,
  io_error,
  output_collision,
  unknown_strategy,
  precondition,
  no_images,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace violin
