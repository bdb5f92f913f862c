// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#include "violin/error.hpp"

namespace violin {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::malformed_hex: return "malformed-hex";
    case Errc::parse_error: return "parse-error";
    case Errc::empty_region: return "empty-region";
    case Errc::region_too_small: return "region-too-small";
    case Errc::non_finite: return "non-finite";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::untiled_regions: return "untiled-regions";
    case Errc::io_error: return "io-error";
    case Errc::output_collision: return "output-collision";
    case Errc::unknown_strategy: return "unknown-strategy";
    case Errc::precondition: return "precondition";
    case Errc::no_images: return "no-images";
  }
  return "unknown";
}

}  // namespace violin
