// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include "violin/region.hpp"

namespace violin::detail {

using Json = nlohmann::ordered_json;

Json region_to_json(const RegionSpec& spec);
RegionSpec region_from_json(const Json& j);
Json rect_to_json(const PixelRect& r);
Json rgbf_to_json(const RgbF& c);

}  // namespace violin::detail
