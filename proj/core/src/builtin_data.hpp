// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

namespace violin::detail {

// Generated at build time from core/data/.
extern const std::string_view kBuiltinCentroids;
extern const std::string_view kBuiltinTemplates;

}  // namespace violin::detail
