// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace violin::detail {

// sweep_gamut_maxima(17, HyabForm::printed), frozen.
inline constexpr double kGamutMaxLab00 = 119.46565369520663;
inline constexpr double kGamutMaxLabHyab = 252.78218426414617;
inline constexpr double kGamutMaxLabCh = 252.67250537361744;

/// `key=value` lines; '#' starts a comment line. Throws Error{parse_error}
/// on lines without '='.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text);
void append_key_value(std::string& out, const std::string& key, double value);

}  // namespace violin::detail
