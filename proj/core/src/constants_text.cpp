// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#include "constants_text.hpp"

#include "text_util.hpp"
#include "violin/error.hpp"

namespace violin::detail {

std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::parse_error, "constants line " + std::to_string(line_no) + ": missing '='");
    }
    out.emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

void append_key_value(std::string& out, const std::string& key, double value) {
  out += key;
  out += '=';
  out += format_double(value);
  out += '\n';
}

}  // namespace violin::detail
