// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#include "json_codec.hpp"

#include "violin/error.hpp"

namespace violin::detail {

namespace {

Side parse_side(const std::string& s, const char* first, const char* second) {
  if (s == first) return Side::first;
  if (s == second) return Side::second;
  throw Error(Errc::parse_error, "region side must be '" + std::string(first) + "' or '" + second + "'");
}

}  // namespace

Json region_to_json(const RegionSpec& spec) {
  Json j;
  if (std::holds_alternative<FullFrame>(spec.geometry)) {
    j["geometry"] = "full";
  } else if (const auto* h = std::get_if<HorizontalSplit>(&spec.geometry)) {
    j["geometry"] = "hsplit";
    j["fraction"] = h->left_fraction;
    j["side"] = h->side == Side::first ? "left" : "right";
  } else if (const auto* v = std::get_if<VerticalSplit>(&spec.geometry)) {
    j["geometry"] = "vsplit";
    j["fraction"] = v->top_fraction;
    j["side"] = v->side == Side::first ? "top" : "bottom";
  } else {
    j["geometry"] = "quadrant";
    j["index"] = std::get<Quadrant>(spec.geometry).index;
  }
  if (const auto* exact = std::get_if<ExactColor>(&spec.target)) {
    j["color"] = format_hex(exact->color);
  } else {
    const auto& range = std::get<ColorRange>(spec.target);
    j["low"] = format_hex(range.low);
    j["high"] = format_hex(range.high);
  }
  return j;
}

RegionSpec region_from_json(const Json& j) {
  try {
    RegionSpec spec;
    const std::string kind = j.at("geometry").get<std::string>();
    if (kind == "full") {
      spec.geometry = FullFrame{};
    } else if (kind == "hsplit") {
      spec.geometry = HorizontalSplit{j.at("fraction").get<double>(),
                                      parse_side(j.at("side").get<std::string>(), "left", "right")};
    } else if (kind == "vsplit") {
      spec.geometry = VerticalSplit{j.at("fraction").get<double>(),
                                    parse_side(j.at("side").get<std::string>(), "top", "bottom")};
    } else if (kind == "quadrant") {
      spec.geometry = Quadrant{j.at("index").get<int>()};
    } else {
      throw Error(Errc::parse_error, "unknown region geometry '" + kind + "'");
    }
    if (j.contains("color")) {
      spec.target = ExactColor{parse_hex(j.at("color").get<std::string>())};
    } else {
      ColorRange range{parse_hex(j.at("low").get<std::string>()),
                       parse_hex(j.at("high").get<std::string>())};
      if (range.low == range.high) throw Error(Errc::parse_error, "color range endpoints must differ");
      spec.target = range;
    }
    return spec;
  } catch (const Json::exception& e) {
    throw Error(Errc::parse_error, std::string("bad region spec: ") + e.what());
  }
}

Json rect_to_json(const PixelRect& r) { return Json::array({r.x0, r.y0, r.x1, r.y1}); }

Json rgbf_to_json(const RgbF& c) { return Json::array({c.r, c.g, c.b}); }

}  // namespace violin::detail
