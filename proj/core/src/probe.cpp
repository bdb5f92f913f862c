// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#include "violin/probe.hpp"

#include <cmath>

#include "json_codec.hpp"
#include "violin/error.hpp"

namespace violin {

namespace {

using detail::Json;

constexpr Rgb8 kProbeTarget{0x99, 0x66, 0xCC};
constexpr Rgb8 kSplitLeft{0xAB, 0x12, 0x13};
constexpr Rgb8 kSplitRight{0x00, 0x00, 0x00};

constexpr std::string_view kBaseStem =
    "Generating a uniform pure color image with hex color code: #9966CC";

ProbePrompt full_frame(std::string id, std::string variant, std::string text) {
  return {std::move(id), std::move(variant), std::move(text),
          {{FullFrame{}, ExactColor{kProbeTarget}}}, std::nullopt};
}

ProbePrompt split(std::string id, std::string variant, std::string text, double fraction) {
  return {std::move(id),
          std::move(variant),
          std::move(text),
          {{HorizontalSplit{fraction, Side::first}, ExactColor{kSplitLeft}},
           {HorizontalSplit{fraction, Side::second}, ExactColor{kSplitRight}}},
          fraction};
}

std::string with_suffix(std::string_view suffix) {
  return std::string(kBaseStem) + ", " + std::string(suffix);
}

Json report_json(const SampleReport& r) {
  Json j = {{"pre_mean", r.pre_mean}, {"pur_mean", r.pur_mean}};
  j["regions"] = Json::array();
  for (const auto& reg : r.regions) {
    Json rj = {{"reference", format_hex(reg.reference)},
               {"representative", detail::rgbf_to_json(reg.representative)},
               {"pre_mean", reg.precision.pre_mean},
               {"pur_mean", reg.purity.pur_mean}};
    for (std::size_t i = 0; i < kPrecisionMetricCount; ++i) {
      rj["precision_raw"][std::string(kPrecisionMetricNames[i])] = reg.precision.raw[i];
    }
    for (std::size_t i = 0; i < kPurityMetricCount; ++i) {
      rj["purity_raw"][std::string(kPurityMetricNames[i])] = reg.purity.raw[i];
    }
    j["regions"].push_back(std::move(rj));
  }
  return j;
}

}  // namespace

ProbeFamily parse_probe_family(std::string_view text) {
  if (text == "negation") return ProbeFamily::negation;
  if (text == "semantic_gravity") return ProbeFamily::semantic_gravity;
  if (text == "spatial") return ProbeFamily::spatial;
  throw Error(Errc::invalid_argument, "unknown probe family '" + std::string(text) + "'");
}

std::string_view to_string(ProbeFamily f) noexcept {
  switch (f) {
    case ProbeFamily::negation: return "negation";
    case ProbeFamily::semantic_gravity: return "semantic_gravity";
    case ProbeFamily::spatial: return "spatial";
  }
  return "?";
}

ProbeSpec probe_spec(ProbeFamily family, int resolution) {
  if (resolution < 8) throw Error(Errc::invalid_argument, "resolution must be at least 8");
  const std::string base = std::string(kBaseStem) + ".";
  ProbeSpec spec;
  spec.family = family;
  switch (family) {
    case ProbeFamily::negation:
      spec.analysis = "precision and purity against #9966CC";
      spec.prompts = {
          full_frame("p1-base", "base", base),
          full_frame("p1-neg", "neg",
                     with_suffix("strictly no shadows, no gradients, and no metallic textures.")),
          full_frame("p1-ent", "ent", with_suffix("strictly no cloud patterns or water ripples.")),
      };
      break;
    case ProbeFamily::semantic_gravity:
      spec.analysis = "precision and purity against #9966CC";
      spec.prompts = {
          full_frame("p2-base", "base", base),
          full_frame("p2-cons", "cons", with_suffix("which is the typical color of a rusted iron plate")),
          full_frame("p2-conf", "conf", with_suffix("representing the color of a fresh potato")),
          full_frame("p2-neu", "neu",
                     with_suffix("a randomly generated color with no specific meaning or real-world "
                                 "counterpart")),
      };
      break;
    case ProbeFamily::spatial:
      spec.analysis = "measured split fraction and per-side distances to #AB1213 / #000000";
      spec.prompts = {
          split("p3-sym", "sym",
                "A split image with two solid color blocks: the left 50% is a pure solid color with "
                "hex code #AB1213, the right 50% is a pure solid color with hex code #000000",
                0.5),
          split("p3-asym", "asym",
                "A split image with two solid color blocks: the left 31.5% is a pure solid color "
                "with hex code #AB1213, the right 68.5% is a pure solid color with hex code #000000",
                0.315),
          split("p3-third", "third",
                "A common photographic composition with two solid color blocks: the left 33.3% is a "
                "pure solid color with hex code #AB1213, the right 66.7% is a pure solid color with "
                "hex code #000000",
                0.333),
      };
      break;
  }
  return spec;
}

ProbeReport run_probe(const ProbeSpec& spec, ImageSource& source, const EvalConfig& config) {
  config.validate();
  const int w = config.resolution;
  ProbeReport report;
  report.family = spec.family;
  report.resolution = w;
  int acquired = 0;
  for (const auto& p : spec.prompts) {
    ProbeResult r;
    r.prompt = p;
    auto fetched = source.fetch({p.id, p.prompt, w, w, 0, p.regions});
    if (fetched.image && (fetched.image->width() != w || fetched.image->height() != w)) {
      fetched = {std::nullopt, std::string(fetch_error::wrong_dimensions),
                 "image is " + std::to_string(fetched.image->width()) + "x" +
                     std::to_string(fetched.image->height())};
    }
    if (!fetched.image) {
      r.error = fetched.error;
      r.message = fetched.message;
      report.results.push_back(std::move(r));
      continue;
    }
    ++acquired;
    try {
      r.report = evaluate_sample(*fetched.image, p.regions, config);
      if (p.requested_fraction) {
        r.split = measure_split_ratio(*fetched.image, SplitAxis::horizontal);
        r.deviation = std::abs(r.split->fraction - *p.requested_fraction);
        r.flagged = r.deviation > 1.0 / w;
      }
    } catch (const Error& e) {
      r.error = fetch_error::eval_failure;
      r.message = e.what();
    }
    report.results.push_back(std::move(r));
  }
  if (acquired == 0) throw Error(Errc::no_images, "no probe image acquired");
  return report;
}

std::string probe_report_json(const ProbeReport& report) {
  Json j = {{"family", to_string(report.family)}, {"resolution", report.resolution}};
  j["results"] = Json::array();
  for (const auto& r : report.results) {
    Json rj = {{"id", r.prompt.id}, {"variant", r.prompt.variant}, {"prompt", r.prompt.prompt}};
    if (!r.error.empty()) {
      rj["error"] = r.error;
      rj["message"] = r.message;
    }
    if (r.report) rj["report"] = report_json(*r.report);
    if (r.prompt.requested_fraction) {
      rj["requested_fraction"] = *r.prompt.requested_fraction;
      if (r.split) {
        rj["measured_fraction"] = r.split->fraction;
        rj["boundary"] = r.split->boundary;
        rj["degenerate"] = r.split->degenerate;
        rj["deviation"] = r.deviation;
        rj["flagged"] = r.flagged;
      }
    }
    j["results"].push_back(std::move(rj));
  }
  return j.dump(2);
}

}  // namespace violin
