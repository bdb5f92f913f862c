// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

// Diagnostic probe families: negation, semantic gravity and spatial ratio.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "violin/harness.hpp"
#include "violin/region.hpp"

namespace violin {

enum class ProbeFamily { negation, semantic_gravity, spatial };
ProbeFamily parse_probe_family(std::string_view text);
std::string_view to_string(ProbeFamily f) noexcept;

struct ProbePrompt {
  std::string id;       // e.g. "p1-neg"
  std::string variant;  // base, neg, ent, cons, conf, neu, sym, asym, third
  std::string prompt;
  std::vector<RegionSpec> regions;
  /// Requested left-block share for spatial prompts.
  std::optional<double> requested_fraction;
};

struct ProbeSpec {
  ProbeFamily family = ProbeFamily::negation;
  std::vector<ProbePrompt> prompts;
  /// Metrics reported for the family.
  std::string analysis;
};

ProbeSpec probe_spec(ProbeFamily family, int resolution = 256);

struct ProbeResult {
  ProbePrompt prompt;
  std::optional<SampleReport> report;
  /// Spatial family only.
  std::optional<SplitMeasurement> split;
  double deviation = 0;  // |measured - requested|
  bool flagged = false;  // deviation above one pixel column
  std::string error;
  std::string message;
};

struct ProbeReport {
  ProbeFamily family = ProbeFamily::negation;
  int resolution = 256;
  std::vector<ProbeResult> results;
};

ProbeReport run_probe(const ProbeSpec& spec, ImageSource& source, const EvalConfig& config);

/// One JSON object with a result array.
std::string probe_report_json(const ProbeReport& report);

}  // namespace violin
