// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

// Run reports: leaderboard-style csv and markdown summaries and a jsonl stream
// with full per-sample detail.

#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "violin/harness.hpp"

namespace violin {

enum class ReportFormat { csv, markdown, jsonl };
ReportFormat parse_report_format(std::string_view text);
std::string_view to_string(ReportFormat f) noexcept;

/// Summary column labels in leaderboard order.
inline constexpr std::array<std::string_view, 11> kTableColumns = {
    "rgb-ed", "rgb-rm", "lab-00", "lab-hue", "lab-hyab", "lab-ch",
    "pre-mean", "sd", "ced", "hf", "pur-mean"};

/// One (model, variation) row of normalized values.
struct ReportRow {
  std::string model;
  std::string variation;
  int n = 0;
  double coverage = 0;
  std::array<double, 11> values{};
};

std::vector<ReportRow> report_rows(std::span<const EvalRun> runs);

/// `model,variation,n,coverage,<11 columns>` at round-trip precision.
std::string render_csv(std::span<const EvalRun> runs);
std::vector<ReportRow> parse_csv(std::string_view text);

/// Rows grouped by variation, three decimals.
std::string render_markdown(std::span<const EvalRun> runs);

/// Line types: "run" header, one "sample" per image, "acquisition" failures,
/// "repeat" statistics and "aggregate" per variation.
std::string render_jsonl(const EvalRun& run);

/// Writes report.{csv,md,jsonl} under `dir` and returns the written path.
std::string emit_report(const EvalRun& run, ReportFormat format, const std::string& dir);

}  // namespace violin
