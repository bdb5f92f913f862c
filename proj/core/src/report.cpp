// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#include "violin/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>

#include "json_codec.hpp"
#include "text_util.hpp"
#include "violin/error.hpp"

namespace violin {

namespace {

namespace fs = std::filesystem;
using detail::Json;

constexpr std::string_view kCsvHeader =
    "model,variation,n,coverage,rgb_ed,rgb_rm,lab_00,lab_hue,lab_hyab,lab_ch,pre_mean,sd,ced,hf,"
    "pur_mean";

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// Model tags may contain commas; quote per RFC 4180 when needed.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  if (quoted) throw Error(Errc::parse_error, "unterminated quote in csv line");
  return out;
}

template <std::size_t N, typename Names>
Json named(const std::array<double, N>& v, const Names& names) {
  Json o = Json::object();
  for (std::size_t i = 0; i < N; ++i) o[std::string(names[i])] = v[i];
  return o;
}

Json sample_json(const SampleResult& s) {
  Json j = {{"type", "sample"}, {"id", s.id}, {"variation", s.variation}, {"repeat", s.repeat}};
  if (!s.report) {
    j["status"] = "error";
    j["error"] = s.error;
    j["message"] = s.message;
    return j;
  }
  const auto& r = *s.report;
  j["status"] = "ok";
  if (s.downscaled) j["downscaled"] = true;
  j["pre_mean"] = r.pre_mean;
  j["pur_mean"] = r.pur_mean;
  j["precision_raw"] = named(r.precision_raw, kPrecisionMetricNames);
  j["precision_normalized"] = named(r.precision_normalized, kPrecisionMetricNames);
  j["purity_raw"] = named(r.purity_raw, kPurityMetricNames);
  j["purity_normalized"] = named(r.purity_normalized, kPurityMetricNames);
  j["regions"] = Json::array();
  for (const auto& reg : r.regions) {
    Json rj = {{"rect", detail::rect_to_json(reg.rect)},
               {"representative", detail::rgbf_to_json(reg.representative)},
               {"reference", format_hex(reg.reference)}};
    if (reg.range_t) rj["range_t"] = *reg.range_t;
    rj["precision_raw"] = named(reg.precision.raw, kPrecisionMetricNames);
    rj["precision_normalized"] = named(reg.precision.normalized, kPrecisionMetricNames);
    rj["pre_mean"] = reg.precision.pre_mean;
    rj["purity_raw"] = named(reg.purity.raw, kPurityMetricNames);
    rj["purity_normalized"] = named(reg.purity.normalized, kPurityMetricNames);
    rj["pur_mean"] = reg.purity.pur_mean;
    j["regions"].push_back(std::move(rj));
  }
  return j;
}

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "markdown" || text == "md") return ReportFormat::markdown;
  if (text == "jsonl") return ReportFormat::jsonl;
  throw Error(Errc::invalid_argument, "unknown report format '" + std::string(text) + "'");
}

std::string_view to_string(ReportFormat f) noexcept {
  switch (f) {
    case ReportFormat::csv: return "csv";
    case ReportFormat::markdown: return "markdown";
    case ReportFormat::jsonl: return "jsonl";
  }
  return "?";
}

std::vector<ReportRow> report_rows(std::span<const EvalRun> runs) {
  std::vector<ReportRow> rows;
  for (const auto& run : runs) {
    for (const auto& a : run.aggregates) {
      ReportRow row{run.model, a.variation, a.n, a.coverage, {}};
      for (std::size_t i = 0; i < kPrecisionMetricCount; ++i) {
        row.values[i] = a.precision_normalized[i];
      }
      row.values[6] = a.pre_mean;
      for (std::size_t i = 0; i < kPurityMetricCount; ++i) {
        row.values[7 + i] = a.purity_normalized[i];
      }
      row.values[10] = a.pur_mean;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string render_csv(std::span<const EvalRun> runs) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& row : report_rows(runs)) {
    out += csv_field(row.model) + "," + csv_field(row.variation) + "," + std::to_string(row.n) +
           "," + detail::format_double(row.coverage);
    for (double v : row.values) out += "," + detail::format_double(v);
    out += '\n';
  }
  return out;
}

std::vector<ReportRow> parse_csv(std::string_view text) {
  std::vector<ReportRow> rows;
  bool header = true;
  for (auto line : detail::split_lines(text)) {
    if (detail::trim(line).empty()) continue;
    if (header) {
      if (line != kCsvHeader) throw Error(Errc::parse_error, "unexpected csv header");
      header = false;
      continue;
    }
    const auto f = csv_split(line);
    if (f.size() != 15) {
      throw Error(Errc::parse_error, "csv row has " + std::to_string(f.size()) + " fields, want 15");
    }
    ReportRow row;
    row.model = f[0];
    row.variation = f[1];
    row.n = static_cast<int>(detail::parse_double(f[2], "n"));
    row.coverage = detail::parse_double(f[3], "coverage");
    for (std::size_t i = 0; i < row.values.size(); ++i) {
      row.values[i] = detail::parse_double(f[4 + i], std::string(kTableColumns[i]));
    }
    rows.push_back(std::move(row));
  }
  if (header) throw Error(Errc::parse_error, "csv report is empty");
  return rows;
}

std::string render_markdown(std::span<const EvalRun> runs) {
  const auto rows = report_rows(runs);
  std::string out = "| Variation | Model |";
  for (auto c : kTableColumns) out += " " + std::string(c) + " |";
  out += "\n|---|---|";
  for (std::size_t i = 0; i < kTableColumns.size(); ++i) out += "---:|";
  out += '\n';

  // Group by variation, first-seen order.
  std::vector<std::string> order;
  for (const auto& r : rows) {
    if (std::find(order.begin(), order.end(), r.variation) == order.end()) {
      order.push_back(r.variation);
    }
  }
  std::vector<std::string> notes;
  for (const auto& v : order) {
    bool first = true;
    for (const auto& r : rows) {
      if (r.variation != v) continue;
      out += "| " + (first ? v : std::string()) + " | " + r.model + " |";
      first = false;
      for (double x : r.values) out += " " + fixed3(x) + " |";
      out += '\n';
      if (r.coverage < 1.0) {
        notes.push_back(r.model + " " + v + ": coverage " + fixed3(r.coverage) + " (" +
                        std::to_string(r.n) + " prompts evaluated)");
      }
    }
  }
  for (const auto& run : runs) {
    if (run.downscaled) notes.push_back(run.model + ": some images were box-downscaled to size");
  }
  if (!notes.empty()) {
    out += '\n';
    for (const auto& n : notes) out += "- " + n + "\n";
  }
  return out;
}

std::string render_jsonl(const EvalRun& run) {
  std::string out;
  const auto line = [&](const Json& j) {
    out += j.dump();
    out += '\n';
  };
  line({{"type", "run"},
        {"run_id", run.run_id},
        {"created", run.created},
        {"model", run.model},
        {"manifest", run.manifest},
        {"coverage", run.coverage},
        {"downscaled", run.downscaled},
        {"config", Json::parse(run_config_to_json(run.config))}});
  for (const auto& s : run.samples) line(sample_json(s));
  for (const auto& a : run.log) {
    line({{"type", "acquisition"},
          {"id", a.id},
          {"repeat", a.repeat},
          {"error", a.error},
          {"message", a.message}});
  }
  for (const auto& r : run.repeats) {
    line({{"type", "repeat"},
          {"id", r.id},
          {"variation", r.variation},
          {"n", r.n},
          {"pre_mean", r.pre_mean},
          {"pre_var", r.pre_var},
          {"pur_mean", r.pur_mean},
          {"pur_var", r.pur_var},
          {"precision_mean", named(r.precision_mean, kPrecisionMetricNames)},
          {"precision_var", named(r.precision_var, kPrecisionMetricNames)},
          {"purity_mean", named(r.purity_mean, kPurityMetricNames)},
          {"purity_var", named(r.purity_var, kPurityMetricNames)}});
  }
  for (const auto& a : run.aggregates) {
    line({{"type", "aggregate"},
          {"model", run.model},
          {"variation", a.variation},
          {"n", a.n},
          {"expected", a.expected},
          {"coverage", a.coverage},
          {"pre_mean", a.pre_mean},
          {"pur_mean", a.pur_mean},
          {"precision_raw", named(a.precision_raw, kPrecisionMetricNames)},
          {"precision_normalized", named(a.precision_normalized, kPrecisionMetricNames)},
          {"purity_raw", named(a.purity_raw, kPurityMetricNames)},
          {"purity_normalized", named(a.purity_normalized, kPurityMetricNames)}});
  }
  return out;
}

std::string emit_report(const EvalRun& run, ReportFormat format, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::io_error, "cannot create report directory '" + dir + "': " + ec.message());
  std::string name;
  std::string body;
  const std::span<const EvalRun> one(&run, 1);
  switch (format) {
    case ReportFormat::csv:
      name = "report.csv";
      body = render_csv(one);
      break;
    case ReportFormat::markdown:
      name = "report.md";
      body = render_markdown(one);
      break;
    case ReportFormat::jsonl:
      name = "report.jsonl";
      body = render_jsonl(run);
      break;
  }
  const std::string path = (fs::path(dir) / name).string();
  detail::write_file_atomic(path, body);
  return path;
}

}  // namespace violin
