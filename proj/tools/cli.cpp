// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "violin/dataset.hpp"
#include "violin/error.hpp"
#include "violin/harness.hpp"
#include "violin/probe.hpp"
#include "violin/report.hpp"

namespace violin::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_file(const std::string& path) {
  try {
    return Json::parse(slurp(path));
  } catch (const Json::exception& e) {
    throw Error(Errc::parse_error, "'" + path + "' is not valid JSON: " + e.what());
  }
}

// ------------------------------------------------------------------ gen

struct GenOptions {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> scale;
  std::optional<int> resolution;
  std::optional<int> threads;
  std::vector<double> level_weights;
  bool no_images = false;
  bool overwrite = false;
};

GenConfig gen_config(const GenOptions& o) {
  GenConfig cfg;
  if (!o.config.empty()) {
    const Json j = parse_json_file(o.config);
    try {
      for (const auto& [key, value] : j.items()) {
        if (key == "seed") cfg.seed = value.get<std::uint64_t>();
        else if (key == "scale") cfg.scale = value.get<double>();
        else if (key == "resolution") cfg.resolution = value.get<int>();
        else if (key == "threads") cfg.threads = value.get<int>();
        else if (key == "base_counts") cfg.base_counts = value.get<std::array<int, 6>>();
        else if (key == "level_weights") cfg.level_weights = value.get<std::array<double, 3>>();
        else if (key == "write_images") cfg.write_images = value.get<bool>();
        else if (key == "out") cfg.output_dir = value.get<std::string>();
        else throw Error(Errc::parse_error, "unknown key '" + key + "' in gen config");
      }
    } catch (const Json::exception& e) {
      throw Error(Errc::parse_error, std::string("bad gen config value: ") + e.what());
    }
  }
  if (!o.out.empty()) cfg.output_dir = o.out;
  if (o.seed) cfg.seed = *o.seed;
  if (o.scale) cfg.scale = *o.scale;
  if (o.resolution) cfg.resolution = *o.resolution;
  if (o.threads) cfg.threads = *o.threads;
  if (!o.level_weights.empty()) {
    if (o.level_weights.size() != 3) {
      throw Error(Errc::invalid_argument, "--level-weights takes three values");
    }
    std::copy(o.level_weights.begin(), o.level_weights.end(), cfg.level_weights.begin());
  }
  if (o.no_images) cfg.write_images = false;
  cfg.overwrite = o.overwrite;
  cfg.validate();
  return cfg;
}

int cmd_gen(const GenOptions& o, std::ostream& out) {
  const GenConfig cfg = gen_config(o);
  const auto summary = generate_dataset(cfg);
  Json j = {{"out", cfg.output_dir},
            {"manifest", (std::filesystem::path(cfg.output_dir) / "manifest.jsonl").string()},
            {"total", summary.entries.size()},
            {"per_variation", summary.per_variation}};
  out << j.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- split

struct SplitOptions {
  std::string manifest;
  std::string out;
  double ratio = 0.8;
  std::uint64_t seed = 7;
  std::vector<std::string> strategies;
  double holdout = 0.2;
};

int cmd_split(const SplitOptions& o, std::ostream& out) {
  if (!(o.ratio > 0.0 && o.ratio < 1.0)) {
    throw Error(Errc::invalid_argument, "--ratio must lie strictly between 0 and 1");
  }
  std::vector<GeneralizationStrategy> strategies;
  for (const auto& s : o.strategies) strategies.push_back(parse_strategy(s));
  auto entries = read_manifest(o.manifest);
  stratified_split(entries, o.ratio, o.seed);
  Json skipped = Json::object();
  for (const auto s : strategies) {
    if (s == GeneralizationStrategy::prompt) {
      generalization_split(entries, s, o.seed, o.holdout);
      continue;
    }
    // Hue strategies only apply to single exact-color samples.
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& r = entries[i].regions;
      if (r.size() == 1 && std::holds_alternative<ExactColor>(r.front().target)) {
        eligible.push_back(i);
      }
    }
    std::vector<SampleManifestEntry> subset;
    for (auto i : eligible) subset.push_back(entries[i]);
    generalization_split(subset, s, o.seed, o.holdout);
    for (std::size_t k = 0; k < eligible.size(); ++k) entries[eligible[k]].tags = subset[k].tags;
    skipped[std::string(to_string(s))] = entries.size() - eligible.size();
  }
  const std::string dest = o.out.empty() ? o.manifest : o.out;
  write_manifest(dest, entries);

  std::map<std::string, std::map<std::string, int>> counts;
  for (const auto& e : entries) {
    ++counts["stratified"][e.tags.split];
    for (const auto& [k, v] : e.tags.generalization) ++counts[k][v];
  }
  out << Json{{"manifest", dest}, {"entries", entries.size()}, {"counts", counts}, {"skipped", skipped}}
             .dump(2)
      << "\n";
  return 0;
}

// ------------------------------------------------------- eval and probe

struct ProviderOptions {
  std::string config;
  std::string constants;
  std::string images;
  std::string url;
  bool ground_truth = false;
  std::optional<std::string> model;
  std::optional<int> threads;
  std::optional<int> parallelism;
  std::optional<int> retries;
  std::optional<double> timeout;
  std::optional<int> repeats;
  std::optional<std::string> token_env;
  std::optional<int> resolution;
  std::optional<double> hf_cutoff;
  std::optional<int> erosion;
  std::optional<std::string> hyab_form;
  std::optional<double> canny_sigma;
  std::optional<int> canny_kernel;
  std::optional<double> canny_low;
  std::optional<double> canny_high;
  bool allow_downscale = false;
};

void add_provider_options(CLI::App* app, ProviderOptions& o) {
  app->add_option("--config", o.config, "JSON run config")->check(CLI::ExistingFile);
  app->add_option("--constants", o.constants, "key=value metric constants file")
      ->check(CLI::ExistingFile);
  app->add_option("--images", o.images, "directory of {id}.png images");
  app->add_option("--provider-url", o.url, "http endpoint of an image provider");
  app->add_flag("--ground-truth", o.ground_truth, "render ground truth as the model");
  app->add_option("--model", o.model, "model tag for reports");
  app->add_option("--threads", o.threads, "evaluation workers (0 = all cores)");
  app->add_option("--parallelism", o.parallelism, "max requests in flight");
  app->add_option("--retries", o.retries, "retry budget per request");
  app->add_option("--timeout", o.timeout, "request timeout in seconds");
  app->add_option("--repeats", o.repeats, "images per prompt");
  app->add_option("--token-env", o.token_env, "environment variable holding a bearer token");
  app->add_option("--resolution", o.resolution, "expected image size");
  app->add_option("--hf-cutoff", o.hf_cutoff, "high-frequency radius cutoff");
  app->add_option("--erosion", o.erosion, "pixels trimmed from each region side");
  app->add_option("--hyab-form", o.hyab_form, "printed | literature");
  app->add_option("--canny-sigma", o.canny_sigma);
  app->add_option("--canny-kernel", o.canny_kernel);
  app->add_option("--canny-low", o.canny_low);
  app->add_option("--canny-high", o.canny_high);
  app->add_flag("--allow-downscale", o.allow_downscale,
                "accept integer multiples of the resolution and box-downscale them");
}

RunConfig run_config(const ProviderOptions& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : load_run_config(o.config);
  if (!o.constants.empty()) {
    const std::string text = slurp(o.constants);
    c.eval.precision = NormalizationConstants::from_text(text, c.eval.precision);
    c.eval.purity = PurityConstants::from_text(text, c.eval.purity);
  }
  const int sources = !o.images.empty() + !o.url.empty() + o.ground_truth;
  if (sources > 1) {
    throw Error(Errc::invalid_argument,
                "pass only one of --images, --provider-url and --ground-truth");
  }
  if (!o.images.empty()) {
    c.provider.kind = ProviderKind::filesystem;
    c.provider.root = o.images;
    c.provider.url.clear();
  } else if (!o.url.empty()) {
    c.provider.kind = ProviderKind::http;
    c.provider.url = o.url;
    c.provider.root.clear();
  } else if (o.ground_truth) {
    c.provider.kind = ProviderKind::ground_truth;
  }
  if (o.model) c.model = *o.model;
  if (o.threads) c.threads = *o.threads;
  if (o.parallelism) c.provider.parallelism = *o.parallelism;
  if (o.retries) c.provider.retries = *o.retries;
  if (o.timeout) c.provider.timeout_seconds = *o.timeout;
  if (o.repeats) c.provider.repeats = *o.repeats;
  if (o.token_env) c.provider.token_env = *o.token_env;
  if (o.resolution) c.eval.resolution = *o.resolution;
  if (o.hf_cutoff) c.eval.hf_cutoff = *o.hf_cutoff;
  if (o.erosion) c.eval.erosion = *o.erosion;
  if (o.hyab_form) {
    c.eval.hyab_form = *o.hyab_form == "literature" ? HyabForm::literature
                       : *o.hyab_form == "printed"
                           ? HyabForm::printed
                           : throw Error(Errc::invalid_argument, "--hyab-form: printed | literature");
  }
  if (o.canny_sigma) c.eval.canny.sigma = *o.canny_sigma;
  if (o.canny_kernel) c.eval.canny.kernel_size = *o.canny_kernel;
  if (o.canny_low) c.eval.canny.low = *o.canny_low;
  if (o.canny_high) c.eval.canny.high = *o.canny_high;
  if (o.allow_downscale) c.allow_downscale = true;
  c.validate();
  return c;
}

struct EvalOptions {
  ProviderOptions provider;
  std::string manifest;
  std::string report = "report";
  std::vector<std::string> formats = {"csv", "markdown", "jsonl"};
};

int cmd_eval(const EvalOptions& o, std::ostream& out) {
  const RunConfig cfg = run_config(o.provider);
  std::vector<ReportFormat> formats;
  for (const auto& f : o.formats) formats.push_back(parse_report_format(f));
  const auto manifest = read_manifest(o.manifest);
  auto source = make_source(cfg.provider);
  const EvalRun run = run_eval(manifest, *source, cfg, o.manifest);

  Json written = Json::array();
  for (const auto f : formats) written.push_back(emit_report(run, f, o.report));
  Json aggregates = Json::array();
  for (const auto& a : run.aggregates) {
    aggregates.push_back({{"variation", a.variation},
                          {"n", a.n},
                          {"coverage", a.coverage},
                          {"pre_mean", a.pre_mean},
                          {"pur_mean", a.pur_mean}});
  }
  out << Json{{"run_id", run.run_id},
              {"model", run.model},
              {"coverage", run.coverage},
              {"acquisition_errors", run.log.size()},
              {"aggregates", aggregates},
              {"reports", written}}
             .dump(2)
      << "\n";
  return 0;
}

struct ProbeOptions {
  ProviderOptions provider;
  std::string family;
  std::string out;
};

int cmd_probe(const ProbeOptions& o, std::ostream& out) {
  const RunConfig cfg = run_config(o.provider);
  const ProbeSpec spec = probe_spec(parse_probe_family(o.family), cfg.eval.resolution);
  auto source = make_source(cfg.provider);
  const std::string text = probe_report_json(run_probe(spec, *source, cfg.eval));
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!(f << text << "\n")) throw Error(Errc::io_error, "cannot write '" + o.out + "'");
  }
  out << text << "\n";
  return 0;
}

// -------------------------------------------------------------- metrics

struct MetricsOptions {
  std::vector<std::string> pair;
  std::string image;
  std::string target;
  std::string constants;
  std::string hyab_form = "printed";
};

int cmd_metrics(const MetricsOptions& o, std::ostream& out) {
  NormalizationConstants precision = NormalizationConstants::defaults();
  PurityConstants purity;
  if (!o.constants.empty()) {
    const std::string text = slurp(o.constants);
    precision = NormalizationConstants::from_text(text, precision);
    purity = PurityConstants::from_text(text, purity);
  }
  const HyabForm form = o.hyab_form == "literature" ? HyabForm::literature : HyabForm::printed;
  const auto precision_json = [&](const RgbF& measured, Rgb8 target) {
    const auto r = evaluate_precision(measured, target, precision, form);
    Json j = {{"raw", Json::object()}, {"normalized", Json::object()}, {"pre_mean", r.pre_mean}};
    for (std::size_t i = 0; i < kPrecisionMetricCount; ++i) {
      j["raw"][std::string(kPrecisionMetricNames[i])] = r.raw[i];
      j["normalized"][std::string(kPrecisionMetricNames[i])] = r.normalized[i];
    }
    return j;
  };

  if (!o.pair.empty()) {
    const Rgb8 a = parse_hex(o.pair[0]);
    const Rgb8 b = parse_hex(o.pair[1]);
    Json j = {{"color_1", format_hex(a)}, {"color_2", format_hex(b)}};
    j.update(precision_json(a, b));
    out << j.dump(2) << "\n";
    return 0;
  }
  const RgbImage image = read_png(o.image);
  const PixelRect all = image.bounds();
  const RgbF rep = representative_color(image, all);
  const auto pur = purity_aggregate(
      {channel_stddev(image, all), canny_edge_density(image, all), high_freq_ratio(image, all)},
      purity);
  Json j = {{"image", o.image},
            {"width", image.width()},
            {"height", image.height()},
            {"representative", {rep.r, rep.g, rep.b}},
            {"purity", {{"raw", Json::object()}, {"normalized", Json::object()}, {"pur_mean", pur.pur_mean}}}};
  for (std::size_t i = 0; i < kPurityMetricCount; ++i) {
    j["purity"]["raw"][std::string(kPurityMetricNames[i])] = pur.raw[i];
    j["purity"]["normalized"][std::string(kPurityMetricNames[i])] = pur.normalized[i];
  }
  if (!o.target.empty()) j["precision"] = precision_json(rep, parse_hex(o.target));
  out << j.dump(2) << "\n";
  return 0;
}

void print_error(std::ostream& err, std::string_view code, std::string_view message) {
  err << Json{{"error", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pixel-level instruction-following benchmark for pure-color image generation",
               "violin"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "synthesize the benchmark dataset");
  gen_cmd->add_option("--config", gen.config, "JSON generation config")->check(CLI::ExistingFile);
  gen_cmd->add_option("--out", gen.out, "output directory");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--scale", gen.scale, "multiplier on the per-variation counts");
  gen_cmd->add_option("--resolution", gen.resolution);
  gen_cmd->add_option("--threads", gen.threads);
  gen_cmd->add_option("--level-weights", gen.level_weights, "draw weights of levels 1 2 3")
      ->expected(3);
  gen_cmd->add_flag("--no-images", gen.no_images, "write the manifest only");
  gen_cmd->add_flag("--overwrite", gen.overwrite, "replace an existing dataset");

  SplitOptions split;
  auto* split_cmd = app.add_subcommand("split", "tag train/test splits in a manifest");
  split_cmd->add_option("--manifest", split.manifest)->required()->check(CLI::ExistingFile);
  split_cmd->add_option("--out", split.out, "output manifest (default: in place)");
  split_cmd->add_option("--ratio", split.ratio, "train share of every stratum");
  split_cmd->add_option("--seed", split.seed);
  split_cmd->add_option("--strategy", split.strategies, "prompt | hue1 | hue2 (repeatable)");
  split_cmd->add_option("--holdout", split.holdout, "template share held out by 'prompt'");

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "acquire images, evaluate and write reports");
  eval_cmd->add_option("--manifest", eval.manifest)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--report", eval.report, "report directory");
  eval_cmd->add_option("--format", eval.formats, "csv | markdown | jsonl (repeatable)");
  add_provider_options(eval_cmd, eval.provider);

  ProbeOptions probe;
  auto* probe_cmd = app.add_subcommand("probe", "run a diagnostic probe family");
  probe_cmd->add_option("--family", probe.family, "negation | semantic_gravity | spatial")
      ->required();
  probe_cmd->add_option("--out", probe.out, "also write the report to this file");
  add_provider_options(probe_cmd, probe.provider);

  MetricsOptions metrics;
  auto* metrics_cmd = app.add_subcommand("metrics", "metric values for one color pair or image");
  auto* pair_opt = metrics_cmd->add_option("--pair", metrics.pair, "measured and target hex")
                       ->expected(2);
  auto* image_opt = metrics_cmd->add_option("--image", metrics.image, "PNG to measure")
                        ->check(CLI::ExistingFile);
  pair_opt->excludes(image_opt);
  metrics_cmd->add_option("--target", metrics.target, "target hex for --image")->needs(image_opt);
  metrics_cmd->add_option("--constants", metrics.constants)->check(CLI::ExistingFile);
  metrics_cmd->add_option("--hyab-form", metrics.hyab_form)
      ->check(CLI::IsMember({"printed", "literature"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", e.what());
    return 2;
  }

  try {
    if (*gen_cmd) {
      if (gen.out.empty() && gen.config.empty()) throw Error(Errc::invalid_argument, "--out is required");
      return cmd_gen(gen, out);
    }
    if (*split_cmd) return cmd_split(split, out);
    if (*eval_cmd) return cmd_eval(eval, out);
    if (*probe_cmd) return cmd_probe(probe, out);
    if (*metrics_cmd) {
      if (metrics.pair.empty() && metrics.image.empty()) {
        throw Error(Errc::invalid_argument, "pass --pair or --image");
      }
      return cmd_metrics(metrics, out);
    }
  } catch (const Error& e) {
    print_error(err, to_string(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error(err, "internal", e.what());
    return 1;
  }
  return 1;
}

}  // namespace violin::cli
