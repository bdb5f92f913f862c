// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#include "violin/harness.hpp"

#include <httplib.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <semaphore>
#include <set>
#include <thread>

#include "json_codec.hpp"
#include "parallel.hpp"
#include "text_util.hpp"
#include "violin/error.hpp"

namespace violin {

namespace {

namespace fs = std::filesystem;
using detail::Json;

FetchResult failure(std::string_view kind, std::string message) {
  return {std::nullopt, std::string(kind), std::move(message)};
}

FetchResult decode(std::span<const std::uint8_t> bytes, const std::string& what) {
  try {
    return {decode_png(bytes), {}, {}};
  } catch (const Error& e) {
    return failure(fetch_error::decode_failure, what + ": " + e.what());
  }
}

void check_keys(const Json& j, std::initializer_list<std::string_view> allowed,
                std::string_view where) {
  if (!j.is_object()) {
    throw Error(Errc::parse_error, std::string(where) + " must be a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(Errc::parse_error,
                  "unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <typename T>
void read_if(const Json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

HyabForm parse_hyab_form(const std::string& text) {
  if (text == "printed") return HyabForm::printed;
  if (text == "literature") return HyabForm::literature;
  throw Error(Errc::parse_error, "hyab_form must be 'printed' or 'literature'");
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Validates size, optionally box-downscaling an integer multiple.
FetchResult fit_to_resolution(FetchResult fetched, int resolution, bool allow_downscale,
                              bool& downscaled) {
  downscaled = false;
  if (!fetched.image) return fetched;
  const RgbImage& img = *fetched.image;
  if (img.width() == resolution && img.height() == resolution) return fetched;
  const std::string dims = std::to_string(img.width()) + "x" + std::to_string(img.height());
  if (allow_downscale && img.width() % resolution == 0 && img.height() % resolution == 0 &&
      img.width() / resolution == img.height() / resolution) {
    fetched.image = box_downscale(img, resolution, resolution);
    downscaled = true;
    return fetched;
  }
  return failure(fetch_error::wrong_dimensions,
                 "image is " + dims + ", expected " + std::to_string(resolution) + "x" +
                     std::to_string(resolution));
}

struct Task {
  const SampleManifestEntry* entry;
  int repeat;
};

std::vector<Task> expand_tasks(std::span<const SampleManifestEntry> manifest, int repeats) {
  std::vector<Task> tasks;
  tasks.reserve(manifest.size() * static_cast<std::size_t>(repeats));
  for (const auto& e : manifest) {
    for (int k = 0; k < repeats; ++k) tasks.push_back({&e, k});
  }
  return tasks;
}

ImageRequest request_for(const SampleManifestEntry& e, int repeat, int resolution) {
  return {e.id, e.prompt, resolution, resolution, repeat, e.regions};
}

// Sort key keeping Var-5(zh) before Var-5(fr) and hex < rgb < hsl.
std::tuple<int, int, int> variation_order(const SampleManifestEntry& e) {
  return {e.variation, static_cast<int>(e.language), static_cast<int>(e.color_space)};
}

template <std::size_t N>
void accumulate(std::array<double, N>& acc, const std::array<double, N>& v, double scale) {
  for (std::size_t i = 0; i < N; ++i) acc[i] += v[i] * scale;
}

}  // namespace

std::string_view to_string(ProviderKind kind) noexcept {
  switch (kind) {
    case ProviderKind::filesystem: return "filesystem";
    case ProviderKind::http: return "http";
    case ProviderKind::ground_truth: return "ground_truth";
  }
  return "?";
}

ProviderKind parse_provider_kind(std::string_view text) {
  if (text == "filesystem") return ProviderKind::filesystem;
  if (text == "http") return ProviderKind::http;
  if (text == "ground_truth") return ProviderKind::ground_truth;
  throw Error(Errc::invalid_argument, "unknown provider kind '" + std::string(text) + "'");
}

void ProviderConfig::validate() const {
  if (kind == ProviderKind::filesystem && root.empty()) {
    throw Error(Errc::invalid_argument, "filesystem provider needs a root directory");
  }
  if (kind == ProviderKind::http && url.empty()) {
    throw Error(Errc::invalid_argument, "http provider needs an endpoint url");
  }
  if (kind == ProviderKind::filesystem && !url.empty()) {
    throw Error(Errc::invalid_argument, "filesystem provider does not take a url");
  }
  if (kind == ProviderKind::http && !root.empty()) {
    throw Error(Errc::invalid_argument, "http provider does not take a root directory");
  }
  if (parallelism < 1) throw Error(Errc::invalid_argument, "parallelism must be >= 1");
  if (retries < 0) throw Error(Errc::invalid_argument, "retries must be >= 0");
  if (repeats < 1) throw Error(Errc::invalid_argument, "repeats must be >= 1");
  if (!(timeout_seconds > 0)) throw Error(Errc::invalid_argument, "timeout must be positive");
  if (!(backoff_seconds >= 0)) throw Error(Errc::invalid_argument, "backoff must be >= 0");
}

// ---------------------------------------------------------------- sources

FilesystemSource::FilesystemSource(std::string root, int repeats)
    : root_(std::move(root)), repeats_(repeats) {
  std::error_code ec;
  if (!fs::is_directory(root_, ec)) {
    throw Error(Errc::io_error, "image root '" + root_ + "' is not a directory");
  }
}

std::string FilesystemSource::path_for(const std::string& id, int repeat) const {
  const std::string name = repeats_ > 1 ? id + "_" + std::to_string(repeat) + ".png" : id + ".png";
  return (fs::path(root_) / name).string();
}

FetchResult FilesystemSource::fetch(const ImageRequest& request) {
  const std::string path = path_for(request.id, request.repeat);
  std::string bytes;
  try {
    bytes = detail::read_file(path);
  } catch (const Error&) {
    return failure(fetch_error::missing_file, path);
  }
  return decode({reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()}, path);
}

struct HttpSource::Impl {
  explicit Impl(const ProviderConfig& c) : config(c), slots(c.parallelism) {
    const auto scheme = config.url.find("://");
    if (scheme == std::string::npos || config.url.substr(0, scheme) != "http") {
      throw Error(Errc::invalid_argument, "http provider url must start with http://");
    }
    const auto path_start = config.url.find('/', scheme + 3);
    base = config.url.substr(0, path_start);
    path = path_start == std::string::npos ? "/" : config.url.substr(path_start);
    if (!config.token_env.empty()) {
      if (const char* token = std::getenv(config.token_env.c_str()); token && *token) {
        headers.emplace("Authorization", std::string("Bearer ") + token);
      }
    }
  }

  ProviderConfig config;
  std::counting_semaphore<1 << 16> slots;
  std::string base;
  std::string path;
  httplib::Headers headers;
};

HttpSource::HttpSource(const ProviderConfig& config) {
  config.validate();
  impl_ = std::make_unique<Impl>(config);
}

HttpSource::~HttpSource() = default;

FetchResult HttpSource::fetch(const ImageRequest& request) {
  const auto& cfg = impl_->config;
  const Json body = {{"id", request.id},
                     {"prompt", request.prompt},
                     {"width", request.width},
                     {"height", request.height}};
  const std::string payload = body.dump();

  httplib::Client client(impl_->base);
  const auto timeout = std::chrono::duration<double>(cfg.timeout_seconds);
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));

  std::string last;
  bool all_timeouts = true;
  for (int attempt = 0; attempt <= cfg.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(
          std::chrono::duration<double>(cfg.backoff_seconds * std::ldexp(1.0, attempt - 1)));
    }
    impl_->slots.acquire();
    auto res = client.Post(impl_->path, impl_->headers, payload, "application/json");
    impl_->slots.release();
    if (!res) {
      const auto err = res.error();
      const bool timed_out =
          err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read;
      all_timeouts = all_timeouts && timed_out;
      last = "request failed: " + httplib::to_string(err);
      continue;
    }
    all_timeouts = false;
    if (res->status != 200) {
      last = "HTTP " + std::to_string(res->status);
      continue;
    }
    return decode({reinterpret_cast<const std::uint8_t*>(res->body.data()), res->body.size()},
                  "response for " + request.id);
  }
  const std::string attempts = std::to_string(cfg.retries + 1) + " attempts";
  if (all_timeouts) return failure(fetch_error::timeout, last + " after " + attempts);
  return failure(fetch_error::retry_exhausted, last + " after " + attempts);
}

FetchResult GroundTruthSource::fetch(const ImageRequest& request) {
  if (request.width != request.height) {
    return failure(fetch_error::wrong_dimensions, "ground truth is square");
  }
  return {render_ground_truth(request.regions, request.width), {}, {}};
}

FetchResult ImageSetSource::fetch(const ImageRequest& request) {
  const auto it = set_.images.find({request.id, request.repeat});
  if (it == set_.images.end()) return failure(fetch_error::missing_file, request.id);
  return {it->second, {}, {}};
}

std::unique_ptr<ImageSource> make_source(const ProviderConfig& config) {
  config.validate();
  switch (config.kind) {
    case ProviderKind::filesystem:
      return std::make_unique<FilesystemSource>(config.root, config.repeats);
    case ProviderKind::http: return std::make_unique<HttpSource>(config);
    case ProviderKind::ground_truth: return std::make_unique<GroundTruthSource>();
  }
  throw Error(Errc::invalid_argument, "unknown provider kind");
}

ImageSet acquire_images(std::span<const SampleManifestEntry> manifest, ImageSource& source,
                        const AcquireOptions& options) {
  if (options.repeats < 1) throw Error(Errc::invalid_argument, "repeats must be >= 1");
  const auto tasks = expand_tasks(manifest, options.repeats);
  std::vector<FetchResult> results(tasks.size());
  std::vector<char> downscaled(tasks.size(), 0);
  detail::parallel_for(tasks.size(), options.parallelism, [&](std::size_t i) {
    bool scaled = false;
    results[i] = fit_to_resolution(
        source.fetch(request_for(*tasks[i].entry, tasks[i].repeat, options.resolution)),
        options.resolution, options.allow_downscale, scaled);
    downscaled[i] = scaled;
  });

  ImageSet set;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& t = tasks[i];
    if (results[i].image) {
      set.images.emplace(std::pair{t.entry->id, t.repeat}, std::move(*results[i].image));
      if (downscaled[i]) set.downscaled.push_back(t.entry->id);
    } else {
      set.log.push_back({t.entry->id, t.repeat, results[i].error, results[i].message});
    }
  }
  std::sort(set.log.begin(), set.log.end(), [](const auto& a, const auto& b) {
    return std::tie(a.id, a.repeat) < std::tie(b.id, b.repeat);
  });
  if (set.images.empty() && !tasks.empty()) {
    throw Error(Errc::no_images, "no images acquired (" + std::to_string(set.log.size()) +
                                     " failures)");
  }
  return set;
}

// ----------------------------------------------------------------- config

void RunConfig::validate() const {
  if (model.empty()) throw Error(Errc::invalid_argument, "model tag must not be empty");
  provider.validate();
  eval.validate();
  if (threads < 0) throw Error(Errc::invalid_argument, "threads must be >= 0");
}

std::string run_config_to_json(const RunConfig& c) {
  Json precision = Json::object();
  for (std::size_t i = 0; i < kPrecisionMetricCount; ++i) {
    precision[std::string(kPrecisionMetricNames[i])] = {{"max", c.eval.precision.maxima[i]},
                                                        {"weight", c.eval.precision.weights[i]}};
  }
  Json purity_weights = Json::object();
  for (std::size_t i = 0; i < kPurityMetricCount; ++i) {
    purity_weights[std::string(kPurityMetricNames[i])] = c.eval.purity.weights[i];
  }
  const Json j = {
      {"model", c.model},
      {"seed", c.seed},
      {"threads", c.threads},
      {"allow_downscale", c.allow_downscale},
      {"provider",
       {{"kind", to_string(c.provider.kind)},
        {"root", c.provider.root},
        {"url", c.provider.url},
        {"timeout_seconds", c.provider.timeout_seconds},
        {"parallelism", c.provider.parallelism},
        {"retries", c.provider.retries},
        {"backoff_seconds", c.provider.backoff_seconds},
        {"token_env", c.provider.token_env},
        {"repeats", c.provider.repeats}}},
      {"eval",
       {{"resolution", c.eval.resolution},
        {"hf_cutoff", c.eval.hf_cutoff},
        {"erosion", c.eval.erosion},
        {"hyab_form", c.eval.hyab_form == HyabForm::printed ? "printed" : "literature"},
        {"canny",
         {{"sigma", c.eval.canny.sigma},
          {"kernel_size", c.eval.canny.kernel_size},
          {"low", c.eval.canny.low},
          {"high", c.eval.canny.high}}},
        {"precision", precision},
        {"purity", {{"sd_max", c.eval.purity.sd_max}, {"weights", purity_weights}}}}},
  };
  return j.dump(2);
}

RunConfig run_config_from_json(std::string_view text, const RunConfig& base) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(Errc::parse_error, std::string("run config is not valid JSON: ") + e.what());
  }
  RunConfig c = base;
  try {
    check_keys(j, {"model", "seed", "threads", "allow_downscale", "provider", "eval"}, "run config");
    read_if(j, "model", c.model);
    read_if(j, "seed", c.seed);
    read_if(j, "threads", c.threads);
    read_if(j, "allow_downscale", c.allow_downscale);
    if (j.contains("provider")) {
      const auto& p = j.at("provider");
      check_keys(p,
                 {"kind", "root", "url", "timeout_seconds", "parallelism", "retries",
                  "backoff_seconds", "token_env", "repeats"},
                 "provider");
      if (p.contains("kind")) c.provider.kind = parse_provider_kind(p.at("kind").get<std::string>());
      read_if(p, "root", c.provider.root);
      read_if(p, "url", c.provider.url);
      read_if(p, "timeout_seconds", c.provider.timeout_seconds);
      read_if(p, "parallelism", c.provider.parallelism);
      read_if(p, "retries", c.provider.retries);
      read_if(p, "backoff_seconds", c.provider.backoff_seconds);
      read_if(p, "token_env", c.provider.token_env);
      read_if(p, "repeats", c.provider.repeats);
    }
    if (j.contains("eval")) {
      const auto& e = j.at("eval");
      check_keys(e, {"resolution", "hf_cutoff", "erosion", "hyab_form", "canny", "precision", "purity"},
                 "eval");
      read_if(e, "resolution", c.eval.resolution);
      read_if(e, "hf_cutoff", c.eval.hf_cutoff);
      read_if(e, "erosion", c.eval.erosion);
      if (e.contains("hyab_form")) c.eval.hyab_form = parse_hyab_form(e.at("hyab_form").get<std::string>());
      if (e.contains("canny")) {
        const auto& k = e.at("canny");
        check_keys(k, {"sigma", "kernel_size", "low", "high"}, "canny");
        read_if(k, "sigma", c.eval.canny.sigma);
        read_if(k, "kernel_size", c.eval.canny.kernel_size);
        read_if(k, "low", c.eval.canny.low);
        read_if(k, "high", c.eval.canny.high);
      }
      if (e.contains("precision")) {
        const auto& p = e.at("precision");
        check_keys(p, {"rgb_ed", "rgb_rm", "lab_00", "lab_hue", "lab_hyab", "lab_ch"}, "precision");
        for (std::size_t i = 0; i < kPrecisionMetricCount; ++i) {
          const std::string name(kPrecisionMetricNames[i]);
          if (!p.contains(name)) continue;
          const auto& m = p.at(name);
          check_keys(m, {"max", "weight"}, name);
          read_if(m, "max", c.eval.precision.maxima[i]);
          read_if(m, "weight", c.eval.precision.weights[i]);
        }
      }
      if (e.contains("purity")) {
        const auto& p = e.at("purity");
        check_keys(p, {"sd_max", "weights"}, "purity");
        read_if(p, "sd_max", c.eval.purity.sd_max);
        if (p.contains("weights")) {
          const auto& w = p.at("weights");
          check_keys(w, {"sd", "ced", "hf"}, "purity weights");
          for (std::size_t i = 0; i < kPurityMetricCount; ++i) {
            read_if(w, std::string(kPurityMetricNames[i]).c_str(), c.eval.purity.weights[i]);
          }
        }
      }
    }
  } catch (const Json::exception& e) {
    throw Error(Errc::parse_error, std::string("bad run config value: ") + e.what());
  }
  return c;
}

RunConfig load_run_config(const std::string& path, const RunConfig& base) {
  return run_config_from_json(detail::read_file(path), base);
}

// ------------------------------------------------------------------- eval

EvalRun run_eval(std::span<const SampleManifestEntry> manifest, ImageSource& source,
                 const RunConfig& config, const std::string& manifest_ref) {
  config.eval.validate();
  if (config.provider.repeats < 1) throw Error(Errc::invalid_argument, "repeats must be >= 1");
  const int resolution = config.eval.resolution;
  const auto tasks = expand_tasks(manifest, config.provider.repeats);

  std::vector<SampleResult> results(tasks.size());
  detail::parallel_for(tasks.size(), config.threads, [&](std::size_t i) {
    const auto& [entry, repeat] = tasks[i];
    SampleResult& r = results[i];
    r.id = entry->id;
    r.variation = entry->variation_key();
    r.repeat = repeat;
    FetchResult fetched;
    try {
      fetched = fit_to_resolution(source.fetch(request_for(*entry, repeat, resolution)),
                                  resolution, config.allow_downscale, r.downscaled);
    } catch (const std::exception& e) {
      fetched = failure(fetch_error::decode_failure, e.what());
    }
    if (!fetched.image) {
      r.error = fetched.error;
      r.message = fetched.message;
      return;
    }
    try {
      r.report = evaluate_sample(*fetched.image, entry->regions, config.eval);
    } catch (const Error& e) {
      r.error = fetch_error::eval_failure;
      r.message = std::string(to_string(e.code())) + ": " + e.what();
    }
  });

  EvalRun run;
  run.model = config.model;
  run.manifest = manifest_ref;
  run.config = config;
  run.created = utc_now();
  run.samples = std::move(results);
  std::sort(run.samples.begin(), run.samples.end(), [](const auto& a, const auto& b) {
    return std::tie(a.id, a.repeat) < std::tie(b.id, b.repeat);
  });
  for (const auto& s : run.samples) {
    if (!s.report) run.log.push_back({s.id, s.repeat, s.error, s.message});
    run.downscaled = run.downscaled || s.downscaled;
  }
  run.run_id = "run-" + run.created.substr(0, 10) + "-" +
               [&] {
                 char buf[17];
                 std::snprintf(buf, sizeof buf, "%016llx",
                               static_cast<unsigned long long>(detail::fnv1a(
                                   run_config_to_json(config) + manifest_ref + run.created)));
                 return std::string(buf, 8);
               }();
  aggregate_run(run, manifest);
  if (!tasks.empty() && std::none_of(run.samples.begin(), run.samples.end(),
                                     [](const auto& s) { return s.report.has_value(); })) {
    throw Error(Errc::no_images, "no sample could be evaluated (" +
                                     std::to_string(run.log.size()) + " failures, first: " +
                                     (run.log.empty() ? "" : run.log.front().error) + ")");
  }
  return run;
}

void aggregate_run(EvalRun& run, std::span<const SampleManifestEntry> manifest) {
  // Manifest order of variations and expected prompt counts.
  std::vector<const SampleManifestEntry*> ordered;
  std::map<std::string, int> expected;
  for (const auto& e : manifest) {
    if (expected[e.variation_key()]++ == 0) ordered.push_back(&e);
  }
  std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
    return variation_order(*a) < variation_order(*b);
  });

  // Per-prompt means over successful repeats; samples are sorted by id.
  struct PromptMean {
    std::string variation;
    SampleReport mean;
  };
  std::vector<PromptMean> prompts;
  run.repeats.clear();
  for (std::size_t i = 0; i < run.samples.size();) {
    std::size_t j = i;
    std::vector<const SampleReport*> reports;
    while (j < run.samples.size() && run.samples[j].id == run.samples[i].id) {
      if (run.samples[j].report) reports.push_back(&*run.samples[j].report);
      ++j;
    }
    if (!reports.empty()) {
      const double n = static_cast<double>(reports.size());
      PromptMean pm{run.samples[i].variation, {}};
      for (const auto* r : reports) {
        accumulate(pm.mean.precision_raw, r->precision_raw, 1 / n);
        accumulate(pm.mean.precision_normalized, r->precision_normalized, 1 / n);
        accumulate(pm.mean.purity_raw, r->purity_raw, 1 / n);
        accumulate(pm.mean.purity_normalized, r->purity_normalized, 1 / n);
        pm.mean.pre_mean += r->pre_mean / n;
        pm.mean.pur_mean += r->pur_mean / n;
      }
      if (reports.size() > 1) {
        RepeatStats st;
        st.id = run.samples[i].id;
        st.variation = pm.variation;
        st.n = static_cast<int>(reports.size());
        st.pre_mean = pm.mean.pre_mean;
        st.pur_mean = pm.mean.pur_mean;
        st.precision_mean = pm.mean.precision_normalized;
        st.purity_mean = pm.mean.purity_normalized;
        for (const auto* r : reports) {
          st.pre_var += (r->pre_mean - st.pre_mean) * (r->pre_mean - st.pre_mean) / n;
          st.pur_var += (r->pur_mean - st.pur_mean) * (r->pur_mean - st.pur_mean) / n;
          for (std::size_t m = 0; m < kPrecisionMetricCount; ++m) {
            const double d = r->precision_normalized[m] - st.precision_mean[m];
            st.precision_var[m] += d * d / n;
          }
          for (std::size_t m = 0; m < kPurityMetricCount; ++m) {
            const double d = r->purity_normalized[m] - st.purity_mean[m];
            st.purity_var[m] += d * d / n;
          }
        }
        run.repeats.push_back(std::move(st));
      }
      prompts.push_back(std::move(pm));
    }
    i = j;
  }

  run.aggregates.clear();
  int evaluated_total = 0;
  for (const auto* first : ordered) {
    VariationAggregate agg;
    agg.variation = first->variation_key();
    agg.expected = expected[agg.variation];
    for (const auto& p : prompts) agg.n += p.variation == agg.variation;
    if (agg.n > 0) {
      const double n = agg.n;
      for (const auto& p : prompts) {
        if (p.variation != agg.variation) continue;
        accumulate(agg.precision_raw, p.mean.precision_raw, 1 / n);
        accumulate(agg.precision_normalized, p.mean.precision_normalized, 1 / n);
        accumulate(agg.purity_raw, p.mean.purity_raw, 1 / n);
        accumulate(agg.purity_normalized, p.mean.purity_normalized, 1 / n);
        agg.pre_mean += p.mean.pre_mean / n;
        agg.pur_mean += p.mean.pur_mean / n;
      }
    }
    agg.coverage = agg.expected > 0 ? static_cast<double>(agg.n) / agg.expected : 0.0;
    evaluated_total += agg.n;
    run.aggregates.push_back(std::move(agg));
  }
  run.coverage = manifest.empty() ? 0.0 : static_cast<double>(evaluated_total) / manifest.size();
}

}  // namespace violin
