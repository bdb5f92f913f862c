// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

// Image acquisition from model providers and batch evaluation runs.

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "violin/dataset.hpp"
#include "violin/image.hpp"
#include "violin/region.hpp"

namespace violin {

enum class ProviderKind { filesystem, http, ground_truth };

std::string_view to_string(ProviderKind kind) noexcept;
ProviderKind parse_provider_kind(std::string_view text);

struct ProviderConfig {
  ProviderKind kind = ProviderKind::filesystem;
  /// Directory holding `{id}.png` (or `{id}_{k}.png` when repeats > 1).
  std::string root;
  /// http://host:port/path; each sample is one POST.
  std::string url;
  double timeout_seconds = 120.0;
  /// Maximum requests in flight.
  int parallelism = 4;
  /// Extra attempts after the first failed one, with exponential backoff.
  int retries = 3;
  double backoff_seconds = 0.5;
  /// Environment variable holding an opaque bearer token; unset means none.
  std::string token_env = "VIOLIN_PROVIDER_TOKEN";
  /// Images per prompt.
  int repeats = 1;

  void validate() const;
};

/// One image to obtain. `regions` is only read by the ground-truth source.
struct ImageRequest {
  std::string id;
  std::string prompt;
  int width = 256;
  int height = 256;
  int repeat = 0;
  std::span<const RegionSpec> regions;
};

/// Per-sample acquisition failure kinds.
namespace fetch_error {
inline constexpr std::string_view missing_file = "missing-file";
inline constexpr std::string_view timeout = "timeout";
inline constexpr std::string_view decode_failure = "decode-failure";
inline constexpr std::string_view wrong_dimensions = "wrong-dimensions";
inline constexpr std::string_view retry_exhausted = "retry-exhausted";
inline constexpr std::string_view eval_failure = "eval-failure";
}  // namespace fetch_error

struct FetchResult {
  std::optional<RgbImage> image;
  std::string error;    // one of fetch_error when image is empty
  std::string message;
};

/// Produces images on demand. Implementations must be safe to call from
/// several threads at once.
class ImageSource {
 public:
  virtual ~ImageSource() = default;
  virtual FetchResult fetch(const ImageRequest& request) = 0;
};

class FilesystemSource final : public ImageSource {
 public:
  FilesystemSource(std::string root, int repeats = 1);
  FetchResult fetch(const ImageRequest& request) override;
  /// `{root}/{id}.png`, or `{root}/{id}_{k}.png` for repeat sampling.
  std::string path_for(const std::string& id, int repeat) const;

 private:
  std::string root_;
  int repeats_;
};

/// POSTs {id, prompt, width, height} as JSON and decodes the PNG reply.
class HttpSource final : public ImageSource {
 public:
  explicit HttpSource(const ProviderConfig& config);
  ~HttpSource() override;
  FetchResult fetch(const ImageRequest& request) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Renders each request's regions exactly; the oracle "model".
class GroundTruthSource final : public ImageSource {
 public:
  FetchResult fetch(const ImageRequest& request) override;
};

/// Wraps a callable, mainly for tests and in-process models.
class CallbackSource final : public ImageSource {
 public:
  using Fn = std::function<FetchResult(const ImageRequest&)>;
  explicit CallbackSource(Fn fn) : fn_(std::move(fn)) {}
  FetchResult fetch(const ImageRequest& request) override { return fn_(request); }

 private:
  Fn fn_;
};

std::unique_ptr<ImageSource> make_source(const ProviderConfig& config);

struct AcquisitionRecord {
  std::string id;
  int repeat = 0;
  std::string error;
  std::string message;
};

/// Images keyed by (sample id, repeat index).
struct ImageSet {
  std::map<std::pair<std::string, int>, RgbImage> images;
  std::vector<AcquisitionRecord> log;
  /// Samples that were brought to size by box_downscale.
  std::vector<std::string> downscaled;
};

/// Serves a previously acquired ImageSet; absent keys report missing-file.
class ImageSetSource final : public ImageSource {
 public:
  explicit ImageSetSource(const ImageSet& set) : set_(set) {}
  FetchResult fetch(const ImageRequest& request) override;

 private:
  const ImageSet& set_;
};

struct AcquireOptions {
  int resolution = 256;
  int repeats = 1;
  int parallelism = 4;
  /// Accept integer multiples of the resolution and box-downscale them.
  bool allow_downscale = false;
};

/// Fetches every (entry, repeat). Missing samples are logged, not fatal;
/// throws Error{no_images} when nothing at all was acquired.
ImageSet acquire_images(std::span<const SampleManifestEntry> manifest, ImageSource& source,
                        const AcquireOptions& options);

struct RunConfig {
  std::string model = "model";
  ProviderConfig provider;
  EvalConfig eval;
  bool allow_downscale = false;
  /// Evaluation workers; 0 = hardware concurrency.
  int threads = 0;
  /// Dataset seed recorded with the run.
  std::uint64_t seed = 7;

  void validate() const;
};

/// JSON object; every field optional on input with the defaults above.
std::string run_config_to_json(const RunConfig& config);
RunConfig run_config_from_json(std::string_view text, const RunConfig& base = {});
RunConfig load_run_config(const std::string& path, const RunConfig& base = {});

struct SampleResult {
  std::string id;
  std::string variation;  // SampleManifestEntry::variation_key()
  int repeat = 0;
  std::optional<SampleReport> report;
  std::string error;
  std::string message;
  bool downscaled = false;
};

/// Per-prompt statistics over repeated samples (population variance).
struct RepeatStats {
  std::string id;
  std::string variation;
  int n = 0;
  double pre_mean = 0, pre_var = 0;
  double pur_mean = 0, pur_var = 0;
  PrecisionVector precision_mean{}, precision_var{};
  PurityVector purity_mean{}, purity_var{};
};

/// Means over evaluated prompts of one variation. With repeats, each prompt
/// contributes the mean of its repeats.
struct VariationAggregate {
  std::string variation;
  int n = 0;         // evaluated prompts
  int expected = 0;  // prompts in the manifest
  double coverage = 0;
  PrecisionVector precision_raw{}, precision_normalized{};
  PurityVector purity_raw{}, purity_normalized{};
  double pre_mean = 0;
  double pur_mean = 0;
};

struct EvalRun {
  std::string run_id;
  std::string created;  // UTC, ISO 8601
  std::string model;
  std::string manifest;
  RunConfig config;
  std::vector<SampleResult> samples;  // sorted by (id, repeat)
  std::vector<AcquisitionRecord> log;
  std::vector<VariationAggregate> aggregates;
  std::vector<RepeatStats> repeats;  // only for prompts with n > 1
  double coverage = 0;
  bool downscaled = false;
};

/// Fetches and evaluates every manifest entry on a worker pool. Per-sample
/// failures land in the run; throws Error{no_images} when none evaluated.
EvalRun run_eval(std::span<const SampleManifestEntry> manifest, ImageSource& source,
                 const RunConfig& config, const std::string& manifest_ref = "");

/// Rebuilds aggregates and repeat statistics from run.samples.
void aggregate_run(EvalRun& run, std::span<const SampleManifestEntry> manifest);

}  // namespace violin
