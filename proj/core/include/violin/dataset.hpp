// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

// Benchmark synthesis: prompt templates, the sample plan, pixel-exact ground
// truth, manifests and the train/test split strategies.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "violin/color.hpp"
#include "violin/image.hpp"
#include "violin/region.hpp"

namespace violin {

enum class Language { en, zh, fr };
enum class ColorSpace { hex, rgb, hsl };
/// Two-block templates name their blocks either left/right or top/bottom.
enum class Layout { none, left_right, top_bottom };

std::string_view to_string(Language v) noexcept;
std::string_view to_string(ColorSpace v) noexcept;
std::string_view to_string(Layout v) noexcept;
Language parse_language(std::string_view text);
ColorSpace parse_color_space(std::string_view text);

/// Template pool sizes per variation 1..6.
inline constexpr std::array<int, 6> kTemplatesPerVariation = {10, 20, 30, 10, 20, 10};

struct PromptTemplate {
  std::string id;
  int variation = 1;
  Language language = Language::en;
  ColorSpace color_space = ColorSpace::hex;
  Layout layout = Layout::none;
  /// Placeholders: {color}; {color_1}..{color_4}; {low} {high}.
  std::string text;
};

/// Number of colors a variation's prompts carry (a range counts as 2).
int variation_arity(int variation);

class TemplatePool {
 public:
  /// `id<TAB>variation<TAB>language<TAB>color_space<TAB>layout<TAB>template`
  /// lines; '#' lines are comments. Rejects duplicate ids and templates whose
  /// placeholders do not match the variation's arity.
  static TemplatePool parse(std::string_view text);
  static TemplatePool load(const std::string& path);
  static const TemplatePool& builtin();

  std::span<const PromptTemplate> all() const { return templates_; }
  std::vector<const PromptTemplate*> select(int variation, Language language, ColorSpace space,
                                            Layout layout = Layout::none) const;
  int count(int variation) const;

 private:
  std::vector<PromptTemplate> templates_;
};

/// hex "#RRGGBB"; rgb "rgb(R, G, B)"; hsl "hsl(H, S%, L%)" with integer
/// degrees and percents.
std::string format_color(Rgb8 c, ColorSpace space);

/// Substitutes colors into the template, formatted in its color space.
/// Range templates take {low, high}.
std::string render_prompt(const PromptTemplate& tmpl, std::span<const Rgb8> colors);

struct SplitTags {
  std::string split;  // "train", "test" or empty when untagged
  std::string note;   // e.g. "stratum-too-small"
  std::map<std::string, std::string> generalization;  // strategy -> train/test
};

struct SampleManifestEntry {
  std::string id;
  int variation = 1;
  Language language = Language::en;
  ColorSpace color_space = ColorSpace::hex;
  std::string template_id;
  ColorLevel level = ColorLevel::level1;
  std::string prompt;
  std::vector<RegionSpec> regions;
  std::string gt_path;
  bool gt_is_midpoint = false;
  SplitTags tags;

  /// "Var-1" ... "Var-4", "Var-5(zh)", "Var-6(rgb)".
  std::string variation_key() const;
};

std::string to_json_line(const SampleManifestEntry& entry);
SampleManifestEntry entry_from_json_line(std::string_view line);
std::vector<SampleManifestEntry> parse_manifest(std::string_view text);
std::vector<SampleManifestEntry> read_manifest(const std::string& path);
std::string manifest_text(std::span<const SampleManifestEntry> entries);
void write_manifest(const std::string& path, std::span<const SampleManifestEntry> entries);

struct GenConfig {
  int resolution = 256;
  std::uint64_t seed = 7;
  /// Base items per variation. Var-2 expands x4, Var-3 x6; Var-5 repeats per
  /// language (zh, fr) and Var-6 per color format (rgb, hsl).
  std::array<int, 6> base_counts = {3020, 3020, 3020, 3020, 3020, 3020};
  /// Multiplies base_counts (rounded half-up), e.g. 0.1 for a tenth-scale run.
  double scale = 1.0;
  /// Relative draw weights of granularity levels 1, 2, 3.
  std::array<double, 3> level_weights = {1.0, 1.0, 1.0};
  std::string output_dir;
  bool write_images = true;
  bool overwrite = false;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;
  int scaled_count(int variation) const;
};

/// Every pixel takes its region's target; ranges render their HSL midpoint.
/// Throws Error{untiled_regions}.
RgbImage render_ground_truth(std::span<const RegionSpec> regions, int resolution);

/// The deterministic sample list for `cfg`; no I/O.
std::vector<SampleManifestEntry> plan_dataset(const GenConfig& cfg,
                                              const TemplatePool& pool = TemplatePool::builtin(),
                                              const ColorTable& table = ColorTable::builtin());

struct GenSummary {
  std::vector<SampleManifestEntry> entries;
  std::map<std::string, int> per_variation;
};

/// Writes `manifest.jsonl` and `gt/{id}.png` under cfg.output_dir. Throws
/// Error{output_collision} when a manifest already exists there unless
/// cfg.overwrite is set.
GenSummary generate_dataset(const GenConfig& cfg,
                            const TemplatePool& pool = TemplatePool::builtin(),
                            const ColorTable& table = ColorTable::builtin());

/// Tags split = train/test per (variation, level, language, color space)
/// stratum with round(n * train_ratio) train items. Strata smaller than 2
/// go entirely to train with note "stratum-too-small".
void stratified_split(std::span<SampleManifestEntry> entries, double train_ratio,
                      std::uint64_t seed);

enum class GeneralizationStrategy { prompt, hue1, hue2 };
GeneralizationStrategy parse_strategy(std::string_view text);
std::string_view to_string(GeneralizationStrategy s) noexcept;

/// Test membership by HSL hue, intervals closed-open.
bool hue1_is_test(double hue);
bool hue2_is_test(double hue);

/// prompt: holds out round(holdout * #templates) template ids (at least one).
/// hue1 / hue2: by the hue of the single exact target; these throw
/// Error{precondition} for entries that are not single-color.
void generalization_split(std::span<SampleManifestEntry> entries, GeneralizationStrategy strategy,
                          std::uint64_t seed, double holdout = 0.2);

}  // namespace violin
