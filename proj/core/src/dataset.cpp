// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#include "violin/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <set>

#include "builtin_data.hpp"
#include "json_codec.hpp"
#include "parallel.hpp"
#include "text_util.hpp"
#include "violin/error.hpp"

namespace violin {

namespace {

namespace fs = std::filesystem;
using detail::Json;

// Quadrant assignment patterns for the four base colors: identity, both
// mirrors, the half turn and both quarter turns. Entry q is the base color
// index placed in quadrant q.
constexpr std::array<std::array<int, 4>, 6> kQuadrantPatterns = {{
    {0, 1, 2, 3},
    {1, 0, 3, 2},
    {2, 3, 0, 1},
    {3, 2, 1, 0},
    {2, 0, 3, 1},
    {1, 3, 0, 2},
}};

// Fuzzy range half-widths in HSL.
constexpr double kRangeHueDelta = 40.0;
constexpr double kRangeSlDelta = 0.15;

std::vector<std::string> placeholders_of(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while ((pos = text.find('{', pos)) != std::string_view::npos) {
    const auto end = text.find('}', pos);
    if (end == std::string_view::npos) break;
    out.emplace_back(text.substr(pos + 1, end - pos - 1));
    pos = end + 1;
  }
  return out;
}

std::set<std::string> expected_placeholders(int variation) {
  switch (variation) {
    case 2: return {"color_1", "color_2"};
    case 3: return {"color_1", "color_2", "color_3", "color_4"};
    case 4: return {"low", "high"};
    default: return {"color"};
  }
}

void replace_all(std::string& text, std::string_view key, const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text.find(key, pos)) != std::string::npos) {
    text.replace(pos, key.size(), value);
    pos += value.size();
  }
}

std::string id_prefix(int variation, Language lang, ColorSpace space) {
  std::string p = "v" + std::to_string(variation);
  if (variation == 5) p += to_string(lang);
  if (variation == 6) p += to_string(space);
  return p;
}

/// Cycles through a template list so every template is used evenly.
class TemplateCycle {
 public:
  explicit TemplateCycle(std::vector<const PromptTemplate*> items, std::string what)
      : items_(std::move(items)) {
    if (items_.empty()) {
      throw Error(Errc::precondition, "template pool has no templates for " + what);
    }
  }
  const PromptTemplate& next() { return *items_[next_++ % items_.size()]; }

 private:
  std::vector<const PromptTemplate*> items_;
  std::size_t next_ = 0;
};

class Planner {
 public:
  Planner(const GenConfig& cfg, const TemplatePool& pool, const ColorTable& table)
      : cfg_(cfg), pool_(pool), table_(table) {}

  std::vector<SampleManifestEntry> run() {
    plan_single_color();
    plan_two_block();
    plan_four_block();
    plan_fuzzy();
    plan_multilingual();
    plan_color_spaces();
    return std::move(out_);
  }

 private:
  std::mt19937_64 rng_for(int variation) const {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg_.seed), static_cast<std::uint32_t>(cfg_.seed >> 32),
                      static_cast<std::uint32_t>(variation)};
    return std::mt19937_64(seq);
  }

  ColorLevel draw_level(std::mt19937_64& rng) const {
    std::discrete_distribution<int> pick(cfg_.level_weights.begin(), cfg_.level_weights.end());
    return static_cast<ColorLevel>(pick(rng) + 1);
  }

  void emit(int variation, Language lang, ColorSpace space, const PromptTemplate& tmpl,
            ColorLevel level, std::vector<RegionSpec> regions, std::span<const Rgb8> prompt_colors,
            bool midpoint) {
    SampleManifestEntry e;
    e.variation = variation;
    e.language = lang;
    e.color_space = space;
    e.template_id = tmpl.id;
    e.level = level;
    e.prompt = render_prompt(tmpl, prompt_colors);
    e.regions = std::move(regions);
    e.gt_is_midpoint = midpoint;

    const std::string prefix = id_prefix(variation, lang, space);
    const int index = counters_[prefix]++;
    Json content = {{"template", e.template_id}, {"prompt", e.prompt}};
    for (const auto& r : e.regions) content["regions"].push_back(detail::region_to_json(r));
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(detail::fnv1a(content.dump())));
    char idx[16];
    std::snprintf(idx, sizeof idx, "%05d", index);
    e.id = prefix + "-" + idx + "-" + std::string(hash, 8);
    e.gt_path = "gt/" + e.id + ".png";
    out_.push_back(std::move(e));
  }

  void plan_single_color() {
    auto rng = rng_for(1);
    TemplateCycle templates(pool_.select(1, Language::en, ColorSpace::hex), "variation 1");
    for (int i = 0; i < cfg_.scaled_count(1); ++i) {
      const auto level = draw_level(rng);
      const Rgb8 c = table_.sample(level, rng).color;
      base_single_.emplace_back(level, c);
      emit(1, Language::en, ColorSpace::hex, templates.next(), level,
           {{FullFrame{}, ExactColor{c}}}, std::array{c}, false);
    }
  }

  void plan_two_block() {
    auto rng = rng_for(2);
    TemplateCycle lr(pool_.select(2, Language::en, ColorSpace::hex, Layout::left_right),
                     "variation 2 left/right");
    TemplateCycle tb(pool_.select(2, Language::en, ColorSpace::hex, Layout::top_bottom),
                     "variation 2 top/bottom");
    for (int i = 0; i < cfg_.scaled_count(2); ++i) {
      const auto level = draw_level(rng);
      const Rgb8 a = table_.sample(level, rng).color;
      Rgb8 b = table_.sample(level, rng).color;
      while (b == a) b = table_.sample(level, rng).color;
      for (const Layout layout : {Layout::left_right, Layout::top_bottom}) {
        for (const auto& [first, second] : {std::pair{a, b}, std::pair{b, a}}) {
          std::vector<RegionSpec> regions;
          if (layout == Layout::left_right) {
            regions = {{HorizontalSplit{0.5, Side::first}, ExactColor{first}},
                       {HorizontalSplit{0.5, Side::second}, ExactColor{second}}};
          } else {
            regions = {{VerticalSplit{0.5, Side::first}, ExactColor{first}},
                       {VerticalSplit{0.5, Side::second}, ExactColor{second}}};
          }
          auto& cycle = layout == Layout::left_right ? lr : tb;
          emit(2, Language::en, ColorSpace::hex, cycle.next(), level, std::move(regions),
               std::array{first, second}, false);
        }
      }
    }
  }

  void plan_four_block() {
    auto rng = rng_for(3);
    TemplateCycle templates(pool_.select(3, Language::en, ColorSpace::hex), "variation 3");
    for (int i = 0; i < cfg_.scaled_count(3); ++i) {
      const auto level = draw_level(rng);
      std::array<Rgb8, 4> base;
      for (auto& c : base) c = table_.sample(level, rng).color;
      for (const auto& pattern : kQuadrantPatterns) {
        std::vector<RegionSpec> regions;
        std::array<Rgb8, 4> colors;
        for (int q = 0; q < 4; ++q) {
          colors[q] = base[pattern[q]];
          regions.push_back({Quadrant{q}, ExactColor{colors[q]}});
        }
        emit(3, Language::en, ColorSpace::hex, templates.next(), level, std::move(regions), colors,
             false);
      }
    }
  }

  void plan_fuzzy() {
    auto rng = rng_for(4);
    TemplateCycle templates(pool_.select(4, Language::en, ColorSpace::hex), "variation 4");
    std::uniform_real_distribution<double> hue_delta(-kRangeHueDelta, kRangeHueDelta);
    std::uniform_real_distribution<double> sl_delta(-kRangeSlDelta, kRangeSlDelta);
    for (int i = 0; i < cfg_.scaled_count(4); ++i) {
      const auto level = draw_level(rng);
      const Rgb8 c = table_.sample(level, rng).color;
      const Hsl base = rgb_to_hsl(c);
      Rgb8 other = c;
      while (other == c) {
        Hsl moved{base.h + hue_delta(rng), std::clamp(base.s + sl_delta(rng), 0.0, 1.0),
                  std::clamp(base.l + sl_delta(rng), 0.0, 1.0)};
        moved.h = std::fmod(moved.h + 360.0, 360.0);
        other = hsl_to_rgb(moved);
      }
      // Darker endpoint first.
      Rgb8 low = c, high = other;
      const double l_low = rgb_to_hsl(low).l, l_high = rgb_to_hsl(high).l;
      if (l_high < l_low || (l_high == l_low && format_hex(high) < format_hex(low))) {
        std::swap(low, high);
      }
      emit(4, Language::en, ColorSpace::hex, templates.next(), level,
           {{FullFrame{}, ColorRange{low, high}}}, std::array{low, high}, true);
    }
  }

  // Variations 5 and 6 reuse the single-color draws index by index so the
  // language / format comparison runs on identical targets.
  std::pair<ColorLevel, Rgb8> single_color(std::size_t i, std::mt19937_64& rng) {
    if (i < base_single_.size()) return base_single_[i];
    const auto level = draw_level(rng);
    return {level, table_.sample(level, rng).color};
  }

  void plan_multilingual() {
    auto rng = rng_for(5);
    for (const Language lang : {Language::zh, Language::fr}) {
      TemplateCycle templates(pool_.select(5, lang, ColorSpace::hex),
                              "variation 5 " + std::string(to_string(lang)));
      for (int i = 0; i < cfg_.scaled_count(5); ++i) {
        const auto [level, c] = single_color(static_cast<std::size_t>(i), rng);
        emit(5, lang, ColorSpace::hex, templates.next(), level, {{FullFrame{}, ExactColor{c}}},
             std::array{c}, false);
      }
    }
  }

  void plan_color_spaces() {
    auto rng = rng_for(6);
    for (const ColorSpace space : {ColorSpace::rgb, ColorSpace::hsl}) {
      TemplateCycle templates(pool_.select(6, Language::en, space),
                              "variation 6 " + std::string(to_string(space)));
      for (int i = 0; i < cfg_.scaled_count(6); ++i) {
        const auto [level, c] = single_color(static_cast<std::size_t>(i), rng);
        emit(6, Language::en, space, templates.next(), level, {{FullFrame{}, ExactColor{c}}},
             std::array{c}, false);
      }
    }
  }

  const GenConfig& cfg_;
  const TemplatePool& pool_;
  const ColorTable& table_;
  std::vector<SampleManifestEntry> out_;
  std::vector<std::pair<ColorLevel, Rgb8>> base_single_;
  std::map<std::string, int> counters_;
};

template <typename T>
T parse_enum(std::string_view text, std::initializer_list<std::pair<std::string_view, T>> options,
             const char* what) {
  for (const auto& [name, value] : options) {
    if (name == text) return value;
  }
  throw Error(Errc::parse_error, std::string("unknown ") + what + " '" + std::string(text) + "'");
}

double target_hue(const SampleManifestEntry& e) {
  if (e.regions.size() != 1 || !std::holds_alternative<ExactColor>(e.regions.front().target)) {
    throw Error(Errc::precondition,
                "hue splits need single-color samples; '" + e.id + "' is not one");
  }
  return rgb_to_hsl(std::get<ExactColor>(e.regions.front().target).color).h;
}

}  // namespace

std::string_view to_string(Language v) noexcept {
  switch (v) {
    case Language::en: return "en";
    case Language::zh: return "zh";
    case Language::fr: return "fr";
  }
  return "?";
}

std::string_view to_string(ColorSpace v) noexcept {
  switch (v) {
    case ColorSpace::hex: return "hex";
    case ColorSpace::rgb: return "rgb";
    case ColorSpace::hsl: return "hsl";
  }
  return "?";
}

std::string_view to_string(Layout v) noexcept {
  switch (v) {
    case Layout::none: return "-";
    case Layout::left_right: return "lr";
    case Layout::top_bottom: return "tb";
  }
  return "?";
}

Language parse_language(std::string_view text) {
  return parse_enum<Language>(text, {{"en", Language::en}, {"zh", Language::zh}, {"fr", Language::fr}},
                              "language");
}

ColorSpace parse_color_space(std::string_view text) {
  return parse_enum<ColorSpace>(
      text, {{"hex", ColorSpace::hex}, {"rgb", ColorSpace::rgb}, {"hsl", ColorSpace::hsl}},
      "color space");
}

int variation_arity(int variation) {
  switch (variation) {
    case 2: return 2;
    case 3: return 4;
    case 4: return 2;
    default: return 1;
  }
}

TemplatePool TemplatePool::parse(std::string_view text) {
  TemplatePool pool;
  std::set<std::string> ids;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto where = "template line " + std::to_string(line_no);
    const auto f = detail::split(line, '\t');
    if (f.size() != 6) throw Error(Errc::parse_error, where + ": expected 6 tab-separated fields");
    PromptTemplate t;
    t.id = std::string(f[0]);
    if (!ids.insert(t.id).second) throw Error(Errc::parse_error, where + ": duplicate id " + t.id);
    if (f[1].size() != 1 || f[1][0] < '1' || f[1][0] > '6') {
      throw Error(Errc::parse_error, where + ": variation must be 1..6");
    }
    t.variation = f[1][0] - '0';
    t.language = parse_language(f[2]);
    t.color_space = parse_color_space(f[3]);
    t.layout = parse_enum<Layout>(
        f[4], {{"-", Layout::none}, {"lr", Layout::left_right}, {"tb", Layout::top_bottom}}, "layout");
    if ((t.variation == 2) != (t.layout != Layout::none)) {
      throw Error(Errc::parse_error, where + ": only variation 2 templates carry a layout");
    }
    t.text = std::string(f[5]);
    const auto found = placeholders_of(t.text);
    const std::set<std::string> have(found.begin(), found.end());
    if (have != expected_placeholders(t.variation)) {
      throw Error(Errc::parse_error, where + ": placeholders do not match variation " +
                                         std::to_string(t.variation));
    }
    pool.templates_.push_back(std::move(t));
  }
  return pool;
}

TemplatePool TemplatePool::load(const std::string& path) { return parse(detail::read_file(path)); }

const TemplatePool& TemplatePool::builtin() {
  static const TemplatePool pool = parse(detail::kBuiltinTemplates);
  return pool;
}

std::vector<const PromptTemplate*> TemplatePool::select(int variation, Language language,
                                                        ColorSpace space, Layout layout) const {
  std::vector<const PromptTemplate*> out;
  for (const auto& t : templates_) {
    if (t.variation == variation && t.language == language && t.color_space == space &&
        t.layout == layout) {
      out.push_back(&t);
    }
  }
  return out;
}

int TemplatePool::count(int variation) const {
  return static_cast<int>(std::count_if(templates_.begin(), templates_.end(),
                                        [&](const auto& t) { return t.variation == variation; }));
}

std::string format_color(Rgb8 c, ColorSpace space) {
  switch (space) {
    case ColorSpace::hex: return format_hex(c);
    case ColorSpace::rgb:
      return "rgb(" + std::to_string(c.r) + ", " + std::to_string(c.g) + ", " +
             std::to_string(c.b) + ")";
    case ColorSpace::hsl: {
      const Hsl v = rgb_to_hsl(c);
      const long h = std::lround(v.h) % 360;
      return "hsl(" + std::to_string(h) + ", " + std::to_string(std::lround(v.s * 100.0)) +
             "%, " + std::to_string(std::lround(v.l * 100.0)) + "%)";
    }
  }
  return {};
}

std::string render_prompt(const PromptTemplate& tmpl, std::span<const Rgb8> colors) {
  if (static_cast<int>(colors.size()) != variation_arity(tmpl.variation)) {
    throw Error(Errc::invalid_argument, "template " + tmpl.id + " takes " +
                                            std::to_string(variation_arity(tmpl.variation)) +
                                            " colors");
  }
  std::string text = tmpl.text;
  if (tmpl.variation == 4) {
    replace_all(text, "{low}", format_color(colors[0], tmpl.color_space));
    replace_all(text, "{high}", format_color(colors[1], tmpl.color_space));
  } else if (colors.size() == 1) {
    replace_all(text, "{color}", format_color(colors[0], tmpl.color_space));
  } else {
    for (std::size_t i = 0; i < colors.size(); ++i) {
      replace_all(text, "{color_" + std::to_string(i + 1) + "}",
                  format_color(colors[i], tmpl.color_space));
    }
  }
  return text;
}

std::string SampleManifestEntry::variation_key() const {
  std::string key = "Var-" + std::to_string(variation);
  if (variation == 5) key += "(" + std::string(to_string(language)) + ")";
  if (variation == 6) key += "(" + std::string(to_string(color_space)) + ")";
  return key;
}

std::string to_json_line(const SampleManifestEntry& e) {
  Json j;
  j["id"] = e.id;
  j["variation"] = e.variation;
  j["language"] = to_string(e.language);
  j["color_space"] = to_string(e.color_space);
  j["template_id"] = e.template_id;
  j["level"] = static_cast<int>(e.level);
  j["prompt"] = e.prompt;
  j["regions"] = Json::array();
  for (const auto& r : e.regions) j["regions"].push_back(detail::region_to_json(r));
  j["gt_path"] = e.gt_path;
  j["gt_is_midpoint"] = e.gt_is_midpoint;
  if (!e.tags.split.empty()) j["split"] = e.tags.split;
  if (!e.tags.note.empty()) j["split_note"] = e.tags.note;
  if (!e.tags.generalization.empty()) {
    j["generalization"] = Json::object();
    for (const auto& [k, v] : e.tags.generalization) j["generalization"][k] = v;
  }
  return j.dump();
}

SampleManifestEntry entry_from_json_line(std::string_view line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::exception& ex) {
    throw Error(Errc::parse_error, std::string("manifest line is not JSON: ") + ex.what());
  }
  try {
    SampleManifestEntry e;
    e.id = j.at("id").get<std::string>();
    e.variation = j.at("variation").get<int>();
    if (e.variation < 1 || e.variation > 6) throw Error(Errc::parse_error, "variation must be 1..6");
    e.language = parse_language(j.at("language").get<std::string>());
    e.color_space = parse_color_space(j.at("color_space").get<std::string>());
    e.template_id = j.value("template_id", "");
    const int level = j.value("level", 1);
    if (level < 1 || level > 3) throw Error(Errc::parse_error, "level must be 1..3");
    e.level = static_cast<ColorLevel>(level);
    e.prompt = j.at("prompt").get<std::string>();
    for (const auto& r : j.at("regions")) e.regions.push_back(detail::region_from_json(r));
    e.gt_path = j.value("gt_path", "");
    e.gt_is_midpoint = j.value("gt_is_midpoint", false);
    e.tags.split = j.value("split", "");
    e.tags.note = j.value("split_note", "");
    if (j.contains("generalization")) {
      for (const auto& [k, v] : j.at("generalization").items()) {
        e.tags.generalization[k] = v.get<std::string>();
      }
    }
    return e;
  } catch (const Json::exception& ex) {
    throw Error(Errc::parse_error, std::string("bad manifest entry: ") + ex.what());
  }
}

std::vector<SampleManifestEntry> parse_manifest(std::string_view text) {
  std::vector<SampleManifestEntry> out;
  std::set<std::string> ids;
  for (auto line : detail::split_lines(text)) {
    if (detail::trim(line).empty()) continue;
    out.push_back(entry_from_json_line(line));
    if (!ids.insert(out.back().id).second) {
      throw Error(Errc::parse_error, "duplicate sample id " + out.back().id);
    }
  }
  return out;
}

std::vector<SampleManifestEntry> read_manifest(const std::string& path) {
  return parse_manifest(detail::read_file(path));
}

std::string manifest_text(std::span<const SampleManifestEntry> entries) {
  std::string out;
  for (const auto& e : entries) {
    out += to_json_line(e);
    out += '\n';
  }
  return out;
}

void write_manifest(const std::string& path, std::span<const SampleManifestEntry> entries) {
  detail::write_file_atomic(path, manifest_text(entries));
}

void GenConfig::validate() const {
  if (resolution < 8) throw Error(Errc::invalid_argument, "resolution must be at least 8");
  if (!(scale > 0) || !std::isfinite(scale)) {
    throw Error(Errc::invalid_argument, "scale must be positive");
  }
  for (int c : base_counts) {
    if (c < 0) throw Error(Errc::invalid_argument, "sample counts must be >= 0");
  }
  double total = 0;
  for (double w : level_weights) {
    if (!(w >= 0)) throw Error(Errc::invalid_argument, "level weights must be >= 0");
    total += w;
  }
  if (!(total > 0)) throw Error(Errc::invalid_argument, "level weights must not all be zero");
}

int GenConfig::scaled_count(int variation) const {
  return static_cast<int>(std::floor(base_counts[variation - 1] * scale + 0.5));
}

RgbImage render_ground_truth(std::span<const RegionSpec> regions, int resolution) {
  check_tiling(regions, resolution, resolution);
  RgbImage image(resolution, resolution);
  for (const auto& r : regions) {
    Rgb8 color;
    if (const auto* exact = std::get_if<ExactColor>(&r.target)) {
      color = exact->color;
    } else {
      const auto& range = std::get<ColorRange>(r.target);
      color = hsl_to_rgb(range_point(range.low, range.high, 0.5));
    }
    image.fill(region_pixels(r.geometry, resolution, resolution), color);
  }
  return image;
}

std::vector<SampleManifestEntry> plan_dataset(const GenConfig& cfg, const TemplatePool& pool,
                                              const ColorTable& table) {
  cfg.validate();
  return Planner(cfg, pool, table).run();
}

GenSummary generate_dataset(const GenConfig& cfg, const TemplatePool& pool,
                            const ColorTable& table) {
  if (cfg.output_dir.empty()) throw Error(Errc::invalid_argument, "output directory not set");
  const fs::path root(cfg.output_dir);
  const fs::path manifest_path = root / "manifest.jsonl";
  if (fs::exists(manifest_path) && !cfg.overwrite) {
    throw Error(Errc::output_collision,
                "'" + manifest_path.string() + "' already exists (pass overwrite to replace it)");
  }

  GenSummary summary;
  summary.entries = plan_dataset(cfg, pool, table);
  std::set<std::string> ids;
  for (const auto& e : summary.entries) {
    if (!ids.insert(e.id).second) {
      throw Error(Errc::output_collision, "sample id collision: " + e.id);
    }
    ++summary.per_variation[e.variation_key()];
  }

  std::error_code ec;
  fs::create_directories(root / "gt", ec);
  if (ec) throw Error(Errc::io_error, "cannot create '" + (root / "gt").string() + "': " + ec.message());

  if (cfg.write_images) {
    detail::parallel_for(summary.entries.size(), cfg.threads, [&](std::size_t i) {
      const auto& e = summary.entries[i];
      write_png((root / e.gt_path).string(), render_ground_truth(e.regions, cfg.resolution));
    });
  }
  write_manifest(manifest_path.string(), summary.entries);
  return summary;
}

void stratified_split(std::span<SampleManifestEntry> entries, double train_ratio,
                      std::uint64_t seed) {
  if (!(train_ratio > 0.0 && train_ratio < 1.0)) {
    throw Error(Errc::invalid_argument, "train ratio must lie strictly between 0 and 1");
  }
  std::map<std::string, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    strata[std::to_string(e.variation) + "|" + std::string(to_string(e.level)) + "|" +
           std::string(to_string(e.language)) + "|" + std::string(to_string(e.color_space))]
        .push_back(i);
  }
  for (auto& [key, members] : strata) {
    // Order by id first so the outcome does not depend on input order.
    std::sort(members.begin(), members.end(),
              [&](std::size_t a, std::size_t b) { return entries[a].id < entries[b].id; });
    if (members.size() < 2) {
      for (auto i : members) {
        entries[i].tags.split = "train";
        entries[i].tags.note = "stratum-too-small";
      }
      continue;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(detail::fnv1a(key))};
    std::mt19937_64 rng(seq);
    std::shuffle(members.begin(), members.end(), rng);
    const auto n_train = static_cast<std::size_t>(std::floor(members.size() * train_ratio + 0.5));
    for (std::size_t k = 0; k < members.size(); ++k) {
      entries[members[k]].tags.split = k < n_train ? "train" : "test";
      entries[members[k]].tags.note.clear();
    }
  }
}

GeneralizationStrategy parse_strategy(std::string_view text) {
  if (text == "prompt") return GeneralizationStrategy::prompt;
  if (text == "hue1") return GeneralizationStrategy::hue1;
  if (text == "hue2") return GeneralizationStrategy::hue2;
  throw Error(Errc::unknown_strategy, "unknown split strategy '" + std::string(text) + "'");
}

std::string_view to_string(GeneralizationStrategy s) noexcept {
  switch (s) {
    case GeneralizationStrategy::prompt: return "prompt";
    case GeneralizationStrategy::hue1: return "hue1";
    case GeneralizationStrategy::hue2: return "hue2";
  }
  return "?";
}

bool hue1_is_test(double hue) { return hue >= 280.0 && hue < 320.0; }

bool hue2_is_test(double hue) {
  const bool train = (hue >= 0.0 && hue < 60.0) || (hue >= 120.0 && hue < 180.0) ||
                     (hue >= 240.0 && hue < 300.0);
  return !train;
}

void generalization_split(std::span<SampleManifestEntry> entries, GeneralizationStrategy strategy,
                          std::uint64_t seed, double holdout) {
  const std::string key(to_string(strategy));
  if (strategy == GeneralizationStrategy::prompt) {
    if (!(holdout > 0.0 && holdout < 1.0)) {
      throw Error(Errc::invalid_argument, "template holdout must lie in (0, 1)");
    }
    std::set<std::string> unique;
    for (const auto& e : entries) unique.insert(e.template_id);
    std::vector<std::string> ids(unique.begin(), unique.end());
    std::mt19937_64 rng(seed);
    std::shuffle(ids.begin(), ids.end(), rng);
    const auto n_test = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(ids.size() * holdout + 0.5)));
    const std::set<std::string> held_out(ids.begin(),
                                         ids.begin() + std::min(n_test, ids.size()));
    for (auto& e : entries) e.tags.generalization[key] = held_out.count(e.template_id) ? "test" : "train";
    return;
  }
  std::vector<double> hues;
  hues.reserve(entries.size());
  for (const auto& e : entries) hues.push_back(target_hue(e));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const bool test = strategy == GeneralizationStrategy::hue1 ? hue1_is_test(hues[i])
                                                               : hue2_is_test(hues[i]);
    entries[i].tags.generalization[key] = test ? "test" : "train";
  }
}

}  // namespace violin
