// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "cli.hpp"
#include "oracle_data.hpp"
#include "violin/dataset.hpp"
#include "violin/harness.hpp"
#include "violin/precision.hpp"
#include "violin/purity.hpp"
#include "violin/region.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Check = std::function<Outcome()>;

Outcome fail(std::string why) { return {false, std::move(why)}; }

std::string fmt(double v, int prec = 6) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

struct Cli {
  int code;
  std::string out;
  std::string err;
};

Cli cli(std::vector<std::string> args) {
  args.insert(args.begin(), "violin");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = violin::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("violin_acceptance_" + name);
  fs::remove_all(p);
  return p;
}

Outcome aggregator_parity() {
  using namespace violin;
  auto pre_k = NormalizationConstants::defaults();
  pre_k.maxima.fill(1.0);
  PurityConstants pur_k;
  pur_k.sd_max = 1.0;
  double worst_pre = 0, worst_pur = 0;
  for (const auto& row : oracle::kTableRows) {
    PrecisionVector p;
    std::copy(row.precision.begin(), row.precision.end(), p.begin());
    const double pre = normalize_and_aggregate(p, pre_k).pre_mean;
    const double pur = purity_aggregate({row.purity[0], row.purity[1], row.purity[2]}, pur_k).pur_mean;
    worst_pre = std::max(worst_pre, std::abs(pre - row.pre_mean));
    worst_pur = std::max(worst_pur, std::abs(pur - row.pur_mean));
  }
  const std::string detail =
      "24 rows, max |pre| err " + fmt(worst_pre, 3) + ", max |pur| err " + fmt(worst_pur, 3);
  if (worst_pre > 0.005 || worst_pur > 0.005) return fail(detail);
  return {true, detail};
}

Outcome ciede2000_oracle() {
  double worst = 0;
  for (const auto& p : violin::oracle::kCiede2000Pairs) {
    const double d = violin::ciede2000({p.l1, p.a1, p.b1}, {p.l2, p.a2, p.b2});
    worst = std::max(worst, std::abs(d - p.expected));
  }
  const std::string detail = "34 pairs, max err " + fmt(worst, 3);
  if (worst > 1e-4) return fail(detail);
  return {true, detail};
}

Outcome end_to_end_zero() {
  const fs::path dir = scratch("e2e");
  const auto gen = cli({"gen", "--out", (dir / "ds").string(), "--seed", "7", "--scale", "0.1"});
  if (gen.code != 0) return fail("gen: " + gen.err);
  const auto ev = cli({"eval", "--manifest", (dir / "ds" / "manifest.jsonl").string(), "--images",
                       (dir / "ds" / "gt").string(), "--model", "ground-truth", "--report",
                       (dir / "report").string(), "--format", "jsonl"});
  if (ev.code != 0) return fail("eval: " + ev.err);
  const auto summary = Json::parse(ev.out);
  if (summary["coverage"] != 1.0) return fail("coverage " + summary["coverage"].dump());

  // Per-metric check on the aggregate lines.
  std::ifstream f(dir / "report" / "report.jsonl");
  int aggregates = 0;
  for (std::string line; std::getline(f, line);) {
    const auto j = Json::parse(line);
    if (j["type"] != "aggregate") continue;
    ++aggregates;
    if (j["pre_mean"] != 0.0 || j["pur_mean"] != 0.0) return fail("nonzero row " + line);
    const auto& raw = j["purity_raw"];
    if (raw["sd"].get<double>() >= 1e-9 || raw["ced"] != 0.0 || raw["hf"] != 0.0) {
      return fail("nonzero purity " + line);
    }
  }
  fs::remove_all(dir);
  if (aggregates != 8) return fail(std::to_string(aggregates) + " aggregate rows");
  return {true, std::to_string(summary["aggregates"].size()) +
                    " variation rows, all pre_mean = pur_mean = 0"};
}

Outcome dataset_cardinality() {
  using namespace violin;
  const fs::path dir = scratch("full");
  const auto t0 = std::chrono::steady_clock::now();
  const auto gen = cli({"gen", "--out", dir.string(), "--seed", "7"});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (gen.code != 0) return fail("gen: " + gen.err);
  const auto manifest = read_manifest((dir / "manifest.jsonl").string());
  std::map<int, int> per;
  for (const auto& e : manifest) ++per[e.variation];
  std::size_t pngs = 0;
  for (const auto& f : fs::directory_iterator(dir / "gt")) pngs += f.path().extension() == ".png";
  fs::remove_all(dir);

  const auto& pool = TemplatePool::builtin();
  for (int v = 1; v <= 6; ++v) {
    if (pool.count(v) != kTemplatesPerVariation[v - 1]) {
      return fail("template pool " + std::to_string(v) + " has " + std::to_string(pool.count(v)));
    }
  }
  const std::string detail = std::to_string(per[1]) + "/" + std::to_string(per[2]) + "/" +
                             std::to_string(per[3]) + ", total " +
                             std::to_string(manifest.size()) + ", " + std::to_string(pngs) +
                             " images in " + fmt(secs, 3) + " s";
  if (per[1] != 3020 || per[2] != 12080 || per[3] != 18120 || manifest.size() <= 42000 ||
      pngs != manifest.size() || secs >= 600) {
    return fail(detail);
  }
  return {true, detail + ", pools 10/20/30/10/20/10"};
}

Outcome split_correctness() {
  using namespace violin;
  GenConfig cfg;
  cfg.write_images = false;
  auto plan = plan_dataset(cfg);
  stratified_split(plan, 0.8, 7);
  std::map<std::tuple<int, int, int, int>, std::pair<int, int>> strata;
  for (const auto& e : plan) {
    auto& s = strata[{e.variation, static_cast<int>(e.level), static_cast<int>(e.language),
                      static_cast<int>(e.color_space)}];
    (e.tags.split == "train" ? s.first : s.second)++;
  }
  for (const auto& [key, s] : strata) {
    const int n = s.first + s.second;
    if (n >= 2 && std::abs(s.first - 0.8 * n) > 1.0) return fail("stratum off by more than 1");
  }

  std::vector<SampleManifestEntry> singles;
  for (const auto& e : plan) {
    if (e.regions.size() == 1 && std::holds_alternative<ExactColor>(e.regions[0].target)) {
      singles.push_back(e);
    }
  }
  generalization_split(singles, GeneralizationStrategy::hue1, 7);
  int test = 0;
  for (const auto& e : singles) {
    const double h = rgb_to_hsl(std::get<ExactColor>(e.regions[0].target).color).h;
    const bool expect = h >= 280.0 && h < 320.0;
    const bool got = e.tags.generalization.at("hue1") == "test";
    if (expect != got) return fail(e.id + " hue " + fmt(h));
    test += got;
  }
  return {true, std::to_string(strata.size()) + " strata within +-1; hue1 test " +
                    std::to_string(test) + "/" + std::to_string(singles.size())};
}

Outcome fuzzy_semantics() {
  using namespace violin;
  EvalConfig cfg;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> hue(0, 360), sat(0.2, 0.9), light(0.2, 0.8), t(0.0, 1.0);
  double worst_inside = 0, worst_end = 0;
  for (int i = 0; i < 200; ++i) {
    const Hsl a{hue(rng), sat(rng), light(rng)};
    const Hsl b{std::fmod(a.h + 40.0, 360.0), std::min(0.95, a.s + 0.15), std::min(0.9, a.l + 0.15)};
    const Rgb8 low = hsl_to_rgb(a);
    const Rgb8 high = hsl_to_rgb(b);
    if (low == high) continue;
    const std::vector<RegionSpec> regions = {{FullFrame{}, ColorRange{low, high}}};
    const Rgb8 inside = hsl_to_rgb(range_point(low, high, t(rng)));
    worst_inside = std::max(
        worst_inside, evaluate_sample(RgbImage(256, 256, inside), regions, cfg).pre_mean);
    for (Rgb8 end : {low, high}) {
      worst_end = std::max(worst_end,
                           evaluate_sample(RgbImage(256, 256, end), regions, cfg).pre_mean);
    }
  }
  const std::string detail =
      "200 ranges, max interior pre_mean " + fmt(worst_inside, 3) + ", endpoints " + fmt(worst_end, 3);
  if (worst_inside >= 0.01 || worst_end != 0.0) return fail(detail);
  return {true, detail};
}

Outcome purity_properties() {
  using namespace violin;
  const RgbImage flat(256, 256, {0x40, 0x80, 0xC0});
  const PurityVector zero = {channel_stddev(flat, flat.bounds()),
                             canny_edge_density(flat, flat.bounds()),
                             high_freq_ratio(flat, flat.bounds())};
  if (zero != PurityVector{0, 0, 0}) return fail("constant image not (0,0,0)");

  RgbImage cb(256, 256);
  for (int y = 0; y < 256; ++y) {
    for (int x = 0; x < 256; ++x) cb.set(x, y, (x + y) % 2 ? Rgb8{255, 255, 255} : Rgb8{0, 0, 0});
  }
  const double hf = high_freq_ratio(cb, cb.bounds());
  if (!(hf > 0.99)) return fail("checkerboard hf " + fmt(hf));

  RgbImage half(256, 256, {0, 0, 0});
  half.fill({128, 0, 256, 256}, {255, 255, 255});
  const double band = canny_edge_density(half, half.bounds()) * 256.0;
  if (band < 1.0 || band > 3.0) return fail("edge band " + fmt(band) + " columns");

  double prev = -1;
  std::mt19937_64 rng(7);
  for (int amp : {4, 16, 64}) {
    std::uniform_int_distribution<int> d(-amp, amp);
    RgbImage img(256, 256);
    for (int y = 0; y < 256; ++y) {
      for (int x = 0; x < 256; ++x) {
        auto v = [&] { return static_cast<std::uint8_t>(128 + d(rng)); };
        img.set(x, y, {v(), v(), v()});
      }
    }
    const double sd = channel_stddev(img, img.bounds());
    if (sd < prev) return fail("sd decreased at amplitude " + std::to_string(amp));
    prev = sd;
  }
  return {true, "constant (0,0,0); checkerboard hf " + fmt(hf, 4) + "; edge band " +
                    fmt(band, 3) + " columns; sd ladder monotone"};
}

Outcome split_ratio_probe() {
  using namespace violin;
  const double requested = 0.315;
  RgbImage img(256, 256, {0xAB, 0x12, 0x13});
  const int cut = static_cast<int>(std::floor(requested * 256 + 0.5));
  img.fill({cut, 0, 256, 256}, {0, 0, 0});
  const auto m = measure_split_ratio(img, SplitAxis::horizontal);
  const std::string detail = "measured " + fmt(m.fraction) + " (boundary " +
                             std::to_string(m.boundary) + ")";
  if (std::abs(m.fraction - 81.0 / 256.0) > 1.0 / 256.0) return fail(detail);
  return {true, detail};
}

Outcome redmean_identity() {
  double worst = 0;
  for (int i = 0; i < 256; ++i) {
    const double rbar = i * 255.0 / 255.0;
    const auto w = violin::redmean_weights(rbar);
    worst = std::max(worst, std::abs(w.red + w.blue - (4.0 + 255.0 / 256.0)));
  }
  const std::string detail = "256 values, max err " + fmt(worst, 3);
  if (worst > 1e-12) return fail(detail);
  return {true, detail};
}

Outcome performance() {
  using namespace violin;
  GenConfig gen;
  gen.write_images = false;
  gen.scale = 0.1;
  const auto plan = plan_dataset(gen);
  // Every variation represented: take every k-th entry.
  std::vector<SampleManifestEntry> sample;
  const std::size_t stride = plan.size() / 1000;
  for (std::size_t i = 0; sample.size() < 1000; i += stride) sample.push_back(plan[i]);

  GroundTruthSource gt;
  RunConfig cfg;
  cfg.model = "ground-truth";
  const auto t0 = std::chrono::steady_clock::now();
  const auto run = run_eval(sample, gt, cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string detail = "1000 samples in " + fmt(secs, 3) + " s on " +
                             std::to_string(std::thread::hardware_concurrency()) + " threads";
  if (run.samples.size() != 1000 || run.coverage != 1.0 || secs >= 60.0) return fail(detail);
  return {true, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Check>> checks = {
      {"aggregator-parity", aggregator_parity},
      {"ciede2000-oracle", ciede2000_oracle},
      {"end-to-end-zero", end_to_end_zero},
      {"dataset-cardinality", dataset_cardinality},
      {"split-correctness", split_correctness},
      {"fuzzy-semantics", fuzzy_semantics},
      {"purity-properties", purity_properties},
      {"split-ratio-probe", split_ratio_probe},
      {"redmean-identity", redmean_identity},
      {"performance", performance},
  };
  int failures = 0;
  for (const auto& [name, check] : checks) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = check();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %-20s %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
                secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(checks.size()) - failures, checks.size());
  return failures == 0 ? 0 : 1;
}
