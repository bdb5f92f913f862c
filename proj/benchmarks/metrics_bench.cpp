// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "violin/dataset.hpp"
#include "violin/precision.hpp"
#include "violin/purity.hpp"
#include "violin/region.hpp"

namespace {

using namespace violin;

RgbImage noise(int size) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> d(0, 255);
  RgbImage img(size, size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      img.set(x, y, {static_cast<std::uint8_t>(d(rng)), static_cast<std::uint8_t>(d(rng)),
                     static_cast<std::uint8_t>(d(rng))});
    }
  }
  return img;
}

void BM_Ciede2000(benchmark::State& state) {
  const Lab a{50, 2.6772, -79.7751};
  const Lab b{50, 0, -82.7485};
  for (auto _ : state) benchmark::DoNotOptimize(ciede2000(a, b));
}
BENCHMARK(BM_Ciede2000);

void BM_PrecisionDistances(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(precision_distances(RgbF{12.5, 200.25, 77}, Rgb8{10, 210, 80}));
  }
}
BENCHMARK(BM_PrecisionDistances);

void BM_ChannelStddev(benchmark::State& state) {
  const auto img = noise(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(channel_stddev(img, img.bounds()));
}
BENCHMARK(BM_ChannelStddev)->Arg(128)->Arg(256);

void BM_Canny(benchmark::State& state) {
  const auto img = noise(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(canny_edge_density(img, img.bounds()));
}
BENCHMARK(BM_Canny)->Arg(128)->Arg(256);

void BM_HighFreq(benchmark::State& state) {
  const auto img = noise(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(high_freq_ratio(img, img.bounds()));
}
BENCHMARK(BM_HighFreq)->Arg(128)->Arg(256);

void BM_EvaluateSample(benchmark::State& state) {
  std::vector<RegionSpec> regions;
  for (int i = 0; i < 4; ++i) regions.push_back({Quadrant{i}, ExactColor{{40, 80, 120}}});
  const auto img = noise(256);
  const EvalConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_sample(img, regions, cfg));
}
BENCHMARK(BM_EvaluateSample);

void BM_ProjectOntoRange(benchmark::State& state) {
  const Rgb8 low{40, 20, 90};
  const Rgb8 high{160, 120, 220};
  for (auto _ : state) benchmark::DoNotOptimize(project_onto_range(RgbF{100, 70, 150}, low, high));
}
BENCHMARK(BM_ProjectOntoRange);

}  // namespace

BENCHMARK_MAIN();
