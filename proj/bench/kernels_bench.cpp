// Copyright 2026 The scenesplat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference versus OpenMP for the three data-parallel kernels.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "scenesplat/alignment/features.hpp"
#include "scenesplat/alignment/text_encoder.hpp"
#include "scenesplat/alignment/training.hpp"
#include "scenesplat/eval/generator.hpp"
#include "scenesplat/kernels/batch_gradient.hpp"
#include "scenesplat/kernels/conflict_sweep.hpp"

namespace
{

using namespace scenesplat;

struct GradientFixture
{
  Codebooks books;
  Projector proj;
  std::vector<AlignmentExample> examples;
  std::vector<std::size_t> batch;

  GradientFixture()
  : books(default_codebooks(HashingTextEncoder{}))
  {
    const auto corpus = generate_corpus(balanced_spec(11, 12, 8));
    for (const auto & item : to_training_set(corpus, books)) {
      if (item.kind != AgentKind::Pedestrian) {
        examples.push_back({encoder_input(item.features), item.label});
      }
    }
    proj = initial_projectors(TrainingConfig{}).vehicle;
    batch.resize(examples.size());
    std::iota(batch.begin(), batch.end(), std::size_t{0});
  }
};

const GradientFixture & gradient_fixture()
{
  static const GradientFixture f;
  return f;
}

/// Straight-line tracks scattered over a 200 m square.
std::vector<SweepTrack> random_tracks(std::size_t n, int frames)
{
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(-100.0, 100.0);
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  std::uniform_real_distribution<double> spd(0.0, 12.0);
  std::vector<SweepTrack> out(n);
  for (auto & t : out) {
    t.dims = {4.5, 1.9};
    const double x = pos(rng), y = pos(rng), h = ang(rng), v = spd(rng);
    for (int k = 0; k < frames; ++k) {
      const double d = v * 0.1 * k;
      t.poses.emplace_back(x + d * std::cos(h), y + d * std::sin(h), h);
      t.valid.push_back(1);
    }
  }
  return out;
}

Execution mode(const benchmark::State & state)
{
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_BatchGradient(benchmark::State & state)
{
  const auto & f = gradient_fixture();
  for (auto _ : state) {
    auto g = batch_loss_gradient(
      f.proj, f.examples, f.batch, f.books.vehicle_motion, f.books.location, LossWeights{},
      mode(state));
    benchmark::DoNotOptimize(g.loss_sum);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.batch.size()));
}

void BM_SweepConflicts(benchmark::State & state)
{
  const auto tracks = random_tracks(static_cast<std::size_t>(state.range(1)), 91);
  for (auto _ : state) {
    auto hits = sweep_conflicts(tracks, 0, 91, 0.0, mode(state));
    benchmark::DoNotOptimize(hits.data());
  }
}

void BM_OccupancyGrid(benchmark::State & state)
{
  const auto tracks = random_tracks(static_cast<std::size_t>(state.range(1)), 91);
  const GridSpec grid{{-110.0, -110.0}, 0.5, 440, 440};
  for (auto _ : state) {
    auto occ = occupancy_grid(tracks, grid, 0, 91, mode(state));
    benchmark::DoNotOptimize(occ.data());
  }
}

}  // namespace

// First argument: 0 serial, 1 parallel.
BENCHMARK(BM_BatchGradient)->ArgNames({"parallel"})->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepConflicts)
  ->ArgNames({"parallel", "tracks"})
  ->Args({0, 64})
  ->Args({1, 64})
  ->Args({0, 256})
  ->Args({1, 256})
  ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OccupancyGrid)
  ->ArgNames({"parallel", "tracks"})
  ->Args({0, 64})
  ->Args({1, 64})
  ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
