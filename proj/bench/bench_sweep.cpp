// Copyright 2026 The magnoent Authors
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

// Serial reference sweep against the OpenMP sweep on an Upsilon x theta grid.

#include <benchmark/benchmark.h>

#include <numbers>

#include "magnoent/sweep.hpp"

namespace {

using namespace magnoent;

sweep::SweepSpec grid(std::size_t n) {
  const auto p = model::working_point();
  sweep::SweepSpec spec;
  spec.axes.push_back({sweep::AxisName::Upsilon, sweep::linspace(0.0, 2.0 * p.kappa_a, n)});
  spec.axes.push_back({sweep::AxisName::Theta, sweep::linspace(0.0, 2.0 * std::numbers::pi, n)});
  return spec;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto base = model::working_point();
  const auto spec = grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sweep::sweep_serial(base, spec));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(sweep::grid_size(spec)));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto base = model::working_point();
  const auto spec = grid(static_cast<std::size_t>(state.range(0)));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(sweep::sweep(base, spec, threads));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(sweep::grid_size(spec)));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(21)->Arg(61)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)
    ->ArgsProduct({{21, 61}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
