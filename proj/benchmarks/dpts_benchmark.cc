// Copyright 2026 The dpts Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "dpts/env.h"
#include "dpts/policy.h"
#include "dpts/privacy.h"
#include "dpts/random.h"
#include "dpts/sim.h"

namespace dpts {
namespace {

BanditInstance MakeInstance(int arms) {
  std::vector<RewardModel> models;
  for (int i = 0; i < arms; ++i) {
    models.push_back(RewardModel::Bernoulli(0.75 - 0.5 * i / arms));
  }
  return BanditInstance(std::move(models));
}

void BM_NormalDraw(benchmark::State& state) {
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(rng.Normal());
}
BENCHMARK(BM_NormalDraw);

void BM_SampleArm(benchmark::State& state) {
  std::vector<ArmState> arms(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < arms.size(); ++i) {
    arms[i] = {0.1 * static_cast<double>(i % 7), static_cast<std::int64_t>(i)};
  }
  Rng rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SampleArm(arms, 4.0, rng).arm);
  }
}
BENCHMARK(BM_SampleArm)->Arg(2)->Arg(5)->Arg(50);

void BM_GdpToEpsilon(benchmark::State& state) {
  const GdpBudget eta(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(GdpToEpsilon(eta, 1e-6));
  }
}
BENCHMARK(BM_GdpToEpsilon)->Arg(1)->Arg(22)->Arg(316);

void BM_SelectionProbabilities(benchmark::State& state) {
  std::vector<ArmState> arms(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < arms.size(); ++i) {
    arms[i] = {0.05 * static_cast<double>(i), static_cast<std::int64_t>(i % 6)};
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(SelectionProbabilities(arms, 1.0));
  }
}
BENCHMARK(BM_SelectionProbabilities)->Arg(3)->Arg(10);

void BM_RunOnce(benchmark::State& state) {
  const BanditInstance instance = MakeInstance(5);
  const TsConfig config{.prepulls = 100, .variance_multiplier = 40.0,
                        .horizon = state.range(0)};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunOnce(instance, config, seed++).final_pseudo_regret());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunOnce)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace dpts

BENCHMARK_MAIN();
