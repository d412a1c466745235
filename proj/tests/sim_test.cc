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

#include "dpts/sim.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "dpts/privacy.h"

namespace dpts {
namespace {

BanditInstance BernoulliInstance() {
  std::vector<RewardModel> arms;
  for (double p : {0.75, 0.625, 0.5, 0.375, 0.25}) {
    arms.push_back(RewardModel::Bernoulli(p));
  }
  return BanditInstance(std::move(arms));
}

BanditInstance TruncExpInstance() {
  std::vector<RewardModel> arms;
  for (double rate : {0.1, 1.0, 2.0, 5.0, 10.0}) {
    arms.push_back(RewardModel::TruncatedExponential(rate));
  }
  return BanditInstance(std::move(arms));
}

TEST(RunPolicyTest, ModifiedWithDefaultsReducesToStandard) {
  const BanditInstance instance = BernoulliInstance();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    GaussianThompsonSampling standard(instance.num_arms(), 5000);
    ModifiedThompsonSampling modified(instance.num_arms(),
                                      {.prepulls = 0,
                                       .variance_multiplier = 1.0,
                                       .horizon = 5000});
    const RegretTrace a = RunPolicy(instance, standard, seed);
    const RegretTrace b = RunPolicy(instance, modified, seed);
    EXPECT_EQ(a.actions, b.actions);
    EXPECT_EQ(a.rewards, b.rewards);
    EXPECT_EQ(a.cum_empirical_regret, b.cum_empirical_regret);
  }
}

TEST(RunOnceTest, TraceInvariants) {
  const BanditInstance instance = TruncExpInstance();
  const auto gaps = instance.gaps();
  for (std::int64_t b : {0, 7, 50}) {
    const TsConfig config{.prepulls = b,
                          .variance_multiplier = 3.0,
                          .horizon = 4000};
    const RegretTrace trace = RunOnce(instance, config, 11 + b);
    ASSERT_EQ(trace.length(), 4000u);
    EXPECT_EQ(std::accumulate(trace.pull_counts.begin(),
                              trace.pull_counts.end(), std::int64_t{0}),
              4000);
    // Σ_i Δ_i n_i equals the accumulated pseudo-regret.
    double weighted = 0.0;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      weighted += gaps[i] * static_cast<double>(trace.pull_counts[i]);
    }
    EXPECT_NEAR(weighted, trace.final_pseudo_regret(), 1e-9);
    const double reward_sum =
        std::accumulate(trace.rewards.begin(), trace.rewards.end(), 0.0);
    EXPECT_NEAR(trace.final_empirical_regret(),
                instance.best_mean() * 4000.0 - reward_sum, 1e-9);
    const double max_gap = *std::max_element(gaps.begin(), gaps.end());
    for (std::size_t t = 1; t < trace.length(); ++t) {
      const double step = trace.cum_pseudo_regret[t] - trace.cum_pseudo_regret[t - 1];
      EXPECT_GE(step, 0.0);
      EXPECT_LE(step, max_gap + 1e-9);
    }
    EXPECT_EQ(trace.sampling_counts_before_pull.size(),
              static_cast<std::size_t>(4000 - 5 * b));
  }
}

TEST(RunOnceTest, PrepullPseudoRegret) {
  const BanditInstance instance = BernoulliInstance();
  const TsConfig config{.prepulls = 100, .variance_multiplier = 1.0,
                        .horizon = 1000};
  const RegretTrace trace = RunOnce(instance, config, 3);
  EXPECT_NEAR(trace.cum_pseudo_regret[499], 125.0, 1e-12);
  for (std::size_t t = 0; t < 500; ++t) {
    EXPECT_EQ(trace.actions[t], t / 100);
  }
}

TEST(RunOnceTest, IdenticalArmsHaveNoPseudoRegret) {
  const BanditInstance instance({RewardModel::Bernoulli(0.5),
                                 RewardModel::Bernoulli(0.5),
                                 RewardModel::Bernoulli(0.5)});
  const RegretTrace trace = RunOnce(instance, {.horizon = 2000}, 8);
  EXPECT_EQ(trace.final_pseudo_regret(), 0.0);
  // Empirical regret is a centered sum of 2000 coin flips.
  EXPECT_LT(std::abs(trace.final_empirical_regret()), 5.0 * std::sqrt(500.0));
}

TEST(RunOnceTest, Deterministic) {
  const BanditInstance instance = BernoulliInstance();
  const TsConfig config{.prepulls = 5, .variance_multiplier = 10.0,
                        .horizon = 3000};
  const RegretTrace a = RunOnce(instance, config, 42);
  const RegretTrace b = RunOnce(instance, config, 42);
  const RegretTrace c = RunOnce(instance, config, 43);
  EXPECT_EQ(a.actions, b.actions);
  EXPECT_EQ(a.rewards, b.rewards);
  EXPECT_NE(a.rewards, c.rewards);
}

TEST(RunOnceTest, EmpiricalAndPseudoRegretAgreeInExpectation) {
  const BanditInstance instance = BernoulliInstance();
  const TsConfig config{.prepulls = 2, .variance_multiplier = 4.0,
                        .horizon = 2000};
  std::vector<double> difference;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const RegretTrace trace = RunOnce(instance, config, seed);
    difference.push_back(trace.final_empirical_regret() -
                         trace.final_pseudo_regret());
  }
  const MeanStderr stats = SummarizeRuns(difference);
  EXPECT_LT(std::abs(stats.mean), 4.0 * stats.standard_error);
}

TEST(DownsampleStepsTest, ShortAndLongHorizons) {
  EXPECT_EQ(DownsampleSteps(5, 10), (std::vector<std::int64_t>{1, 2, 3, 4, 5}));
  const auto steps = DownsampleSteps(100000, 1000);
  ASSERT_EQ(steps.size(), 1000u);
  EXPECT_EQ(steps.front(), 100);
  EXPECT_EQ(steps.back(), 100000);
  EXPECT_TRUE(std::is_sorted(steps.begin(), steps.end()));
  const auto odd = DownsampleSteps(1001, 1000);
  EXPECT_EQ(odd.back(), 1001);
  EXPECT_EQ(std::adjacent_find(odd.begin(), odd.end()), odd.end());
  EXPECT_THROW(DownsampleSteps(0, 10), std::invalid_argument);
  EXPECT_THROW(DownsampleSteps(10, 0), std::invalid_argument);
}

TEST(SummarizeRunsTest, MeanAndStandardError) {
  const MeanStderr s = SummarizeRuns({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.standard_error, std::sqrt(5.0 / 3.0) / 2.0);
  EXPECT_EQ(SummarizeRuns({7.0}).standard_error, 0.0);
}

TEST(RegretBoundEnvelopeTest, Values) {
  const BanditInstance instance = BernoulliInstance();
  const TsConfig base{.prepulls = 0, .variance_multiplier = 1.0,
                      .horizon = 100000};
  const auto envelope = RegretBoundEnvelope(instance, base);
  ASSERT_TRUE(envelope.has_value());
  EXPECT_NEAR(*envelope, 10.0 * std::sqrt(5.0 * 1e5 * std::log(5.0)), 1e-9);
  EXPECT_NEAR(*envelope, 8970.612889970507, 1e-8);

  TsConfig scaled = base;
  scaled.variance_multiplier = 7.0;
  EXPECT_NEAR(*RegretBoundEnvelope(instance, scaled), 7.0 * *envelope, 1e-7);

  TsConfig prepulled = base;
  prepulled.prepulls = 100;
  EXPECT_NEAR(*RegretBoundEnvelope(instance, prepulled),
              500.0 + 10.0 * std::sqrt(5.0 * 99500.0 * std::log(5.0)), 1e-9);
}

TEST(RegretBoundEnvelopeTest, Inapplicable) {
  const BanditInstance identical({RewardModel::Bernoulli(0.5),
                                  RewardModel::Bernoulli(0.5)});
  EXPECT_FALSE(RegretBoundEnvelope(identical, {.horizon = 1000}).has_value());
  // min gap 0.125 needs T > bN + 256.
  EXPECT_FALSE(
      RegretBoundEnvelope(BernoulliInstance(), {.horizon = 256}).has_value());
  EXPECT_TRUE(
      RegretBoundEnvelope(BernoulliInstance(), {.horizon = 257}).has_value());
}

TEST(ResolveParamsTest, Outcomes) {
  const ResolvedParams direct =
      ResolveParams({.label = "c", .prepulls = 10, .variance_multiplier = 4.0},
                    5, 100000);
  ASSERT_TRUE(direct.config.has_value());
  EXPECT_EQ(direct.config->variance_multiplier, 4.0);
  EXPECT_NEAR(direct.eta, std::sqrt(100000.0 / (4.0 * 11.0)), 1e-9);

  const ResolvedParams targeted =
      ResolveParams({.label = "eta", .prepulls = 100, .eta_target = 5.0}, 5,
                    100000);
  ASSERT_TRUE(targeted.config.has_value());
  EXPECT_NEAR(targeted.config->variance_multiplier, 4000.0 / 101.0, 1e-9);
  EXPECT_NEAR(targeted.eta, 5.0, 1e-9);
  EXPECT_TRUE(targeted.note.empty());

  const ResolvedParams clamped =
      ResolveParams({.label = "clamp", .prepulls = 10000, .eta_target = 5.0},
                    5, 100000);
  ASSERT_TRUE(clamped.config.has_value());
  EXPECT_EQ(clamped.config->variance_multiplier, 1.0);
  EXPECT_FALSE(clamped.note.empty());
  EXPECT_LT(clamped.eta, 5.0);

  const ResolvedParams skipped =
      ResolveParams({.label = "skip", .prepulls = 20000, .eta_target = 5.0},
                    5, 100000);
  EXPECT_FALSE(skipped.config.has_value());
  EXPECT_FALSE(ResolveParams({.label = "bad", .variance_multiplier = 0.5}, 5,
                             1000)
                   .config.has_value());
}

TEST(RunExperimentTest, DeterministicAcrossWorkerCounts) {
  ExperimentConfig experiment{.instance = BernoulliInstance(),
                              .horizon = 3000,
                              .runs = 4,
                              .seed = 17,
                              .params = {{.label = "a", .prepulls = 0},
                                         {.label = "b", .prepulls = 10,
                                          .eta_target = 5.0},
                                         {.label = "skip", .prepulls = 1000}},
                              .workers = 1,
                              .max_trace_points = 50};
  const ExperimentResult serial = RunExperiment(experiment);
  experiment.workers = 3;
  const ExperimentResult parallel = RunExperiment(experiment);
  ASSERT_EQ(serial.summaries.size(), 2u);
  ASSERT_EQ(serial.skipped.size(), 1u);
  EXPECT_EQ(serial.skipped[0].label, "skip");
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(serial.summaries[k].final_empirical_regret,
              parallel.summaries[k].final_empirical_regret);
    EXPECT_EQ(serial.series[k].mean_empirical, parallel.series[k].mean_empirical);
    EXPECT_EQ(serial.series[k].steps.size(), 50u);
  }
  // Run r of configuration k is RunOnce with DeriveSeed(seed, k, r).
  const RegretTrace first = RunOnce(
      experiment.instance, *ResolveParams(experiment.params[1], 5, 3000).config,
      DeriveSeed(17, 1, 2));
  EXPECT_EQ(serial.summaries[1].final_empirical_regret[2],
            first.final_empirical_regret());
}

}  // namespace
}  // namespace dpts
