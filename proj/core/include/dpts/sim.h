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

#ifndef DPTS_SIM_H_
#define DPTS_SIM_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpts/env.h"
#include "dpts/policy.h"

namespace dpts {

// Per-step record of one run. All vectors indexed by step t-1 for t = 1..T.
struct RegretTrace {
  std::vector<std::uint32_t> actions;
  std::vector<double> rewards;
  // μ* t - Σ_{τ<=t} r_τ
  std::vector<double> cum_empirical_regret;
  // Σ_{τ<=t} Δ_{a_τ}
  std::vector<double> cum_pseudo_regret;
  // n_{i,T}
  std::vector<std::int64_t> pull_counts;
  // Pull count of the played arm just before each posterior-sampling step.
  std::vector<std::int64_t> sampling_counts_before_pull;

  std::size_t length() const { return actions.size(); }
  double final_empirical_regret() const {
    return cum_empirical_regret.empty() ? 0.0 : cum_empirical_regret.back();
  }
  double final_pseudo_regret() const {
    return cum_pseudo_regret.empty() ? 0.0 : cum_pseudo_regret.back();
  }
};

// Drives `policy` to its horizon against `instance`. The environment and the
// policy draw from two private streams derived from `seed`, so two policies
// that consume normals identically see identical rewards.
RegretTrace RunPolicy(const BanditInstance& instance, BanditPolicy& policy,
                      std::uint64_t seed);

// Modified Thompson Sampling end to end.
RegretTrace RunOnce(const BanditInstance& instance, const TsConfig& config,
                    std::uint64_t seed);

// One (b, c) point of an experiment grid. Exactly one of variance_multiplier
// and eta_target is normally set; with neither, c = 1.
struct ParamSpec {
  std::string label;
  std::int64_t prepulls = 0;
  std::optional<double> variance_multiplier;
  std::optional<double> eta_target;
};

struct ExperimentConfig {
  BanditInstance instance;
  std::int64_t horizon = 100000;
  int runs = 10;
  std::uint64_t seed = 0;
  std::vector<ParamSpec> params;
  int workers = 1;
  std::size_t max_trace_points = 1000;
};

// A ParamSpec turned into a runnable configuration, or the reason it cannot run.
struct ResolvedParams {
  std::optional<TsConfig> config;
  double eta = 0.0;  // GDP actually delivered
  std::string note;
};

// eta targets go through SolveBc. When pre-pulls alone over-deliver the
// budget (c < 1) the configuration runs with c = 1 and a note. b * N >= T or
// an explicit c < 1 leaves `config` empty.
ResolvedParams ResolveParams(const ParamSpec& spec, std::size_t num_arms,
                             std::int64_t horizon);

struct RunSummary {
  std::string label;
  std::size_t config_index = 0;
  std::int64_t prepulls = 0;
  double variance_multiplier = 1.0;
  double eta = 0.0;
  std::optional<double> eta_target;
  std::string note;

  // Indexed by run.
  std::vector<double> final_empirical_regret;
  std::vector<double> final_pseudo_regret;
  std::vector<double> prepull_pseudo_regret;
  std::vector<double> realized_eta;

  double mean_final_regret = 0.0;
  double stderr_final_regret = 0.0;
  double mean_final_pseudo_regret = 0.0;
  double stderr_final_pseudo_regret = 0.0;
  double wall_seconds = 0.0;
};

// Downsampled cumulative regret of one configuration.
struct RegretSeries {
  std::string label;
  std::int64_t prepulls = 0;
  double variance_multiplier = 1.0;
  double eta = 0.0;
  std::vector<std::int64_t> steps;                       // t values, 1-based
  std::vector<std::vector<double>> empirical_by_run;     // [run][point]
  std::vector<double> mean_empirical;
  std::vector<double> mean_pseudo;
};

struct SkippedConfig {
  std::string label;
  std::string reason;
};

struct ExperimentResult {
  std::vector<RunSummary> summaries;
  std::vector<RegretSeries> series;
  std::vector<SkippedConfig> skipped;
};

// Runs every resolvable configuration `runs` times. Run r of configuration k
// uses DeriveSeed(seed, k, r); work is spread over `workers` threads and the
// reduction happens in run order, so results do not depend on scheduling.
ExperimentResult RunExperiment(const ExperimentConfig& experiment);

// Steps t in [1, T] kept when a length-T series is thinned to at most
// `max_points` points; T itself is always kept.
std::vector<std::int64_t> DownsampleSteps(std::int64_t horizon,
                                          std::size_t max_points);

// bN + K c √(N (T - bN) log N). nullopt when T <= bN + 4 / min_{Δ>0} Δ² or
// every gap is zero.
std::optional<double> RegretBoundEnvelope(const BanditInstance& instance,
                                          const TsConfig& config,
                                          double slack = 10.0);

// Mean and standard error (sample stddev / √n) of `values`.
struct MeanStderr {
  double mean = 0.0;
  double standard_error = 0.0;
};
MeanStderr SummarizeRuns(const std::vector<double>& values);

}  // namespace dpts

#endif  // DPTS_SIM_H_
