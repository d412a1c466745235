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
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "dpts/privacy.h"
#include "dpts/random.h"

namespace dpts {
namespace {

constexpr std::uint64_t kEnvStream = 0x656e76;     // "env"
constexpr std::uint64_t kPolicyStream = 0x706f6c;  // "pol"

// What one run contributes to the experiment reduction.
struct RunOutcome {
  std::vector<double> empirical_at_steps;
  std::vector<double> pseudo_at_steps;
  double final_empirical = 0.0;
  double final_pseudo = 0.0;
  double prepull_pseudo = 0.0;
  double realized_eta = 0.0;
  double seconds = 0.0;
};

RunOutcome ExecuteRun(const BanditInstance& instance, const TsConfig& config,
                      std::uint64_t seed,
                      const std::vector<std::int64_t>& steps) {
  const auto start = std::chrono::steady_clock::now();
  const RegretTrace trace = RunOnce(instance, config, seed);
  RunOutcome out;
  out.empirical_at_steps.reserve(steps.size());
  out.pseudo_at_steps.reserve(steps.size());
  for (std::int64_t t : steps) {
    out.empirical_at_steps.push_back(trace.cum_empirical_regret[t - 1]);
    out.pseudo_at_steps.push_back(trace.cum_pseudo_regret[t - 1]);
  }
  out.final_empirical = trace.final_empirical_regret();
  out.final_pseudo = trace.final_pseudo_regret();
  const std::int64_t prepull_steps =
      config.prepulls * static_cast<std::int64_t>(instance.num_arms());
  out.prepull_pseudo =
      prepull_steps > 0 ? trace.cum_pseudo_regret[prepull_steps - 1] : 0.0;
  if (!trace.sampling_counts_before_pull.empty()) {
    out.realized_eta = GdpRealized(trace.sampling_counts_before_pull,
                                   config.variance_multiplier)
                           .eta();
  }
  out.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return out;
}

}  // namespace

RegretTrace RunPolicy(const BanditInstance& instance, BanditPolicy& policy,
                      std::uint64_t seed) {
  if (policy.num_arms() != instance.num_arms()) {
    throw std::invalid_argument("policy and instance disagree on arm count");
  }
  Rng env_rng(MixSeed(seed ^ kEnvStream));
  Rng policy_rng(MixSeed(seed ^ kPolicyStream));

  const auto horizon = static_cast<std::size_t>(policy.horizon() - policy.steps());
  const double best = instance.best_mean();
  const auto gaps = instance.gaps();

  RegretTrace trace;
  trace.actions.reserve(horizon);
  trace.rewards.reserve(horizon);
  trace.cum_empirical_regret.reserve(horizon);
  trace.cum_pseudo_regret.reserve(horizon);

  double reward_sum = 0.0;
  double pseudo = 0.0;
  std::int64_t t = 0;
  while (!policy.exhausted()) {
    const ArmSelection selection = policy.SelectArm(policy_rng);
    const std::size_t arm = selection.arm;
    if (selection.draw.has_value()) {
      trace.sampling_counts_before_pull.push_back(policy.arm_states()[arm].pulls);
    }
    const double reward = instance.arm(arm).Sample(env_rng);
    policy.Observe(arm, reward);

    ++t;
    reward_sum += reward;
    pseudo += gaps[arm];
    trace.actions.push_back(static_cast<std::uint32_t>(arm));
    trace.rewards.push_back(reward);
    trace.cum_empirical_regret.push_back(best * static_cast<double>(t) -
                                         reward_sum);
    trace.cum_pseudo_regret.push_back(pseudo);
  }
  trace.pull_counts.reserve(policy.num_arms());
  for (const ArmState& arm : policy.arm_states()) {
    trace.pull_counts.push_back(arm.pulls);
  }
  return trace;
}

RegretTrace RunOnce(const BanditInstance& instance, const TsConfig& config,
                    std::uint64_t seed) {
  ModifiedThompsonSampling policy(instance.num_arms(), config);
  return RunPolicy(instance, policy, seed);
}

ResolvedParams ResolveParams(const ParamSpec& spec, std::size_t num_arms,
                             std::int64_t horizon) {
  ResolvedParams resolved;
  const auto n = static_cast<std::int64_t>(num_arms);
  if (spec.prepulls < 0) {
    resolved.note = "b must be >= 0";
    return resolved;
  }
  if (spec.prepulls * n >= horizon) {
    resolved.note = "infeasible horizon: b*N >= T";
    return resolved;
  }
  TsConfig config{.prepulls = spec.prepulls,
                  .variance_multiplier = 1.0,
                  .horizon = horizon};
  if (spec.variance_multiplier.has_value()) {
    if (!(*spec.variance_multiplier >= 1.0)) {
      resolved.note = "c must be >= 1";
      return resolved;
    }
    config.variance_multiplier = *spec.variance_multiplier;
  } else if (spec.eta_target.has_value()) {
    const BcSolution solution =
        SolveBc(GdpBudget(*spec.eta_target), horizon, spec.prepulls, n);
    switch (solution.status) {
      case BcStatus::kOk:
        config.variance_multiplier = solution.variance_multiplier;
        break;
      case BcStatus::kPrepullsExceedBudget:
        config.variance_multiplier = 1.0;
        resolved.note = "prepulls exceed budget: c clamped to 1";
        break;
      case BcStatus::kHorizonInfeasible:
        resolved.note = "infeasible horizon: b*N >= T";
        return resolved;
    }
  }
  resolved.eta =
      GdpTotal(horizon, config.prepulls, config.variance_multiplier).eta();
  resolved.config = config;
  return resolved;
}

std::vector<std::int64_t> DownsampleSteps(std::int64_t horizon,
                                          std::size_t max_points) {
  if (horizon < 1) throw std::invalid_argument("T must be >= 1");
  if (max_points == 0) throw std::invalid_argument("max_points must be > 0");
  std::vector<std::int64_t> steps;
  const auto points = static_cast<std::int64_t>(max_points);
  if (horizon <= points) {
    steps.reserve(static_cast<std::size_t>(horizon));
    for (std::int64_t t = 1; t <= horizon; ++t) steps.push_back(t);
    return steps;
  }
  steps.reserve(max_points);
  for (std::int64_t k = 1; k <= points; ++k) {
    // ceil(k T / P) in integer arithmetic; strictly increasing since T > P.
    steps.push_back((k * horizon + points - 1) / points);
  }
  return steps;
}

MeanStderr SummarizeRuns(const std::vector<double>& values) {
  MeanStderr out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  const auto n = static_cast<double>(values.size());
  out.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.standard_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return out;
}

ExperimentResult RunExperiment(const ExperimentConfig& experiment) {
  if (experiment.runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (experiment.horizon < 1) throw std::invalid_argument("T must be >= 1");

  const std::size_t num_arms = experiment.instance.num_arms();
  const std::vector<std::int64_t> steps =
      DownsampleSteps(experiment.horizon, experiment.max_trace_points);

  struct Job {
    std::size_t config_index;
    ResolvedParams params;
  };
  ExperimentResult result;
  std::vector<Job> jobs;
  for (std::size_t k = 0; k < experiment.params.size(); ++k) {
    const ParamSpec& spec = experiment.params[k];
    ResolvedParams params = ResolveParams(spec, num_arms, experiment.horizon);
    if (!params.config.has_value()) {
      result.skipped.push_back({spec.label, params.note});
      continue;
    }
    jobs.push_back({k, std::move(params)});
  }

  const auto runs = static_cast<std::size_t>(experiment.runs);
  const std::size_t total = jobs.size() * runs;
  std::vector<RunOutcome> outcomes(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t task = next++; task < total; task = next++) {
      const Job& job = jobs[task / runs];
      const std::size_t run = task % runs;
      try {
        outcomes[task] = ExecuteRun(
            experiment.instance, *job.params.config,
            DeriveSeed(experiment.seed, job.config_index, run), steps);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, experiment.workers));
  if (workers == 1 || total <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(std::min(workers, total));
    for (std::size_t w = 0; w < std::min(workers, total); ++w) {
      pool.emplace_back(worker);
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const Job& job = jobs[j];
    const TsConfig& config = *job.params.config;
    const ParamSpec& spec = experiment.params[job.config_index];

    RunSummary summary;
    summary.label = spec.label;
    summary.config_index = job.config_index;
    summary.prepulls = config.prepulls;
    summary.variance_multiplier = config.variance_multiplier;
    summary.eta = job.params.eta;
    summary.eta_target = spec.eta_target;
    summary.note = job.params.note;

    RegretSeries series;
    series.label = spec.label;
    series.prepulls = config.prepulls;
    series.variance_multiplier = config.variance_multiplier;
    series.eta = job.params.eta;
    series.steps = steps;
    series.mean_empirical.assign(steps.size(), 0.0);
    series.mean_pseudo.assign(steps.size(), 0.0);

    for (std::size_t r = 0; r < runs; ++r) {
      RunOutcome& out = outcomes[j * runs + r];
      summary.final_empirical_regret.push_back(out.final_empirical);
      summary.final_pseudo_regret.push_back(out.final_pseudo);
      summary.prepull_pseudo_regret.push_back(out.prepull_pseudo);
      summary.realized_eta.push_back(out.realized_eta);
      summary.wall_seconds += out.seconds;
      for (std::size_t p = 0; p < steps.size(); ++p) {
        series.mean_empirical[p] += out.empirical_at_steps[p];
        series.mean_pseudo[p] += out.pseudo_at_steps[p];
      }
      series.empirical_by_run.push_back(std::move(out.empirical_at_steps));
    }
    for (std::size_t p = 0; p < steps.size(); ++p) {
      series.mean_empirical[p] /= static_cast<double>(runs);
      series.mean_pseudo[p] /= static_cast<double>(runs);
    }
    const MeanStderr empirical = SummarizeRuns(summary.final_empirical_regret);
    const MeanStderr pseudo = SummarizeRuns(summary.final_pseudo_regret);
    summary.mean_final_regret = empirical.mean;
    summary.stderr_final_regret = empirical.standard_error;
    summary.mean_final_pseudo_regret = pseudo.mean;
    summary.stderr_final_pseudo_regret = pseudo.standard_error;

    result.summaries.push_back(std::move(summary));
    result.series.push_back(std::move(series));
  }
  return result;
}

std::optional<double> RegretBoundEnvelope(const BanditInstance& instance,
                                          const TsConfig& config,
                                          double slack) {
  double min_gap = 0.0;
  for (double gap : instance.gaps()) {
    if (gap > 0.0 && (min_gap == 0.0 || gap < min_gap)) min_gap = gap;
  }
  if (min_gap == 0.0) return std::nullopt;
  const auto n = static_cast<double>(instance.num_arms());
  const double prepull_steps = static_cast<double>(config.prepulls) * n;
  const auto horizon = static_cast<double>(config.horizon);
  if (!(horizon > prepull_steps + 4.0 / (min_gap * min_gap))) {
    return std::nullopt;
  }
  return prepull_steps + slack * config.variance_multiplier *
                             std::sqrt(n * (horizon - prepull_steps) * std::log(n));
}

}  // namespace dpts
