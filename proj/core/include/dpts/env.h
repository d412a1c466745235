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

#ifndef DPTS_ENV_H_
#define DPTS_ENV_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dpts/random.h"

namespace dpts {

// True reward distribution of one arm. Supported on [0, 1].
//
// Immutable after construction; invalid parameters are rejected by the
// factories with std::invalid_argument, so Sample() never fails.
class RewardModel {
 public:
  enum class Kind { kBernoulli, kTruncatedExponential };

  static RewardModel Bernoulli(double p);
  // Exponential(rate) conditioned on [0, 1]: density rate·e^{-rate·x} / (1 - e^{-rate}).
  static RewardModel TruncatedExponential(double rate);

  Kind kind() const { return kind_; }
  // p for Bernoulli, rate for the truncated exponential.
  double parameter() const { return parameter_; }

  // Closed-form mean.
  double Mean() const;

  // Consumes exactly one uniform from `rng`.
  double Sample(Rng& rng) const { return Transform(rng.Uniform()); }

  // Deterministic map from u in [0, 1) to a reward. Bernoulli: 1 iff u < p.
  // Truncated exponential: inverse CDF -log(1 - u(1 - e^{-rate})) / rate.
  double Transform(double u) const;

  std::string ToString() const;

 private:
  RewardModel(Kind kind, double parameter) : kind_(kind), parameter_(parameter) {}

  Kind kind_;
  double parameter_;
};

// Ordered arms of one bandit problem. Order is kept exactly as given.
class BanditInstance {
 public:
  // Requires at least two arms.
  explicit BanditInstance(std::vector<RewardModel> arms);

  std::size_t num_arms() const { return arms_.size(); }
  const RewardModel& arm(std::size_t i) const { return arms_.at(i); }
  std::span<const RewardModel> arms() const { return arms_; }

  std::span<const double> means() const { return means_; }
  double best_mean() const { return best_mean_; }
  // Δ_i = μ* - μ_i, all >= 0 and at least one exactly 0.
  std::span<const double> gaps() const { return gaps_; }

 private:
  std::vector<RewardModel> arms_;
  std::vector<double> means_;
  std::vector<double> gaps_;
  double best_mean_ = 0.0;
};

}  // namespace dpts

#endif  // DPTS_ENV_H_
