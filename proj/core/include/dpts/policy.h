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

#ifndef DPTS_POLICY_H_
#define DPTS_POLICY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dpts/random.h"

namespace dpts {

// Posterior summary of one arm under the N(0, 1) prior with unit reward
// variance. mu_hat == (sum of observed rewards) / (pulls + 1); the +1 is the
// prior pseudo-observation at 0.
struct ArmState {
  double mu_hat = 0.0;
  std::int64_t pulls = 0;

  // mu_hat <- (mu_hat * (pulls + 1) + reward) / (pulls + 2); pulls <- pulls + 1
  void Update(double reward);
};

// Parameters of the modified sampler. prepulls == 0 and
// variance_multiplier == 1 is the standard algorithm.
struct TsConfig {
  std::int64_t prepulls = 0;         // b: pulls of every arm before sampling
  double variance_multiplier = 1.0;  // c >= 1: sampling variance c / (n + 1)
  std::int64_t horizon = 1;          // T: total steps, pre-pulls included

  // Throws std::invalid_argument unless c >= 1, b >= 0, T >= 1, b * N < T.
  void Validate(std::size_t num_arms) const;
};

// One posterior sample per arm.
struct PosteriorDraw {
  std::vector<double> theta;
};

struct ArmSelection {
  std::size_t arm = 0;
  // Empty for scheduled pre-pulls.
  std::optional<PosteriorDraw> draw;
};

// Index of the largest element; ties go to the lowest index.
std::size_t ArgMax(std::span<const double> values);

// One posterior-sampling step: θ_i ~ N(mu_hat_i, c / (n_i + 1)) drawn in arm
// order (one normal each), then argmax θ.
ArmSelection SampleArm(std::span<const ArmState> arms,
                       double variance_multiplier, Rng& rng);

// A bandit policy driven step by step: SelectArm, then Observe the reward of
// the selected arm. Implementations hold only sufficient statistics.
class BanditPolicy {
 public:
  virtual ~BanditPolicy() = default;

  virtual std::string_view name() const = 0;
  virtual std::size_t num_arms() const = 0;
  virtual std::int64_t horizon() const = 0;
  // Number of Observe calls so far.
  virtual std::int64_t steps() const = 0;
  virtual std::span<const ArmState> arm_states() const = 0;

  virtual ArmSelection SelectArm(Rng& rng) = 0;
  // `arm` must be the arm returned by the preceding SelectArm and `reward`
  // must lie in [0, 1]; anything else throws.
  virtual void Observe(std::size_t arm, double reward) = 0;

  bool exhausted() const { return steps() >= horizon(); }
};

// Thompson Sampling with N(0, 1) priors: every step draws
// θ_i ~ N(mu_hat_i, 1 / (n_i + 1)) and plays argmax θ.
class GaussianThompsonSampling final : public BanditPolicy {
 public:
  GaussianThompsonSampling(std::size_t num_arms, std::int64_t horizon);

  std::string_view name() const override { return "thompson"; }
  std::size_t num_arms() const override { return arms_.size(); }
  std::int64_t horizon() const override { return horizon_; }
  std::int64_t steps() const override { return steps_; }
  std::span<const ArmState> arm_states() const override { return arms_; }

  ArmSelection SelectArm(Rng& rng) override;
  void Observe(std::size_t arm, double reward) override;

 private:
  std::vector<ArmState> arms_;
  std::int64_t horizon_;
  std::int64_t steps_ = 0;
  std::optional<std::size_t> pending_arm_;
};

// Thompson Sampling with b pre-pulls per arm (arm 0 b times, then arm 1, ...)
// followed by sampling with variance c / (n_i + 1), where n_i counts the
// pre-pulls too.
class ModifiedThompsonSampling final : public BanditPolicy {
 public:
  enum class Phase { kPrepull, kSampling };

  ModifiedThompsonSampling(std::size_t num_arms, const TsConfig& config);

  std::string_view name() const override { return "modified_thompson"; }
  std::size_t num_arms() const override { return arms_.size(); }
  std::int64_t horizon() const override { return config_.horizon; }
  std::int64_t steps() const override { return steps_; }
  std::span<const ArmState> arm_states() const override { return arms_; }

  const TsConfig& config() const { return config_; }
  Phase phase() const;
  // Arm the pre-pull schedule plays next. Only meaningful in kPrepull.
  std::size_t scheduled_arm() const;

  ArmSelection SelectArm(Rng& rng) override;
  void Observe(std::size_t arm, double reward) override;

 private:
  std::vector<ArmState> arms_;
  TsConfig config_;
  std::int64_t prepull_steps_;
  std::int64_t steps_ = 0;
  std::optional<std::size_t> pending_arm_;
};

// ReportNoisyMax with heterogeneous Gaussian noise: returns
// argmax_i (values[i] + N(0, sigmas[i]^2)), ties to the lowest index. Draws
// one normal per candidate. Throws std::invalid_argument on empty input,
// length mismatch, or a non-positive sigma.
std::size_t ReportNoisyMax(std::span<const double> values,
                           std::span<const double> sigmas, Rng& rng);

// Half-width, in standard deviations, of each integration window used by
// SelectionProbabilities.
inline constexpr double kQuadratureWindowSigmas = 10.0;

// Exact probability that index i attains the maximum of independent
// N(means[i], stddevs[i]^2) draws:
//   P(i) = ∫ φ_i(x) Π_{j≠i} Φ_j(x) dx
// by adaptive Gauss-Kronrod over means[i] ± 10 stddevs[i].
std::vector<double> SelectionProbabilities(std::span<const double> means,
                                           std::span<const double> stddevs);

// Selection probabilities of the sampling step for arm states with variance
// multiplier c.
std::vector<double> SelectionProbabilities(std::span<const ArmState> arms,
                                           double variance_multiplier);

}  // namespace dpts

#endif  // DPTS_POLICY_H_
