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

#include "dpts/policy.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dpts/normal.h"

namespace dpts {
namespace {

void CheckReward(double reward) {
  if (!(reward >= 0.0 && reward <= 1.0)) {
    throw std::invalid_argument("reward must lie in [0, 1], got " +
                                std::to_string(reward));
  }
}

void CheckPending(const std::optional<std::size_t>& pending, std::size_t arm) {
  if (!pending.has_value()) {
    throw std::logic_error("Observe called without a preceding SelectArm");
  }
  if (*pending != arm) {
    throw std::logic_error("Observe: arm " + std::to_string(arm) +
                           " was not the selected arm " +
                           std::to_string(*pending));
  }
}

}  // namespace

ArmSelection SampleArm(std::span<const ArmState> arms,
                       double variance_multiplier, Rng& rng) {
  PosteriorDraw draw;
  draw.theta.reserve(arms.size());
  for (const ArmState& arm : arms) {
    const double stddev =
        std::sqrt(variance_multiplier / static_cast<double>(arm.pulls + 1));
    draw.theta.push_back(rng.Normal(arm.mu_hat, stddev));
  }
  const std::size_t arm = ArgMax(draw.theta);
  return {arm, std::move(draw)};
}

void ArmState::Update(double reward) {
  const double n = static_cast<double>(pulls);
  mu_hat = (mu_hat * (n + 1.0) + reward) / (n + 2.0);
  ++pulls;
}

void TsConfig::Validate(std::size_t num_arms) const {
  if (num_arms < 2) throw std::invalid_argument("need at least 2 arms");
  if (prepulls < 0) throw std::invalid_argument("b must be >= 0");
  if (!(variance_multiplier >= 1.0) || !std::isfinite(variance_multiplier)) {
    throw std::invalid_argument("c must be a finite value >= 1");
  }
  if (horizon < 1) throw std::invalid_argument("T must be >= 1");
  if (prepulls * static_cast<std::int64_t>(num_arms) >= horizon) {
    throw std::invalid_argument(
        "b * N must be < T (b=" + std::to_string(prepulls) +
        ", N=" + std::to_string(num_arms) + ", T=" + std::to_string(horizon) +
        ")");
  }
}

std::size_t ArgMax(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("ArgMax of empty range");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

GaussianThompsonSampling::GaussianThompsonSampling(std::size_t num_arms,
                                                   std::int64_t horizon)
    : arms_(num_arms), horizon_(horizon) {
  if (num_arms < 2) throw std::invalid_argument("need at least 2 arms");
  if (horizon < 1) throw std::invalid_argument("T must be >= 1");
}

ArmSelection GaussianThompsonSampling::SelectArm(Rng& rng) {
  if (exhausted()) throw std::logic_error("policy horizon exhausted");
  ArmSelection selection = SampleArm(arms_, 1.0, rng);
  pending_arm_ = selection.arm;
  return selection;
}

void GaussianThompsonSampling::Observe(std::size_t arm, double reward) {
  CheckPending(pending_arm_, arm);
  CheckReward(reward);
  arms_[arm].Update(reward);
  ++steps_;
  pending_arm_.reset();
}

ModifiedThompsonSampling::ModifiedThompsonSampling(std::size_t num_arms,
                                                   const TsConfig& config)
    : arms_(num_arms),
      config_(config),
      prepull_steps_(config.prepulls * static_cast<std::int64_t>(num_arms)) {
  config_.Validate(num_arms);
}

ModifiedThompsonSampling::Phase ModifiedThompsonSampling::phase() const {
  return steps_ < prepull_steps_ ? Phase::kPrepull : Phase::kSampling;
}

std::size_t ModifiedThompsonSampling::scheduled_arm() const {
  if (config_.prepulls == 0) return 0;
  return static_cast<std::size_t>(steps_ / config_.prepulls);
}

ArmSelection ModifiedThompsonSampling::SelectArm(Rng& rng) {
  if (exhausted()) throw std::logic_error("policy horizon exhausted");
  if (phase() == Phase::kPrepull) {
    pending_arm_ = scheduled_arm();
    return {*pending_arm_, std::nullopt};
  }
  ArmSelection selection = SampleArm(arms_, config_.variance_multiplier, rng);
  pending_arm_ = selection.arm;
  return selection;
}

void ModifiedThompsonSampling::Observe(std::size_t arm, double reward) {
  CheckPending(pending_arm_, arm);
  CheckReward(reward);
  arms_[arm].Update(reward);
  ++steps_;
  pending_arm_.reset();
}

std::size_t ReportNoisyMax(std::span<const double> values,
                           std::span<const double> sigmas, Rng& rng) {
  if (values.empty()) {
    throw std::invalid_argument("ReportNoisyMax: no candidates");
  }
  if (values.size() != sigmas.size()) {
    throw std::invalid_argument("ReportNoisyMax: values/sigmas length mismatch");
  }
  for (double sigma : sigmas) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
      throw std::invalid_argument("ReportNoisyMax: sigmas must be positive");
    }
  }
  std::vector<double> noisy(values.begin(), values.end());
  for (std::size_t i = 0; i < noisy.size(); ++i) {
    noisy[i] += sigmas[i] * rng.Normal();
  }
  return ArgMax(noisy);
}

std::vector<double> SelectionProbabilities(std::span<const double> means,
                                           std::span<const double> stddevs) {
  if (means.empty() || means.size() != stddevs.size()) {
    throw std::invalid_argument(
        "SelectionProbabilities: need matching, nonempty means and stddevs");
  }
  for (double s : stddevs) {
    if (!(s > 0.0)) {
      throw std::invalid_argument("SelectionProbabilities: stddev must be > 0");
    }
  }
  const std::size_t n = means.size();
  std::vector<double> probabilities(n, 0.0);
  if (n == 1) {
    probabilities[0] = 1.0;
    return probabilities;
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto integrand = [&](double x) {
      double value = NormalPdf((x - means[i]) / stddevs[i]) / stddevs[i];
      for (std::size_t j = 0; j < n && value > 0.0; ++j) {
        if (j != i) value *= NormalCdf((x - means[j]) / stddevs[j]);
      }
      return value;
    };
    const double lo = means[i] - kQuadratureWindowSigmas * stddevs[i];
    const double hi = means[i] + kQuadratureWindowSigmas * stddevs[i];
    probabilities[i] = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, lo, hi, /*max_depth=*/20, /*tol=*/1e-13);
  }
  return probabilities;
}

std::vector<double> SelectionProbabilities(std::span<const ArmState> arms,
                                           double variance_multiplier) {
  if (!(variance_multiplier > 0.0)) {
    throw std::invalid_argument("variance multiplier must be positive");
  }
  std::vector<double> means;
  std::vector<double> stddevs;
  means.reserve(arms.size());
  stddevs.reserve(arms.size());
  for (const ArmState& arm : arms) {
    means.push_back(arm.mu_hat);
    stddevs.push_back(
        std::sqrt(variance_multiplier / static_cast<double>(arm.pulls + 1)));
  }
  return SelectionProbabilities(means, stddevs);
}

}  // namespace dpts
