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

#include "dpts/env.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace dpts {

RewardModel RewardModel::Bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("bernoulli p must lie in [0, 1], got " +
                                std::to_string(p));
  }
  return RewardModel(Kind::kBernoulli, p);
}

RewardModel RewardModel::TruncatedExponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument(
        "trunc_exp lambda must be positive and finite, got " +
        std::to_string(rate));
  }
  return RewardModel(Kind::kTruncatedExponential, rate);
}

double RewardModel::Mean() const {
  switch (kind_) {
    case Kind::kBernoulli:
      return parameter_;
    case Kind::kTruncatedExponential:
      // 1/λ - e^{-λ}/(1 - e^{-λ}) == 1/λ - 1/(e^λ - 1)
      return 1.0 / parameter_ - 1.0 / std::expm1(parameter_);
  }
  return 0.0;
}

double RewardModel::Transform(double u) const {
  switch (kind_) {
    case Kind::kBernoulli:
      return u < parameter_ ? 1.0 : 0.0;
    case Kind::kTruncatedExponential: {
      const double x = -std::log1p(u * std::expm1(-parameter_)) / parameter_;
      return std::clamp(x, 0.0, 1.0);
    }
  }
  return 0.0;
}

std::string RewardModel::ToString() const {
  switch (kind_) {
    case Kind::kBernoulli:
      return "bernoulli(p=" + std::to_string(parameter_) + ")";
    case Kind::kTruncatedExponential:
      return "trunc_exp(lambda=" + std::to_string(parameter_) + ")";
  }
  return "unknown";
}

BanditInstance::BanditInstance(std::vector<RewardModel> arms)
    : arms_(std::move(arms)) {
  if (arms_.size() < 2) {
    throw std::invalid_argument("a bandit instance needs at least 2 arms");
  }
  means_.reserve(arms_.size());
  for (const auto& arm : arms_) means_.push_back(arm.Mean());
  best_mean_ = *std::max_element(means_.begin(), means_.end());
  gaps_.reserve(means_.size());
  for (double mean : means_) gaps_.push_back(best_mean_ - mean);
}

}  // namespace dpts
