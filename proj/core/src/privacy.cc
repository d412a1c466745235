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

#include "dpts/privacy.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dpts/normal.h"

namespace dpts {
namespace {

constexpr double kMaxEpsilonSearch = 1e9;

void CheckHorizon(std::int64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("T must be >= 1");
}

void CheckPrepullsAndMultiplier(std::int64_t prepulls, double c) {
  if (prepulls < 0) throw std::invalid_argument("b must be >= 0");
  if (!(c >= 1.0) || !std::isfinite(c)) {
    throw std::invalid_argument("c must be a finite value >= 1");
  }
}

}  // namespace

GdpBudget::GdpBudget(double eta) : eta_(eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("GDP parameter must be positive and finite");
  }
}

GdpBudget GdpPerStep(std::int64_t prepulls, double variance_multiplier) {
  CheckPrepullsAndMultiplier(prepulls, variance_multiplier);
  return GdpBudget(
      1.0 / std::sqrt(variance_multiplier * static_cast<double>(prepulls + 1)));
}

GdpBudget GdpPerStepOriginal() { return GdpBudget(std::sqrt(0.5)); }

GdpBudget GdpCompose(std::span<const GdpBudget> budgets) {
  if (budgets.empty()) throw std::invalid_argument("nothing to compose");
  double sum_sq = 0.0;
  for (const GdpBudget& b : budgets) sum_sq += b.eta() * b.eta();
  return GdpBudget(std::sqrt(sum_sq));
}

GdpBudget GdpTotal(std::int64_t horizon, std::int64_t prepulls,
                   double variance_multiplier) {
  CheckHorizon(horizon);
  CheckPrepullsAndMultiplier(prepulls, variance_multiplier);
  return GdpBudget(std::sqrt(
      static_cast<double>(horizon) /
      (variance_multiplier * static_cast<double>(prepulls + 1))));
}

GdpBudget GdpTotalOriginal(std::int64_t horizon) {
  CheckHorizon(horizon);
  return GdpBudget(std::sqrt(0.5 * static_cast<double>(horizon)));
}

double GdpLogDelta(GdpBudget budget, double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  const double eta = budget.eta();
  const double log_first = LogNormalCdf(-epsilon / eta + 0.5 * eta);
  const double log_second = epsilon + LogNormalCdf(-epsilon / eta - 0.5 * eta);
  // δ = e^{log_first} (1 - e^{log_second - log_first})
  const double gap = log_second - log_first;
  if (!(gap < 0.0)) return -std::numeric_limits<double>::infinity();
  return log_first + std::log(-std::expm1(gap));
}

double GdpToDelta(GdpBudget budget, double epsilon) {
  return std::clamp(std::exp(GdpLogDelta(budget, epsilon)), 0.0, 1.0);
}

double GdpToEpsilon(GdpBudget budget, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  const double log_target = std::log(delta);
  if (GdpLogDelta(budget, 0.0) <= log_target) return 0.0;

  double lo = 0.0;
  double hi = 1.0;
  while (GdpLogDelta(budget, hi) > log_target) {
    lo = hi;
    hi *= 2.0;
    if (hi > kMaxEpsilonSearch) {
      throw std::domain_error("GdpToEpsilon: epsilon search diverged");
    }
  }
  while (hi - lo > kEpsilonTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (GdpLogDelta(budget, mid) > log_target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

GdpBudget GdpRealized(std::span<const std::int64_t> counts_before_pull,
                      double variance_multiplier) {
  if (counts_before_pull.empty()) {
    throw std::invalid_argument("no sampling steps to compose");
  }
  if (!(variance_multiplier >= 1.0)) {
    throw std::invalid_argument("c must be >= 1");
  }
  double sum_sq = 0.0;
  for (std::int64_t n : counts_before_pull) {
    sum_sq += 1.0 / (variance_multiplier * static_cast<double>(n + 1));
  }
  return GdpBudget(std::sqrt(sum_sq));
}

RdpPoint RdpTotal(std::int64_t horizon, double alpha) {
  CheckHorizon(horizon);
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must be > 1");
  return {alpha, 0.25 * alpha * static_cast<double>(horizon)};
}

double RdpToDp(const RdpPoint& point, double delta) {
  if (!(point.alpha > 1.0)) throw std::invalid_argument("alpha must be > 1");
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1]");
  }
  return point.gamma + std::log(1.0 / delta) / (point.alpha - 1.0);
}

RdpOptimum RdpBestEpsilon(std::int64_t horizon, double delta) {
  CheckHorizon(horizon);
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  const double t = static_cast<double>(horizon);
  const double log_inv_delta = -std::log(delta);
  const double alpha = 1.0 + 2.0 * std::sqrt(log_inv_delta / t);
  return {0.25 * t + std::sqrt(t * log_inv_delta), alpha};
}

double AdvDpPerStep(std::int64_t num_arms, double delta) {
  if (num_arms < 2) throw std::invalid_argument("need at least 2 arms");
  const double half_rest = 0.5 * static_cast<double>(num_arms - 1);
  if (!(delta > 0.0 && delta < half_rest)) {
    throw std::invalid_argument("delta must lie in (0, (N-1)/2)");
  }
  return std::sqrt(std::log(half_rest / delta)) / (2.0 * std::numbers::sqrt2);
}

double AdvDpTotal(double epsilon_step, double delta_step, std::int64_t horizon,
                  double delta_total) {
  CheckHorizon(horizon);
  if (!(epsilon_step >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  if (!(delta_step >= 0.0)) throw std::invalid_argument("delta must be >= 0");
  if (!(delta_total <= 1.0)) throw std::invalid_argument("delta_TS must be <= 1");
  const double t = static_cast<double>(horizon);
  const double slack = delta_total - t * delta_step;
  if (!(slack > 0.0)) {
    throw InfeasibleBudgetError(
        "advanced composition needs delta_TS > T * delta (delta_TS=" +
        std::to_string(delta_total) + ", T*delta=" +
        std::to_string(t * delta_step) + ")");
  }
  return epsilon_step * std::sqrt(2.0 * t * std::log(1.0 / slack)) +
         t * epsilon_step * std::expm1(epsilon_step);
}

double AdvDpDeltaSplit(std::int64_t horizon, double delta_total) {
  CheckHorizon(horizon);
  return delta_total / (2.0 * static_cast<double>(horizon));
}

std::string_view ToString(BcStatus status) {
  switch (status) {
    case BcStatus::kOk:
      return "ok";
    case BcStatus::kPrepullsExceedBudget:
      return "prepulls_exceed_budget";
    case BcStatus::kHorizonInfeasible:
      return "horizon_infeasible";
  }
  return "unknown";
}

BcSolution SolveBc(GdpBudget target, std::int64_t horizon, std::int64_t prepulls,
                   std::optional<std::int64_t> num_arms) {
  CheckHorizon(horizon);
  if (prepulls < 0) throw std::invalid_argument("b must be >= 0");
  BcSolution solution;
  solution.variance_multiplier =
      static_cast<double>(horizon) /
      (target.eta() * target.eta() * static_cast<double>(prepulls + 1));
  // Targets such as η = √T land a rounding error below c = 1.
  if (solution.variance_multiplier < 1.0 &&
      solution.variance_multiplier > 1.0 - 1e-12) {
    solution.variance_multiplier = 1.0;
  }
  if (num_arms.has_value() && prepulls * *num_arms >= horizon) {
    solution.status = BcStatus::kHorizonInfeasible;
  } else if (solution.variance_multiplier < 1.0) {
    solution.status = BcStatus::kPrepullsExceedBudget;
  }
  return solution;
}

std::string_view ToString(AccountingMethod method) {
  switch (method) {
    case AccountingMethod::kGdp:
      return "gdp";
    case AccountingMethod::kRdp:
      return "rdp";
    case AccountingMethod::kAdvancedComposition:
      return "advdp";
  }
  return "unknown";
}

std::optional<AccountingMethod> ParseAccountingMethod(std::string_view name) {
  if (name == "gdp") return AccountingMethod::kGdp;
  if (name == "rdp") return AccountingMethod::kRdp;
  if (name == "advdp") return AccountingMethod::kAdvancedComposition;
  return std::nullopt;
}

std::optional<double> EpsilonForDelta(const AccountantQuery& query,
                                      double delta) {
  if (!(delta > 0.0 && delta < 1.0)) return std::nullopt;
  switch (query.method) {
    case AccountingMethod::kGdp: {
      const GdpBudget eta =
          query.gdp_path == GdpPath::kOriginal
              ? GdpTotalOriginal(query.horizon)
              : GdpTotal(query.horizon, query.prepulls,
                         query.variance_multiplier);
      return GdpToEpsilon(eta, delta);
    }
    case AccountingMethod::kRdp:
      return RdpBestEpsilon(query.horizon, delta).epsilon;
    case AccountingMethod::kAdvancedComposition: {
      const double delta_step = AdvDpDeltaSplit(query.horizon, delta);
      if (!(delta_step < 0.5 * static_cast<double>(query.num_arms - 1))) {
        return std::nullopt;
      }
      try {
        const double eps_step = AdvDpPerStep(query.num_arms, delta_step);
        return AdvDpTotal(eps_step, delta_step, query.horizon, delta);
      } catch (const InfeasibleBudgetError&) {
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

std::vector<double> LogSpacedGrid(double lo, double hi, int points) {
  if (points < 1) throw std::invalid_argument("grid needs at least one point");
  if (!(lo > 0.0 && hi >= lo)) {
    throw std::invalid_argument("grid bounds must satisfy 0 < lo <= hi");
  }
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  if (points == 1) {
    grid.push_back(lo);
    return grid;
  }
  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) {
    grid.push_back(i == points - 1 ? hi
                                   : std::exp(log_lo + step * static_cast<double>(i)));
  }
  grid.front() = lo;
  return grid;
}

}  // namespace dpts
