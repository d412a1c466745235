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

#ifndef DPTS_PRIVACY_H_
#define DPTS_PRIVACY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace dpts {

// η-GDP guarantee. η > 0.
class GdpBudget {
 public:
  explicit GdpBudget(double eta);
  double eta() const { return eta_; }

 private:
  double eta_;
};

// (ε, δ)-DP guarantee.
struct DpPoint {
  double epsilon = 0.0;
  double delta = 0.0;
};

// (α, γ)-RDP guarantee, α > 1.
struct RdpPoint {
  double alpha = 2.0;
  double gamma = 0.0;
};

// Raised when an advanced-composition δ split leaves no slack.
class InfeasibleBudgetError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Absolute tolerance on ε for every numeric inversion in this module.
inline constexpr double kEpsilonTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Gaussian DP.

// Per-step bound of the modified sampler: the noise stddev is √(c/(n+1)) and
// the sensitivity 1/(n+1) with n >= b, so η = 1/√(c(b+1)).
GdpBudget GdpPerStep(std::int64_t prepulls, double variance_multiplier);

// Per-step bound of the standard sampler once every arm has one observation:
// η = √(1/2).
GdpBudget GdpPerStepOriginal();

// Adaptive composition: √(Σ η_t²). Throws on an empty list.
GdpBudget GdpCompose(std::span<const GdpBudget> budgets);

// √(T / (c(b+1))).
GdpBudget GdpTotal(std::int64_t horizon, std::int64_t prepulls,
                   double variance_multiplier);

// √(T / 2).
GdpBudget GdpTotalOriginal(std::int64_t horizon);

// δ(ε) = Φ(-ε/η + η/2) - e^ε Φ(-ε/η - η/2), the tight (ε, δ) curve of an
// η-GDP mechanism. Evaluated in the log domain so that large η and large ε
// keep their digits.
double GdpToDelta(GdpBudget budget, double epsilon);

// log δ(ε); -inf when δ is zero to working precision.
double GdpLogDelta(GdpBudget budget, double epsilon);

// Smallest ε >= 0 with δ(ε) <= delta, by bisection to kEpsilonTolerance.
// Returns 0 when delta >= δ(0). Throws std::invalid_argument for delta <= 0.
double GdpToEpsilon(GdpBudget budget, double delta);

// Instance-specific diagnostic (not a worst-case guarantee): composes
// 1/√(c(n+1)) over the realized pull count n of the played arm, taken just
// before each sampling step.
GdpBudget GdpRealized(std::span<const std::int64_t> counts_before_pull,
                      double variance_multiplier);

// ---------------------------------------------------------------------------
// Rényi DP.

// T steps of the standard sampler: (α, αT/4)-RDP.
RdpPoint RdpTotal(std::int64_t horizon, double alpha);

// ε = γ + log(1/δ)/(α - 1), valid for δ in (0, 1].
double RdpToDp(const RdpPoint& point, double delta);

struct RdpOptimum {
  double epsilon;
  double alpha;
};

// Minimizes αT/4 + log(1/δ)/(α - 1) over α > 1. Stationary point
// α* = 1 + 2√(log(1/δ)/T), ε* = T/4 + √(T log(1/δ)). δ in (0, 1).
RdpOptimum RdpBestEpsilon(std::int64_t horizon, double delta);

// ---------------------------------------------------------------------------
// Per-step DP via ReportNoisyMax plus advanced composition.

// ε of one step of the standard sampler: (1/(2√2)) √(log((N-1)/(2δ))).
// Requires N >= 2 and 0 < δ < (N-1)/2.
double AdvDpPerStep(std::int64_t num_arms, double delta);

// ε_TS = ε √(2T log(1/(δ_TS - Tδ))) + Tε(e^ε - 1).
// Throws InfeasibleBudgetError when δ_TS <= Tδ.
double AdvDpTotal(double epsilon_step, double delta_step, std::int64_t horizon,
                  double delta_total);

// Per-step δ used when only the total δ is given: δ_TS / (2T), which leaves
// δ_TS - Tδ = δ_TS / 2.
double AdvDpDeltaSplit(std::int64_t horizon, double delta_total);

// ---------------------------------------------------------------------------
// (b, c) budget solver.

enum class BcStatus {
  kOk,
  kPrepullsExceedBudget,  // c < 1: b alone already meets the target
  kHorizonInfeasible,     // b * N >= T
};

struct BcSolution {
  BcStatus status = BcStatus::kOk;
  // T / (η²(b+1)); populated even when the status is not kOk.
  double variance_multiplier = 1.0;
};

std::string_view ToString(BcStatus status);

// Solves √(T/(c(b+1))) = η for c. `num_arms` enables the horizon check.
BcSolution SolveBc(GdpBudget target, std::int64_t horizon, std::int64_t prepulls,
                   std::optional<std::int64_t> num_arms = std::nullopt);

// ---------------------------------------------------------------------------
// Curves.

enum class AccountingMethod { kGdp, kRdp, kAdvancedComposition };

enum class GdpPath {
  kOriginal,  // √(T/2)
  kModified,  // √(T/(c(b+1)))
};

std::string_view ToString(AccountingMethod method);
std::optional<AccountingMethod> ParseAccountingMethod(std::string_view name);

struct AccountantQuery {
  std::int64_t horizon = 1;
  std::int64_t num_arms = 2;
  std::int64_t prepulls = 0;
  double variance_multiplier = 1.0;
  AccountingMethod method = AccountingMethod::kGdp;
  GdpPath gdp_path = GdpPath::kModified;
};

// ε achieved at `delta` by the query's method; nullopt when the method has
// no valid guarantee at that δ.
std::optional<double> EpsilonForDelta(const AccountantQuery& query,
                                      double delta);

// `points` values log-uniformly spaced over [lo, hi], endpoints included.
std::vector<double> LogSpacedGrid(double lo, double hi, int points);

}  // namespace dpts

#endif  // DPTS_PRIVACY_H_
