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

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "dpts/normal.h"
#include "oracles.h"

namespace dpts {
namespace {

using testing::GoldenSectionMinimize;
using testing::HighPrecisionGdpDelta;
using testing::SeriesNormalCdf;

// ---------------------------------------------------------------- normal CDF

TEST(NormalCdfTest, MatchesSeriesOracle) {
  for (double x = -8.0; x <= 8.0; x += 0.0625) {
    EXPECT_NEAR(NormalCdf(x), SeriesNormalCdf(x), 1e-12) << x;
  }
}

TEST(NormalCdfTest, SymmetryAndKnownValues) {
  EXPECT_EQ(NormalCdf(0.0), 0.5);
  for (double x = 0.0; x <= 8.0; x += 0.01) {
    EXPECT_NEAR(NormalCdf(x) + NormalCdf(-x), 1.0, 1e-12);
  }
  EXPECT_NEAR(NormalCdf(1.959964), 0.975000000903557596, 1e-12);
}

TEST(NormalCdfTest, LogCdfTailIsContinuousAndAccurate) {
  for (double x : {-10.0, -20.0, -30.0, -34.9}) {
    EXPECT_NEAR(LogNormalCdf(x), std::log(SeriesNormalCdf(x)), 1e-10) << x;
  }
  // Across the switch to the asymptotic series.
  EXPECT_NEAR(LogNormalCdf(-35.0 - 1e-9), LogNormalCdf(-35.0 + 1e-9), 1e-6);
  // Far tail: log Φ(x) ~ -x²/2 - log(-x) - log(2π)/2.
  const double x = -200.0;
  EXPECT_NEAR(LogNormalCdf(x),
              -0.5 * x * x - std::log(-x) - 0.5 * std::log(2 * std::numbers::pi),
              1e-4);
  EXPECT_NEAR(LogNormalCdf(5.0), std::log1p(-NormalCdf(-5.0)), 1e-16);
}

TEST(NormalQuantileTest, InvertsCdf) {
  for (double p : {1e-300, 1e-12, 0.01, 0.3, 0.5, 0.9, 1.0 - 1e-12}) {
    EXPECT_NEAR(NormalCdf(NormalQuantile(p)) / p, 1.0, 1e-10) << p;
  }
  EXPECT_THROW(NormalQuantile(0.0), std::domain_error);
  EXPECT_THROW(NormalQuantile(1.0), std::domain_error);
}

// ----------------------------------------------------------------------- GDP

TEST(GdpTest, PerStep) {
  EXPECT_NEAR(GdpPerStep(1, 1.0).eta(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(GdpPerStep(1, 1.0).eta(), GdpPerStepOriginal().eta(), 1e-15);
  EXPECT_EQ(GdpPerStep(0, 1.0).eta(), 1.0);
  EXPECT_EQ(GdpPerStep(3, 4.0).eta(), 0.25);
  EXPECT_THROW(GdpPerStep(-1, 1.0), std::invalid_argument);
  EXPECT_THROW(GdpPerStep(0, 0.5), std::invalid_argument);
}

TEST(GdpTest, BudgetMustBePositive) {
  EXPECT_THROW(GdpBudget(0.0), std::invalid_argument);
  EXPECT_THROW(GdpBudget(-1.0), std::invalid_argument);
  EXPECT_THROW(GdpBudget(std::numeric_limits<double>::infinity()),
               std::invalid_argument);
}

TEST(GdpTest, Compose) {
  const std::vector<GdpBudget> one = {GdpBudget(1.0)};
  EXPECT_EQ(GdpCompose(one).eta(), 1.0);
  const std::vector<GdpBudget> pythagorean = {GdpBudget(3.0), GdpBudget(4.0)};
  EXPECT_NEAR(GdpCompose(pythagorean).eta(), 5.0, 1e-15);
  const std::vector<GdpBudget> many(1000, GdpBudget(std::sqrt(0.5)));
  EXPECT_NEAR(GdpCompose(many).eta(), std::sqrt(500.0), 1e-11);
  EXPECT_NEAR(GdpCompose(many).eta(), 22.3607, 1e-4);
  EXPECT_THROW(GdpCompose(std::vector<GdpBudget>{}), std::invalid_argument);
}

TEST(GdpTest, ComposeIsAdditiveInSquares) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> eta(0.01, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<GdpBudget> a;
    std::vector<GdpBudget> b;
    for (int i = 0; i < 1 + trial % 7; ++i) a.emplace_back(eta(gen));
    for (int i = 0; i < 1 + trial % 5; ++i) b.emplace_back(eta(gen));
    std::vector<GdpBudget> joined = a;
    joined.insert(joined.end(), b.begin(), b.end());
    const double lhs = std::pow(GdpCompose(joined).eta(), 2);
    const double rhs =
        std::pow(GdpCompose(a).eta(), 2) + std::pow(GdpCompose(b).eta(), 2);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, lhs));
  }
}

TEST(GdpTest, TotalMatchesComposition) {
  for (std::int64_t t : {1, 10, 1000}) {
    for (std::int64_t b : {0, 3, 99}) {
      for (double c : {1.0, 2.5, 40.0}) {
        const std::vector<GdpBudget> steps(static_cast<std::size_t>(t),
                                           GdpPerStep(b, c));
        EXPECT_NEAR(GdpTotal(t, b, c).eta(), GdpCompose(steps).eta(), 1e-12);
      }
    }
  }
}

TEST(GdpTest, TotalHeadlineValues) {
  EXPECT_NEAR(GdpTotal(100000, 0, 1.0).eta(), 316.22776601683793, 1e-10);
  EXPECT_NEAR(GdpTotal(100000, 0, 1.0).eta(), std::pow(10.0, 2.5), 1e-10);
  EXPECT_NEAR(GdpTotal(100000, 999, 100.0).eta(), 1.0, 1e-14);
  EXPECT_EQ(GdpTotal(1, 0, 1.0).eta(), 1.0);
  EXPECT_NEAR(GdpTotalOriginal(1000).eta(), std::sqrt(500.0), 1e-13);
}

TEST(GdpTest, DeltaGoldenValues) {
  // 40-digit reference values of Φ(η/2 - ε/η) - e^ε Φ(-ε/η - η/2).
  EXPECT_NEAR(GdpToDelta(GdpBudget(1.0), 0.0), 0.38292492254802620728, 1e-14);
  EXPECT_NEAR(GdpToDelta(GdpBudget(2.0), 1.0), 0.50986166005467015308, 1e-14);
}

TEST(GdpTest, DeltaMatchesHighPrecisionOracle) {
  for (double eta : {0.1, 0.5, 1.0, 3.0, 10.0, std::sqrt(500.0)}) {
    for (double frac : {0.0, 0.1, 0.5, 1.0, 2.0}) {
      const double eps = frac * eta * (eta / 2.0 + 4.0);
      const double expected = HighPrecisionGdpDelta(eta, eps);
      const double got = GdpToDelta(GdpBudget(eta), eps);
      EXPECT_NEAR(got, expected, 1e-10 * std::max(expected, 1e-300) + 1e-300)
          << "eta=" << eta << " eps=" << eps;
      if (expected > 1e-280) {
        EXPECT_NEAR(got / expected, 1.0, 1e-9) << "eta=" << eta << " eps=" << eps;
      }
    }
  }
}

TEST(GdpTest, DeltaIsStrictlyDecreasingAndInUnitInterval) {
  for (double eta : {0.3, 1.0, 5.0, std::sqrt(500.0), 31.6}) {
    // Starts where Φ(-ε/η + η/2) <= Φ(4), below which δ rounds to 1.
    const double eps_min = std::max(0.0, eta * eta / 2.0 - 4.0 * eta);
    const double eps_max = eta * eta / 2.0 + 6.0 * eta;
    double previous = 2.0;
    for (int i = 0; i <= 1000; ++i) {
      const double eps = eps_min + (eps_max - eps_min) * i / 1000.0;
      const double delta = GdpToDelta(GdpBudget(eta), eps);
      EXPECT_GE(delta, 0.0);
      EXPECT_LE(delta, 1.0);
      EXPECT_LT(delta, previous) << "eta=" << eta << " eps=" << eps;
      previous = delta;
    }
  }
}

TEST(GdpTest, DeltaTendsToZero) {
  EXPECT_LT(GdpToDelta(GdpBudget(1.0), 50.0), 1e-200);
  EXPECT_EQ(GdpToDelta(GdpBudget(0.1), 1e4), 0.0);
}

TEST(GdpTest, EpsilonRoundTrip) {
  std::mt19937_64 gen(20260101);
  std::uniform_real_distribution<double> log_eta(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double eta = std::exp(log_eta(gen));
    const double eps = unit(gen) * (eta * eta / 2.0 + 6.0 * eta);
    const double delta = GdpToDelta(GdpBudget(eta), eps);
    ASSERT_GT(delta, 0.0);
    EXPECT_NEAR(GdpToEpsilon(GdpBudget(eta), delta), eps, 1e-8)
        << "eta=" << eta << " eps=" << eps;
  }
}

TEST(GdpTest, EpsilonEdgeCases) {
  EXPECT_NEAR(GdpToEpsilon(GdpBudget(1.0), 0.38292492254802620728), 0.0, 1e-8);
  EXPECT_EQ(GdpToEpsilon(GdpBudget(1.0), 0.5), 0.0);
  EXPECT_THROW(GdpToEpsilon(GdpBudget(1.0), 0.0), std::invalid_argument);
  EXPECT_THROW(GdpToEpsilon(GdpBudget(1.0), -1e-3), std::invalid_argument);
}

TEST(GdpTest, EpsilonGoldenAtLargeEta) {
  const GdpBudget eta(std::sqrt(500.0));
  const double eps = GdpToEpsilon(eta, 1e-6);
  // 40-digit bisection of the closed form.
  EXPECT_NEAR(eps, 355.38347764125152340, 1e-8);
  EXPECT_NEAR(GdpToDelta(eta, eps) / 1e-6, 1.0, 1e-8);
}

TEST(GdpTest, RealizedComposition) {
  const std::vector<std::int64_t> counts = {1, 1, 3};
  EXPECT_NEAR(GdpRealized(counts, 1.0).eta(), std::sqrt(0.5 + 0.5 + 0.25),
              1e-15);
  EXPECT_NEAR(GdpRealized(counts, 4.0).eta(), std::sqrt(1.25 / 4.0), 1e-15);
}

// ----------------------------------------------------------------------- RDP

TEST(RdpTest, Total) {
  EXPECT_EQ(RdpTotal(4, 2.0).gamma, 2.0);
  EXPECT_EQ(RdpTotal(1, 2.0).gamma, 0.5);
  EXPECT_EQ(RdpTotal(1000, 1.5).gamma, 375.0);
  EXPECT_THROW(RdpTotal(10, 1.0), std::invalid_argument);
}

TEST(RdpTest, ToDp) {
  EXPECT_NEAR(RdpToDp({2.0, 2.0}, std::exp(-1.0)), 3.0, 1e-15);
  EXPECT_EQ(RdpToDp({2.0, 0.0}, 1.0), 0.0);
  EXPECT_NEAR(RdpToDp(RdpTotal(1000, 1.2), 1e-6), 369.07755278982137052,
              1e-10);
  EXPECT_THROW(RdpToDp({2.0, 0.0}, 0.0), std::invalid_argument);
}

TEST(RdpTest, BestEpsilonMatchesGoldenSection) {
  for (std::int64_t t : {10, 1000, 100000}) {
    for (double delta : {1e-10, 1e-6, 1e-3, 0.5}) {
      const RdpOptimum closed = RdpBestEpsilon(t, delta);
      const auto objective = [&](double alpha) {
        return 0.25 * alpha * static_cast<double>(t) +
               std::log(1.0 / delta) / (alpha - 1.0);
      };
      const auto numeric = GoldenSectionMinimize(objective, 1.0 + 1e-9, 1e3);
      EXPECT_NEAR(closed.epsilon / numeric.value, 1.0, 1e-6);
      EXPECT_NEAR(closed.alpha, numeric.x, 1e-4 * closed.alpha);
      // Minimality against a sampled α grid.
      for (double alpha = 1.01; alpha < 50.0; alpha *= 1.3) {
        EXPECT_LE(closed.epsilon, RdpToDp(RdpTotal(t, alpha), delta) + 1e-9);
      }
    }
  }
}

TEST(RdpTest, BestEpsilonGoldenAndLimit) {
  const RdpOptimum best = RdpBestEpsilon(1000, 1e-6);
  EXPECT_NEAR(best.epsilon, 367.53940002383998091, 1e-9);
  EXPECT_NEAR(best.alpha, 1.2350788000476799618, 1e-12);
  EXPECT_NEAR(RdpBestEpsilon(1000, 1.0 - 1e-12).epsilon, 250.0, 1e-3);
}

// -------------------------------------------------------- advanced composition

TEST(AdvDpTest, PerStep) {
  EXPECT_NEAR(AdvDpPerStep(2, 1.0 / (2.0 * std::exp(1.0))),
              1.0 / (2.0 * std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(AdvDpPerStep(10, 1e-6), 1.3838166404341900824, 1e-13);
  double previous = 0.0;
  for (std::int64_t n = 2; n < 100; ++n) {
    const double eps = AdvDpPerStep(n, 1e-6);
    EXPECT_GT(eps, previous);
    previous = eps;
  }
  EXPECT_THROW(AdvDpPerStep(1, 1e-6), std::invalid_argument);
  EXPECT_THROW(AdvDpPerStep(2, 0.5), std::invalid_argument);
  EXPECT_THROW(AdvDpPerStep(2, 0.0), std::invalid_argument);
}

TEST(AdvDpTest, Total) {
  EXPECT_EQ(AdvDpTotal(0.0, 0.0, 1, 1e-5), 0.0);
  const double eps = 1.0 / (2.0 * std::sqrt(2.0));
  // δ_TS = 1e-5, T δ = 9e-6, slack 1e-6.
  EXPECT_NEAR(AdvDpTotal(eps, 9e-9, 1000, 1e-5), 208.71841736451576212, 1e-8);
  EXPECT_THROW(AdvDpTotal(eps, 1e-8, 1000, 1e-5), InfeasibleBudgetError);
  EXPECT_THROW(AdvDpTotal(eps, 2e-8, 1000, 1e-5), InfeasibleBudgetError);
}

TEST(AdvDpTest, DeltaSplitLeavesHalf) {
  const double delta = AdvDpDeltaSplit(1000, 1e-6);
  EXPECT_NEAR(1e-6 - 1000 * delta, 0.5e-6, 1e-20);
}

// ------------------------------------------------------------------ solve_bc

TEST(SolveBcTest, ArithmeticInstances) {
  const BcSolution ok = SolveBc(GdpBudget(1.0), 100000, 999);
  EXPECT_EQ(ok.status, BcStatus::kOk);
  EXPECT_NEAR(ok.variance_multiplier, 100.0, 1e-12);

  EXPECT_EQ(SolveBc(GdpBudget(1.0), 100000, 100000).status,
            BcStatus::kPrepullsExceedBudget);

  for (std::int64_t t : {1, 17, 1000, 100000}) {
    const BcSolution identity =
        SolveBc(GdpBudget(std::sqrt(static_cast<double>(t))), t, 0);
    EXPECT_EQ(identity.status, BcStatus::kOk);
    EXPECT_NEAR(identity.variance_multiplier, 1.0, 1e-12);
  }
  EXPECT_EQ(SolveBc(GdpBudget(1.0), 1000, 500, 2).status,
            BcStatus::kHorizonInfeasible);
}

TEST(SolveBcTest, RoundTripThroughGdpTotal) {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<std::int64_t> horizon(10, 1000000);
  std::uniform_real_distribution<double> eta(0.1, 50.0);
  int solved = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::int64_t t = horizon(gen);
    std::uniform_int_distribution<std::int64_t> prepulls(0, t / 4);
    const std::int64_t b = prepulls(gen);
    const double target = eta(gen);
    const BcSolution s = SolveBc(GdpBudget(target), t, b, 2);
    if (s.status != BcStatus::kOk) continue;
    ++solved;
    EXPECT_NEAR(GdpTotal(t, b, s.variance_multiplier).eta(), target, 1e-9);
  }
  EXPECT_GT(solved, 20);
}

// -------------------------------------------------------------------- curves

TEST(CurveTest, LogGrid) {
  const auto grid = LogSpacedGrid(1e-8, 1e-2, 50);
  ASSERT_EQ(grid.size(), 50u);
  EXPECT_EQ(grid.front(), 1e-8);
  EXPECT_EQ(grid.back(), 1e-2);
  for (std::size_t i = 1; i < grid.size(); ++i) EXPECT_GT(grid[i], grid[i - 1]);
  EXPECT_EQ(LogSpacedGrid(1e-3, 1e-3, 1).size(), 1u);
}

TEST(CurveTest, ThreeMethodOrdering) {
  for (std::int64_t n : {2, 10}) {
    for (double delta : LogSpacedGrid(1e-8, 1e-2, 50)) {
      AccountantQuery query{.horizon = 1000, .num_arms = n};
      query.gdp_path = GdpPath::kOriginal;
      query.method = AccountingMethod::kGdp;
      const double gdp = *EpsilonForDelta(query, delta);
      query.method = AccountingMethod::kRdp;
      const double rdp = *EpsilonForDelta(query, delta);
      query.method = AccountingMethod::kAdvancedComposition;
      const double adv = *EpsilonForDelta(query, delta);
      EXPECT_LE(gdp, rdp) << "N=" << n << " delta=" << delta;
      EXPECT_LT(rdp, adv) << "N=" << n << " delta=" << delta;
    }
  }
}

TEST(CurveTest, LargerPrepullsGiveSmallerEpsilon) {
  for (double delta : LogSpacedGrid(1e-8, 1e-2, 10)) {
    double previous = std::numeric_limits<double>::infinity();
    for (std::int64_t b : {0, 1, 4, 9, 49}) {
      AccountantQuery query{.horizon = 1000, .prepulls = b};
      const double eps = *EpsilonForDelta(query, delta);
      EXPECT_LT(eps, previous);
      previous = eps;
    }
  }
}

TEST(CurveTest, MethodNames) {
  for (auto m : {AccountingMethod::kGdp, AccountingMethod::kRdp,
                 AccountingMethod::kAdvancedComposition}) {
    EXPECT_EQ(ParseAccountingMethod(ToString(m)), m);
  }
  EXPECT_FALSE(ParseAccountingMethod("zcdp").has_value());
}

}  // namespace
}  // namespace dpts
