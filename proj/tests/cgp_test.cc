// Copyright 2026 The dpcomm Authors
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
#include "dpcomm/cgp.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dpcomm/error.h"

namespace dpcomm::cgp {
namespace {

// Closed form of the binary-sums utility, written out independently.
double Reference(double b, double c, double own, double other) {
  const double s = own + other;
  return -b / 2 * s * s + c * own + b / 2 - c;
}

Instance Constant() {
  return Instance(
      {1.0, 1.0}, {1.0, 1.0}, [](double, double) { return PlayerPair{0.0, 0.0}; },
      {0.0, 0.0}, [](double) { return 0.0; },
      [](double, double) { return 0.0; });
}

Instance WithValues(ValueFn values) {
  return Instance({1.0, 1.0}, {1.0, 1.0}, std::move(values), {-1.0, -1.0},
                  [](double p) { return 1.0 - p; },
                  [](double v, double vm) { return vm - v; });
}

TEST(UtilityTest, BinarySumsExamples) {
  const Instance g = MakeBinarySumsCgp({2.0, 2.0}, {1.0, 1.0});
  EXPECT_EQ(g.Utility(StrategyProfile{{0.0, 0.0}}), (PlayerPair{0.0, 0.0}));
  EXPECT_DOUBLE_EQ(g.Utility(0, 1.0, 1.0), -3.0);
  EXPECT_DOUBLE_EQ(g.Utility(1, 1.0, 1.0), -3.0);

  const Instance h = MakeBinarySumsCgp({3.0, 1.5}, {0.5, 2.0});
  EXPECT_DOUBLE_EQ(h.Utility(0, 0.0, 0.0), 1.5 - 0.5);
  EXPECT_DOUBLE_EQ(h.Utility(1, 0.0, 0.0), 0.75 - 2.0);
  EXPECT_EQ(h.PrivacyLoss(0.0), 1.0);
  EXPECT_EQ(h.PrivacyLoss(1.0), 0.0);
  EXPECT_EQ(h.Values(0.0, 0.0)[0], 0.0);
  EXPECT_GT(h.Values(0.0, 0.0)[0], h.standalone_values()[0]);
}

TEST(UtilityTest, MatchesReferenceOnRandomProfiles) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0), w(0.1, 5.0);
  for (int rep = 0; rep < 500; ++rep) {
    const PlayerPair b{w(gen), w(gen)}, c{w(gen), w(gen)};
    const Instance g = MakeBinarySumsCgp(b, c);
    const double p1 = unit(gen), p2 = unit(gen);
    const PlayerPair u = g.Utility(StrategyProfile{{p1, p2}});
    EXPECT_NEAR(u[0], Reference(b[0], c[0], p1, p2), 1e-12);
    EXPECT_NEAR(u[1], Reference(b[1], c[1], p2, p1), 1e-12);
  }
}

TEST(UtilityTest, ZeroBenefitLeavesOnlyPrivacyCost) {
  const Instance g({2.0, 3.0}, {1.5, 0.5},
                   [](double p1, double p2) { return PlayerPair{p1, p2}; },
                   {0.0, 0.0}, [](double p) { return 1.0 - p * p; },
                   [](double, double) { return 0.0; });
  EXPECT_DOUBLE_EQ(g.Utility(0, 0.3, 0.9), -1.5 * (1.0 - 0.09));
  EXPECT_DOUBLE_EQ(g.Utility(1, 0.3, 0.9), -0.5 * (1.0 - 0.81));
}

TEST(UtilityTest, NonFiniteCallbacksAndBadWeights) {
  const Instance g = WithValues([](double, double) { return PlayerPair{NAN, 0.0}; });
  try {
    g.Utility(0, 0.5, 0.5);
    FAIL() << "expected evaluation error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEvaluation);
  }
  EXPECT_THROW(MakeBinarySumsCgp({0.0, 1.0}, {1.0, 1.0}), Error);
  EXPECT_THROW(MakeBinarySumsCgp({1.0, 1.0}, {1.0, -1.0}), Error);
}

TEST(PotentialGameTest, Examples) {
  const PotentialCheck symmetric =
      IsPotentialGame(MakeBinarySumsCgp({2.0, 2.0}, {1.0, 1.0}), 0.05, 1e-6);
  EXPECT_TRUE(symmetric.holds);
  EXPECT_LT(symmetric.max_deviation, 1e-6);

  const PotentialCheck skew =
      IsPotentialGame(MakeBinarySumsCgp({1.0, 2.0}, {1.0, 1.0}), 0.05, 1e-6);
  EXPECT_FALSE(skew.holds);
  EXPECT_NEAR(skew.max_deviation, 1.0, 1e-6);

  const PotentialCheck flat = IsPotentialGame(Constant(), 0.05, 1e-12);
  EXPECT_TRUE(flat.holds);
  EXPECT_EQ(flat.max_deviation, 0.0);
}

TEST(PotentialGameTest, SymmetricBinarySumsForAnyWeights) {
  for (double b : {0.1, 1.0, 7.5}) {
    for (double c : {0.05, 1.0, 3.0}) {
      EXPECT_TRUE(IsPotentialGame(MakeBinarySumsCgp({b, b}, {c, c}), 0.1, 1e-6).holds)
          << b << " " << c;
    }
  }
}

TEST(PotentialGameTest, RejectsCoarseGrid) {
  EXPECT_THROW(IsPotentialGame(Constant(), 0.3, 1e-6), Error);
  EXPECT_NO_THROW(IsPotentialGame(Constant(), 0.25, 1e-6));
}

TEST(CrossPartialTest, BinarySumsIsMinusB) {
  const Instance g = MakeBinarySumsCgp({2.0, 3.5}, {1.0, 1.0});
  for (double h : {0.02, 0.01}) {
    EXPECT_NEAR(CrossPartial(g, 0, 0.4, 0.3, h), -2.0, 1e-8);
    EXPECT_NEAR(CrossPartial(g, 1, 0.4, 0.3, h), -3.5, 1e-8);
  }
}

// Non-quadratic value so that the truncation error is visible: halving the
// step must cut the error by about four.
TEST(CrossPartialTest, SecondOrderConvergence) {
  const Instance g = WithValues([](double p1, double p2) {
    return PlayerPair{std::exp(p1 * p2), std::exp(p1 * p2)};
  });
  const double p1 = 0.3, p2 = 0.6;
  const double exact = (1.0 + p1 * p2) * std::exp(p1 * p2);
  const double e1 = std::abs(CrossPartial(g, 0, p1, p2, 0.02) - exact);
  const double e2 = std::abs(CrossPartial(g, 0, p1, p2, 0.01) - exact);
  EXPECT_GT(e1, 1e-7);
  EXPECT_NEAR(e1 / e2, 4.0, 0.05);
  const double richardson =
      (4.0 * CrossPartial(g, 0, p1, p2, 0.01) - CrossPartial(g, 0, p1, p2, 0.02)) / 3.0;
  EXPECT_LT(std::abs(richardson - exact), e2 / 10);
}

TEST(ValueDerivativesTest, Examples) {
  EXPECT_TRUE(ValueDerivativesMatch(MakeBinarySumsCgp({1.0, 1.0}, {1.0, 1.0}), 0.05, 1e-6));
  EXPECT_FALSE(ValueDerivativesMatch(
      WithValues([](double p1, double p2) {
        return PlayerPair{-p1 * p1, -2.0 * p2 * p2};
      }),
      0.05, 1e-6));
  EXPECT_TRUE(ValueDerivativesMatch(
      WithValues([](double p1, double p2) {
        return PlayerPair{std::sin(p1), std::sin(p2)};
      }),
      0.05, 1e-6));
}

TEST(BestResponseTest, Examples) {
  const Instance g = MakeBinarySumsCgp({2.0, 2.0}, {1.0, 1.0});
  EXPECT_NEAR(BestResponse(g, 0, 0.0), 0.5, 1e-9);
  EXPECT_NEAR(BestResponse(g, 1, 0.0), 0.5, 1e-9);
  EXPECT_EQ(BestResponse(g, 0, 0.8), 0.0);
  EXPECT_NEAR(BestResponse(g, 0, 0.25), 0.25, 1e-9);
  EXPECT_EQ(BestResponse(MakeBinarySumsCgp({1.5, 1.5}, {1.5, 1.5}), 0, 0.0), 1.0);
  EXPECT_THROW(BestResponse(g, 2, 0.0), Error);
}

TEST(BestResponseTest, MatchesClampedClosedForm) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0), w(0.2, 4.0);
  for (int rep = 0; rep < 200; ++rep) {
    const double b = w(gen), c = w(gen), other = unit(gen);
    const Instance g = MakeBinarySumsCgp({b, b}, {c, c});
    const double expected = std::clamp(c / b - other, 0.0, 1.0);
    EXPECT_NEAR(BestResponse(g, rep % 2, other), expected, 1e-9);
  }
}

TEST(BestResponseTest, InvariantUnderCommonScaling) {
  for (double scale : {0.01, 0.5, 3.0, 250.0}) {
    for (double other : {0.0, 0.1, 0.37, 0.9}) {
      const double base = BestResponse(MakeBinarySumsCgp({2.0, 2.0}, {0.7, 0.7}), 0, other);
      const double scaled = BestResponse(
          MakeBinarySumsCgp({2.0 * scale, 2.0 * scale}, {0.7 * scale, 0.7 * scale}), 0,
          other);
      EXPECT_NEAR(scaled, base, 1e-8);
    }
  }
}

TEST(BestResponseTest, FlatUtilityPicksSmallestLevel) {
  EXPECT_EQ(BestResponse(Constant(), 0, 0.4), 0.0);
}

TEST(FindNashTest, FromOriginLandsOnTheLine) {
  const Instance g = MakeBinarySumsCgp({2.0, 2.0}, {1.0, 1.0});
  const NashResult r = FindNash(g, StrategyProfile{{0.0, 0.0}});
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.profile.p[0] + r.profile.p[1], 0.5, 1e-8);
  EXPECT_LE(r.max_deviation_gain, 1e-6);
  EXPECT_LE(MaxDeviationGain(g, r.profile), 1e-6);
}

TEST(FindNashTest, StartOnTheLineIsAFixedPoint) {
  const Instance g = MakeBinarySumsCgp({2.0, 2.0}, {1.0, 1.0});
  const NashResult r = FindNash(g, StrategyProfile{{0.25, 0.25}});
  ASSERT_TRUE(r.converged);
  EXPECT_EQ(r.sweeps, 1);
  EXPECT_NEAR(r.profile.p[0], 0.25, 1e-9);
  EXPECT_NEAR(r.profile.p[1], 0.25, 1e-9);
}

TEST(FindNashTest, ConstantGameConvergesInOneSweep) {
  const NashResult r = FindNash(Constant(), StrategyProfile{{0.3, 0.8}});
  ASSERT_TRUE(r.converged);
  EXPECT_EQ(r.sweeps, 1);
  EXPECT_EQ(r.profile.p, (PlayerPair{0.3, 0.8}));
  EXPECT_EQ(r.max_deviation_gain, 0.0);
}

// Player 1 chases player 2, player 2 flees: best responses cycle forever.
TEST(FindNashTest, IterationCapReportsNonConvergence) {
  const Instance chase(
      {1.0, 1.0}, {1.0, 1.0},
      [](double p1, double p2) {
        const double d = (p1 - p2) * (p1 - p2);
        return PlayerPair{-d, d};
      },
      {0.0, 0.0}, [](double) { return 0.0; },
      [](double v, double vm) { return vm - v; });
  const NashResult r = FindNash(chase, StrategyProfile{{0.0, 0.0}}, 25);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.sweeps, 25);
  EXPECT_GT(r.max_deviation_gain, 0.5);
  EXPECT_THROW(FindNash(chase, StrategyProfile{{0.0, 0.0}}, 0), Error);
  EXPECT_THROW(FindNash(chase, StrategyProfile{{0.0, 1.5}}), Error);
}

TEST(FindNashTest, RandomStartsSatisfyStationarity) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double tol = 1e-8;
  for (double b : {1.0, 2.0, 5.0}) {
    for (double ratio : {0.1, 0.5, 1.0}) {
      const Instance g = MakeBinarySumsCgp({b, b}, {ratio * b, ratio * b});
      for (int rep = 0; rep < 5; ++rep) {
        const NashResult r = FindNash(g, StrategyProfile{{unit(gen), unit(gen)}}, 1000, tol);
        ASSERT_TRUE(r.converged);
        EXPECT_LE(std::abs(r.profile.p[0] + r.profile.p[1] - ratio), 10 * tol);
        EXPECT_LE(r.max_deviation_gain, 1e-6);
        for (double p : r.profile.p) {
          EXPECT_GE(p, 0.0);
          EXPECT_LE(p, 1.0);
        }
      }
    }
  }
}

TEST(ConditionsTest, BinarySumsReport) {
  const ConditionReport r = CheckConditions(MakeBinarySumsCgp({1.0, 1.0}, {1.0, 1.0}));
  EXPECT_TRUE(r.loss_endpoints);
  EXPECT_TRUE(r.loss_decreasing);
  EXPECT_TRUE(r.value_full_privacy_bound);
  EXPECT_TRUE(r.value_origin_exceeds_standalone);
  // b = V^M - V_n turns negative once p1 + p2 > 1.
  EXPECT_FALSE(r.benefit_nonnegative);
}

TEST(ConditionsTest, ConstantLossFailsEndpoints) {
  const ConditionReport r = CheckConditions(Constant());
  EXPECT_FALSE(r.loss_endpoints);
  EXPECT_FALSE(r.loss_decreasing);
}

}  // namespace
}  // namespace dpcomm::cgp
