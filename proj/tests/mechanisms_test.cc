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
#include "dpcomm/mechanisms.h"

#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "dpcomm/error.h"
#include "dpcomm/rng.h"

namespace dpcomm::mechanisms {
namespace {

// Sample mean and its standard error from the empirical variance.
struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

class Moments {
 public:
  void Add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / n_;
    m2_ += d * (x - mean_);
  }
  double Variance() const { return m2_ / (n_ - 1); }
  MeanSe Result() const { return {mean_, std::sqrt(Variance() / n_)}; }

 private:
  double n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Per-check |z| bound keeping the family-wise false-alarm rate of m checks
// at 1e-3.
double BonferroniZ(int m) {
  return boost::math::quantile(boost::math::normal(),
                               1.0 - 1e-3 / (2.0 * m));
}

// Upper 1e-3 quantile of the sum of m squared z-scores under no bias.
double ChiSquareBound(int m) {
  return boost::math::quantile(boost::math::chi_squared(m), 1.0 - 1e-3);
}

// Messages from everyone but `agent` for one trial.
std::vector<Bit> Received(const std::vector<Bit>& bits, std::size_t agent,
                          double p, Stream& stream) {
  std::vector<Bit> out;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (j != agent) out.push_back(RrPerturb(bits[j], {p}, stream));
  }
  return out;
}

TEST(RrFlipProbTest, MatchesClosedForm) {
  EXPECT_EQ(RrFlipProb(std::log(3.0)), 0.5);
  EXPECT_EQ(RrFlipProb(0.0), 1.0);
  EXPECT_NEAR(RrFlipProb(1.0), 0.537883, 5e-7);
  EXPECT_NEAR(RrFlipProb(1.0), 2.0 / (M_E + 1.0), 1e-15);
  EXPECT_EQ(RrFlipProb(INFINITY), 0.0);
  EXPECT_THROW(RrFlipProb(-0.1), Error);
  EXPECT_THROW(RrFlipProb(NAN), Error);
}

TEST(RrFlipProbTest, StaysInUnitIntervalForLargeBudgets) {
  for (double eps : {10.0, 100.0, 700.0, 1000.0}) {
    const double p = RrFlipProb(eps);
    EXPECT_GE(p, 0.0);
    EXPECT_LT(p, 1e-4);
  }
}

TEST(RrPerturbTest, NoFlipKeepsTheBit) {
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    EXPECT_EQ(RrPerturb(1, {0.0}, seed), 1);
    EXPECT_EQ(RrPerturb(0, {0.0}, seed), 0);
  }
}

TEST(RrPerturbTest, EmpiricalMeans) {
  struct Case {
    Bit bit;
    double p;
    double expected;
  };
  for (const Case c : {Case{1, 1.0, 0.5}, Case{0, 0.5, 0.25}, Case{1, 0.5, 0.75}}) {
    Moments m;
    for (uint64_t seed = 0; seed < 1000000; ++seed) {
      m.Add(RrPerturb(c.bit, {c.p}, seed));
    }
    const MeanSe r = m.Result();
    EXPECT_LE(std::abs(r.mean - c.expected), 3 * r.se)
        << "bit=" << int(c.bit) << " p=" << c.p << " mean=" << r.mean;
  }
}

TEST(RrPerturbTest, DeterministicPerSeed) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    EXPECT_EQ(RrPerturb(1, {0.7}, seed), RrPerturb(1, {0.7}, seed));
  }
  Stream a(42), b(42);
  for (int i = 0; i < 200; ++i) EXPECT_EQ(RrPerturb(0, {0.5}, a), RrPerturb(0, {0.5}, b));
}

TEST(RrPerturbTest, RejectsInvalidInputs) {
  EXPECT_THROW(RrPerturb(2, {0.5}, uint64_t{1}), Error);
  EXPECT_THROW(RrPerturb(1, {1.5}, uint64_t{1}), Error);
  EXPECT_THROW(RrPerturb(1, {-0.1}, uint64_t{1}), Error);
}

TEST(NaiveGuessTest, AddsOwnBit) {
  const std::vector<Bit> a = {0, 0};
  EXPECT_EQ(NaiveGuess(1, a), 1);
  const std::vector<Bit> b = {1, 1, 1};
  EXPECT_EQ(NaiveGuess(0, b), 3);
  EXPECT_EQ(NaiveGuess(1, {}), 1);
}

TEST(NaiveBiasTest, Examples) {
  const std::vector<Bit> ones = {1, 1, 1};
  EXPECT_DOUBLE_EQ(NaiveBias(ones, 0, 0.5), -0.5);
  const std::vector<Bit> mixed = {1, 0, 1, 1, 0};
  for (std::size_t i = 0; i < mixed.size(); ++i) EXPECT_EQ(NaiveBias(mixed, i, 0.0), 0.0);
  const std::vector<Bit> zeros(6, 0);
  for (std::size_t i = 0; i < zeros.size(); ++i) EXPECT_DOUBLE_EQ(NaiveBias(zeros, i, 1.0), 2.5);
  EXPECT_THROW(NaiveBias(ones, 3, 0.5), Error);
}

TEST(NaiveBiasTest, HeterogeneousFormReducesToHomogeneous) {
  const std::vector<Bit> bits = {1, 0, 1, 1, 0, 0, 1};
  for (double p : {0.0, 0.2, 0.9}) {
    const std::vector<double> ps(bits.size(), p);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      EXPECT_NEAR(NaiveBias(bits, i, ps), NaiveBias(bits, i, p), 1e-15);
    }
  }
}

TEST(NaiveGuessTest, MonteCarloMeanMatchesBias) {
  const std::vector<Bit> bits = {1, 0, 1, 1, 0};
  const int sum = 3;
  for (double p : {0.1, 0.5, 0.9}) {
    for (std::size_t i = 0; i < bits.size(); ++i) {
      Moments m;
      for (uint64_t t = 0; t < 1000000; ++t) {
        Stream s(DeriveSeed(7, i, t));
        m.Add(static_cast<double>(NaiveGuess(bits[i], Received(bits, i, p, s))));
      }
      const MeanSe r = m.Result();
      EXPECT_LE(std::abs(r.mean - (sum + NaiveBias(bits, i, p))), 3 * r.se)
          << "p=" << p << " agent=" << i;
    }
  }
}

TEST(AwareGuessTest, CoincidesWithNaiveWithoutNoise) {
  const std::vector<Bit> received = {1, 0, 1, 1};
  EXPECT_EQ(AwareGuess(1, received, 0.0), NaiveGuess(1, received));
  EXPECT_EQ(AwareGuess(0, received, 0.0), NaiveGuess(0, received));
}

TEST(AwareGuessTest, DegenerateMechanismIsRejected) {
  const std::vector<Bit> received = {1, 0};
  try {
    AwareGuess(0, received, 1.0);
    FAIL() << "expected degenerate-mechanism";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateMechanism);
  }
  const std::vector<double> ps = {0.5, 1.0};
  EXPECT_THROW(AwareGuess(0, received, ps), Error);
}

TEST(AwareGuessTest, HeterogeneousFormReducesToHomogeneous) {
  const std::vector<Bit> received = {1, 0, 1, 1, 0};
  const std::vector<double> ps(received.size(), 0.3);
  EXPECT_NEAR(AwareGuess(1, received, ps), AwareGuess(1, received, 0.3), 1e-14);
}

TEST(AwareGuessTest, UnbiasedOnTheExampleInstance) {
  const std::vector<Bit> bits = {1, 0, 1, 1, 0};
  Moments m;
  for (uint64_t t = 0; t < 1000000; ++t) {
    Stream s(DeriveSeed(3, 0, t));
    m.Add(AwareGuess(bits[0], Received(bits, 0, 0.5, s), 0.5));
  }
  const MeanSe r = m.Result();
  EXPECT_LE(std::abs(r.mean - 3.0), 3 * r.se) << r.mean;
}

TEST(AwareGuessTest, UnbiasedForAllZeroBits) {
  for (double p : {0.1, 0.5, 0.9}) {
    const std::vector<Bit> bits(5, 0);
    Moments m;
    for (uint64_t t = 0; t < 1000000; ++t) {
      Stream s(DeriveSeed(5, 0, t));
      m.Add(AwareGuess(0, Received(bits, 0, p, s), p));
    }
    const MeanSe r = m.Result();
    EXPECT_LE(std::abs(r.mean), 3 * r.se) << "p=" << p << " mean=" << r.mean;
  }
}

// Many simultaneous checks: each z-score is held to a Bonferroni bound and
// their squares to a chi-square bound, which also catches small systematic
// offsets no single check would flag.
TEST(AwareGuessTest, UnbiasedAcrossGroupSizes) {
  std::mt19937_64 gen(2024);
  std::vector<double> z;
  for (std::size_t n = 1; n <= 8; ++n) {
    std::vector<Bit> bits(n);
    for (auto& b : bits) b = static_cast<Bit>(gen() & 1);
    const int sum = std::accumulate(bits.begin(), bits.end(), 0);
    for (double p : {0.1, 0.5, 0.9}) {
      Moments m;
      for (uint64_t t = 0; t < 1000000; ++t) {
        Stream s(DeriveSeed(n, 1, t));
        m.Add(AwareGuess(bits[0], Received(bits, 0, p, s), p));
      }
      const MeanSe r = m.Result();
      if (r.se == 0.0) {
        EXPECT_EQ(r.mean, sum) << "n=" << n;
        continue;
      }
      z.push_back((r.mean - sum) / r.se);
    }
  }
  const int count = static_cast<int>(z.size());
  double chi2 = 0.0;
  for (double v : z) {
    EXPECT_LE(std::abs(v), BonferroniZ(count));
    chi2 += v * v;
  }
  EXPECT_LE(chi2, ChiSquareBound(count));
}

TEST(AwareGuessTest, VarianceGrowsWithFlipProbability) {
  const std::vector<Bit> bits = {1, 0, 1, 1, 0};
  double prev = -1.0;
  for (double p : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9}) {
    Moments m;
    for (uint64_t t = 0; t < 200000; ++t) {
      Stream s(DeriveSeed(9, 0, t));
      m.Add(AwareGuess(bits[0], Received(bits, 0, p, s), p));
    }
    EXPECT_GE(m.Variance(), prev) << "p=" << p;
    prev = m.Variance();
  }
}

TEST(ClipTest, Examples) {
  const std::vector<double> small = {0.3, 0.4};
  EXPECT_EQ(Clip(small, 1.0).values, small);
  const std::vector<double> v = {3.0, 4.0};
  const ClippedVector c = Clip(v, 1.0);
  EXPECT_DOUBLE_EQ(c.values[0], 0.6);
  EXPECT_DOUBLE_EQ(c.values[1], 0.8);
  EXPECT_EQ(c.clip_norm, 1.0);
  EXPECT_EQ(Clip(v, 5.0).values, v);
  EXPECT_THROW(Clip(v, 0.0), Error);
}

TEST(ClipTest, NormNeverExceedsBound) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> normal(0.0, 10.0);
  std::uniform_real_distribution<double> bound(1e-3, 20.0);
  for (int rep = 0; rep < 5000; ++rep) {
    std::vector<double> v(1 + rep % 12);
    for (auto& x : v) x = normal(gen);
    const double c = bound(gen);
    const ClippedVector out = Clip(v, c);
    double norm = 0.0;
    for (double x : out.values) norm += x * x;
    EXPECT_LE(std::sqrt(norm), c + 1e-12);
  }
}

TEST(GaussianPerturbTest, VanishingNoiseReturnsMessage) {
  const std::vector<double> v = {0.1, -0.2, 0.3};
  const ClippedVector msg = Clip(v, 1.0);
  const std::vector<double> out = GaussianPerturb(msg, 1e-15, 4);
  for (std::size_t k = 0; k < v.size(); ++k) EXPECT_NEAR(out[k], v[k], 1e-12);
  EXPECT_THROW(GaussianPerturb(msg, 0.0, 4), Error);
}

TEST(GaussianPerturbTest, EmpiricalMeanAndVariance) {
  const std::vector<double> v = {0.6, -0.8};
  const ClippedVector msg = Clip(v, 1.0);
  const double sigma = 1.7;
  std::vector<Moments> mean(2), var(2);
  for (uint64_t seed = 0; seed < 1000000; ++seed) {
    const std::vector<double> out = GaussianPerturb(msg, sigma, seed);
    for (int k = 0; k < 2; ++k) {
      mean[k].Add(out[k]);
      var[k].Add((out[k] - v[k]) * (out[k] - v[k]));
    }
  }
  for (int k = 0; k < 2; ++k) {
    EXPECT_LE(std::abs(mean[k].Result().mean - v[k]), 3 * mean[k].Result().se);
    EXPECT_LE(std::abs(var[k].Result().mean - sigma * sigma), 3 * var[k].Result().se);
  }
}

TEST(GaussianPerturbTest, DeterministicPerSeed) {
  const std::vector<double> v = {0.1, 0.2};
  const ClippedVector msg = Clip(v, 1.0);
  EXPECT_EQ(GaussianPerturb(msg, 0.5, 77), GaussianPerturb(msg, 0.5, 77));
  EXPECT_NE(GaussianPerturb(msg, 0.5, 77), GaussianPerturb(msg, 0.5, 78));
}

TEST(SubsampleTest, SizeUsesBankersRounding) {
  EXPECT_EQ(SubsampleSize(5, 0.5), 2u);   // 2.5 -> 2
  EXPECT_EQ(SubsampleSize(3, 0.5), 2u);   // 1.5 -> 2
  EXPECT_EQ(SubsampleSize(10, 0.25), 2u); // 2.5 -> 2
  EXPECT_EQ(SubsampleSize(10, 0.35), 4u); // 3.5 -> 4
  EXPECT_EQ(SubsampleSize(3, 0.9), 3u);
}

TEST(SubsampleTest, FullSizeReturnsEverything) {
  const std::vector<int> items = {4, 8, 15};
  EXPECT_EQ(Subsample<int>(items, 0.9, 1), items);
}

TEST(SubsampleTest, EmptyInputGivesEmptyOutput) {
  EXPECT_TRUE(Subsample<int>(std::vector<int>{}, 0.5, 1).empty());
}

TEST(SubsampleTest, RejectsRatesOutsideOpenInterval) {
  const std::vector<int> items = {1, 2, 3};
  EXPECT_THROW(Subsample<int>(items, 0.0, 1), Error);
  EXPECT_THROW(Subsample<int>(items, 1.0, 1), Error);
}

TEST(SubsampleTest, SeedsGiveValidDistinctSubsets) {
  std::vector<int> items(20);
  std::iota(items.begin(), items.end(), 0);
  std::set<std::vector<int>> seen;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const std::vector<int> s = Subsample<int>(items, 0.3, seed);
    ASSERT_EQ(s.size(), 6u);
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
    EXPECT_EQ(std::adjacent_find(s.begin(), s.end()), s.end());
    EXPECT_EQ(s, Subsample<int>(items, 0.3, seed));
    seen.insert(s);
  }
  EXPECT_GT(seen.size(), 40u);
}

TEST(SubsampleTest, InclusionFrequencyMatchesRate) {
  std::vector<int> items(10);
  std::iota(items.begin(), items.end(), 0);
  std::vector<Moments> hits(items.size());
  for (uint64_t seed = 0; seed < 100000; ++seed) {
    const std::vector<int> s = Subsample<int>(items, 0.3, seed);
    std::vector<int> in(items.size(), 0);
    for (int x : s) in[x] = 1;
    for (std::size_t k = 0; k < items.size(); ++k) hits[k].Add(in[k]);
  }
  for (std::size_t k = 0; k < items.size(); ++k) {
    const MeanSe r = hits[k].Result();
    EXPECT_LE(std::abs(r.mean - 0.3), 3 * r.se) << "item " << k;
  }
}

}  // namespace
}  // namespace dpcomm::mechanisms
