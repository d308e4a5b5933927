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

#include <cfenv>
#include <random>

namespace dpcomm::mechanisms {
namespace {

void CheckBit(Bit b) { Require(b <= 1, "bits must be 0 or 1"); }

void CheckFlipProb(double p) {
  Require(p >= 0.0 && p <= 1.0, "flip probability must lie in [0, 1]");
}

}  // namespace

double RrFlipProb(double epsilon) {
  Require(epsilon >= 0.0, "epsilon must be nonnegative");
  if (std::isinf(epsilon)) return 0.0;
  return 2.0 / (std::exp(epsilon) + 1.0);
}

Bit RrPerturb(Bit bit, const RrMechanism& mech, Stream& stream) {
  const bool replace = stream.Uniform() < mech.flip_prob;
  const bool coin = stream.Coin();
  return replace ? static_cast<Bit>(coin) : bit;
}

Bit RrPerturb(Bit bit, const RrMechanism& mech, uint64_t rng_seed) {
  CheckBit(bit);
  CheckFlipProb(mech.flip_prob);
  Stream stream(DeriveSeed(rng_seed, 0x22));
  return RrPerturb(bit, mech, stream);
}

int64_t NaiveGuess(Bit own_bit, std::span<const Bit> received) {
  CheckBit(own_bit);
  int64_t sum = own_bit;
  for (Bit b : received) {
    CheckBit(b);
    sum += b;
  }
  return sum;
}

double NaiveBias(std::span<const Bit> bits, std::size_t agent, double p) {
  CheckFlipProb(p);
  const std::vector<double> probs(bits.size(), p);
  return NaiveBias(bits, agent, probs);
}

double NaiveBias(std::span<const Bit> bits, std::size_t agent,
                 std::span<const double> flip_probs) {
  Require(agent < bits.size(), "agent index out of range");
  Require(flip_probs.size() == bits.size(),
          "one flip probability per agent is required");
  double bias = 0.0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    CheckBit(bits[j]);
    CheckFlipProb(flip_probs[j]);
    if (j == agent) continue;
    bias += flip_probs[j] * (0.5 - bits[j]);
  }
  return bias;
}

double AwareGuess(Bit own_bit, std::span<const Bit> received, double p) {
  CheckFlipProb(p);
  if (p >= 1.0) {
    Fail(ErrorCode::kDegenerateMechanism,
         "aware estimator is undefined at flip probability 1");
  }
  CheckBit(own_bit);
  double sum = 0.0;
  for (Bit b : received) {
    CheckBit(b);
    sum += b;
  }
  const double others = static_cast<double>(received.size());
  return own_bit + (sum - others * p / 2.0) / (1.0 - p);
}

double AwareGuess(Bit own_bit, std::span<const Bit> received,
                  std::span<const double> flip_probs) {
  Require(flip_probs.size() == received.size(),
          "one flip probability per received message is required");
  CheckBit(own_bit);
  double estimate = own_bit;
  for (std::size_t j = 0; j < received.size(); ++j) {
    CheckBit(received[j]);
    CheckFlipProb(flip_probs[j]);
    if (flip_probs[j] >= 1.0) {
      Fail(ErrorCode::kDegenerateMechanism,
           "aware estimator is undefined at flip probability 1");
    }
    estimate += (received[j] - flip_probs[j] / 2.0) / (1.0 - flip_probs[j]);
  }
  return estimate;
}

ClippedVector Clip(std::span<const double> values, double clip_norm) {
  Require(clip_norm > 0.0, "clip norm must be positive");
  double norm_sq = 0.0;
  for (double v : values) norm_sq += v * v;
  const double scale = std::max(1.0, std::sqrt(norm_sq) / clip_norm);
  ClippedVector out{{values.begin(), values.end()}, clip_norm};
  if (scale > 1.0) {
    for (double& v : out.values) v /= scale;
  }
  return out;
}

std::vector<double> GaussianPerturb(const ClippedVector& msg, double sigma,
                                    uint64_t rng_seed) {
  Require(sigma > 0.0, "sigma must be positive");
  Stream stream(DeriveSeed(rng_seed, 0x9a));
  std::normal_distribution<double> normal(0.0, sigma);
  std::vector<double> out = msg.values;
  for (double& v : out) v += normal(stream);
  return out;
}

std::size_t SubsampleSize(std::size_t n, double rate) {
  const int old_mode = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const double k = std::nearbyint(rate * static_cast<double>(n));
  std::fesetround(old_mode);
  return std::min(n, static_cast<std::size_t>(std::max(0.0, k)));
}

}  // namespace dpcomm::mechanisms
