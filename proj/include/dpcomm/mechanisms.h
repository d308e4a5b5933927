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

#ifndef DPCOMM_MECHANISMS_H_
#define DPCOMM_MECHANISMS_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <span>
#include <vector>

#include "dpcomm/error.h"
#include "dpcomm/rng.h"

namespace dpcomm::mechanisms {

using Bit = uint8_t;

// Randomized response: with probability flip_prob the bit is replaced by a
// fair coin, otherwise sent as is.
struct RrMechanism {
  double flip_prob = 0.0;
};

// A message payload whose l2 norm is at most clip_norm.
struct ClippedVector {
  std::vector<double> values;
  double clip_norm = 1.0;
};

// 2 / (e^epsilon + 1); epsilon = +inf gives 0.
double RrFlipProb(double epsilon);

// Draw with an explicit stream; the seeded overload wraps this.
Bit RrPerturb(Bit bit, const RrMechanism& mech, Stream& stream);
Bit RrPerturb(Bit bit, const RrMechanism& mech, uint64_t rng_seed);

// b_i + sum of the received bits. `received` excludes the agent's own bit.
int64_t NaiveGuess(Bit own_bit, std::span<const Bit> received);

// Expected error of NaiveGuess for agent `agent` when everyone else flips
// with probability p: p (N-1) / 2 - p * sum_{j != i} b_j.
double NaiveBias(std::span<const Bit> bits, std::size_t agent, double p);

// Heterogeneous form: sum_{j != i} p_j (1/2 - b_j).
double NaiveBias(std::span<const Bit> bits, std::size_t agent,
                 std::span<const double> flip_probs);

// De-biased estimate b_i + (sum received - (N-1) p / 2) / (1 - p).
// Throws kDegenerateMechanism when p = 1.
double AwareGuess(Bit own_bit, std::span<const Bit> received, double p);

// Heterogeneous form with per-sender flip probabilities (aligned with
// `received`): b_i + sum_j (x_j - p_j / 2) / (1 - p_j).
double AwareGuess(Bit own_bit, std::span<const Bit> received,
                  std::span<const double> flip_probs);

// Rescales by 1 / max(1, ||v|| / C).
ClippedVector Clip(std::span<const double> values, double clip_norm);

std::vector<double> GaussianPerturb(const ClippedVector& msg, double sigma,
                                    uint64_t rng_seed);

// round-half-even(rate * n).
std::size_t SubsampleSize(std::size_t n, double rate);

// Uniform sample without replacement of SubsampleSize(items.size(), rate)
// elements, in their original relative order.
template <typename T>
std::vector<T> Subsample(std::span<const T> items, double rate,
                         uint64_t rng_seed) {
  Require(rate > 0.0 && rate < 1.0, "sampling rate must lie in (0, 1)");
  std::vector<T> out;
  if (items.empty()) return out;
  const std::size_t k = SubsampleSize(items.size(), rate);
  out.reserve(k);
  Stream stream(DeriveSeed(rng_seed, 0x5ab5));
  std::sample(items.begin(), items.end(), std::back_inserter(out), k, stream);
  return out;
}

}  // namespace dpcomm::mechanisms

#endif  // DPCOMM_MECHANISMS_H_
