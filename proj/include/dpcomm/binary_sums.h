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

// Single-round binary sums: every agent holds a bit, shares it through
// randomized response and guesses the total.

#ifndef DPCOMM_BINARY_SUMS_H_
#define DPCOMM_BINARY_SUMS_H_

#include <cstdint>
#include <vector>

#include "dpcomm/mechanisms.h"

namespace dpcomm::binary_sums {

enum class ReceiverMode { kNaive, kAware };

struct Instance {
  std::vector<mechanisms::Bit> bits;
  // Per-agent budgets; +inf means the bit is sent in the clear.
  std::vector<double> epsilons;
  ReceiverMode mode = ReceiverMode::kAware;
};

struct Outcome {
  std::vector<double> guesses;    // E[g_i] (exact or Monte-Carlo mean)
  std::vector<double> utilities;  // -|sum b - E[g_i]|
  double team_reward = 0.0;
  std::vector<double> std_errors;  // zero for analytic outcomes
};

void Validate(const Instance& instance);

std::vector<double> FlipProbs(const Instance& instance);

// Monte-Carlo estimate over `trials` independent rounds. Messages of agent j
// in trial t come from the stream DeriveSeed(rng_seed, j, t), so the result
// is independent of `jobs`.
Outcome RunGame(const Instance& instance, uint64_t trials, uint64_t rng_seed,
                unsigned jobs = 1);

// Closed form: aware receivers are unbiased, naive ones are off by err_i.
Outcome AnalyticOutcome(const Instance& instance);

}  // namespace dpcomm::binary_sums

#endif  // DPCOMM_BINARY_SUMS_H_
