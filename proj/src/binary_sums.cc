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
#include "dpcomm/binary_sums.h"

#include <cmath>
#include <numeric>

#include "dpcomm/error.h"
#include "dpcomm/parallel.h"
#include "dpcomm/rng.h"

namespace dpcomm::binary_sums {
namespace {

using mechanisms::Bit;

struct Moments {
  std::vector<CompensatedSum> sum;
  std::vector<CompensatedSum> sum_sq;
};

void RequireAwareDefined(const Instance& instance,
                         const std::vector<double>& probs) {
  if (instance.mode != ReceiverMode::kAware) return;
  for (double p : probs) {
    if (p >= 1.0) {
      Fail(ErrorCode::kDegenerateMechanism,
           "aware receivers need every flip probability below 1");
    }
  }
}

Outcome Finish(const Instance& instance, std::vector<double> guesses,
               std::vector<double> std_errors) {
  const double total = std::accumulate(instance.bits.begin(),
                                       instance.bits.end(), 0.0);
  Outcome out;
  out.guesses = std::move(guesses);
  out.std_errors = std::move(std_errors);
  out.utilities.resize(out.guesses.size());
  CompensatedSum team;
  for (std::size_t i = 0; i < out.guesses.size(); ++i) {
    out.utilities[i] = 0.0 - std::abs(total - out.guesses[i]);
    team.Add(out.utilities[i]);
  }
  out.team_reward = team.Value();
  return out;
}

}  // namespace

void Validate(const Instance& instance) {
  Require(!instance.bits.empty(), "at least one agent is required");
  Require(instance.epsilons.size() == instance.bits.size(),
          "one epsilon per agent is required");
  for (Bit b : instance.bits) Require(b <= 1, "bits must be 0 or 1");
  for (double e : instance.epsilons) {
    Require(e > 0.0, "per-agent epsilon must be positive");
  }
}

std::vector<double> FlipProbs(const Instance& instance) {
  std::vector<double> probs;
  probs.reserve(instance.epsilons.size());
  for (double e : instance.epsilons) probs.push_back(mechanisms::RrFlipProb(e));
  return probs;
}

Outcome RunGame(const Instance& instance, uint64_t trials, uint64_t rng_seed,
                unsigned jobs) {
  Validate(instance);
  Require(trials >= 1, "trials must be at least 1");
  const std::vector<double> probs = FlipProbs(instance);
  RequireAwareDefined(instance, probs);

  const std::size_t n = instance.bits.size();
  // Per-agent affine decoders: estimate_i = own_i + sum_{j != i} (x_j - a_j) * s_j.
  std::vector<double> offset(n, 0.0), scale(n, 1.0);
  if (instance.mode == ReceiverMode::kAware) {
    for (std::size_t j = 0; j < n; ++j) {
      offset[j] = probs[j] / 2.0;
      scale[j] = 1.0 / (1.0 - probs[j]);
    }
  }
  std::vector<mechanisms::RrMechanism> mechs(n);
  for (std::size_t j = 0; j < n; ++j) mechs[j].flip_prob = probs[j];

  auto block = [&](uint64_t begin, uint64_t end) {
    Moments m{std::vector<CompensatedSum>(n), std::vector<CompensatedSum>(n)};
    std::vector<double> decoded(n);
    for (uint64_t t = begin; t < end; ++t) {
      double all = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        Stream stream(DeriveSeed(rng_seed, j, t));
        const Bit x = mechanisms::RrPerturb(instance.bits[j], mechs[j], stream);
        decoded[j] = (x - offset[j]) * scale[j];
        all += decoded[j];
      }
      for (std::size_t i = 0; i < n; ++i) {
        const double g = instance.bits[i] + (all - decoded[i]);
        m.sum[i].Add(g);
        m.sum_sq[i].Add(g * g);
      }
    }
    return m;
  };
  const std::vector<Moments> parts = RunBlocks<Moments>(trials, jobs, block);

  std::vector<double> guesses(n), errors(n);
  const double count = static_cast<double>(trials);
  for (std::size_t i = 0; i < n; ++i) {
    CompensatedSum s, s2;
    for (const Moments& part : parts) {
      s.Add(part.sum[i]);
      s2.Add(part.sum_sq[i]);
    }
    const double mean = s.Value() / count;
    double var = 0.0;
    if (trials > 1) {
      var = std::max(0.0, (s2.Value() - count * mean * mean) / (count - 1.0));
    }
    guesses[i] = mean;
    errors[i] = std::sqrt(var / count);
  }
  return Finish(instance, std::move(guesses), std::move(errors));
}

Outcome AnalyticOutcome(const Instance& instance) {
  Validate(instance);
  const std::vector<double> probs = FlipProbs(instance);
  RequireAwareDefined(instance, probs);
  const double total = std::accumulate(instance.bits.begin(),
                                       instance.bits.end(), 0.0);
  const std::size_t n = instance.bits.size();
  std::vector<double> guesses(n, total);
  if (instance.mode == ReceiverMode::kNaive) {
    for (std::size_t i = 0; i < n; ++i) {
      guesses[i] += mechanisms::NaiveBias(instance.bits, i, probs);
    }
  }
  return Finish(instance, std::move(guesses), std::vector<double>(n, 0.0));
}

}  // namespace dpcomm::binary_sums
