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

// Renyi-DP bookkeeping and noise calibration for clipped, subsampled Gaussian
// message senders.
//
// A sender clips each message to l2 norm C, computes it on a gamma1 fraction
// of its local transitions, adds N(0, sigma^2 I) noise and shares it with a
// gamma2 fraction of the N agents. The calibration picks sigma^2 so that one
// step (or one whole episode of T steps) is (epsilon, delta)-DP.

#ifndef DPCOMM_ACCOUNTANT_H_
#define DPCOMM_ACCOUNTANT_H_

#include <cstdint>
#include <span>
#include <string>

namespace dpcomm::accountant {

struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;
};

struct RdpPoint {
  double alpha = 0.0;
  double rho = 0.0;
};

struct MechanismParams {
  double clip_norm = 1.0;           // C
  double sample_rate_data = 0.5;    // gamma1
  double sample_rate_agents = 0.5;  // gamma2
  uint32_t num_agents = 1;          // N
  uint32_t episode_len = 1;         // T
};

struct CalibrationResult {
  double sigma_sq = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double sigma_prime_sq = 0.0;  // sigma_sq / (4 C^2)
  bool feasible = false;
  // Human-readable description of the binding constraint when infeasible.
  std::string constraint;
};

void Validate(const PrivacyBudget& budget);
void Validate(const RdpPoint& point);
void Validate(const MechanismParams& params);

// (alpha, alpha * sensitivity^2 / (2 sigma^2)).
RdpPoint GaussianRdp(double sensitivity, double sigma, double alpha);

// True when (sigma / sensitivity)^2 >= 0.7 and
// alpha <= 2 s'^2 log(1 / (gamma alpha (1 + s'^2))) / 3 + 1.
// On failure `why` (if given) names the violated inequality.
bool SubsampledOrderFeasible(double sensitivity, double sigma, double alpha,
                             double gamma, std::string* why = nullptr);

// Amplified bound (alpha, 3.5 gamma^2 sensitivity^2 alpha / sigma^2) for the
// Gaussian mechanism run on a gamma-subsample drawn without replacement.
// Throws kInfeasibleOrder when the bound's preconditions do not hold.
RdpPoint SubsampledGaussianRdp(double sensitivity, double sigma, double alpha,
                               double gamma);

// Sum of divergences at a shared order. Throws kCompositionOrder on mixed
// orders.
RdpPoint Compose(std::span<const RdpPoint> points);

// Conversion to (rho + log(1/delta) / (alpha - 1), delta)-DP.
PrivacyBudget RdpToDp(const RdpPoint& point, double delta);

// Number of message copies an agent sends per step: ceil(gamma2 * N).
uint64_t MessageCopies(const MechanismParams& params);

// beta grid searched by the calibrators: 0.01, 0.02, ..., 0.99.
inline constexpr int kBetaGridSize = 99;
double BetaGridValue(int index);

// Evaluates the closed-form calibration at a fixed beta for an episode of
// `episode_len` steps. Never throws on infeasibility; `feasible` and
// `constraint` report the outcome.
CalibrationResult CalibrateAtBeta(const PrivacyBudget& budget,
                                  const MechanismParams& params, double beta,
                                  uint32_t episode_len);

// Per-step calibration: smallest feasible sigma^2 over the beta grid.
// Throws kCalibrationInfeasible (reporting the tightest constraint) when no
// grid point is feasible.
CalibrationResult CalibrateStep(const PrivacyBudget& budget,
                                const MechanismParams& params);

// Whole-episode calibration: as CalibrateStep with sigma^2 scaled by
// params.episode_len.
CalibrationResult CalibrateEpisode(const PrivacyBudget& budget,
                                   const MechanismParams& params);

// Replays the proof chain for a calibrated sigma^2: amplified Gaussian bound
// at sensitivity 2C and rate gamma1, composition over ceil(gamma2 N) copies
// and `episode_len` steps, then conversion at delta. Returns the epsilon the
// chain certifies.
double RoundTripEpsilon(const CalibrationResult& result,
                        const PrivacyBudget& budget,
                        const MechanismParams& params, uint32_t episode_len);

}  // namespace dpcomm::accountant

#endif  // DPCOMM_ACCOUNTANT_H_
