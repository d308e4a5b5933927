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
#include "dpcomm/accountant.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "dpcomm/error.h"
#include "dpcomm/parallel.h"

namespace dpcomm::accountant {
namespace {

constexpr double kMinSigmaPrimeSq = 0.7;

std::string Describe(double value) {
  std::ostringstream os;
  os.precision(6);
  os << value;
  return os.str();
}

// Right-hand side of the order constraint for the amplified bound.
double OrderBound(double sigma_prime_sq, double alpha, double gamma) {
  return 2.0 * sigma_prime_sq *
             std::log(1.0 / (gamma * alpha * (1.0 + sigma_prime_sq))) / 3.0 +
         1.0;
}

}  // namespace

void Validate(const PrivacyBudget& budget) {
  Require(budget.epsilon > 0.0, "epsilon must be positive");
  Require(budget.delta > 0.0 && budget.delta < 1.0, "delta must lie in (0, 1)");
}

void Validate(const RdpPoint& point) {
  Require(point.alpha > 1.0, "Renyi order alpha must exceed 1");
  Require(point.rho >= 0.0, "Renyi divergence rho must be nonnegative");
}

void Validate(const MechanismParams& params) {
  Require(params.clip_norm > 0.0, "clip norm C must be positive");
  Require(params.sample_rate_data > 0.0 && params.sample_rate_data < 1.0,
          "data sampling rate gamma1 must lie in (0, 1)");
  Require(params.sample_rate_agents > 0.0 && params.sample_rate_agents < 1.0,
          "agent sampling rate gamma2 must lie in (0, 1)");
  Require(params.num_agents >= 1, "number of agents N must be at least 1");
  Require(params.episode_len >= 1, "episode length T must be at least 1");
}

RdpPoint GaussianRdp(double sensitivity, double sigma, double alpha) {
  Require(sensitivity > 0.0, "sensitivity must be positive");
  Require(sigma > 0.0, "sigma must be positive");
  Require(alpha > 1.0, "Renyi order alpha must exceed 1");
  return {alpha, alpha * sensitivity * sensitivity / (2.0 * sigma * sigma)};
}

bool SubsampledOrderFeasible(double sensitivity, double sigma, double alpha,
                             double gamma, std::string* why) {
  const double sigma_prime_sq = (sigma * sigma) / (sensitivity * sensitivity);
  if (sigma_prime_sq < kMinSigmaPrimeSq) {
    if (why) {
      *why = "sigma'^2 = " + Describe(sigma_prime_sq) + " < 0.7";
    }
    return false;
  }
  const double bound = OrderBound(sigma_prime_sq, alpha, gamma);
  if (!(alpha <= bound)) {
    if (why) {
      *why = "alpha = " + Describe(alpha) +
             " > 2 sigma'^2 log(1/(gamma alpha (1+sigma'^2)))/3 + 1 = " +
             Describe(bound);
    }
    return false;
  }
  return true;
}

RdpPoint SubsampledGaussianRdp(double sensitivity, double sigma, double alpha,
                               double gamma) {
  Require(sensitivity > 0.0, "sensitivity must be positive");
  Require(sigma > 0.0, "sigma must be positive");
  Require(alpha > 1.0, "Renyi order alpha must exceed 1");
  Require(gamma > 0.0 && gamma < 1.0, "sampling rate must lie in (0, 1)");
  std::string why;
  if (!SubsampledOrderFeasible(sensitivity, sigma, alpha, gamma, &why)) {
    Fail(ErrorCode::kInfeasibleOrder, "amplified Gaussian bound: " + why);
  }
  return {alpha,
          3.5 * gamma * gamma * sensitivity * sensitivity * alpha /
              (sigma * sigma)};
}

RdpPoint Compose(std::span<const RdpPoint> points) {
  Require(!points.empty(), "cannot compose an empty list of mechanisms");
  const double alpha = points.front().alpha;
  CompensatedSum rho;
  for (const RdpPoint& p : points) {
    Validate(p);
    if (p.alpha != alpha) {
      Fail(ErrorCode::kCompositionOrder,
           "composition requires a shared order; got alpha = " +
               Describe(alpha) + " and " + Describe(p.alpha));
    }
    rho.Add(p.rho);
  }
  return {alpha, rho.Value()};
}

PrivacyBudget RdpToDp(const RdpPoint& point, double delta) {
  Validate(point);
  Require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  return {point.rho + std::log(1.0 / delta) / (point.alpha - 1.0), delta};
}

uint64_t MessageCopies(const MechanismParams& params) {
  const double copies = params.sample_rate_agents * params.num_agents;
  const double rounded = std::round(copies);
  // gamma2 * N within rounding noise of an integer counts as that integer.
  if (std::abs(copies - rounded) <= 1e-9 * std::max(1.0, copies)) {
    return static_cast<uint64_t>(std::max(1.0, rounded));
  }
  return static_cast<uint64_t>(std::ceil(copies));
}

double BetaGridValue(int index) {
  Require(index >= 0 && index < kBetaGridSize, "beta grid index out of range");
  return (index + 1) / 100.0;
}

CalibrationResult CalibrateAtBeta(const PrivacyBudget& budget,
                                  const MechanismParams& params, double beta,
                                  uint32_t episode_len) {
  Validate(budget);
  Validate(params);
  Require(beta > 0.0 && beta < 1.0, "beta must lie in (0, 1)");
  Require(episode_len >= 1, "episode length T must be at least 1");

  const double c = params.clip_norm;
  const double g1 = params.sample_rate_data;
  const double copies = static_cast<double>(MessageCopies(params));

  CalibrationResult r;
  r.beta = beta;
  r.alpha = std::log(1.0 / budget.delta) / (budget.epsilon * (1.0 - beta)) + 1.0;
  r.sigma_sq = 14.0 * copies * g1 * g1 * c * c * r.alpha * episode_len /
               (beta * budget.epsilon);
  r.sigma_prime_sq = r.sigma_sq / (4.0 * c * c);
  r.feasible = SubsampledOrderFeasible(2.0 * c, std::sqrt(r.sigma_sq), r.alpha,
                                       g1, &r.constraint);
  return r;
}

namespace {

// Amount by which a candidate misses feasibility; used to name the tightest
// constraint when the whole grid fails.
double Shortfall(const CalibrationResult& r, double gamma) {
  const double sp = r.sigma_prime_sq;
  double gap = std::max(0.0, kMinSigmaPrimeSq - sp);
  gap = std::max(gap, r.alpha - OrderBound(sp, r.alpha, gamma));
  return gap;
}

CalibrationResult SearchBeta(const PrivacyBudget& budget,
                             const MechanismParams& params,
                             uint32_t episode_len) {
  Validate(budget);
  Validate(params);
  CalibrationResult best;
  CalibrationResult tightest;
  double tightest_gap = std::numeric_limits<double>::infinity();
  bool found = false;
  for (int i = 0; i < kBetaGridSize; ++i) {
    CalibrationResult r =
        CalibrateAtBeta(budget, params, BetaGridValue(i), episode_len);
    if (r.feasible) {
      if (!found || r.sigma_sq < best.sigma_sq) best = r;
      found = true;
    } else if (!found) {
      const double gap = Shortfall(r, params.sample_rate_data);
      if (gap < tightest_gap) {
        tightest_gap = gap;
        tightest = r;
      }
    }
  }
  if (!found) {
    Fail(ErrorCode::kCalibrationInfeasible,
         "no beta in {0.01, ..., 0.99} is feasible; tightest candidate beta = " +
             Describe(tightest.beta) + ": " + tightest.constraint);
  }
  best.constraint.clear();
  return best;
}

}  // namespace

CalibrationResult CalibrateStep(const PrivacyBudget& budget,
                                const MechanismParams& params) {
  return SearchBeta(budget, params, 1);
}

CalibrationResult CalibrateEpisode(const PrivacyBudget& budget,
                                   const MechanismParams& params) {
  return SearchBeta(budget, params, params.episode_len);
}

double RoundTripEpsilon(const CalibrationResult& result,
                        const PrivacyBudget& budget,
                        const MechanismParams& params, uint32_t episode_len) {
  Validate(budget);
  Validate(params);
  const RdpPoint per_message =
      SubsampledGaussianRdp(2.0 * params.clip_norm, std::sqrt(result.sigma_sq),
                            result.alpha, params.sample_rate_data);
  const std::vector<RdpPoint> messages(MessageCopies(params), per_message);
  const RdpPoint per_step = Compose(messages);
  const std::vector<RdpPoint> steps(episode_len, per_step);
  return RdpToDp(Compose(steps), budget.delta).epsilon;
}

}  // namespace dpcomm::accountant
