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

// Two-player collaborative games with privacy. Player n picks a privacy level
// p_n in [0, 1] and receives
//
//   u_n(p1, p2) = B_n * b(V_n, V_n^M(p1, p2)) - C_n * c(p_n)
//
// where V_n^M is the cooperative value, V_n the stand-alone value, b the
// benefit of cooperating and c the privacy loss.

#ifndef DPCOMM_CGP_H_
#define DPCOMM_CGP_H_

#include <array>
#include <functional>

namespace dpcomm::cgp {

using PlayerPair = std::array<double, 2>;
using ValueFn = std::function<PlayerPair(double p1, double p2)>;
using PrivacyLossFn = std::function<double(double p)>;
using BenefitFn = std::function<double(double standalone, double cooperative)>;

struct StrategyProfile {
  PlayerPair p{0.0, 0.0};
};

class Instance {
 public:
  // Throws kInvalidParameter on non-positive weights or empty callables. The
  // structural conditions on b, c and V^M are reported by CheckConditions
  // rather than enforced here.
  Instance(PlayerPair benefit_weight, PlayerPair privacy_weight,
           ValueFn value_fn, PlayerPair standalone_values,
           PrivacyLossFn privacy_loss_fn, BenefitFn benefit_fn);

  const PlayerPair& benefit_weight() const { return benefit_weight_; }
  const PlayerPair& privacy_weight() const { return privacy_weight_; }
  const PlayerPair& standalone_values() const { return standalone_; }

  // Cooperative values V^M(p1, p2); throws kEvaluation on non-finite output.
  PlayerPair Values(double p1, double p2) const;
  double PrivacyLoss(double p) const;
  double Benefit(int player, double p1, double p2) const;

  // u_player(p1, p2); throws kEvaluation on non-finite intermediate values.
  double Utility(int player, double p1, double p2) const;
  PlayerPair Utility(const StrategyProfile& profile) const;

 private:
  PlayerPair benefit_weight_;
  PlayerPair privacy_weight_;
  ValueFn value_fn_;
  PlayerPair standalone_;
  PrivacyLossFn privacy_loss_fn_;
  BenefitFn benefit_fn_;
};

// Single-round binary sums as a CGP: V_n = -1/2, V^M = -(p1 + p2)^2 / 2,
// c(p) = 1 - p, b = V^M - V_n. Utility reduces to
// -B_n/2 (p1 + p2)^2 + C_n p_n + B_n/2 - C_n.
Instance MakeBinarySumsCgp(PlayerPair benefit_weight, PlayerPair privacy_weight);

// Central-difference estimate of d^2 u_player / dp1 dp2 at (p1, p2).
double CrossPartial(const Instance& instance, int player, double p1, double p2,
                    double step);

struct PotentialCheck {
  bool holds = false;
  double max_deviation = 0.0;
};

// Compares the mixed partials of u_1 and u_2 over the interior grid
// {step, 2 step, ...} x {step, 2 step, ...}; needs at least 3 grid points
// per axis.
PotentialCheck IsPotentialGame(const Instance& instance, double grid_step,
                               double tol);

// Checks d^i V_1 / dp1^i at (a, b) against d^i V_2 / dp2^i at (b, a) for
// i = 1, 2 on the interior grid, i.e. each player's value reacts to its own
// privacy level the same way.
bool ValueDerivativesMatch(const Instance& instance, double grid_step,
                           double tol);

// argmax over p in [0, 1] of u_player with the opponent fixed. Grid search at
// grid_step, then golden-section and parabolic refinement inside the winning
// cell. Exact ties resolve to the smaller p.
double BestResponse(const Instance& instance, int player, double opponent_p,
                    double grid_step = 1e-3);

// Largest utility gain any single player can obtain by moving to a point of
// the [0, 1] grid with spacing grid_step. Never negative.
double MaxDeviationGain(const Instance& instance, const StrategyProfile& profile,
                        double grid_step = 1e-3);

struct NashResult {
  StrategyProfile profile;
  bool converged = false;
  int sweeps = 0;
  double max_deviation_gain = 0.0;  // from MaxDeviationGain at 1e-3
};

// Alternating best responses (player 1 then player 2) until the
// simultaneous best-response residual ||BR(p) - p||_inf is at most tol. A
// player already attaining the best-response utility keeps its level, so a
// start that is an equilibrium converges after one sweep. `sweeps` counts
// best-response passes, the final confirming pass included.
NashResult FindNash(const Instance& instance, const StrategyProfile& start,
                    int max_iters = 1000, double tol = 1e-8,
                    double grid_step = 1e-3);

// Which of the structural conditions on c, b and V^M hold on a sampled grid.
struct ConditionReport {
  bool loss_endpoints = false;        // c(0) = 1, c(1) = 0
  bool loss_decreasing = false;       // strictly, on the grid
  bool benefit_nonnegative = false;
  bool benefit_zero_without_gain = false;  // b = 0 whenever V_n >= V_n^M
  bool value_full_privacy_bound = false;   // p_m = 1 => V_n^M <= V_n
  bool value_decreasing = false;           // dV_n^M/dp_m < 0 (interior)
  bool value_origin_exceeds_standalone = false;  // V_n < V_n^M(0, 0)
};

ConditionReport CheckConditions(const Instance& instance,
                                double grid_step = 0.05);

}  // namespace dpcomm::cgp

#endif  // DPCOMM_CGP_H_
