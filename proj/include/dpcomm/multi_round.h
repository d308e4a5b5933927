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

// Multiple round sums: agent i holds savings x_i, gives out b_i each round
// and picks a privacy level p_i. Rewards
//
//   r_i = sum_j (1 - p_j) b_j + alpha x_i + beta p_i
//
// split into the common potential J = sum_j ((1 - p_j) b_j + alpha x_j +
// beta p_j) plus Theta_i = -sum_{j != i} (alpha x_j + beta p_j), which does
// not depend on agent i. Policies are tabular over the agent's own (step,
// saving) so the opponents' trajectories never depend on agent i; under that
// restriction every unilateral value change equals the change in the
// discounted potential.

#ifndef DPCOMM_MULTI_ROUND_H_
#define DPCOMM_MULTI_ROUND_H_

#include <cstdint>
#include <span>
#include <vector>

namespace dpcomm::multi_round {

struct Config {
  uint32_t num_agents = 2;
  uint32_t horizon = 2;
  double discount = 1.0;
  double reward_alpha = 0.0;
  double reward_beta = 0.0;
  std::vector<double> initial_savings;
  std::vector<double> spend_grid;
  std::vector<double> privacy_grid;
  // Per-agent multiplier on the team term of that agent's own reward. Empty
  // means 1 for everyone; anything else breaks the potential structure and
  // exists to exercise the verifier.
  std::vector<double> team_weight;
};

struct State {
  std::vector<double> savings;
  uint32_t step = 0;
};

struct Action {
  double spend = 0.0;
  double privacy = 0.0;
};

void Validate(const Config& cfg);

State InitialState(const Config& cfg);

// x_{i,t+1} = x_{i,t} - b_{i,t}; throws kInvalidAction when a spend is
// negative or exceeds the saving.
State Transition(const State& state, std::span<const Action> actions);

double StepReward(const State& state, std::span<const Action> actions,
                  std::size_t agent, const Config& cfg);

double Potential(const State& state, std::span<const Action> actions,
                 const Config& cfg);

double Theta(const State& state, std::span<const Action> actions,
             std::size_t agent, const Config& cfg);

// Reachable (step, saving) pairs of one agent and the valid actions in each,
// in lexicographic (spend, privacy) order.
struct LocalLattice {
  uint32_t first_step = 0;
  // levels[t - first_step] holds the distinct savings reachable at step t.
  std::vector<std::vector<double>> levels;
  // actions[t - first_step][s] lists the valid actions at levels[..][s].
  std::vector<std::vector<std::vector<Action>>> actions;

  std::size_t StateCount() const;
  // Index of `saving` in levels[t - first_step]; throws kInvalidAction when
  // the saving is not on the lattice.
  std::size_t Find(uint32_t step, double saving) const;
};

// Action choice of one agent: choice[level][state] indexes
// LocalLattice::actions[level][state].
struct TabularPolicy {
  std::vector<std::vector<std::size_t>> choice;
};

using PolicyProfile = std::vector<TabularPolicy>;

// Config plus start state with the per-agent lattices precomputed.
class Game {
 public:
  Game(Config cfg, State start);

  const Config& config() const { return cfg_; }
  const State& start() const { return start_; }
  std::size_t num_agents() const { return cfg_.num_agents; }
  const LocalLattice& lattice(std::size_t agent) const { return lattices_[agent]; }

  // The policy choosing the lexicographically smallest valid action
  // everywhere (no spending, lowest privacy level).
  TabularPolicy DefaultPolicy(std::size_t agent) const;
  PolicyProfile DefaultProfile() const;

  const Action& ActionFor(const TabularPolicy& policy, std::size_t agent,
                          uint32_t step, double saving) const;

  // Number of distinct tabular policies of one agent (saturates at 1e300).
  double PolicyCount(std::size_t agent) const;
  TabularPolicy PolicyFromIndex(std::size_t agent, uint64_t index) const;

  void Check(const PolicyProfile& profile) const;

 private:
  Config cfg_;
  State start_;
  std::vector<LocalLattice> lattices_;
};

// One joint step of a rollout.
struct RolloutStep {
  State state;
  std::vector<Action> actions;
};

std::vector<RolloutStep> Rollout(const Game& game, const PolicyProfile& profile);

// Discounted sum of StepReward(agent) along the rollout from the start state.
double PolicyValue(const Game& game, const PolicyProfile& profile,
                   std::size_t agent);

// Discounted sum of Potential along the rollout.
double PotentialValue(const Game& game, const PolicyProfile& profile);

struct MpgCheck {
  bool holds = false;
  double max_violation = 0.0;
  uint64_t profiles = 0;
};

inline constexpr double kDefaultEnumerationBudget = 1e6;

// Enumerates every joint tabular policy profile and, for every agent and
// every opponent profile, compares all pairs of the agent's policies:
// max |(Phi(pi) - Phi(pi')) - (V_i(pi) - V_i(pi'))|. Throws
// kEnumerationBudget when the number of joint profiles exceeds `budget`.
MpgCheck VerifyMpg(const Game& game, double tol,
                   double budget = kDefaultEnumerationBudget);

// Exact best response of `agent` to the other entries of `profile` by
// backward induction over the agent's lattice. Ties go to the
// lexicographically smallest (spend, privacy).
TabularPolicy BestResponsePolicy(const Game& game, const PolicyProfile& profile,
                                 std::size_t agent);

struct MpgNash {
  PolicyProfile profile;
  bool converged = false;
  int sweeps = 0;
  // Potential value of the start profile followed by its value after every
  // accepted policy change.
  std::vector<double> potential_trace;
};

// Sequential best-response sweeps from `start` (DefaultProfile when empty).
// An agent switches only if the best response strictly improves its value.
MpgNash FindMpgNash(const Game& game, int max_sweeps,
                    const PolicyProfile& start = {});

// Optional message channel: each round agent i announces its spend, replaced
// with probability p_i by a uniformly drawn spend-grid value. Rewards do not
// read messages.
std::vector<std::vector<double>> SimulateMessages(const Game& game,
                                                  const PolicyProfile& profile,
                                                  uint64_t rng_seed);

}  // namespace dpcomm::multi_round

#endif  // DPCOMM_MULTI_ROUND_H_
