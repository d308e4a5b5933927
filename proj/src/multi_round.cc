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
#include "dpcomm/multi_round.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dpcomm/error.h"
#include "dpcomm/rng.h"

namespace dpcomm::multi_round {
namespace {

constexpr double kSavingTol = 1e-9;
constexpr double kSpendSlack = 1e-12;

std::vector<double> SortedUnique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end(),
                      [](double a, double b) { return std::abs(a - b) <= kSavingTol; }),
          v.end());
  return v;
}

double TeamWeight(const Config& cfg, std::size_t agent) {
  return cfg.team_weight.empty() ? 1.0 : cfg.team_weight[agent];
}

void CheckShapes(const State& state, std::span<const Action> actions) {
  Require(state.savings.size() == actions.size(),
          "one action per agent is required");
}

bool ImprovesOn(double candidate, double incumbent) {
  return candidate > incumbent + 1e-12 * std::max(1.0, std::abs(incumbent));
}

}  // namespace

void Validate(const Config& cfg) {
  Require(cfg.num_agents >= 1, "at least one agent is required");
  Require(cfg.discount > 0.0 && cfg.discount <= 1.0, "discount must lie in (0, 1]");
  Require(std::isfinite(cfg.reward_alpha) && std::isfinite(cfg.reward_beta),
          "reward weights must be finite");
  Require(cfg.initial_savings.size() == cfg.num_agents,
          "one initial saving per agent is required");
  for (double x : cfg.initial_savings) {
    Require(x >= 0.0 && std::isfinite(x), "initial savings must be nonnegative");
  }
  Require(!cfg.spend_grid.empty(), "spend grid must not be empty");
  Require(!cfg.privacy_grid.empty(), "privacy grid must not be empty");
  for (double b : cfg.spend_grid) {
    Require(b >= 0.0 && std::isfinite(b), "spend grid values must be nonnegative");
  }
  for (double p : cfg.privacy_grid) {
    Require(p >= 0.0 && p <= 1.0, "privacy grid values must lie in [0, 1]");
  }
  Require(cfg.team_weight.empty() || cfg.team_weight.size() == cfg.num_agents,
          "team weights must be empty or one per agent");
}

State InitialState(const Config& cfg) {
  Validate(cfg);
  return State{cfg.initial_savings, 0};
}

State Transition(const State& state, std::span<const Action> actions) {
  CheckShapes(state, actions);
  State next{state.savings, state.step + 1};
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const double b = actions[i].spend;
    if (!(b >= 0.0) || b > state.savings[i] + kSpendSlack) {
      Fail(ErrorCode::kInvalidAction,
           "agent " + std::to_string(i) + " spends " + std::to_string(b) +
               " with saving " + std::to_string(state.savings[i]));
    }
    next.savings[i] = std::max(0.0, state.savings[i] - b);
  }
  return next;
}

double StepReward(const State& state, std::span<const Action> actions,
                  std::size_t agent, const Config& cfg) {
  CheckShapes(state, actions);
  Require(agent < actions.size(), "agent index out of range");
  double team = 0.0;
  for (const Action& a : actions) team += (1.0 - a.privacy) * a.spend;
  return TeamWeight(cfg, agent) * team + cfg.reward_alpha * state.savings[agent] +
         cfg.reward_beta * actions[agent].privacy;
}

double Potential(const State& state, std::span<const Action> actions,
                 const Config& cfg) {
  CheckShapes(state, actions);
  double j = 0.0;
  for (std::size_t k = 0; k < actions.size(); ++k) {
    j += (1.0 - actions[k].privacy) * actions[k].spend +
         cfg.reward_alpha * state.savings[k] + cfg.reward_beta * actions[k].privacy;
  }
  return j;
}

double Theta(const State& state, std::span<const Action> actions,
             std::size_t agent, const Config& cfg) {
  CheckShapes(state, actions);
  Require(agent < actions.size(), "agent index out of range");
  double theta = 0.0;
  for (std::size_t k = 0; k < actions.size(); ++k) {
    if (k == agent) continue;
    theta -= cfg.reward_alpha * state.savings[k] + cfg.reward_beta * actions[k].privacy;
  }
  return theta;
}

std::size_t LocalLattice::StateCount() const {
  std::size_t n = 0;
  for (const auto& level : levels) n += level.size();
  return n;
}

std::size_t LocalLattice::Find(uint32_t step, double saving) const {
  if (step < first_step || step - first_step >= levels.size()) {
    Fail(ErrorCode::kInvalidAction, "step " + std::to_string(step) +
                                        " is outside the policy horizon");
  }
  const auto& level = levels[step - first_step];
  for (std::size_t s = 0; s < level.size(); ++s) {
    if (std::abs(level[s] - saving) <= kSavingTol) return s;
  }
  Fail(ErrorCode::kInvalidAction,
       "saving " + std::to_string(saving) + " is not reachable at step " +
           std::to_string(step));
}

Game::Game(Config cfg, State start) : cfg_(std::move(cfg)), start_(std::move(start)) {
  Validate(cfg_);
  Require(start_.savings.size() == cfg_.num_agents,
          "start state needs one saving per agent");
  Require(start_.step <= cfg_.horizon, "start step exceeds the horizon");
  for (double x : start_.savings) {
    Require(x >= 0.0 && std::isfinite(x), "savings must be nonnegative");
  }
  const std::vector<double> spends = SortedUnique(cfg_.spend_grid);
  const std::vector<double> levels = SortedUnique(cfg_.privacy_grid);

  lattices_.resize(cfg_.num_agents);
  for (std::size_t i = 0; i < cfg_.num_agents; ++i) {
    LocalLattice& lat = lattices_[i];
    lat.first_step = start_.step;
    std::vector<double> current{start_.savings[i]};
    for (uint32_t t = start_.step; t < cfg_.horizon; ++t) {
      std::vector<std::vector<Action>> acts(current.size());
      std::vector<double> next;
      for (std::size_t s = 0; s < current.size(); ++s) {
        for (double b : spends) {
          if (b > current[s] + kSpendSlack) break;
          for (double p : levels) acts[s].push_back({b, p});
          next.push_back(std::max(0.0, current[s] - b));
        }
      }
      lat.levels.push_back(current);
      lat.actions.push_back(std::move(acts));
      if (lat.StateCount() > 1000000) {
        Fail(ErrorCode::kEnumerationBudget,
             "agent lattice exceeds 1e6 states; use a smaller instance");
      }
      current = SortedUnique(std::move(next));
    }
  }
}

TabularPolicy Game::DefaultPolicy(std::size_t agent) const {
  Require(agent < num_agents(), "agent index out of range");
  TabularPolicy policy;
  for (const auto& level : lattices_[agent].levels) {
    policy.choice.emplace_back(level.size(), 0);
  }
  return policy;
}

PolicyProfile Game::DefaultProfile() const {
  PolicyProfile profile;
  for (std::size_t i = 0; i < num_agents(); ++i) profile.push_back(DefaultPolicy(i));
  return profile;
}

const Action& Game::ActionFor(const TabularPolicy& policy, std::size_t agent,
                              uint32_t step, double saving) const {
  const LocalLattice& lat = lattices_[agent];
  const std::size_t s = lat.Find(step, saving);
  const std::size_t level = step - lat.first_step;
  const std::size_t a = policy.choice[level][s];
  return lat.actions[level][s][a];
}

double Game::PolicyCount(std::size_t agent) const {
  Require(agent < num_agents(), "agent index out of range");
  double count = 1.0;
  for (const auto& level : lattices_[agent].actions) {
    for (const auto& acts : level) count = std::min(1e300, count * acts.size());
  }
  return count;
}

TabularPolicy Game::PolicyFromIndex(std::size_t agent, uint64_t index) const {
  TabularPolicy policy = DefaultPolicy(agent);
  const LocalLattice& lat = lattices_[agent];
  for (std::size_t l = 0; l < lat.actions.size(); ++l) {
    for (std::size_t s = 0; s < lat.actions[l].size(); ++s) {
      const uint64_t radix = lat.actions[l][s].size();
      policy.choice[l][s] = index % radix;
      index /= radix;
    }
  }
  return policy;
}

void Game::Check(const PolicyProfile& profile) const {
  Require(profile.size() == num_agents(), "one policy per agent is required");
  for (std::size_t i = 0; i < num_agents(); ++i) {
    const LocalLattice& lat = lattices_[i];
    const TabularPolicy& pol = profile[i];
    bool ok = pol.choice.size() == lat.actions.size();
    for (std::size_t l = 0; ok && l < lat.actions.size(); ++l) {
      ok = pol.choice[l].size() == lat.actions[l].size();
      for (std::size_t s = 0; ok && s < lat.actions[l].size(); ++s) {
        ok = pol.choice[l][s] < lat.actions[l][s].size();
      }
    }
    if (!ok) {
      Fail(ErrorCode::kInvalidAction,
           "policy of agent " + std::to_string(i) + " does not match its lattice");
    }
  }
}

std::vector<RolloutStep> Rollout(const Game& game, const PolicyProfile& profile) {
  game.Check(profile);
  std::vector<RolloutStep> steps;
  State state = game.start();
  for (uint32_t t = state.step; t < game.config().horizon; ++t) {
    RolloutStep step{state, {}};
    for (std::size_t i = 0; i < game.num_agents(); ++i) {
      step.actions.push_back(game.ActionFor(profile[i], i, t, state.savings[i]));
    }
    state = Transition(state, step.actions);
    steps.push_back(std::move(step));
  }
  return steps;
}

double PolicyValue(const Game& game, const PolicyProfile& profile,
                   std::size_t agent) {
  Require(agent < game.num_agents(), "agent index out of range");
  double value = 0.0, weight = 1.0;
  for (const RolloutStep& s : Rollout(game, profile)) {
    value += weight * StepReward(s.state, s.actions, agent, game.config());
    weight *= game.config().discount;
  }
  return value;
}

double PotentialValue(const Game& game, const PolicyProfile& profile) {
  double value = 0.0, weight = 1.0;
  for (const RolloutStep& s : Rollout(game, profile)) {
    value += weight * Potential(s.state, s.actions, game.config());
    weight *= game.config().discount;
  }
  return value;
}

MpgCheck VerifyMpg(const Game& game, double tol, double budget) {
  Require(tol >= 0.0, "tolerance must be nonnegative");
  const std::size_t n = game.num_agents();
  std::vector<uint64_t> counts(n);
  double total = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = game.PolicyCount(i);
    total *= c;
    if (total > budget) {
      Fail(ErrorCode::kEnumerationBudget,
           "joint policy space exceeds the enumeration budget of " +
               std::to_string(static_cast<uint64_t>(budget)) +
               " profiles; use fewer agents, a shorter horizon or coarser grids");
    }
    counts[i] = static_cast<uint64_t>(c);
  }
  const uint64_t profiles = static_cast<uint64_t>(total);

  // gap[i][k] = V_i - Phi for joint profile k (agent 0 is the fastest digit).
  std::vector<std::vector<double>> gap(n, std::vector<double>(profiles));
  std::vector<std::vector<TabularPolicy>> policies(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (uint64_t k = 0; k < counts[i]; ++k) {
      policies[i].push_back(game.PolicyFromIndex(i, k));
    }
  }
  PolicyProfile profile(n);
  for (uint64_t k = 0; k < profiles; ++k) {
    uint64_t rest = k;
    for (std::size_t i = 0; i < n; ++i) {
      profile[i] = policies[i][rest % counts[i]];
      rest /= counts[i];
    }
    const double phi = PotentialValue(game, profile);
    for (std::size_t i = 0; i < n; ++i) {
      gap[i][k] = PolicyValue(game, profile, i) - phi;
    }
  }

  MpgCheck out;
  out.profiles = profiles;
  uint64_t stride = 1;
  for (std::size_t i = 0; i < n; ++i) {
    // Group profiles sharing the opponents' policies and take the spread of
    // V_i - Phi inside each group.
    const uint64_t groups = profiles / counts[i];
    std::vector<double> lo(groups, std::numeric_limits<double>::infinity());
    std::vector<double> hi(groups, -std::numeric_limits<double>::infinity());
    for (uint64_t k = 0; k < profiles; ++k) {
      const uint64_t g = (k / (stride * counts[i])) * stride + k % stride;
      lo[g] = std::min(lo[g], gap[i][k]);
      hi[g] = std::max(hi[g], gap[i][k]);
    }
    for (uint64_t g = 0; g < groups; ++g) {
      out.max_violation = std::max(out.max_violation, hi[g] - lo[g]);
    }
    stride *= counts[i];
  }
  out.holds = out.max_violation <= tol;
  return out;
}

TabularPolicy BestResponsePolicy(const Game& game, const PolicyProfile& profile,
                                 std::size_t agent) {
  Require(agent < game.num_agents(), "agent index out of range");
  const std::vector<RolloutStep> path = Rollout(game, profile);
  const LocalLattice& lat = game.lattice(agent);
  const Config& cfg = game.config();
  TabularPolicy best = game.DefaultPolicy(agent);

  std::vector<double> next_value;  // value-to-go at level + 1
  for (std::size_t l = lat.levels.size(); l-- > 0;) {
    const uint32_t t = lat.first_step + static_cast<uint32_t>(l);
    std::vector<double> value(lat.levels[l].size());
    for (std::size_t s = 0; s < lat.levels[l].size(); ++s) {
      const double x = lat.levels[l][s];
      State state = path[l].state;
      state.savings[agent] = x;
      std::vector<Action> actions = path[l].actions;
      double best_q = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < lat.actions[l][s].size(); ++a) {
        actions[agent] = lat.actions[l][s][a];
        double q = StepReward(state, actions, agent, cfg);
        if (l + 1 < lat.levels.size()) {
          q += cfg.discount * next_value[lat.Find(t + 1, x - actions[agent].spend)];
        }
        if (a == 0 || ImprovesOn(q, best_q)) {
          best_q = q;
          best.choice[l][s] = a;
        }
      }
      value[s] = best_q;
    }
    next_value = std::move(value);
  }
  return best;
}

MpgNash FindMpgNash(const Game& game, int max_sweeps, const PolicyProfile& start) {
  Require(max_sweeps >= 1, "max_sweeps must be at least 1");
  MpgNash out;
  out.profile = start.empty() ? game.DefaultProfile() : start;
  game.Check(out.profile);
  // Nothing to play: every profile is trivially an equilibrium.
  if (game.start().step >= game.config().horizon) {
    out.converged = true;
    return out;
  }
  out.potential_trace.push_back(PotentialValue(game, out.profile));
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    out.sweeps = sweep;
    bool changed = false;
    for (std::size_t i = 0; i < game.num_agents(); ++i) {
      PolicyProfile candidate = out.profile;
      candidate[i] = BestResponsePolicy(game, out.profile, i);
      if (ImprovesOn(PolicyValue(game, candidate, i),
                     PolicyValue(game, out.profile, i))) {
        out.profile = std::move(candidate);
        out.potential_trace.push_back(PotentialValue(game, out.profile));
        changed = true;
      }
    }
    if (!changed) {
      out.converged = true;
      break;
    }
  }
  return out;
}

std::vector<std::vector<double>> SimulateMessages(const Game& game,
                                                  const PolicyProfile& profile,
                                                  uint64_t rng_seed) {
  const std::vector<double>& grid = game.config().spend_grid;
  std::vector<std::vector<double>> messages;
  for (const RolloutStep& s : Rollout(game, profile)) {
    std::vector<double> round(game.num_agents());
    for (std::size_t i = 0; i < game.num_agents(); ++i) {
      Stream stream(DeriveSeed(rng_seed, i, s.state.step));
      const bool replace = stream.Uniform() < s.actions[i].privacy;
      const std::size_t pick = static_cast<std::size_t>(stream.Uniform() * grid.size());
      round[i] = replace ? grid[std::min(pick, grid.size() - 1)] : s.actions[i].spend;
    }
    messages.push_back(std::move(round));
  }
  return messages;
}

}  // namespace dpcomm::multi_round
