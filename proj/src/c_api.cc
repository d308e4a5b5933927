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
#include "dpcomm/dpcomm.h"

#include <algorithm>
#include <exception>
#include <new>
#include <numeric>
#include <string>
#include <vector>

#include "dpcomm/accountant.h"
#include "dpcomm/binary_sums.h"
#include "dpcomm/cgp.h"
#include "dpcomm/error.h"
#include "dpcomm/gaussian_sender.h"
#include "dpcomm/mechanisms.h"
#include "dpcomm/multi_round.h"

struct dpc_cgp {
  dpcomm::cgp::Instance instance;
};

struct dpc_mrs_game {
  dpcomm::multi_round::Game game;
};

struct dpc_mrs_profile {
  dpcomm::multi_round::PolicyProfile policies;
};

namespace {

namespace acc = dpcomm::accountant;
namespace mech = dpcomm::mechanisms;
namespace bs = dpcomm::binary_sums;
namespace mr = dpcomm::multi_round;
namespace snd = dpcomm::sender;

thread_local std::string g_last_error;

struct NullArgument {
  const char* name;
};

struct BufferTooSmall {
  size_t needed;
};

template <typename T>
T* NotNull(T* p, const char* name) {
  if (p == nullptr) throw NullArgument{name};
  return p;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
dpc_status Guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return DPC_OK;
  } catch (const dpcomm::Error& e) {
    g_last_error = e.what();
    return static_cast<dpc_status>(static_cast<int>(e.code()));
  } catch (const NullArgument& e) {
    g_last_error = std::string("null argument: ") + e.name;
    return DPC_ERR_NULL_ARGUMENT;
  } catch (const BufferTooSmall& e) {
    g_last_error = "buffer too small: need " + std::to_string(e.needed);
    return DPC_ERR_BUFFER_TOO_SMALL;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return DPC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DPC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return DPC_ERR_INTERNAL;
  }
}

acc::PrivacyBudget ToBudget(dpc_budget b) { return {b.epsilon, b.delta}; }

acc::MechanismParams ToParams(const dpc_mechanism_params& p) {
  return {p.clip_norm, p.sample_rate_data, p.sample_rate_agents, p.num_agents,
          p.episode_len};
}

dpc_calibration FromCalibration(const acc::CalibrationResult& r) {
  return {r.sigma_sq, r.alpha, r.beta, r.sigma_prime_sq, r.feasible ? 1 : 0};
}

acc::CalibrationResult ToCalibration(const dpc_calibration& c) {
  acc::CalibrationResult r;
  r.sigma_sq = c.sigma_sq;
  r.alpha = c.alpha;
  r.beta = c.beta;
  r.sigma_prime_sq = c.sigma_prime_sq;
  r.feasible = c.feasible != 0;
  return r;
}

std::span<const uint8_t> Bits(const uint8_t* bits, size_t count) {
  if (count > 0) NotNull(bits, "bits");
  return {bits, count};
}

bs::Instance MakeBinarySums(const uint8_t* bits, const double* eps, size_t count,
                            dpc_receiver_mode mode) {
  NotNull(bits, "bits");
  NotNull(eps, "epsilons");
  dpcomm::Require(mode == DPC_RECEIVER_NAIVE || mode == DPC_RECEIVER_AWARE,
                  "unknown receiver mode");
  bs::Instance inst;
  inst.bits.assign(bits, bits + count);
  inst.epsilons.assign(eps, eps + count);
  inst.mode = mode == DPC_RECEIVER_AWARE ? bs::ReceiverMode::kAware
                                         : bs::ReceiverMode::kNaive;
  return inst;
}

void StoreOutcome(const bs::Outcome& o, double* guesses, double* utilities,
                  double* std_errors, double* team_reward) {
  if (guesses) std::copy(o.guesses.begin(), o.guesses.end(), guesses);
  if (utilities) std::copy(o.utilities.begin(), o.utilities.end(), utilities);
  if (std_errors) std::copy(o.std_errors.begin(), o.std_errors.end(), std_errors);
  if (team_reward) *team_reward = o.team_reward;
}

mr::State MakeState(const mr::Game& g, const double* savings) {
  NotNull(savings, "savings");
  return {std::vector<double>(savings, savings + g.num_agents()), 0};
}

std::vector<mr::Action> MakeActions(const mr::Game& g, const dpc_mrs_action* a) {
  NotNull(a, "actions");
  std::vector<mr::Action> out(g.num_agents());
  for (size_t i = 0; i < out.size(); ++i) out[i] = {a[i].spend, a[i].privacy};
  return out;
}

Eigen::VectorXd Vec(const double* p, size_t dim, const char* name) {
  NotNull(p, name);
  return Eigen::Map<const Eigen::VectorXd>(p, static_cast<Eigen::Index>(dim));
}

Eigen::MatrixXd Mat(const double* p, size_t dim, const char* name) {
  NotNull(p, name);
  const auto d = static_cast<Eigen::Index>(dim);
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                        Eigen::RowMajor>>(p, d, d);
}

snd::SenderProblem MakeProblem(size_t dim, const double* mean, const double* cov,
                               double noise_var) {
  dpcomm::Require(dim > 0, "dimension must be positive");
  snd::SenderProblem problem;
  problem.target = snd::MakeDist(Vec(mean, dim, "target_mean"),
                                 Mat(cov, dim, "target_cov"));
  problem.noise_var = noise_var;
  return problem;
}

void StoreDist(const snd::GaussianMessageDist& d, double* mean, double* cov) {
  if (mean) Eigen::Map<Eigen::VectorXd>(mean, d.mean.size()) = d.mean;
  if (cov) {
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        cov, d.cov.rows(), d.cov.cols()) = d.cov;
  }
}

}  // namespace

extern "C" {

const char* dpc_version(void) { return "1.0.0"; }

const char* dpc_status_name(dpc_status status) {
  switch (status) {
    case DPC_OK: return "ok";
    case DPC_ERR_INVALID_PARAMETER: return "invalid-parameter";
    case DPC_ERR_INFEASIBLE_ORDER: return "infeasible-order";
    case DPC_ERR_COMPOSITION_ORDER: return "composition-order";
    case DPC_ERR_CALIBRATION_INFEASIBLE: return "calibration-infeasible";
    case DPC_ERR_DEGENERATE_MECHANISM: return "degenerate-mechanism";
    case DPC_ERR_EVALUATION: return "evaluation";
    case DPC_ERR_INVALID_ACTION: return "invalid-action";
    case DPC_ERR_ENUMERATION_BUDGET: return "enumeration-budget";
    case DPC_ERR_SINGULAR_TARGET: return "singular-target";
    case DPC_ERR_STEP_SIZE: return "step-size";
    case DPC_ERR_NULL_ARGUMENT: return "null-argument";
    case DPC_ERR_BUFFER_TOO_SMALL: return "buffer-too-small";
    case DPC_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* dpc_last_error(void) { return g_last_error.c_str(); }

dpc_status dpc_gaussian_rdp(double sensitivity, double sigma, double alpha,
                            dpc_rdp_point* out) {
  return Guard([&] {
    NotNull(out, "out");
    const acc::RdpPoint p = acc::GaussianRdp(sensitivity, sigma, alpha);
    *out = {p.alpha, p.rho};
  });
}

dpc_status dpc_subsampled_gaussian_rdp(double sensitivity, double sigma,
                                       double alpha, double gamma,
                                       dpc_rdp_point* out) {
  return Guard([&] {
    NotNull(out, "out");
    const acc::RdpPoint p =
        acc::SubsampledGaussianRdp(sensitivity, sigma, alpha, gamma);
    *out = {p.alpha, p.rho};
  });
}

dpc_status dpc_compose(const dpc_rdp_point* points, size_t count,
                       dpc_rdp_point* out) {
  return Guard([&] {
    NotNull(out, "out");
    if (count > 0) NotNull(points, "points");
    std::vector<acc::RdpPoint> pts(count);
    for (size_t i = 0; i < count; ++i) pts[i] = {points[i].alpha, points[i].rho};
    const acc::RdpPoint p = acc::Compose(pts);
    *out = {p.alpha, p.rho};
  });
}

dpc_status dpc_rdp_to_dp(dpc_rdp_point point, double delta, dpc_budget* out) {
  return Guard([&] {
    NotNull(out, "out");
    const acc::PrivacyBudget b = acc::RdpToDp({point.alpha, point.rho}, delta);
    *out = {b.epsilon, b.delta};
  });
}

dpc_status dpc_calibrate_step(dpc_budget budget, dpc_mechanism_params params,
                              dpc_calibration* out) {
  return Guard([&] {
    NotNull(out, "out");
    *out = FromCalibration(acc::CalibrateStep(ToBudget(budget), ToParams(params)));
  });
}

dpc_status dpc_calibrate_episode(dpc_budget budget, dpc_mechanism_params params,
                                 dpc_calibration* out) {
  return Guard([&] {
    NotNull(out, "out");
    *out = FromCalibration(
        acc::CalibrateEpisode(ToBudget(budget), ToParams(params)));
  });
}

dpc_status dpc_calibrate_at_beta(dpc_budget budget, dpc_mechanism_params params,
                                 double beta, uint32_t episode_len,
                                 dpc_calibration* out) {
  return Guard([&] {
    NotNull(out, "out");
    *out = FromCalibration(acc::CalibrateAtBeta(ToBudget(budget), ToParams(params),
                                                beta, episode_len));
  });
}

dpc_status dpc_round_trip_epsilon(dpc_calibration calibration, dpc_budget budget,
                                  dpc_mechanism_params params,
                                  uint32_t episode_len, double* epsilon_out) {
  return Guard([&] {
    NotNull(epsilon_out, "epsilon_out");
    *epsilon_out = acc::RoundTripEpsilon(ToCalibration(calibration),
                                         ToBudget(budget), ToParams(params),
                                         episode_len);
  });
}

dpc_status dpc_rr_flip_prob(double epsilon, double* out) {
  return Guard([&] { *NotNull(out, "out") = mech::RrFlipProb(epsilon); });
}

dpc_status dpc_rr_perturb(uint8_t bit, double flip_prob, uint64_t seed,
                          uint8_t* out) {
  return Guard([&] {
    *NotNull(out, "out") = mech::RrPerturb(bit, {flip_prob}, seed);
  });
}

dpc_status dpc_naive_guess(uint8_t own_bit, const uint8_t* received,
                           size_t count, int64_t* out) {
  return Guard([&] {
    *NotNull(out, "out") = mech::NaiveGuess(own_bit, Bits(received, count));
  });
}

dpc_status dpc_naive_bias(const uint8_t* bits, size_t count, size_t agent,
                          double flip_prob, double* out) {
  return Guard([&] {
    *NotNull(out, "out") = mech::NaiveBias(Bits(bits, count), agent, flip_prob);
  });
}

dpc_status dpc_aware_guess(uint8_t own_bit, const uint8_t* received, size_t count,
                           double flip_prob, double* out) {
  return Guard([&] {
    *NotNull(out, "out") =
        mech::AwareGuess(own_bit, Bits(received, count), flip_prob);
  });
}

dpc_status dpc_clip(double* values, size_t dim, double clip_norm) {
  return Guard([&] {
    if (dim > 0) NotNull(values, "values");
    const mech::ClippedVector c =
        mech::Clip(std::span<const double>(values, dim), clip_norm);
    std::copy(c.values.begin(), c.values.end(), values);
  });
}

dpc_status dpc_gaussian_perturb(const double* values, size_t dim,
                                double clip_norm, double sigma, uint64_t seed,
                                double* out) {
  return Guard([&] {
    if (dim > 0) {
      NotNull(values, "values");
      NotNull(out, "out");
    }
    const mech::ClippedVector c =
        mech::Clip(std::span<const double>(values, dim), clip_norm);
    const std::vector<double> noisy = mech::GaussianPerturb(c, sigma, seed);
    std::copy(noisy.begin(), noisy.end(), out);
  });
}

dpc_status dpc_subsample(size_t count, double rate, uint64_t seed,
                         size_t* out_indices, size_t* out_size) {
  return Guard([&] {
    NotNull(out_size, "out_size");
    if (count > 0) NotNull(out_indices, "out_indices");
    std::vector<size_t> items(count);
    std::iota(items.begin(), items.end(), size_t{0});
    const std::vector<size_t> chosen =
        mech::Subsample<size_t>(items, rate, seed);
    std::copy(chosen.begin(), chosen.end(), out_indices);
    *out_size = chosen.size();
  });
}

dpc_status dpc_binary_sums_run(const uint8_t* bits, const double* epsilons,
                               size_t count, dpc_receiver_mode mode,
                               uint64_t trials, uint64_t seed, unsigned jobs,
                               double* guesses, double* utilities,
                               double* std_errors, double* team_reward) {
  return Guard([&] {
    const bs::Outcome o = bs::RunGame(MakeBinarySums(bits, epsilons, count, mode),
                                      trials, seed, jobs);
    StoreOutcome(o, guesses, utilities, std_errors, team_reward);
  });
}

dpc_status dpc_binary_sums_analytic(const uint8_t* bits, const double* epsilons,
                                    size_t count, dpc_receiver_mode mode,
                                    double* guesses, double* utilities,
                                    double* team_reward) {
  return Guard([&] {
    const bs::Outcome o =
        bs::AnalyticOutcome(MakeBinarySums(bits, epsilons, count, mode));
    StoreOutcome(o, guesses, utilities, nullptr, team_reward);
  });
}

dpc_status dpc_cgp_create_binary_sums(const double benefit_weight[2],
                                      const double privacy_weight[2],
                                      dpc_cgp** out) {
  return Guard([&] {
    NotNull(out, "out");
    NotNull(benefit_weight, "benefit_weight");
    NotNull(privacy_weight, "privacy_weight");
    *out = new dpc_cgp{dpcomm::cgp::MakeBinarySumsCgp(
        {benefit_weight[0], benefit_weight[1]},
        {privacy_weight[0], privacy_weight[1]})};
  });
}

dpc_status dpc_cgp_create_custom(const double benefit_weight[2],
                                 const double privacy_weight[2],
                                 const double standalone_values[2],
                                 dpc_cgp_callbacks cb, dpc_cgp** out) {
  return Guard([&] {
    NotNull(out, "out");
    NotNull(benefit_weight, "benefit_weight");
    NotNull(privacy_weight, "privacy_weight");
    NotNull(standalone_values, "standalone_values");
    NotNull(cb.value, "callbacks.value");
    NotNull(cb.privacy_loss, "callbacks.privacy_loss");
    NotNull(cb.benefit, "callbacks.benefit");
    auto fail = [] {
      dpcomm::Fail(dpcomm::ErrorCode::kEvaluation, "callback reported failure");
    };
    auto value = [cb, fail](double p1, double p2) {
      double v[2] = {0.0, 0.0};
      if (cb.value(cb.user, p1, p2, v) != 0) fail();
      return dpcomm::cgp::PlayerPair{v[0], v[1]};
    };
    auto loss = [cb, fail](double p) {
      double v = 0.0;
      if (cb.privacy_loss(cb.user, p, &v) != 0) fail();
      return v;
    };
    auto benefit = [cb, fail](double standalone, double cooperative) {
      double v = 0.0;
      if (cb.benefit(cb.user, standalone, cooperative, &v) != 0) fail();
      return v;
    };
    *out = new dpc_cgp{dpcomm::cgp::Instance(
        {benefit_weight[0], benefit_weight[1]},
        {privacy_weight[0], privacy_weight[1]}, value,
        {standalone_values[0], standalone_values[1]}, loss, benefit)};
  });
}

void dpc_cgp_destroy(dpc_cgp* game) { delete game; }

dpc_status dpc_cgp_utility(const dpc_cgp* game, double p1, double p2,
                           double out_utilities[2]) {
  return Guard([&] {
    NotNull(game, "game");
    NotNull(out_utilities, "out_utilities");
    const auto u = game->instance.Utility(dpcomm::cgp::StrategyProfile{{p1, p2}});
    out_utilities[0] = u[0];
    out_utilities[1] = u[1];
  });
}

dpc_status dpc_cgp_is_potential_game(const dpc_cgp* game, double grid_step,
                                     double tol, int* holds,
                                     double* max_deviation) {
  return Guard([&] {
    NotNull(game, "game");
    const auto r = dpcomm::cgp::IsPotentialGame(game->instance, grid_step, tol);
    if (holds) *holds = r.holds ? 1 : 0;
    if (max_deviation) *max_deviation = r.max_deviation;
  });
}

dpc_status dpc_cgp_value_derivatives_match(const dpc_cgp* game, double grid_step,
                                           double tol, int* holds) {
  return Guard([&] {
    NotNull(game, "game");
    *NotNull(holds, "holds") =
        dpcomm::cgp::ValueDerivativesMatch(game->instance, grid_step, tol) ? 1 : 0;
  });
}

dpc_status dpc_cgp_best_response(const dpc_cgp* game, int player,
                                 double opponent_p, double grid_step,
                                 double* out) {
  return Guard([&] {
    NotNull(game, "game");
    *NotNull(out, "out") =
        dpcomm::cgp::BestResponse(game->instance, player, opponent_p, grid_step);
  });
}

dpc_status dpc_cgp_find_nash(const dpc_cgp* game, double start_p1,
                             double start_p2, int max_iters, double tol,
                             double grid_step, dpc_nash_result* out) {
  return Guard([&] {
    NotNull(game, "game");
    NotNull(out, "out");
    const auto r = dpcomm::cgp::FindNash(
        game->instance, dpcomm::cgp::StrategyProfile{{start_p1, start_p2}},
        max_iters, tol, grid_step);
    *out = {r.profile.p[0], r.profile.p[1], r.converged ? 1 : 0, r.sweeps,
            r.max_deviation_gain};
  });
}

dpc_status dpc_mrs_create(const dpc_mrs_config* cfg, dpc_mrs_game** out) {
  return Guard([&] {
    NotNull(cfg, "cfg");
    NotNull(out, "out");
    mr::Config c;
    c.num_agents = cfg->num_agents;
    c.horizon = cfg->horizon;
    c.discount = cfg->discount;
    c.reward_alpha = cfg->reward_alpha;
    c.reward_beta = cfg->reward_beta;
    if (cfg->num_agents > 0) NotNull(cfg->initial_savings, "initial_savings");
    c.initial_savings.assign(cfg->initial_savings,
                             cfg->initial_savings + cfg->num_agents);
    if (cfg->spend_grid_size > 0) NotNull(cfg->spend_grid, "spend_grid");
    c.spend_grid.assign(cfg->spend_grid, cfg->spend_grid + cfg->spend_grid_size);
    if (cfg->privacy_grid_size > 0) NotNull(cfg->privacy_grid, "privacy_grid");
    c.privacy_grid.assign(cfg->privacy_grid,
                          cfg->privacy_grid + cfg->privacy_grid_size);
    if (cfg->team_weight) {
      c.team_weight.assign(cfg->team_weight, cfg->team_weight + cfg->num_agents);
    }
    mr::State start = mr::InitialState(c);
    *out = new dpc_mrs_game{mr::Game(std::move(c), std::move(start))};
  });
}

void dpc_mrs_destroy(dpc_mrs_game* game) { delete game; }

dpc_status dpc_mrs_step_reward(const dpc_mrs_game* game, const double* savings,
                               const dpc_mrs_action* actions, size_t agent,
                               double* out) {
  return Guard([&] {
    NotNull(game, "game");
    const auto acts = MakeActions(game->game, actions);
    *NotNull(out, "out") = mr::StepReward(MakeState(game->game, savings), acts,
                                          agent, game->game.config());
  });
}

dpc_status dpc_mrs_potential(const dpc_mrs_game* game, const double* savings,
                             const dpc_mrs_action* actions, double* out) {
  return Guard([&] {
    NotNull(game, "game");
    const auto acts = MakeActions(game->game, actions);
    *NotNull(out, "out") =
        mr::Potential(MakeState(game->game, savings), acts, game->game.config());
  });
}

dpc_status dpc_mrs_theta(const dpc_mrs_game* game, const double* savings,
                         const dpc_mrs_action* actions, size_t agent,
                         double* out) {
  return Guard([&] {
    NotNull(game, "game");
    const auto acts = MakeActions(game->game, actions);
    *NotNull(out, "out") = mr::Theta(MakeState(game->game, savings), acts, agent,
                                     game->game.config());
  });
}

dpc_status dpc_mrs_transition(const dpc_mrs_game* game, const double* savings,
                              const dpc_mrs_action* actions,
                              double* next_savings) {
  return Guard([&] {
    NotNull(game, "game");
    NotNull(next_savings, "next_savings");
    const auto acts = MakeActions(game->game, actions);
    const mr::State next = mr::Transition(MakeState(game->game, savings), acts);
    std::copy(next.savings.begin(), next.savings.end(), next_savings);
  });
}

dpc_status dpc_mrs_verify(const dpc_mrs_game* game, double tol, double budget,
                          int* holds, double* max_violation, uint64_t* profiles) {
  return Guard([&] {
    NotNull(game, "game");
    const mr::MpgCheck r = mr::VerifyMpg(game->game, tol, budget);
    if (holds) *holds = r.holds ? 1 : 0;
    if (max_violation) *max_violation = r.max_violation;
    if (profiles) *profiles = r.profiles;
  });
}

dpc_status dpc_mrs_default_profile(const dpc_mrs_game* game,
                                   dpc_mrs_profile** out) {
  return Guard([&] {
    NotNull(game, "game");
    NotNull(out, "out");
    *out = new dpc_mrs_profile{game->game.DefaultProfile()};
  });
}

void dpc_mrs_profile_destroy(dpc_mrs_profile* profile) { delete profile; }

dpc_status dpc_mrs_policy_value(const dpc_mrs_game* game,
                                const dpc_mrs_profile* profile, size_t agent,
                                double* out) {
  return Guard([&] {
    NotNull(game, "game");
    NotNull(profile, "profile");
    *NotNull(out, "out") = mr::PolicyValue(game->game, profile->policies, agent);
  });
}

dpc_status dpc_mrs_potential_value(const dpc_mrs_game* game,
                                   const dpc_mrs_profile* profile, double* out) {
  return Guard([&] {
    NotNull(game, "game");
    NotNull(profile, "profile");
    *NotNull(out, "out") = mr::PotentialValue(game->game, profile->policies);
  });
}

dpc_status dpc_mrs_best_response(const dpc_mrs_game* game,
                                 dpc_mrs_profile* profile, size_t agent) {
  return Guard([&] {
    NotNull(game, "game");
    NotNull(profile, "profile");
    mr::TabularPolicy br =
        mr::BestResponsePolicy(game->game, profile->policies, agent);
    profile->policies[agent] = std::move(br);
  });
}

dpc_status dpc_mrs_find_nash(const dpc_mrs_game* game, int max_sweeps,
                             dpc_mrs_profile** out, int* converged, int* sweeps,
                             double* trace, size_t trace_capacity,
                             size_t* trace_size) {
  return Guard([&] {
    NotNull(game, "game");
    NotNull(out, "out");
    mr::MpgNash r = mr::FindMpgNash(game->game, max_sweeps);
    if (converged) *converged = r.converged ? 1 : 0;
    if (sweeps) *sweeps = r.sweeps;
    if (trace_size) *trace_size = r.potential_trace.size();
    if (trace) {
      const size_t n = std::min(trace_capacity, r.potential_trace.size());
      std::copy_n(r.potential_trace.begin(), n, trace);
    }
    *out = new dpc_mrs_profile{std::move(r.profile)};
  });
}

dpc_status dpc_mrs_profile_entries(const dpc_mrs_game* game,
                                   const dpc_mrs_profile* profile,
                                   dpc_mrs_policy_entry* entries,
                                   size_t capacity, size_t* count) {
  return Guard([&] {
    NotNull(game, "game");
    NotNull(profile, "profile");
    NotNull(count, "count");
    game->game.Check(profile->policies);
    std::vector<dpc_mrs_policy_entry> all;
    for (size_t i = 0; i < game->game.num_agents(); ++i) {
      const mr::LocalLattice& lat = game->game.lattice(i);
      for (size_t l = 0; l < lat.levels.size(); ++l) {
        for (size_t s = 0; s < lat.levels[l].size(); ++s) {
          const mr::Action& a = lat.actions[l][s][profile->policies[i].choice[l][s]];
          all.push_back({static_cast<uint32_t>(i),
                         lat.first_step + static_cast<uint32_t>(l),
                         lat.levels[l][s], a.spend, a.privacy});
        }
      }
    }
    *count = all.size();
    if (entries == nullptr) return;
    if (capacity < all.size()) throw BufferTooSmall{all.size()};
    std::copy(all.begin(), all.end(), entries);
  });
}

dpc_status dpc_kl_gaussian(size_t dim, const double* mean_p, const double* cov_p,
                           const double* mean_q, const double* cov_q,
                           double* out) {
  return Guard([&] {
    NotNull(out, "out");
    dpcomm::Require(dim > 0, "dimension must be positive");
    const auto p = snd::MakeDist(Vec(mean_p, dim, "mean_p"), Mat(cov_p, dim, "cov_p"));
    const auto q = snd::MakeDist(Vec(mean_q, dim, "mean_q"), Mat(cov_q, dim, "cov_q"));
    *out = snd::KlGaussian(p, q);
  });
}

dpc_status dpc_sender_oblivious(size_t dim, const double* target_mean,
                                const double* target_cov, double noise_var,
                                double* out_mean, double* out_cov,
                                dpc_sender_solution* out) {
  return Guard([&] {
    NotNull(out, "out");
    const auto s = snd::ObliviousOptimum(MakeProblem(dim, target_mean, target_cov, noise_var));
    StoreDist(s.dist, out_mean, out_cov);
    *out = {s.achieved_kl, 0};
  });
}

dpc_status dpc_sender_aware(size_t dim, const double* target_mean,
                            const double* target_cov, double noise_var,
                            double* out_mean, double* out_cov,
                            dpc_sender_solution* out) {
  return Guard([&] {
    NotNull(out, "out");
    const auto s = snd::AwareOptimum(MakeProblem(dim, target_mean, target_cov, noise_var));
    StoreDist(s.dist, out_mean, out_cov);
    *out = {s.achieved_kl, 0};
  });
}

dpc_status dpc_sender_aware_gd(size_t dim, const double* target_mean,
                               const double* target_cov, double noise_var,
                               int steps, double learning_rate,
                               int full_covariance, double* out_mean,
                               double* out_cov, dpc_sender_solution* out) {
  return Guard([&] {
    NotNull(out, "out");
    const auto r = snd::AwareOptimumGd(
        MakeProblem(dim, target_mean, target_cov, noise_var), steps, learning_rate,
        full_covariance ? snd::CovarianceParam::kFullFactor
                        : snd::CovarianceParam::kDiagonal);
    StoreDist(r.solution.dist, out_mean, out_cov);
    *out = {r.solution.achieved_kl, r.steps_run};
  });
}

dpc_status dpc_sample_message(size_t dim, const double* mean, const double* cov,
                              double noise_var, uint64_t seed, double* out) {
  return Guard([&] {
    NotNull(out, "out");
    dpcomm::Require(dim > 0, "dimension must be positive");
    const auto dist = snd::MakeDist(Vec(mean, dim, "mean"), Mat(cov, dim, "cov"));
    const Eigen::VectorXd x = snd::SampleMessage(dist, noise_var, seed);
    Eigen::Map<Eigen::VectorXd>(out, x.size()) = x;
  });
}

}  // extern "C"
