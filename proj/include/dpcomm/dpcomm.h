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

/*
 * C interface to the dpcomm library.
 *
 * Every function returns a dpc_status. On failure the thread-local message
 * from dpc_last_error() describes the problem; outputs are left untouched.
 * Arrays are caller-allocated unless a function says otherwise; matrices are
 * dense row-major. Opaque handles are released with their *_destroy
 * function, which accepts NULL.
 */

#ifndef DPCOMM_DPCOMM_H_
#define DPCOMM_DPCOMM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DPC_API __declspec(dllexport)
#else
#define DPC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dpc_status {
  DPC_OK = 0,
  DPC_ERR_INVALID_PARAMETER = 1,
  DPC_ERR_INFEASIBLE_ORDER = 2,
  DPC_ERR_COMPOSITION_ORDER = 3,
  DPC_ERR_CALIBRATION_INFEASIBLE = 4,
  DPC_ERR_DEGENERATE_MECHANISM = 5,
  DPC_ERR_EVALUATION = 6,
  DPC_ERR_INVALID_ACTION = 7,
  DPC_ERR_ENUMERATION_BUDGET = 8,
  DPC_ERR_SINGULAR_TARGET = 9,
  DPC_ERR_STEP_SIZE = 10,
  DPC_ERR_NULL_ARGUMENT = 11,
  DPC_ERR_BUFFER_TOO_SMALL = 12,
  DPC_ERR_INTERNAL = 13
} dpc_status;

DPC_API const char* dpc_version(void);
DPC_API const char* dpc_status_name(dpc_status status);
/* Message of the last failing call on this thread ("" after success). */
DPC_API const char* dpc_last_error(void);

/* ---- Renyi-DP accounting ------------------------------------------------ */

typedef struct dpc_rdp_point {
  double alpha;
  double rho;
} dpc_rdp_point;

typedef struct dpc_budget {
  double epsilon;
  double delta;
} dpc_budget;

typedef struct dpc_mechanism_params {
  double clip_norm;
  double sample_rate_data;
  double sample_rate_agents;
  uint32_t num_agents;
  uint32_t episode_len;
} dpc_mechanism_params;

typedef struct dpc_calibration {
  double sigma_sq;
  double alpha;
  double beta;
  double sigma_prime_sq;
  int feasible;
} dpc_calibration;

DPC_API dpc_status dpc_gaussian_rdp(double sensitivity, double sigma,
                                    double alpha, dpc_rdp_point* out);
DPC_API dpc_status dpc_subsampled_gaussian_rdp(double sensitivity, double sigma,
                                               double alpha, double gamma,
                                               dpc_rdp_point* out);
DPC_API dpc_status dpc_compose(const dpc_rdp_point* points, size_t count,
                               dpc_rdp_point* out);
DPC_API dpc_status dpc_rdp_to_dp(dpc_rdp_point point, double delta,
                                 dpc_budget* out);
DPC_API dpc_status dpc_calibrate_step(dpc_budget budget,
                                      dpc_mechanism_params params,
                                      dpc_calibration* out);
DPC_API dpc_status dpc_calibrate_episode(dpc_budget budget,
                                         dpc_mechanism_params params,
                                         dpc_calibration* out);
/* Closed form at a fixed beta; infeasibility is reported via out->feasible. */
DPC_API dpc_status dpc_calibrate_at_beta(dpc_budget budget,
                                         dpc_mechanism_params params,
                                         double beta, uint32_t episode_len,
                                         dpc_calibration* out);
/* Epsilon certified by replaying the accounting chain for `calibration`. */
DPC_API dpc_status dpc_round_trip_epsilon(dpc_calibration calibration,
                                          dpc_budget budget,
                                          dpc_mechanism_params params,
                                          uint32_t episode_len,
                                          double* epsilon_out);

/* ---- Local mechanisms ---------------------------------------------------- */

DPC_API dpc_status dpc_rr_flip_prob(double epsilon, double* out);
DPC_API dpc_status dpc_rr_perturb(uint8_t bit, double flip_prob, uint64_t seed,
                                  uint8_t* out);
DPC_API dpc_status dpc_naive_guess(uint8_t own_bit, const uint8_t* received,
                                   size_t count, int64_t* out);
DPC_API dpc_status dpc_naive_bias(const uint8_t* bits, size_t count,
                                  size_t agent, double flip_prob, double* out);
DPC_API dpc_status dpc_aware_guess(uint8_t own_bit, const uint8_t* received,
                                   size_t count, double flip_prob, double* out);
/* In-place l2 clipping of values[0..dim). */
DPC_API dpc_status dpc_clip(double* values, size_t dim, double clip_norm);
DPC_API dpc_status dpc_gaussian_perturb(const double* values, size_t dim,
                                        double clip_norm, double sigma,
                                        uint64_t seed, double* out);
/* Writes the chosen indices (ascending) to out_indices, which must hold
 * `count` entries; *out_size receives the subset size. */
DPC_API dpc_status dpc_subsample(size_t count, double rate, uint64_t seed,
                                 size_t* out_indices, size_t* out_size);

/* ---- Single-round binary sums ------------------------------------------- */

typedef enum dpc_receiver_mode {
  DPC_RECEIVER_NAIVE = 0,
  DPC_RECEIVER_AWARE = 1
} dpc_receiver_mode;

/* Per-agent outputs are arrays of `count` entries; std_errors may be NULL.
 * An epsilon of +INFINITY sends the bit in the clear. */
DPC_API dpc_status dpc_binary_sums_run(const uint8_t* bits,
                                       const double* epsilons, size_t count,
                                       dpc_receiver_mode mode, uint64_t trials,
                                       uint64_t seed, unsigned jobs,
                                       double* guesses, double* utilities,
                                       double* std_errors, double* team_reward);
DPC_API dpc_status dpc_binary_sums_analytic(const uint8_t* bits,
                                            const double* epsilons,
                                            size_t count,
                                            dpc_receiver_mode mode,
                                            double* guesses, double* utilities,
                                            double* team_reward);

/* ---- Two-player collaborative game with privacy -------------------------- */

typedef struct dpc_cgp dpc_cgp;

/* Callbacks for custom games. Return 0 on success, nonzero to abort the
 * evaluation with DPC_ERR_EVALUATION. */
typedef struct dpc_cgp_callbacks {
  int (*value)(void* user, double p1, double p2, double out_values[2]);
  int (*privacy_loss)(void* user, double p, double* out);
  int (*benefit)(void* user, double standalone, double cooperative,
                 double* out);
  void* user;
} dpc_cgp_callbacks;

DPC_API dpc_status dpc_cgp_create_binary_sums(const double benefit_weight[2],
                                              const double privacy_weight[2],
                                              dpc_cgp** out);
DPC_API dpc_status dpc_cgp_create_custom(const double benefit_weight[2],
                                         const double privacy_weight[2],
                                         const double standalone_values[2],
                                         dpc_cgp_callbacks callbacks,
                                         dpc_cgp** out);
DPC_API void dpc_cgp_destroy(dpc_cgp* game);

DPC_API dpc_status dpc_cgp_utility(const dpc_cgp* game, double p1, double p2,
                                   double out_utilities[2]);
DPC_API dpc_status dpc_cgp_is_potential_game(const dpc_cgp* game,
                                             double grid_step, double tol,
                                             int* holds, double* max_deviation);
DPC_API dpc_status dpc_cgp_value_derivatives_match(const dpc_cgp* game,
                                                   double grid_step, double tol,
                                                   int* holds);
DPC_API dpc_status dpc_cgp_best_response(const dpc_cgp* game, int player,
                                         double opponent_p, double grid_step,
                                         double* out);

typedef struct dpc_nash_result {
  double p1;
  double p2;
  int converged;
  int sweeps;
  double max_deviation_gain;
} dpc_nash_result;

DPC_API dpc_status dpc_cgp_find_nash(const dpc_cgp* game, double start_p1,
                                     double start_p2, int max_iters, double tol,
                                     double grid_step, dpc_nash_result* out);

/* ---- Multiple round sums (Markov potential game) ------------------------ */

typedef struct dpc_mrs_config {
  uint32_t num_agents;
  uint32_t horizon;
  double discount;
  double reward_alpha;
  double reward_beta;
  const double* initial_savings; /* num_agents entries */
  const double* spend_grid;
  size_t spend_grid_size;
  const double* privacy_grid;
  size_t privacy_grid_size;
  const double* team_weight; /* NULL or num_agents entries */
} dpc_mrs_config;

typedef struct dpc_mrs_action {
  double spend;
  double privacy;
} dpc_mrs_action;

typedef struct dpc_mrs_game dpc_mrs_game;
typedef struct dpc_mrs_profile dpc_mrs_profile;

/* The game starts at step 0 from cfg->initial_savings. */
DPC_API dpc_status dpc_mrs_create(const dpc_mrs_config* cfg, dpc_mrs_game** out);
DPC_API void dpc_mrs_destroy(dpc_mrs_game* game);

DPC_API dpc_status dpc_mrs_step_reward(const dpc_mrs_game* game,
                                       const double* savings,
                                       const dpc_mrs_action* actions,
                                       size_t agent, double* out);
DPC_API dpc_status dpc_mrs_potential(const dpc_mrs_game* game,
                                     const double* savings,
                                     const dpc_mrs_action* actions,
                                     double* out);
DPC_API dpc_status dpc_mrs_theta(const dpc_mrs_game* game,
                                 const double* savings,
                                 const dpc_mrs_action* actions, size_t agent,
                                 double* out);
/* next_savings receives num_agents entries. */
DPC_API dpc_status dpc_mrs_transition(const dpc_mrs_game* game,
                                      const double* savings,
                                      const dpc_mrs_action* actions,
                                      double* next_savings);

DPC_API dpc_status dpc_mrs_verify(const dpc_mrs_game* game, double tol,
                                  double budget, int* holds,
                                  double* max_violation, uint64_t* profiles);

/* Policy profile where every agent spends nothing at the lowest privacy. */
DPC_API dpc_status dpc_mrs_default_profile(const dpc_mrs_game* game,
                                           dpc_mrs_profile** out);
DPC_API void dpc_mrs_profile_destroy(dpc_mrs_profile* profile);
DPC_API dpc_status dpc_mrs_policy_value(const dpc_mrs_game* game,
                                        const dpc_mrs_profile* profile,
                                        size_t agent, double* out);
DPC_API dpc_status dpc_mrs_potential_value(const dpc_mrs_game* game,
                                           const dpc_mrs_profile* profile,
                                           double* out);
/* Replaces the agent's policy in `profile` by its exact best response. */
DPC_API dpc_status dpc_mrs_best_response(const dpc_mrs_game* game,
                                         dpc_mrs_profile* profile,
                                         size_t agent);

/* Best-response dynamics from the default profile. *out receives a new
 * profile; trace (may be NULL) receives up to trace_capacity potential
 * values and *trace_size the full trace length. */
DPC_API dpc_status dpc_mrs_find_nash(const dpc_mrs_game* game, int max_sweeps,
                                     dpc_mrs_profile** out, int* converged,
                                     int* sweeps, double* trace,
                                     size_t trace_capacity, size_t* trace_size);

/* Tabular entries of a profile: agent-major, then step, then saving. */
typedef struct dpc_mrs_policy_entry {
  uint32_t agent;
  uint32_t step;
  double saving;
  double spend;
  double privacy;
} dpc_mrs_policy_entry;

DPC_API dpc_status dpc_mrs_profile_entries(const dpc_mrs_game* game,
                                           const dpc_mrs_profile* profile,
                                           dpc_mrs_policy_entry* entries,
                                           size_t capacity, size_t* count);

/* ---- Gaussian message sender -------------------------------------------- */

typedef struct dpc_sender_solution {
  double achieved_kl;
  int steps_run; /* gradient descent only */
} dpc_sender_solution;

/* KL(N(mean_p, cov_p) || N(mean_q, cov_q)) in dimension dim. */
DPC_API dpc_status dpc_kl_gaussian(size_t dim, const double* mean_p,
                                   const double* cov_p, const double* mean_q,
                                   const double* cov_q, double* out);

/* Sender problems: target mean (dim), target covariance (dim x dim) and the
 * channel noise variance. out_mean / out_cov may be NULL. */
DPC_API dpc_status dpc_sender_oblivious(size_t dim, const double* target_mean,
                                        const double* target_cov,
                                        double noise_var, double* out_mean,
                                        double* out_cov,
                                        dpc_sender_solution* out);
DPC_API dpc_status dpc_sender_aware(size_t dim, const double* target_mean,
                                    const double* target_cov, double noise_var,
                                    double* out_mean, double* out_cov,
                                    dpc_sender_solution* out);
/* full_covariance = 0 runs the projected diagonal solver. */
DPC_API dpc_status dpc_sender_aware_gd(size_t dim, const double* target_mean,
                                       const double* target_cov,
                                       double noise_var, int steps,
                                       double learning_rate,
                                       int full_covariance, double* out_mean,
                                       double* out_cov,
                                       dpc_sender_solution* out);
DPC_API dpc_status dpc_sample_message(size_t dim, const double* mean,
                                      const double* cov, double noise_var,
                                      uint64_t seed, double* out);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* DPCOMM_DPCOMM_H_ */
