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
#include "commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace dpcomm::cli {

void Check(dpc_status status) {
  if (status != DPC_OK) {
    throw ApiError(status, std::string(dpc_status_name(status)) + ": " +
                               dpc_last_error());
  }
}

void Context::Emit(const Table& table) const {
  const bool json = format == Format::kJson;
  const std::filesystem::path path =
      out_dir / (table.name + (json ? ".json" : ".csv"));
  WriteFile(path, json ? RenderJson(table, provenance) : RenderCsv(table, provenance));
  std::printf("%s\n", path.string().c_str());
}

void Context::EmitPlot(const std::string& stem, const PlotSpec& spec,
                       const std::vector<Series>& series) const {
  const std::filesystem::path path = out_dir / (stem + ".svg");
  WriteFile(path, RenderSvg(spec, series, provenance));
  std::printf("%s\n", path.string().c_str());
}

namespace {

// ---------------------------------------------------------------- calibrate

int Calibrate(const Context& ctx) {
  const Config& cfg = ctx.config;
  cfg.Allow({"epsilons", "delta", "sample_rate_data", "sample_rate_agents",
             "num_agents", "clip_norm", "episode_lens", "plot"});
  const auto epsilons = cfg.Numbers("epsilons");
  const auto deltas = cfg.Numbers("delta");
  const auto gamma1s = cfg.Numbers("sample_rate_data");
  const auto gamma2s = cfg.Numbers("sample_rate_agents");
  const auto agents = cfg.Unsigneds("num_agents");
  const auto clips = cfg.Numbers("clip_norm", std::vector<double>{1.0});
  const auto lens = cfg.Unsigneds("episode_lens", std::vector<uint64_t>{1});
  const bool plot = cfg.Flag("plot", false);
  for (uint64_t n : agents) {
    if (n == 0 || n > UINT32_MAX) cfg.Fail("num_agents", "must be in [1, 2^32)");
  }
  for (uint64_t t : lens) {
    if (t == 0 || t > UINT32_MAX) cfg.Fail("episode_lens", "must be in [1, 2^32)");
  }

  Table table{"calibrate",
              {"epsilon", "delta", "sample_rate_data", "sample_rate_agents",
               "num_agents", "clip_norm", "episode_len", "sigma_sq", "alpha",
               "beta", "sigma_prime_sq", "feasible", "sigma_sq_ratio",
               "epsilon_certified", "note"},
              {}};
  std::vector<Series> series;
  bool any_infeasible = false;
  for (double delta : deltas)
    for (double g1 : gamma1s)
      for (double g2 : gamma2s)
        for (uint64_t n : agents)
          for (double clip : clips)
            for (uint64_t t : lens) {
              Series s;
              s.label = "T=" + std::to_string(t) + " N=" + std::to_string(n) +
                        " g1=" + FormatNumber(g1);
              for (double eps : epsilons) {
                const dpc_budget budget{eps, delta};
                const dpc_mechanism_params params{clip, g1, g2,
                                                  static_cast<uint32_t>(n),
                                                  static_cast<uint32_t>(t)};
                dpc_calibration cal{};
                const dpc_status st = dpc_calibrate_episode(budget, params, &cal);
                std::vector<Cell> row = {eps, delta, g1, g2, n, clip, t};
                if (st == DPC_ERR_CALIBRATION_INFEASIBLE) {
                  any_infeasible = true;
                  row.insert(row.end(), {Cell{}, Cell{}, Cell{}, Cell{}, false,
                                         Cell{}, Cell{}, std::string(dpc_last_error())});
                  s.x.push_back(eps);
                  s.y.push_back(NAN);
                } else {
                  Check(st);
                  dpc_calibration single{};
                  Check(dpc_calibrate_at_beta(budget, params, cal.beta, 1, &single));
                  double certified = 0.0;
                  Check(dpc_round_trip_epsilon(cal, budget, params,
                                               static_cast<uint32_t>(t), &certified));
                  row.insert(row.end(),
                             {cal.sigma_sq, cal.alpha, cal.beta, cal.sigma_prime_sq,
                              true, cal.sigma_sq / single.sigma_sq, certified,
                              std::string()});
                  s.x.push_back(eps);
                  s.y.push_back(cal.sigma_sq);
                }
                table.Add(std::move(row));
              }
              series.push_back(std::move(s));
            }
  ctx.Emit(table);
  if (plot) {
    ctx.EmitPlot("calibrate", {"Calibrated noise variance", "epsilon", "sigma^2",
                               true, true},
                 series);
  }
  return any_infeasible ? kExitFailure : kExitOk;
}

// -------------------------------------------------------------- binary-sums

// Monte-Carlo means must sit within this many standard errors of the exact
// expectation.
constexpr double kAgreementSe = 4.0;

int BinarySums(const Context& ctx) {
  const Config& cfg = ctx.config;
  cfg.Allow({"bits", "epsilons", "trials", "modes"});
  std::vector<uint8_t> bits;
  const nlohmann::json& jbits = cfg.Get("bits");
  if (!jbits.is_array() || jbits.empty()) cfg.Fail("bits", "expected a non-empty list");
  for (const auto& b : jbits) {
    const uint64_t v = cfg.AsUnsigned(b, "bits");
    if (v > 1) cfg.Fail("bits", "entries must be 0 or 1");
    bits.push_back(static_cast<uint8_t>(v));
  }
  const std::size_t n = bits.size();

  // Each setting is one epsilon for everyone or a per-agent list.
  std::vector<std::vector<double>> settings;
  const nlohmann::json& jeps = cfg.Get("epsilons");
  if (!jeps.is_array() || jeps.empty()) {
    cfg.Fail("epsilons", "expected a non-empty list of settings");
  }
  for (const auto& e : jeps) {
    if (e.is_array()) {
      if (e.size() != n) cfg.Fail("epsilons", "per-agent settings need one entry per bit");
      std::vector<double> v;
      for (const auto& x : e) v.push_back(cfg.AsNumber(x, "epsilons"));
      settings.push_back(std::move(v));
    } else {
      settings.emplace_back(n, cfg.AsNumber(e, "epsilons"));
    }
  }
  const uint64_t trials = cfg.Unsigned("trials");
  if (trials == 0) cfg.Fail("trials", "must be at least 1");
  std::vector<dpc_receiver_mode> modes;
  std::vector<std::string> mode_names;
  const nlohmann::json jmodes =
      cfg.Has("modes") ? cfg.Get("modes") : nlohmann::json{"naive", "aware"};
  if (!jmodes.is_array() || jmodes.empty()) cfg.Fail("modes", "expected a non-empty list");
  for (const auto& m : jmodes) {
    const std::string name = m.is_string() ? m.get<std::string>() : "";
    if (name == "naive") {
      modes.push_back(DPC_RECEIVER_NAIVE);
    } else if (name == "aware") {
      modes.push_back(DPC_RECEIVER_AWARE);
    } else {
      cfg.Fail("modes", "expected \"naive\" or \"aware\", got " + m.dump());
    }
    mode_names.push_back(name);
  }

  int true_sum = 0;
  for (uint8_t b : bits) true_sum += b;
  Table table{"binary_sums",
              {"setting", "mode", "agent", "epsilon", "flip_prob", "true_sum",
               "analytic_guess", "mc_guess", "std_error", "analytic_bias",
               "mc_minus_analytic", "analytic_utility", "mc_utility", "agree"},
              {}};
  bool all_agree = true;
  for (std::size_t s = 0; s < settings.size(); ++s) {
    const std::vector<double>& eps = settings[s];
    for (std::size_t m = 0; m < modes.size(); ++m) {
      std::vector<double> ag(n), au(n), mg(n), mu(n), se(n);
      double at = 0.0, mt = 0.0;
      Check(dpc_binary_sums_analytic(bits.data(), eps.data(), n, modes[m], ag.data(),
                                     au.data(), &at));
      Check(dpc_binary_sums_run(bits.data(), eps.data(), n, modes[m], trials,
                                ctx.seed, ctx.jobs, mg.data(), mu.data(), se.data(),
                                &mt));
      bool setting_agrees = true;
      for (std::size_t i = 0; i < n; ++i) {
        double p = 0.0;
        Check(dpc_rr_flip_prob(eps[i], &p));
        const bool agree = std::abs(mg[i] - ag[i]) <= kAgreementSe * se[i] + 1e-12;
        setting_agrees = setting_agrees && agree;
        table.Add({uint64_t{s}, mode_names[m], std::to_string(i), eps[i], p,
                   int64_t{true_sum}, ag[i], mg[i], se[i], ag[i] - true_sum,
                   mg[i] - ag[i], au[i], mu[i], agree});
      }
      all_agree = all_agree && setting_agrees;
      table.Add({uint64_t{s}, mode_names[m], std::string("team"), Cell{}, Cell{},
                 int64_t{true_sum}, Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, at, mt,
                 setting_agrees});
    }
  }
  ctx.Emit(table);
  return all_agree ? kExitOk : kExitFailure;
}

// -------------------------------------------------------------- equilibrium

struct CgpDeleter {
  void operator()(dpc_cgp* g) const { dpc_cgp_destroy(g); }
};
using CgpPtr = std::unique_ptr<dpc_cgp, CgpDeleter>;

// Values independent of the strategies: no benefit, no privacy cost.
int ConstantValues(void*, double, double, double out[2]) {
  out[0] = out[1] = 0.0;
  return 0;
}
int ZeroLoss(void*, double, double* out) {
  *out = 0.0;
  return 0;
}
int DifferenceBenefit(void*, double standalone, double cooperative, double* out) {
  *out = cooperative - standalone;
  return 0;
}

std::array<double, 2> Pair(const Config& cfg, std::string_view key, double fallback) {
  const std::vector<double> v = cfg.Numbers(key, std::vector<double>{fallback});
  if (v.size() == 1) return {v[0], v[0]};
  if (v.size() != 2) cfg.Fail(key, "expected a number or a pair");
  return {v[0], v[1]};
}

// Uniform [0, 1) from the top 53 bits, independent of the standard library.
double Unit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

int Equilibrium(const Context& ctx) {
  const Config& cfg = ctx.config;
  cfg.Allow({"game", "benefit_weight", "privacy_weight", "starts",
             "num_random_starts", "tol", "max_iters", "grid_step",
             "potential_grid_step", "potential_tol"});
  const std::string game = cfg.String("game", std::string("binary_sums"));
  const auto bw = Pair(cfg, "benefit_weight", 2.0);
  const auto pw = Pair(cfg, "privacy_weight", 1.0);
  const double tol = cfg.Number("tol", 1e-8);
  const uint64_t max_iters = cfg.Unsigned("max_iters", 1000);
  const double grid_step = cfg.Number("grid_step", 1e-3);
  const double pot_step = cfg.Number("potential_grid_step", 0.05);
  const double pot_tol = cfg.Number("potential_tol", 1e-6);
  if (max_iters > INT32_MAX) cfg.Fail("max_iters", "too large");

  std::vector<std::array<double, 2>> starts;
  if (cfg.Has("starts")) {
    const nlohmann::json& js = cfg.Get("starts");
    if (!js.is_array()) cfg.Fail("starts", "expected a list of [p1, p2] pairs");
    for (const auto& s : js) {
      if (!s.is_array() || s.size() != 2) cfg.Fail("starts", "expected [p1, p2] pairs");
      starts.push_back({cfg.AsNumber(s[0], "starts"), cfg.AsNumber(s[1], "starts")});
    }
  }
  const uint64_t num_random =
      cfg.Unsigned("num_random_starts", starts.empty() ? 10 : 0);
  std::mt19937_64 gen(ctx.seed);
  for (uint64_t k = 0; k < num_random; ++k) {
    const double a = Unit(gen);
    starts.push_back({a, Unit(gen)});
  }
  if (starts.empty()) cfg.Fail("starts", "no starting profiles");

  dpc_cgp* raw = nullptr;
  if (game == "binary_sums") {
    Check(dpc_cgp_create_binary_sums(bw.data(), pw.data(), &raw));
  } else if (game == "constant") {
    const double standalone[2] = {0.0, 0.0};
    const dpc_cgp_callbacks cb{ConstantValues, ZeroLoss, DifferenceBenefit, nullptr};
    Check(dpc_cgp_create_custom(bw.data(), pw.data(), standalone, cb, &raw));
  } else {
    cfg.Fail("game", "expected \"binary_sums\" or \"constant\"");
  }
  CgpPtr g(raw);

  Table runs{"equilibrium",
             {"start", "start_p1", "start_p2", "p1", "p2", "p1_plus_p2", "converged",
              "sweeps", "max_deviation_gain"},
             {}};
  uint64_t converged = 0;
  bool ok = true;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    dpc_nash_result r{};
    Check(dpc_cgp_find_nash(g.get(), starts[k][0], starts[k][1],
                            static_cast<int>(max_iters), tol, grid_step, &r));
    converged += r.converged ? 1 : 0;
    ok = ok && r.converged && r.max_deviation_gain <= 1e-6;
    runs.Add({uint64_t{k}, starts[k][0], starts[k][1], r.p1, r.p2, r.p1 + r.p2,
              r.converged != 0, int64_t{r.sweeps}, r.max_deviation_gain});
  }
  int potential = 0, derivs = 0;
  double deviation = 0.0;
  Check(dpc_cgp_is_potential_game(g.get(), pot_step, pot_tol, &potential, &deviation));
  Check(dpc_cgp_value_derivatives_match(g.get(), pot_step, pot_tol, &derivs));
  Table summary{"equilibrium_summary",
                {"game", "benefit_weight_1", "benefit_weight_2", "privacy_weight_1",
                 "privacy_weight_2", "potential_game", "max_cross_partial_gap",
                 "value_derivatives_match", "starts", "converged_starts"},
                {}};
  summary.Add({game, bw[0], bw[1], pw[0], pw[1], potential != 0, deviation,
               derivs != 0, uint64_t{starts.size()}, converged});
  ctx.Emit(runs);
  ctx.Emit(summary);
  return ok ? kExitOk : kExitFailure;
}

// -------------------------------------------------------------- multi-round

struct GameDeleter {
  void operator()(dpc_mrs_game* g) const { dpc_mrs_destroy(g); }
};
struct ProfileDeleter {
  void operator()(dpc_mrs_profile* p) const { dpc_mrs_profile_destroy(p); }
};

int MultiRound(const Context& ctx) {
  const Config& cfg = ctx.config;
  cfg.Allow({"num_agents", "horizon", "discount", "reward_alpha", "reward_beta",
             "initial_savings", "spend_grid", "privacy_grid", "perturb",
             "max_sweeps", "tol", "budget", "plot"});
  const uint64_t num_agents = cfg.Unsigned("num_agents", 2);
  const uint64_t horizon = cfg.Unsigned("horizon");
  if (num_agents == 0 || num_agents > 64) cfg.Fail("num_agents", "must be in [1, 64]");
  if (horizon > UINT32_MAX) cfg.Fail("horizon", "too large");
  std::vector<double> savings = cfg.Numbers("initial_savings", std::vector<double>{1.0});
  if (savings.size() == 1) savings.assign(num_agents, savings[0]);
  if (savings.size() != num_agents) {
    cfg.Fail("initial_savings", "expected one entry per agent");
  }
  const auto spend = cfg.Numbers("spend_grid", std::vector<double>{0.0, 1.0});
  const auto privacy = cfg.Numbers("privacy_grid", std::vector<double>{0.0, 0.5});
  const uint64_t max_sweeps = cfg.Unsigned("max_sweeps", 100);
  if (max_sweeps == 0 || max_sweeps > INT32_MAX) {
    cfg.Fail("max_sweeps", "must be in [1, 2^31)");
  }
  const double tol = cfg.Number("tol", 1e-12);
  const double budget = cfg.Number("budget", 1e6);
  const bool plot = cfg.Flag("plot", false);

  std::vector<double> team_weight(num_agents, 1.0);
  bool perturbed = false;
  if (cfg.Has("perturb")) {
    const nlohmann::json& jp = cfg.Get("perturb");
    if (!jp.is_object()) cfg.Fail("perturb", "expected {\"agent\": i, \"factor\": f}");
    for (const auto& [key, value] : jp.items()) {
      if (key != "agent" && key != "factor") cfg.Fail(key, "unknown key in 'perturb'");
    }
    if (!jp.contains("agent") || !jp.contains("factor")) {
      cfg.Fail("perturb", "needs both 'agent' and 'factor'");
    }
    const uint64_t agent = cfg.AsUnsigned(jp["agent"], "agent");
    if (agent >= num_agents) cfg.Fail("agent", "agent index out of range");
    team_weight[agent] = cfg.AsNumber(jp["factor"], "factor");
    perturbed = team_weight[agent] != 1.0;
  }

  dpc_mrs_config c{};
  c.num_agents = static_cast<uint32_t>(num_agents);
  c.horizon = static_cast<uint32_t>(horizon);
  c.discount = cfg.Number("discount", 1.0);
  c.reward_alpha = cfg.Number("reward_alpha", 0.1);
  c.reward_beta = cfg.Number("reward_beta", 0.2);
  c.initial_savings = savings.data();
  c.spend_grid = spend.data();
  c.spend_grid_size = spend.size();
  c.privacy_grid = privacy.data();
  c.privacy_grid_size = privacy.size();
  c.team_weight = team_weight.data();
  dpc_mrs_game* raw = nullptr;
  Check(dpc_mrs_create(&c, &raw));
  std::unique_ptr<dpc_mrs_game, GameDeleter> game(raw);

  int holds = 0;
  double violation = 0.0;
  uint64_t profiles = 0;
  Check(dpc_mrs_verify(game.get(), tol, budget, &holds, &violation, &profiles));

  dpc_mrs_profile* praw = nullptr;
  int converged = 0, sweeps = 0;
  std::size_t trace_size = 0;
  Check(dpc_mrs_find_nash(game.get(), static_cast<int>(max_sweeps), &praw, &converged,
                          &sweeps, nullptr, 0, &trace_size));
  dpc_mrs_profile_destroy(praw);
  std::vector<double> trace(trace_size);
  Check(dpc_mrs_find_nash(game.get(), static_cast<int>(max_sweeps), &praw, &converged,
                          &sweeps, trace.data(), trace.size(), &trace_size));
  std::unique_ptr<dpc_mrs_profile, ProfileDeleter> profile(praw);

  bool monotone = true;
  for (std::size_t k = 1; k < trace.size(); ++k) {
    monotone = monotone && trace[k] >= trace[k - 1];
  }
  Table summary{"multi_round",
                {"num_agents", "horizon", "perturbed", "mpg_holds", "max_violation",
                 "profiles", "converged", "sweeps", "potential_initial",
                 "potential_final", "trace_monotone"},
                {}};
  summary.Add({num_agents, horizon, perturbed, holds != 0, violation, profiles,
               converged != 0, int64_t{sweeps},
               trace.empty() ? Cell{} : Cell{trace.front()},
               trace.empty() ? Cell{} : Cell{trace.back()}, monotone});

  Table trace_table{"multi_round_trace", {"update", "potential"}, {}};
  for (std::size_t k = 0; k < trace.size(); ++k) {
    trace_table.Add({uint64_t{k}, trace[k]});
  }

  std::size_t count = 0;
  Check(dpc_mrs_profile_entries(game.get(), profile.get(), nullptr, 0, &count));
  std::vector<dpc_mrs_policy_entry> entries(count);
  Check(dpc_mrs_profile_entries(game.get(), profile.get(), entries.data(),
                                entries.size(), &count));
  Table policies{"multi_round_policies",
                 {"agent", "step", "saving", "spend", "privacy"},
                 {}};
  for (const auto& e : entries) {
    policies.Add({uint64_t{e.agent}, uint64_t{e.step}, e.saving, e.spend, e.privacy});
  }
  ctx.Emit(summary);
  ctx.Emit(trace_table);
  ctx.Emit(policies);
  if (plot) {
    Series s{"potential", {}, trace};
    for (std::size_t k = 0; k < trace.size(); ++k) s.x.push_back(static_cast<double>(k));
    ctx.EmitPlot("multi_round_trace",
                 {"Potential along best-response dynamics", "update", "potential",
                  false, false},
                 {s});
  }
  const bool ok = (perturbed || holds != 0) && converged != 0 && monotone;
  return ok ? kExitOk : kExitFailure;
}

// ------------------------------------------------------------------- sender

// Closed-form and iterative aware solutions must agree to this gap.
constexpr double kGdGap = 1e-6;

int Sender(const Context& ctx) {
  const Config& cfg = ctx.config;
  cfg.Allow({"dim", "target_mean", "target_cov", "target_cov_diag", "noise_vars",
             "gd_steps", "learning_rate", "plot"});
  const uint64_t dim = cfg.Unsigned("dim");
  if (dim == 0 || dim > 64) cfg.Fail("dim", "must be in [1, 64]");
  const std::size_t d = dim;
  std::vector<double> mean = cfg.Numbers("target_mean", std::vector<double>(d, 0.0));
  if (mean.size() != d) cfg.Fail("target_mean", "expected dim entries");
  std::vector<double> cov(d * d, 0.0);
  if (cfg.Has("target_cov") && cfg.Has("target_cov_diag")) {
    cfg.Fail("target_cov_diag", "give either target_cov or target_cov_diag");
  }
  bool diagonal = true;
  if (cfg.Has("target_cov")) {
    const nlohmann::json& m = cfg.Get("target_cov");
    if (!m.is_array() || m.size() != d) cfg.Fail("target_cov", "expected dim rows");
    for (std::size_t r = 0; r < d; ++r) {
      if (!m[r].is_array() || m[r].size() != d) {
        cfg.Fail("target_cov", "expected dim columns in every row");
      }
      for (std::size_t k = 0; k < d; ++k) {
        cov[r * d + k] = cfg.AsNumber(m[r][k], "target_cov");
        if (r != k && cov[r * d + k] != 0.0) diagonal = false;
      }
    }
  } else {
    const auto diag = cfg.Numbers("target_cov_diag", std::vector<double>(d, 1.0));
    if (diag.size() != d) cfg.Fail("target_cov_diag", "expected dim entries");
    for (std::size_t k = 0; k < d; ++k) cov[k * d + k] = diag[k];
  }
  const auto noise_vars = cfg.Numbers("noise_vars");
  const uint64_t steps = cfg.Unsigned("gd_steps", 20000);
  if (steps > INT32_MAX) cfg.Fail("gd_steps", "too large");
  const double lr = cfg.Number("learning_rate", 0.1);
  const bool plot = cfg.Flag("plot", false);

  Table table{"sender",
              {"noise_var", "oblivious_kl", "aware_kl", "aware_gain", "gd_kl",
               "gd_gap", "gd_steps", "dominance", "gd_within_tolerance"},
              {}};
  Series obl{"noise-oblivious", {}, {}}, aware{"noise-aware", {}, {}};
  bool ok = true;
  for (double nv : noise_vars) {
    dpc_sender_solution so{}, sa{}, sg{};
    Check(dpc_sender_oblivious(d, mean.data(), cov.data(), nv, nullptr, nullptr, &so));
    Check(dpc_sender_aware(d, mean.data(), cov.data(), nv, nullptr, nullptr, &sa));
    Check(dpc_sender_aware_gd(d, mean.data(), cov.data(), nv, static_cast<int>(steps),
                              lr, diagonal ? 0 : 1, nullptr, nullptr, &sg));
    const bool dominance = sa.achieved_kl <= so.achieved_kl;
    const double gap = std::abs(sg.achieved_kl - sa.achieved_kl);
    const Cell gd_ok = diagonal ? Cell{gap <= kGdGap} : Cell{};
    ok = ok && dominance && (!diagonal || gap <= kGdGap);
    table.Add({nv, so.achieved_kl, sa.achieved_kl, so.achieved_kl - sa.achieved_kl,
               sg.achieved_kl, gap, int64_t{sg.steps_run}, dominance, gd_ok});
    obl.x.push_back(nv);
    obl.y.push_back(so.achieved_kl);
    aware.x.push_back(nv);
    aware.y.push_back(sa.achieved_kl);
  }
  ctx.Emit(table);
  if (plot) {
    ctx.EmitPlot("sender", {"KL to target after channel noise", "noise variance",
                            "KL", false, false},
                 {obl, aware});
  }
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int RunCalibrate(const Context& ctx) { return Calibrate(ctx); }
int RunBinarySums(const Context& ctx) { return BinarySums(ctx); }
int RunEquilibrium(const Context& ctx) { return Equilibrium(ctx); }
int RunMultiRound(const Context& ctx) { return MultiRound(ctx); }
int RunSender(const Context& ctx) { return Sender(ctx); }

}  // namespace dpcomm::cli
