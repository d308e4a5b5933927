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
#include "dpcomm/cgp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "dpcomm/error.h"

namespace dpcomm::cgp {
namespace {

double Finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    Fail(ErrorCode::kEvaluation, std::string(what) + " returned a non-finite value");
  }
  return v;
}

void CheckPlayer(int player) {
  Require(player == 0 || player == 1, "player index must be 0 or 1");
}

// Number of grid cells of width step covering [0, 1].
int CellCount(double step) {
  Require(step > 0.0 && step <= 0.5, "grid step must lie in (0, 0.5]");
  return static_cast<int>(std::lround(1.0 / step));
}

double GridPoint(int k, int cells) {
  return static_cast<double>(k) / static_cast<double>(cells);
}

int InteriorCells(double step) {
  const int cells = CellCount(step);
  Require(cells - 1 >= 3, "grid step leaves fewer than 3 interior points");
  return cells;
}

double UtilityAt(const Instance& g, int player, double own, double other) {
  return player == 0 ? g.Utility(0, own, other) : g.Utility(1, other, own);
}

}  // namespace

Instance::Instance(PlayerPair benefit_weight, PlayerPair privacy_weight,
                   ValueFn value_fn, PlayerPair standalone_values,
                   PrivacyLossFn privacy_loss_fn, BenefitFn benefit_fn)
    : benefit_weight_(benefit_weight),
      privacy_weight_(privacy_weight),
      value_fn_(std::move(value_fn)),
      standalone_(standalone_values),
      privacy_loss_fn_(std::move(privacy_loss_fn)),
      benefit_fn_(std::move(benefit_fn)) {
  for (int n = 0; n < 2; ++n) {
    Require(benefit_weight_[n] > 0.0, "benefit weights B_n must be positive");
    Require(privacy_weight_[n] > 0.0, "privacy weights C_n must be positive");
    Require(std::isfinite(standalone_[n]), "stand-alone values must be finite");
  }
  Require(static_cast<bool>(value_fn_), "value function is required");
  Require(static_cast<bool>(privacy_loss_fn_), "privacy loss function is required");
  Require(static_cast<bool>(benefit_fn_), "benefit function is required");
}

PlayerPair Instance::Values(double p1, double p2) const {
  const PlayerPair v = value_fn_(p1, p2);
  Finite(v[0], "value function");
  Finite(v[1], "value function");
  return v;
}

double Instance::PrivacyLoss(double p) const {
  return Finite(privacy_loss_fn_(p), "privacy loss function");
}

double Instance::Benefit(int player, double p1, double p2) const {
  CheckPlayer(player);
  const PlayerPair v = Values(p1, p2);
  return Finite(benefit_fn_(standalone_[player], v[player]), "benefit function");
}

double Instance::Utility(int player, double p1, double p2) const {
  CheckPlayer(player);
  const double own = player == 0 ? p1 : p2;
  return benefit_weight_[player] * Benefit(player, p1, p2) -
         privacy_weight_[player] * PrivacyLoss(own);
}

PlayerPair Instance::Utility(const StrategyProfile& profile) const {
  for (double p : profile.p) {
    Require(p >= 0.0 && p <= 1.0, "privacy levels must lie in [0, 1]");
  }
  return {Utility(0, profile.p[0], profile.p[1]),
          Utility(1, profile.p[0], profile.p[1])};
}

Instance MakeBinarySumsCgp(PlayerPair benefit_weight, PlayerPair privacy_weight) {
  auto value = [](double p1, double p2) {
    const double v = -0.5 * (p1 + p2) * (p1 + p2);
    return PlayerPair{v, v};
  };
  auto loss = [](double p) { return 1.0 - p; };
  auto benefit = [](double standalone, double cooperative) {
    return cooperative - standalone;
  };
  return Instance(benefit_weight, privacy_weight, value, {-0.5, -0.5}, loss,
                  benefit);
}

double CrossPartial(const Instance& g, int player, double p1, double p2,
                    double step) {
  Require(step > 0.0, "finite-difference step must be positive");
  const double pp = g.Utility(player, p1 + step, p2 + step);
  const double pm = g.Utility(player, p1 + step, p2 - step);
  const double mp = g.Utility(player, p1 - step, p2 + step);
  const double mm = g.Utility(player, p1 - step, p2 - step);
  return (pp - pm - mp + mm) / (4.0 * step * step);
}

PotentialCheck IsPotentialGame(const Instance& g, double grid_step, double tol) {
  const int cells = InteriorCells(grid_step);
  const double h = 1.0 / cells;
  PotentialCheck out;
  for (int i = 1; i < cells; ++i) {
    for (int j = 1; j < cells; ++j) {
      const double a = GridPoint(i, cells);
      const double b = GridPoint(j, cells);
      const double d = std::abs(CrossPartial(g, 0, a, b, h) -
                                CrossPartial(g, 1, a, b, h));
      out.max_deviation = std::max(out.max_deviation, d);
    }
  }
  out.holds = out.max_deviation <= tol;
  return out;
}

bool ValueDerivativesMatch(const Instance& g, double grid_step, double tol) {
  const int cells = InteriorCells(grid_step);
  const double h = 1.0 / cells;
  auto v1 = [&](double a, double b) { return g.Values(a, b)[0]; };
  auto v2 = [&](double a, double b) { return g.Values(a, b)[1]; };
  for (int i = 1; i < cells; ++i) {
    for (int j = 1; j < cells; ++j) {
      const double a = GridPoint(i, cells);
      const double b = GridPoint(j, cells);
      // Player 1 moves its own level a with the opponent at b; player 2 moves
      // its own level a with the opponent at b.
      const double d1_own = (v1(a + h, b) - v1(a - h, b)) / (2 * h);
      const double d2_own = (v2(b, a + h) - v2(b, a - h)) / (2 * h);
      const double s1_own = (v1(a + h, b) - 2 * v1(a, b) + v1(a - h, b)) / (h * h);
      const double s2_own = (v2(b, a + h) - 2 * v2(b, a) + v2(b, a - h)) / (h * h);
      if (std::abs(d1_own - d2_own) > tol) return false;
      if (std::abs(s1_own - s2_own) > tol) return false;
    }
  }
  return true;
}

double BestResponse(const Instance& g, int player, double opponent_p,
                    double grid_step) {
  CheckPlayer(player);
  Require(opponent_p >= 0.0 && opponent_p <= 1.0,
          "opponent privacy level must lie in [0, 1]");
  const int cells = CellCount(grid_step);
  auto f = [&](double p) { return UtilityAt(g, player, p, opponent_p); };

  int best_k = 0;
  double best_f = f(0.0);
  for (int k = 1; k <= cells; ++k) {
    const double v = f(GridPoint(k, cells));
    if (v > best_f) {
      best_f = v;
      best_k = k;
    }
  }
  const double lo = GridPoint(std::max(0, best_k - 1), cells);
  const double hi = GridPoint(std::min(cells, best_k + 1), cells);

  // Golden-section search inside the bracket.
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-14; ++it) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  double x = f1 >= f2 ? x1 : x2;
  double fx = f(x);
  const double tie = 8.0 * std::numeric_limits<double>::epsilon() *
                     std::max(1.0, std::abs(fx));

  // Parabolic vertex through the bracket ends and midpoint; exact for
  // quadratic utilities, where golden section stalls near sqrt(eps).
  {
    const double m = 0.5 * (lo + hi);
    const double fl = f(lo), fm = f(m), fh = f(hi);
    const double num = (m - lo) * (m - lo) * (fm - fh) - (m - hi) * (m - hi) * (fm - fl);
    const double den = (m - lo) * (fm - fh) - (m - hi) * (fm - fl);
    if (den != 0.0) {
      const double v = std::clamp(m - 0.5 * num / den, lo, hi);
      const double fv = f(v);
      if (fv >= fx - tie) {
        x = v;
        fx = fv;
      }
    }
  }

  const double f_hi = f(hi);
  if (f_hi > fx + tie) {
    x = hi;
    fx = f_hi;
  }
  if (f(lo) >= fx - tie) x = lo;
  return x;
}

double MaxDeviationGain(const Instance& g, const StrategyProfile& profile,
                        double grid_step) {
  const int cells = CellCount(grid_step);
  const PlayerPair current = g.Utility(profile);
  double gain = 0.0;
  for (int n = 0; n < 2; ++n) {
    const double other = profile.p[1 - n];
    for (int k = 0; k <= cells; ++k) {
      gain = std::max(gain, UtilityAt(g, n, GridPoint(k, cells), other) - current[n]);
    }
  }
  return gain;
}

NashResult FindNash(const Instance& g, const StrategyProfile& start,
                    int max_iters, double tol, double grid_step) {
  Require(max_iters >= 1, "max_iters must be at least 1");
  Require(tol >= 0.0, "tolerance must be nonnegative");
  for (double p : start.p) {
    Require(p >= 0.0 && p <= 1.0, "privacy levels must lie in [0, 1]");
  }
  // Keeps `own` when it already attains the best-response utility, so flat
  // directions do not move the profile.
  auto reply = [&](int player, double own, double other) {
    const double br = BestResponse(g, player, other, grid_step);
    const double u_own = UtilityAt(g, player, own, other);
    const double tie = 8.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, std::abs(u_own));
    return UtilityAt(g, player, br, other) > u_own + tie ? br : own;
  };
  NashResult out;
  StrategyProfile p = start;
  for (int sweep = 0;; ++sweep) {
    const double r0 = std::abs(reply(0, p.p[0], p.p[1]) - p.p[0]);
    const double r1 = std::abs(reply(1, p.p[1], p.p[0]) - p.p[1]);
    if (std::max(r0, r1) <= tol) {
      out.converged = true;
      out.sweeps = sweep + 1;
      break;
    }
    if (sweep == max_iters) {
      out.sweeps = sweep;
      break;
    }
    p.p[0] = reply(0, p.p[0], p.p[1]);
    p.p[1] = reply(1, p.p[1], p.p[0]);
  }
  out.profile = p;
  out.max_deviation_gain = MaxDeviationGain(g, p, 1e-3);
  return out;
}

ConditionReport CheckConditions(const Instance& g, double grid_step) {
  const int cells = CellCount(grid_step);
  ConditionReport r;
  r.loss_endpoints = std::abs(g.PrivacyLoss(0.0) - 1.0) <= 1e-12 &&
                     std::abs(g.PrivacyLoss(1.0)) <= 1e-12;
  r.loss_decreasing = true;
  for (int k = 1; k <= cells; ++k) {
    if (!(g.PrivacyLoss(GridPoint(k, cells)) < g.PrivacyLoss(GridPoint(k - 1, cells)))) {
      r.loss_decreasing = false;
    }
  }

  r.benefit_nonnegative = true;
  r.benefit_zero_without_gain = true;
  r.value_full_privacy_bound = true;
  r.value_decreasing = true;
  const PlayerPair origin = g.Values(0.0, 0.0);
  r.value_origin_exceeds_standalone = g.standalone_values()[0] < origin[0] &&
                                      g.standalone_values()[1] < origin[1];
  const double h = 1.0 / cells;
  for (int i = 0; i <= cells; ++i) {
    for (int j = 0; j <= cells; ++j) {
      const double a = GridPoint(i, cells), b = GridPoint(j, cells);
      const PlayerPair v = g.Values(a, b);
      for (int n = 0; n < 2; ++n) {
        const double ben = g.Benefit(n, a, b);
        if (ben < 0.0) r.benefit_nonnegative = false;
        if (g.standalone_values()[n] >= v[n] && ben != 0.0) {
          r.benefit_zero_without_gain = false;
        }
        if ((i == cells || j == cells) && v[n] > g.standalone_values()[n]) {
          r.value_full_privacy_bound = false;
        }
      }
      if (i > 0 && i < cells && j > 0 && j < cells) {
        for (int n = 0; n < 2; ++n) {
          const double d1 = (g.Values(a + h, b)[n] - g.Values(a - h, b)[n]) / (2 * h);
          const double d2 = (g.Values(a, b + h)[n] - g.Values(a, b - h)[n]) / (2 * h);
          if (!(d1 < 0.0 && d2 < 0.0)) r.value_decreasing = false;
        }
      }
    }
  }
  return r;
}

}  // namespace dpcomm::cgp
