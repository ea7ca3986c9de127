// Copyright 2026 the hetnet-egt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

// Evolutionary tier-selection game: payoffs, replicator dynamics (with an
// optional information delay), the agent-based revision protocol,
// equilibrium search, stability and baseline policies.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <span>
#include <vector>

#include "hetnet/core.hpp"

namespace hetnet {

/// Per-tier utility as a function of the tier's total active share.
class UtilitySource {
 public:
  virtual ~UtilitySource() = default;
  virtual std::size_t tiers() const = 0;
  virtual double utility(std::size_t tier0, double load) const = 0;
};

/// Mean SINR (G1) or mean rate (G2) from the stochastic-geometry analysis.
/// With `exact == false` values are read from a χ grid with linear
/// interpolation; otherwise the tabulated integrals are evaluated at χ.
class AnalyticUtility final : public UtilitySource {
 public:
  AnalyticUtility(const SimulationConfig& cfg, GameVariant variant, bool exact, double memo_step);
  ~AnalyticUtility() override;
  std::size_t tiers() const override;
  double utility(std::size_t tier0, double load) const override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Closed-form mean SINR C_k / χ_k at a fixed serving distance (G1 only).
class ClosedFormUtility final : public UtilitySource {
 public:
  ClosedFormUtility(const SimulationConfig& cfg, double ref_distance_km);
  std::size_t tiers() const override { return coeff_.size(); }
  double utility(std::size_t tier0, double load) const override;
  /// C_k, so that utility = C_k / χ_k.
  double coefficient(std::size_t tier0) const { return coeff_.at(tier0); }

 private:
  std::vector<double> coeff_;
};

class FunctionUtility final : public UtilitySource {
 public:
  FunctionUtility(std::size_t tiers, std::function<double(std::size_t, double)> fn)
      : tiers_(tiers), fn_(std::move(fn)) {}
  std::size_t tiers() const override { return tiers_; }
  double utility(std::size_t tier0, double load) const override { return fn_(tier0, load); }

 private:
  std::size_t tiers_;
  std::function<double(std::size_t, double)> fn_;
};

/// Builds the utility source selected by cfg.game.
std::shared_ptr<const UtilitySource> make_utility_source(const SimulationConfig& cfg);

/// Payoff model: π = w1·U(χ)/norm − w2·(T_HO − T_m) for every speed cohort.
/// States are cohort-major flattened share vectors (cohort c, tier k at
/// c·K + k); tier loads are the cohort-weighted sums.
class GameModel {
 public:
  GameModel(const SimulationConfig& cfg, std::shared_ptr<const UtilitySource> utilities);
  /// Explicit per-cohort overheads (rows: cohorts, columns: tiers).
  GameModel(const GameConfig& game, double overhead_threshold,
            std::shared_ptr<const UtilitySource> utilities,
            std::vector<std::vector<double>> overheads);

  std::size_t tiers() const noexcept { return tiers_; }
  std::size_t cohorts() const noexcept { return weights_.size(); }
  std::size_t state_size() const noexcept { return tiers_ * weights_.size(); }
  const GameConfig& game() const noexcept { return game_; }
  double normalizer() const noexcept { return norm_; }
  const std::vector<double>& overhead(std::size_t cohort) const { return overheads_.at(cohort); }
  const UtilitySource& utilities() const noexcept { return *utilities_; }

  std::vector<double> loads(std::span<const double> state) const;
  /// Normalized utilities at the given tier loads.
  std::vector<double> normalized_utilities(std::span<const double> loads) const;
  PayoffBreakdown payoffs(std::span<const double> state, std::size_t cohort) const;
  /// All cohorts' payoff vectors, flattened like the state.
  std::vector<double> payoff_vector(std::span<const double> state) const;
  /// Uniform or configured initial state, replicated across cohorts.
  std::vector<double> initial_state() const;

 private:
  GameConfig game_;
  double threshold_;
  std::shared_ptr<const UtilitySource> utilities_;
  std::size_t tiers_;
  std::vector<double> weights_;
  std::vector<std::vector<double>> overheads_;
  double norm_ = 1.0;
};

/// π_α for one tier at shares χ for a single cohort with the given overhead
/// row; a thin convenience over GameModel::payoffs.
double payoff(const GameModel& model, std::size_t tier0, const PopulationShares& shares,
              std::size_t cohort = 0);

/// χ̇_α = ρ χ_α (π_α − π̄) for one cohort.
std::vector<double> replicator_rhs(std::span<const double> shares, std::span<const double> payoffs,
                                   double rate);

struct Trajectory {
  std::vector<double> time;                       // payoff-update periods
  std::vector<std::vector<double>> states;        // flattened cohort × tier
  std::vector<std::vector<PayoffBreakdown>> payoffs;  // per time, per cohort
  bool converged = false;
  std::size_t iterations = 0;      // first period after which the state stays settled
  double final_speed = 0.0;        // ‖χ̇‖∞ at the end
  double max_drift = 0.0;          // largest |Σχ − 1| seen before renormalization
  bool aborted = false;            // NaN / overflow in payoffs
};

struct IntegrationOptions {
  double horizon = 60.0;  // periods
  double dt = 0.05;
  double delay = 0.0;
  double tolerance = 1e-3;  // ‖Δχ‖∞ over one period
};

/// RK4 replicator integration; delayed form χ̇(t) = ρ χ(t−τ)(π(t−τ) − π̄(t−τ))
/// by the method of steps with cubic Hermite history and constant initial
/// history χ(t) = χ₀ for t <= 0.
Trajectory integrate(const GameModel& model, std::vector<double> initial,
                     const IntegrationOptions& opt);

/// First period n whose one-period change ‖χ(n) − χ(n−1)‖∞ is below `tol`
/// together with the following ones: all later periods when `window` is 0,
/// otherwise the next `window` − 1. `settled` is false when no such n exists.
std::size_t settled_from(const Trajectory& traj, double tol, std::size_t window, bool& settled);

struct AgentOptions {
  std::size_t population = 1000;
  std::size_t max_iterations = 200;
  // A single switch moves a share by 1/Ω, so the settling threshold is
  // max(tolerance, 1.5/Ω) held for `window` consecutive rounds.
  double tolerance = 1e-3;
  std::size_t window = 5;
  bool always_switch = false;  // switch with probability 1 instead of ρ·(π̄ − π)
  std::uint64_t seed = 1;
};

/// Discrete revision protocol: each round every agent observes its payoff;
/// agents below their cohort mean switch, with probability
/// min(1, ρ(π̄ − π)), to a uniformly random tier with a higher payoff.
Trajectory evolve_agents(const GameModel& model, const AgentOptions& opt);

enum class EquilibriumKind { interior, boundary };

struct EquilibriumReport {
  std::vector<double> shares;  // flattened cohort × tier
  EquilibriumKind kind = EquilibriumKind::boundary;
  std::vector<double> eigenvalues_real;
  std::vector<double> eigenvalues_imag;
  bool stable = false;
  double residual = 0.0;  // ‖χ̇‖∞
  double payoff_spread = 0.0;  // max − min payoff over used tiers
};

/// Integrates from a grid of starting points, polishes each end state with
/// Newton on the equal-payoff conditions and returns the best (interior if
/// one exists) equilibrium.
EquilibriumReport find_equilibrium(const GameModel& model, double grid_step = 0.25);

/// Central-difference Jacobian of the replicator field on the simplex
/// tangent space (basis e_i − e_K per cohort). Throws DomainError for
/// boundary equilibria.
EquilibriumReport stability(EquilibriumReport eq, const GameModel& model, double step = 1e-6);

/// Two-tier closed-form slope of f(χ₁) = ρχ₁χ₂(π₁ − π₂) at an interior
/// equilibrium: −ρχ₁χ₂(w1/norm)(C₁/χ₁² + C₂/χ₂²).
double analytic_stability_slope(const GameModel& model, const ClosedFormUtility& utility,
                                double share1);

enum class BaselinePolicy { max_rate, random, exhaustive };

struct BaselineResult {
  std::vector<double> shares;  // single-cohort tier shares
  std::size_t tier = 0;        // chosen tier for max_rate (0-based)
  double mean_payoff = 0.0;
};

/// max_rate: everyone on argmax_k U_k(1) ignoring overhead; random: every
/// user picks a uniform tier (`seed` draws `users` choices); exhaustive:
/// grid search over the simplex for the highest mean payoff.
BaselineResult baseline_select(BaselinePolicy policy, const GameModel& model,
                               std::size_t users = 10000, std::uint64_t seed = 1,
                               double grid_step = 0.01);

/// CSV `iter,tier,share,payoff,mean_payoff` for one cohort.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, std::size_t cohort,
                          std::size_t tiers);
/// JSON equilibrium report.
std::string equilibrium_json(const EquilibriumReport& eq, std::size_t tiers);

}  // namespace hetnet
