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

// Downlink SINR analysis for one tier under the PPP model: serving-distance
// law, Laplace transform of the LoS interference, Alzer-bound coverage, and
// the mean SINR / mean rate integrals built on it.

#include <cstddef>
#include <vector>

#include "hetnet/core.hpp"

namespace hetnet {

/// Inputs for the interference Laplace transform at a fixed serving distance.
struct LaplaceEvaluator {
  TierParams tier;
  BlockageParams blockage;
  double active_share = 1.0;      // χ
  double serving_distance = 0.0;  // r0, km; interferers lie beyond it
  AnalyticBlockage model = AnalyticBlockage::exponential;
  double pathloss_exponent = 4.0;
  double rel_tol = 1e-10;
};

/// Quadrature of the per-gain interference integral (exact for Rayleigh
/// interferer fading).
double laplace_numeric(double s, const LaplaceEvaluator& ev);
/// Step blockage, a = 4: difference-of-arctangents closed form.
double laplace_closed_a4(double s, const LaplaceEvaluator& ev);
/// The same closed form written as one arctangent,
/// arctan((R² − r²)Ω² / (Ω⁴ + R²r²)), which needs no branch correction.
double laplace_closed_a4_compact(double s, const LaplaceEvaluator& ev);
/// exp(−πλχ·s·P·E[gain]·(1/r² − 1/R²)): the linearized closed form (it
/// bounds the closed form from below, since arctan x − arctan y ≤ x − y).
/// Throws DomainError when r > R.
double laplace_upper_bound(double s, const LaplaceEvaluator& ev);

/// η = μ(μ!)^(−1/μ); throws DomainError for non-integer or μ < 1.
double alzer_eta(double mu);

struct SinrStats {
  std::vector<double> theta;     // linear thresholds
  std::vector<double> coverage;  // P(SINR > θ)
  double mean_sinr = 0.0;        // capped at analysis.theta_max
  double mean_rate_bps = 0.0;
  double residual = 0.0;         // summed quadrature error estimates
  std::size_t tier = 0;
  double active_share = 0.0;
};

/// Single-tier analysis bound to a configuration and an active share χ.
class TierAnalysis {
 public:
  TierAnalysis(const SimulationConfig& cfg, std::size_t tier_index1, double active_share);

  const TierParams& tier() const noexcept { return tier_; }
  double active_share() const noexcept { return chi_; }

  double los_probability(double r) const;
  /// Density of the serving distance; integrates to serving_mass().
  double serving_pdf(double r) const;
  /// 2πλ_s·∫_0^r x p_L(x) dx: void-probability exponent of the serving law.
  double serving_exponent(double r) const;
  /// Probability that a serving candidate exists.
  double serving_mass() const;
  /// Mean serving distance conditioned on a serving BS existing.
  double mean_serving_distance() const;

  /// E[exp(−s·I)] for interferers beyond r0.
  double laplace(double s, double r0) const;
  /// Alzer-bound coverage; unconditioned unless `conditioned`, in which case
  /// it is divided by serving_mass().
  double coverage(double theta, bool conditioned = false) const;
  /// ∫_0^θmax P(θ) dθ, threshold integral outermost.
  double mean_sinr() const;
  /// Same quantity with the distance integral outermost.
  double mean_sinr_distance_outer() const;
  /// B/ln2 · ∫ P(θ)/(1+θ) dθ.
  double mean_rate() const;

  double last_residual() const noexcept { return residual_; }

 private:
  double interference_exponent(double s, double r0) const;
  double gain_integral(double omega, double r0) const;
  double u_integral(double r) const;
  double covered_given_distance(double theta, double r) const;

  TierParams tier_;
  double chi_;
  double a_;
  double rel_tol_;
  double theta_max_;
  double noise_;  // σ² scaled by the path-loss reference
  enum class Los { none, exponential, step } los_;
  double beta_;
  double p_;
  double los_radius_;
  double serve_density_;
  double eta_;
  mutable double residual_ = 0.0;
};

/// Utility integrals for a tier tabulated once on a fixed log-r × log-θ
/// Gauss-Legendre grid. The interference and noise exponents do not depend
/// on χ, so each evaluation at a new χ is a weighted sum of exponentials.
/// Agrees with the adaptive TierAnalysis integrals to ~1e-6 relative.
class UtilityTable {
 public:
  UtilityTable(const SimulationConfig& cfg, std::size_t tier_index1);

  /// Transmit power enters only through the noise term, so one table serves
  /// a whole power sweep. `power_mw <= 0` means the configured tier power.
  double mean_sinr(double active_share, double power_mw = 0.0) const;
  double mean_rate(double active_share, double power_mw = 0.0) const;

 private:
  struct Block {
    // Flattened over (r node, Alzer index).
    std::vector<double> scale;     // quadrature weight · pdf part · sign · C(μ,ξ)
    std::vector<double> exponent;  // χ-proportional exponent (interference + thinning)
    std::vector<double> noise;     // s·σ² at the configured power
  };
  double coverage_at(std::size_t node, double active_share, double power_ratio) const;
  double power_ratio(double power_mw) const;

  TierParams tier_;
  bool active_association_ = false;
  double theta_max_ = 0.0;
  std::vector<double> theta_;   // θ nodes
  std::vector<double> weight_;  // dθ weights (already multiplied by θ)
  std::vector<Block> blocks_;   // one per θ node
  double mass_ = 0.0;           // serving mass, for the θ → 0 sliver
};

double serving_distance_pdf(double r, const SimulationConfig& cfg, std::size_t tier,
                            double active_share);
double coverage_probability(double theta, const SimulationConfig& cfg, std::size_t tier,
                            double active_share, bool conditioned = false);
double mean_sinr(const SimulationConfig& cfg, std::size_t tier, double active_share);
double mean_rate(const SimulationConfig& cfg, std::size_t tier, double active_share);
SinrStats sinr_stats(const SimulationConfig& cfg, std::size_t tier, double active_share,
                     const std::vector<double>& theta_db);

/// Closed-form mean SINR at serving distance r̃ (Rayleigh, step blockage,
/// a = 4, no noise): M·R²/(πλχ·r̃²(R² − r̃²)·E[gain]), R = R_B.
/// Throws DomainError when r̃ >= R or χ <= 0.
double mean_sinr_closed(const SimulationConfig& cfg, std::size_t tier, double active_share,
                        double ref_distance_km);

}  // namespace hetnet
