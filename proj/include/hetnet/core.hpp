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

// Shared domain types. Canonical internal units: km, BS/km^2, seconds,
// km/s, linear mW. Configuration files carry dB/dBm/km/h; conversion happens
// once in the config layer.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hetnet {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

namespace units {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_mw(double dbm) { return db_to_linear(dbm); }
inline double mw_to_dbm(double mw) { return linear_to_db(mw); }
inline constexpr double kmh_to_kms(double kmh) { return kmh / 3600.0; }
inline constexpr double kms_to_kmh(double kms) { return kms * 3600.0; }
inline constexpr double m_to_km(double m) { return m * 1e-3; }

/// Thermal noise floor over `bandwidth_hz` plus a receiver noise figure.
inline double thermal_noise_dbm(double bandwidth_hz, double noise_figure_db) {
  return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

}  // namespace units

/// One named constraint violation found while validating a configuration.
struct FieldError {
  std::string field;
  std::string constraint;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<FieldError> errors);
  const std::vector<FieldError>& errors() const noexcept { return errors_; }

 private:
  std::vector<FieldError> errors_;
};

/// Raised when a formula is evaluated outside its domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a quadrature or integrator fails to converge.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

struct TierParams {
  std::size_t index = 1;  // 1-based; tier 1 is the sub-6 GHz macro tier
  double density_per_km2 = 5.0;
  double power_mw = 1e4;
  int nakagami_mu = 1;
  int codebook_exponent = 0;  // 2^n beams
  double beamwidth_rad = kTwoPi;
  double main_lobe_gain = 1.0;  // linear
  double side_lobe_gain = 1.0;  // linear
  double bandwidth_hz = 20e6;
  double noise_mw = 0.0;  // linear noise variance over the tier bandwidth
  bool los_required = false;  // mmWave tiers only see LoS BSs

  bool omni() const noexcept {
    return main_lobe_gain == side_lobe_gain && beamwidth_rad >= kTwoPi;
  }
  /// Mean antenna gain seen from a random interferer.
  double mean_interferer_gain() const noexcept;
};

/// p_M = φ/(2π); the side-lobe probability is its complement.
double main_lobe_probability(const TierParams& tier);

enum class PFormula { corrected, literal };

/// Boolean rectangle blockage process. Derived constants are recomputed on
/// every construction, so instances are always self-consistent.
class BlockageParams {
 public:
  BlockageParams() : BlockageParams(100.0, 0.01, 0.01, PFormula::corrected) {}
  BlockageParams(double density_per_km2, double mean_length_km,
                 double mean_width_km, PFormula mode);

  double density() const noexcept { return density_; }
  double mean_length() const noexcept { return mean_length_; }
  double mean_width() const noexcept { return mean_width_; }
  PFormula mode() const noexcept { return mode_; }
  double beta() const noexcept { return beta_; }
  double p() const noexcept { return p_; }
  /// Maximum LoS link length of the step approximation; +inf when β = 0.
  double los_radius() const noexcept { return los_radius_; }

  BlockageParams with_density(double d) const { return {d, mean_length_, mean_width_, mode_}; }
  BlockageParams with_length(double l) const { return {density_, l, mean_width_, mode_}; }
  BlockageParams with_width(double w) const { return {density_, mean_length_, w, mode_}; }
  BlockageParams with_mode(PFormula m) const { return {density_, mean_length_, mean_width_, m}; }

 private:
  double density_;
  double mean_length_;
  double mean_width_;
  PFormula mode_;
  double beta_ = 0.0;
  double p_ = 0.0;
  double los_radius_ = 0.0;
};

struct MobilityParams {
  double v_min_kms = 0.0;
  double v_max_kms = units::kmh_to_kms(100.0);
  double align_time_s = 1e-3;  // T_a
  double sweep_time_s = 1e-3;  // T_s
  double overhead_threshold = 0.01;  // T_m
  /// Serving-link length for the blockage handover rate; <= 0 means use the
  /// per-tier mean LoS serving distance.
  double ref_distance_km = 0.0;
  bool omni_no_beam_reselection = true;
  bool blockage_handover_mmwave_only = true;
};

enum class GameVariant { g1_mean_sinr, g2_mean_rate };
enum class UtilityNormalization { none, max_full_load };
enum class UtilitySourceKind { analytic, closed_form };

struct Cohort {
  double speed_kms = 0.0;
  double weight = 1.0;  // fraction of the population
};

struct GameConfig {
  double w1 = 1.0;
  double w2 = 1.0;
  double adaptation_rate = 1.0;  // ϱ
  GameVariant variant = GameVariant::g2_mean_rate;
  double delay = 0.0;  // τ, integration time units
  std::size_t population = 1000;  // Ω
  UtilityNormalization normalization = UtilityNormalization::max_full_load;
  UtilitySourceKind utility_source = UtilitySourceKind::analytic;
  bool exact_payoffs = false;  // bypass the χ-grid memo
  double memo_step = 0.01;
  double dt = 0.05;  // integration step within one payoff-update period
  double horizon = 60.0;  // payoff-update periods
  std::vector<Cohort> cohorts{{units::kmh_to_kms(10.0), 1.0}};
  std::vector<double> initial_shares;  // empty = uniform
};

enum class AnalyticBlockage { exponential, step };
enum class Association { nearest_los, nearest_active_los };

struct AnalysisParams {
  double pathloss_exponent = 4.0;
  double pathloss_ref_km = 1e-3;  // path loss is (r / ref)^a
  AnalyticBlockage blockage = AnalyticBlockage::exponential;
  Association association = Association::nearest_los;
  double rel_tol = 1e-8;
  double theta_max = 1e6;
  double noise_figure_db = 9.0;
};

enum class LosMode { field, independent };
enum class InterfererFading { nakagami, rayleigh };

struct MonteCarloParams {
  double disk_radius_km = 0.0;  // <= 0: 3·R_B, at least 2 km
  LosMode los_mode = LosMode::field;
  InterfererFading interferer_fading = InterfererFading::nakagami;
  std::size_t realizations = 20000;
  std::size_t traces = 1000;
  double trace_duration_s = 60.0;
  double trace_step_km = 1e-3;
};

struct SimulationConfig {
  std::vector<TierParams> tiers;
  BlockageParams blockage;
  MobilityParams mobility;
  GameConfig game;
  AnalysisParams analysis;
  MonteCarloParams montecarlo;
  std::uint64_t seed = 1;

  std::size_t num_tiers() const noexcept { return tiers.size(); }
  const TierParams& tier(std::size_t index1) const { return tiers.at(index1 - 1); }
  /// Noise variance seen by the analysis after path-loss reference scaling.
  double effective_noise(const TierParams& tier) const;
};

/// Point on the K-simplex.
class PopulationShares {
 public:
  PopulationShares() = default;
  explicit PopulationShares(std::vector<double> shares);
  static PopulationShares uniform(std::size_t k);

  std::size_t size() const noexcept { return shares_.size(); }
  double operator[](std::size_t i) const { return shares_[i]; }
  std::span<const double> values() const noexcept { return shares_; }
  /// Agent counts ω_α = round(χ_α·Ω).
  std::vector<std::size_t> agent_counts(std::size_t population) const;

 private:
  std::vector<double> shares_;
};

struct PayoffBreakdown {
  std::vector<double> utility;
  std::vector<double> overhead;
  std::vector<double> payoff;
  double mean_payoff = 0.0;
};

/// Returns every violated invariant; empty means valid.
std::vector<FieldError> check_config(const SimulationConfig& cfg);
/// Throws ConfigError when check_config reports anything.
const SimulationConfig& validate_config(const SimulationConfig& cfg);

/// Three-tier defaults from the reference deployment (5/100/500 BS/km^2,
/// 40/35/30 dBm, 0/5/10 dB main lobes, λ_b = 100/km^2, 10 m blockages).
SimulationConfig default_config();

}  // namespace hetnet
