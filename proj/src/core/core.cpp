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

#include "hetnet/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace hetnet {

namespace {

std::string join_errors(const std::vector<FieldError>& errors) {
  std::ostringstream os;
  os << "invalid configuration:";
  for (const auto& e : errors) os << "\n  " << e.field << ": " << e.constraint;
  return os.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<FieldError> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

double TierParams::mean_interferer_gain() const noexcept {
  const double pm = main_lobe_probability(*this);
  return pm * main_lobe_gain + (1.0 - pm) * side_lobe_gain;
}

double main_lobe_probability(const TierParams& tier) {
  return std::clamp(tier.beamwidth_rad / kTwoPi, 0.0, 1.0);
}

BlockageParams::BlockageParams(double density_per_km2, double mean_length_km,
                               double mean_width_km, PFormula mode)
    : density_(density_per_km2),
      mean_length_(mean_length_km),
      mean_width_(mean_width_km),
      mode_(mode) {
  beta_ = 2.0 * density_ * (mean_length_ + mean_width_) / kPi;
  p_ = mode_ == PFormula::corrected ? density_ * mean_length_ * mean_width_
                                    : mean_length_ * mean_width_;
  los_radius_ = beta_ > 0.0 ? std::sqrt(2.0 * std::exp(-p_)) / beta_
                            : std::numeric_limits<double>::infinity();
}

double SimulationConfig::effective_noise(const TierParams& tier) const {
  return tier.noise_mw / std::pow(analysis.pathloss_ref_km, analysis.pathloss_exponent);
}

PopulationShares::PopulationShares(std::vector<double> shares) : shares_(std::move(shares)) {
  if (shares_.empty()) throw DomainError("population shares: empty vector");
  double sum = 0.0;
  for (double s : shares_) {
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("population shares: entry outside [0,1]");
    sum += s;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw DomainError("shares do not sum to 1");
}

PopulationShares PopulationShares::uniform(std::size_t k) {
  if (k == 0) throw DomainError("population shares: empty vector");
  std::vector<double> v(k, 1.0 / static_cast<double>(k));
  // Push rounding residue into the last entry so the sum is exact.
  v.back() = 1.0 - std::accumulate(v.begin(), v.end() - 1, 0.0);
  return PopulationShares(std::move(v));
}

std::vector<std::size_t> PopulationShares::agent_counts(std::size_t population) const {
  std::vector<std::size_t> out(shares_.size());
  for (std::size_t i = 0; i < shares_.size(); ++i)
    out[i] = static_cast<std::size_t>(std::llround(shares_[i] * static_cast<double>(population)));
  return out;
}

std::vector<FieldError> check_config(const SimulationConfig& cfg) {
  std::vector<FieldError> errs;
  auto fail = [&](std::string field, std::string what) {
    errs.push_back({std::move(field), std::move(what)});
  };

  if (cfg.tiers.empty()) fail("network.tiers", "at least one tier required");
  for (std::size_t i = 0; i < cfg.tiers.size(); ++i) {
    const auto& t = cfg.tiers[i];
    const std::string sec = "tier" + std::to_string(i + 1) + ".";
    if (t.index != i + 1) fail(sec + "index", "tiers must be numbered 1..K in order");
    if (!(t.density_per_km2 > 0.0)) fail(sec + "lambda_per_km2", "density must be positive");
    if (!(t.power_mw > 0.0)) fail(sec + "p_dbm", "transmit power must be finite");
    if (t.nakagami_mu < 1) fail(sec + "nakagami_mu", "Nakagami shape must be an integer >= 1");
    if (t.codebook_exponent < 0) fail(sec + "codebook_n", "codebook exponent must be >= 0");
    if (!(t.side_lobe_gain > 0.0)) fail(sec + "side_lobe_db", "side lobe gain must be positive");
    if (t.main_lobe_gain < t.side_lobe_gain)
      fail(sec + "main_lobe_db", "main lobe gain below side lobe");
    if (!(t.beamwidth_rad > 0.0 && t.beamwidth_rad <= kTwoPi + 1e-12))
      fail(sec + "beamwidth_rad", "beamwidth must lie in (0, 2π]");
    if (!(t.bandwidth_hz >= 0.0)) fail(sec + "bandwidth_hz", "bandwidth must be >= 0");
    if (!(t.noise_mw >= 0.0)) fail(sec + "noise_dbm", "noise variance must be >= 0");
    if (i == 0) {
      if (t.main_lobe_gain != 1.0 || t.side_lobe_gain != 1.0)
        fail(sec + "main_lobe_db", "tier 1 must be omni (0 dB main and side lobe)");
      if (t.codebook_exponent != 0) fail(sec + "codebook_n", "tier 1 must have n = 0");
    }
    if (i > 0 && !(cfg.tiers[i - 1].power_mw > t.power_mw))
      fail(sec + "p_dbm", "transmit power must decrease with tier index");
  }

  const auto& b = cfg.blockage;
  if (!(b.density() >= 0.0)) fail("blockage.lambda_per_km2", "density must be >= 0");
  if (!(b.mean_length() >= 0.0)) fail("blockage.mean_length_m", "length must be >= 0");
  if (!(b.mean_width() >= 0.0)) fail("blockage.mean_width_m", "width must be >= 0");

  const auto& m = cfg.mobility;
  if (!(m.v_min_kms >= 0.0 && m.v_min_kms <= m.v_max_kms))
    fail("mobility.v_min_kmh", "need 0 <= v_min <= v_max");
  if (!(m.align_time_s >= 0.0)) fail("mobility.t_align_ms", "must be >= 0");
  if (!(m.sweep_time_s >= 0.0)) fail("mobility.t_sweep_ms", "must be >= 0");
  if (!(m.overhead_threshold >= 0.0 && m.overhead_threshold < 1.0))
    fail("mobility.t_threshold", "need 0 <= T_m < 1");
  if (m.ref_distance_km > 0.0 && !(m.ref_distance_km < b.los_radius()))
    fail("mobility.ref_distance_m", "reference distance must be below R_B");

  const auto& g = cfg.game;
  if (!(g.w1 >= 0.0)) fail("game.w1", "weight must be >= 0");
  if (!(g.w2 >= 0.0)) fail("game.w2", "weight must be >= 0");
  if (!(g.adaptation_rate > 0.0)) fail("game.rho", "adaptation rate must be positive");
  if (!(g.delay >= 0.0)) fail("game.delay", "delay must be >= 0");
  if (g.population < 1) fail("game.population", "population must be >= 1");
  if (!(g.dt > 0.0)) fail("game.dt", "step must be positive");
  if (!(g.horizon > 0.0)) fail("game.horizon", "horizon must be positive");
  if (!(g.memo_step > 0.0 && g.memo_step <= 0.5)) fail("game.memo_step", "need 0 < step <= 0.5");
  if (g.cohorts.empty()) fail("game.cohort_speeds_kmh", "at least one cohort required");
  double wsum = 0.0;
  for (const auto& c : g.cohorts) {
    if (!(c.speed_kms >= 0.0)) fail("game.cohort_speeds_kmh", "speeds must be >= 0");
    if (!(c.weight > 0.0)) fail("game.cohort_weights", "weights must be positive");
    wsum += c.weight;
  }
  if (!g.cohorts.empty() && std::abs(wsum - 1.0) > 1e-9)
    fail("game.cohort_weights", "cohort weights do not sum to 1");
  if (!g.initial_shares.empty()) {
    if (g.initial_shares.size() != cfg.tiers.size()) {
      fail("game.initial_shares", "one share per tier required");
    } else {
      double sum = 0.0;
      bool range_ok = true;
      for (double s : g.initial_shares) {
        range_ok = range_ok && s >= 0.0 && s <= 1.0;
        sum += s;
      }
      if (!range_ok) fail("game.initial_shares", "shares must lie in [0,1]");
      if (std::abs(sum - 1.0) > 1e-12) fail("game.initial_shares", "shares do not sum to 1");
    }
  }

  const auto& a = cfg.analysis;
  if (!(a.pathloss_exponent > 2.0)) fail("analysis.pathloss_exponent", "need a > 2");
  if (!(a.pathloss_ref_km > 0.0)) fail("analysis.pathloss_ref_m", "must be positive");
  if (!(a.rel_tol > 0.0 && a.rel_tol < 1e-2)) fail("analysis.rel_tol", "need 0 < tol < 1e-2");
  if (!(a.theta_max > 1.0)) fail("analysis.theta_max_db", "SINR cap must exceed 0 dB");

  const auto& mc = cfg.montecarlo;
  if (mc.realizations < 1) fail("montecarlo.realizations", "must be >= 1");
  if (!(mc.trace_step_km > 0.0)) fail("montecarlo.trace_step_m", "must be positive");
  if (!(mc.trace_duration_s > 0.0)) fail("montecarlo.trace_duration_s", "must be positive");
  return errs;
}

const SimulationConfig& validate_config(const SimulationConfig& cfg) {
  auto errs = check_config(cfg);
  if (!errs.empty()) throw ConfigError(std::move(errs));
  return cfg;
}

SimulationConfig default_config() {
  SimulationConfig cfg;
  const double density[] = {5.0, 100.0, 500.0};
  const double power_dbm[] = {40.0, 35.0, 30.0};
  const int mu[] = {1, 4, 4};
  const int codebook[] = {0, 3, 3};
  const double beam[] = {kTwoPi, kPi / 3.0, kPi / 6.0};
  const double main_db[] = {0.0, 5.0, 10.0};
  const double side_db[] = {0.0, -5.0, -10.0};
  const double bw[] = {20e6, 500e6, 1e9};
  for (std::size_t i = 0; i < 3; ++i) {
    TierParams t;
    t.index = i + 1;
    t.density_per_km2 = density[i];
    t.power_mw = units::dbm_to_mw(power_dbm[i]);
    t.nakagami_mu = mu[i];
    t.codebook_exponent = codebook[i];
    t.beamwidth_rad = beam[i];
    t.main_lobe_gain = units::db_to_linear(main_db[i]);
    t.side_lobe_gain = units::db_to_linear(side_db[i]);
    t.bandwidth_hz = bw[i];
    t.noise_mw = units::dbm_to_mw(units::thermal_noise_dbm(bw[i], cfg.analysis.noise_figure_db));
    t.los_required = i > 0;
    cfg.tiers.push_back(t);
  }
  cfg.blockage = BlockageParams(100.0, 0.01, 0.01, PFormula::corrected);
  return cfg;
}

}  // namespace hetnet
