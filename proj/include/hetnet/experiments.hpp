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

// Experiment runner: parameter sweeps over the analysis, mobility and game
// layers, written as one CSV per curve plus a JSON manifest.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hetnet/config_io.hpp"
#include "hetnet/core.hpp"
#include "hetnet/egt.hpp"
#include "hetnet/montecarlo.hpp"

namespace hetnet {

/// Bad command line or experiment description.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ExperimentId {
  sinr_vs_power,
  rate_vs_power,
  overhead_vs_speed,
  evolution,
  delay_study,
  ase_comparison,
  validate,
};

std::optional<ExperimentId> parse_experiment(std::string_view name);
std::string_view experiment_name(ExperimentId id);
const std::vector<ExperimentId>& all_experiments();

struct SweepAxis {
  std::string parameter;
  std::vector<double> values;
};

/// `name=first:last:steps` (linear) or `name=v1,v2,...`.
SweepAxis parse_sweep(std::string_view text);

struct ExperimentSpec {
  ExperimentId id = ExperimentId::validate;
  std::vector<SweepAxis> axes;  // overrides of the preset axes
  std::filesystem::path output_dir = ".";
  std::uint64_t seed = 1;
  Budget budget = Budget::fast;
};

/// Preset axes of an experiment, keyed by parameter name.
std::map<std::string, std::vector<double>> preset_axes(ExperimentId id);
/// Values of one axis after applying the spec's overrides. Throws
/// UsageError for unknown axis names and empty ranges.
std::vector<double> axis_values(const ExperimentSpec& spec, const std::string& parameter);
/// Throws UsageError when an axis is unknown to the experiment or empty.
void check_spec(const ExperimentSpec& spec);

/// Configuration keys an experiment sets unless the user overrides them
/// (e.g. second-scale alignment times for the game studies).
KeyValues preset_overrides(ExperimentId id);

// ---------------------------------------------------------------- studies

struct PowerCurve {
  std::size_t tier = 0;  // 1-based
  double active_share = 0.0;
  std::vector<double> power_dbm;
  std::vector<double> value;  // mean SINR (linear) or mean rate (bit/s)
};

enum class PowerMetric { mean_sinr, mean_rate };

std::vector<PowerCurve> power_sweep(const SimulationConfig& cfg, PowerMetric metric,
                                    const std::vector<std::size_t>& tiers,
                                    const std::vector<double>& active_shares,
                                    const std::vector<double>& power_dbm);

/// Lowest swept power at which the curve reaches half of its last value.
double curve_knee_dbm(const PowerCurve& curve);

struct EvolutionRun {
  double speed_kmh = 0.0;
  Trajectory ode;
  Trajectory agents;
  EquilibriumReport equilibrium;
  std::vector<double> overhead;  // T_HO per tier
};

/// One single-cohort game per speed, sharing the utility source.
std::vector<EvolutionRun> evolution_study(const SimulationConfig& cfg,
                                          const std::vector<double>& speeds_kmh,
                                          std::uint64_t seed);

enum class DelayOutcome { monotone, damped, sustained, unclassified };
std::string_view outcome_name(DelayOutcome o);

struct DelayRun {
  double delay = 0.0;
  Trajectory trajectory;
  std::size_t window = 0;          // periods per amplitude window
  std::vector<double> amplitude;   // peak-to-peak of the tier-1 share per window
  std::size_t reversals = 0;       // direction changes of the tier-1 share after the transient
  DelayOutcome outcome = DelayOutcome::unclassified;
};

struct DelayStudy {
  double adaptation_rate = 0.0;  // ρ after scaling
  EquilibriumReport equilibrium;  // undelayed, with eigenvalues
  std::vector<DelayRun> runs;
};

/// Delayed replicator on the closed-form mean-SINR game. ρ is scaled so the
/// fastest undelayed mode decays at rate 0.1 per period.
DelayStudy delay_study(const SimulationConfig& cfg, const std::vector<double>& delays,
                       double horizon);

struct AseCurve {
  double blockage_density = 0.0;  // per km²
  std::vector<double> speed_kmh;
  std::vector<double> ase_egt;   // population mean at the game equilibrium
  std::vector<double> ase_rate;  // everyone on the max-rate tier
  std::vector<std::vector<double>> shares;
  std::size_t rate_tier = 0;  // 1-based
  std::optional<double> crossover_kmh;
};

AseCurve ase_curve(const SimulationConfig& cfg, double blockage_density,
                   const std::vector<double>& speeds_kmh);
/// First speed where the EGT curve passes from strictly below to strictly
/// above the rate-based curve (linear interpolation between sweep points).
std::optional<double> crossover_speed(const std::vector<double>& speed,
                                      const std::vector<double>& egt,
                                      const std::vector<double>& rate);

// ---------------------------------------------------------------- runner

struct ExperimentResult {
  std::vector<std::filesystem::path> files;  // CSVs, then the manifest
  std::filesystem::path manifest;
  bool validation_failed = false;
};

/// Runs the experiment and writes its outputs. CSV contents depend only on
/// the configuration, the spec and the seed.
ExperimentResult run_experiment(const ExperimentSpec& spec, const SimulationConfig& cfg);

}  // namespace hetnet
