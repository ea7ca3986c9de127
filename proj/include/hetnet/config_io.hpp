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

// Flat `key = value` configuration files with one section per tier:
//
//   [network]   tiers, seed
//   [tierN]     lambda_per_km2, p_dbm, nakagami_mu, codebook_n, beamwidth_rad,
//               main_lobe_db, side_lobe_db, bandwidth_hz, noise_dbm, los_required
//   [blockage]  lambda_per_km2, mean_length_m, mean_width_m, p_formula
//   [mobility]  v_min_kmh, v_max_kmh, t_align_ms, t_sweep_ms, t_threshold,
//               ref_distance_m, omni_no_beam_reselection,
//               blockage_handover_mmwave_only
//   [game]      w1, w2, rho, variant, delay, population, normalization, utility,
//               exact_payoffs, memo_step, dt, horizon, cohort_speeds_kmh,
//               cohort_weights, initial_shares
//   [analysis]  pathloss_exponent, pathloss_ref_m, blockage_model, association,
//               rel_tol, theta_max_db, noise_figure_db
//   [montecarlo] disk_radius_m, los_mode, interferer_fading, realizations, traces,
//               trace_duration_s, trace_step_m
//
// Every physical quantity carries its unit in the key name. Keys not present
// keep the built-in defaults. `noise_dbm = auto` (the default) derives the
// noise floor from the bandwidth and analysis.noise_figure_db.

#include <cstdint>
#include <map>
#include <string>

#include "hetnet/core.hpp"

namespace hetnet {

/// Fully qualified `section.key` -> raw value.
using KeyValues = std::map<std::string, std::string>;

KeyValues load_key_values(const std::string& path);
KeyValues parse_key_values(const std::string& text);

/// Applies one `section.key=value` override; throws ConfigError on bad syntax.
void apply_override(KeyValues& kv, const std::string& assignment);

/// Builds and validates a configuration; throws ConfigError listing every
/// unknown key, unparsable value and violated invariant.
SimulationConfig build_config(const KeyValues& kv);

/// Effective parameters in canonical form (sorted, full precision).
KeyValues effective_key_values(const SimulationConfig& cfg);
std::string to_config_text(const SimulationConfig& cfg);
/// FNV-1a over the effective parameter listing.
std::uint64_t config_hash(const SimulationConfig& cfg);

}  // namespace hetnet
