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

// Handover rates of a moving user and the resulting time overhead.

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "hetnet/core.hpp"

namespace hetnet {

struct OverheadBreakdown {
  std::size_t tier = 0;
  double speed_kms = 0.0;
  double beam_rate = 0.0;      // δ_r, 1/s
  double cell_rate = 0.0;      // δ_a, 1/s
  double blockage_rate = 0.0;  // δ_b, 1/s
  double time_overhead = 0.0;  // T_HO, fraction of time
  bool saturated = false;      // T_HO >= 1
};

/// δ_r = 2^n √λ u / π: beam-boundary crossings inside the serving cell.
double beam_reselection_rate(const TierParams& tier, double speed_kms);
/// δ_a = 4 √λ u / π: Voronoi-boundary crossings.
double cell_crossing_rate(const TierParams& tier, double speed_kms);
/// δ_b = 1 − exp(−E[K]) for a serving link of length `link_km`.
double blockage_handover_rate(double speed_kms, const BlockageParams& bp, double link_km);

/// Serving-link length used for δ_b: the configured reference distance, or
/// the tier's mean serving distance when none is configured.
double reference_link_length(const SimulationConfig& cfg, std::size_t tier);

/// T_HO = δ_r·T_a + (δ_a + δ_b)·T_s with the configured tier conventions
/// (no beam reselection on omni tiers, blockage handovers on LoS tiers).
OverheadBreakdown time_overhead(const SimulationConfig& cfg, std::size_t tier, double speed_kms);
/// Same, with an explicit serving-link length for δ_b.
OverheadBreakdown time_overhead(const SimulationConfig& cfg, std::size_t tier, double speed_kms,
                                double link_km);

/// (1 − T_HO)⁺ · rate.
double ase(double time_overhead, double mean_rate_bps);

struct OverheadRow {
  double speed_kmh;
  OverheadBreakdown overhead;
  double ase_bps;
};
/// CSV `u_kmh,tier,delta_r,delta_a,delta_b,t_ho,ase_bps`.
void write_overhead_csv(std::ostream& os, const std::vector<OverheadRow>& rows);

}  // namespace hetnet
