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


#include "hetnet/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "hetnet/analytics.hpp"
#include "hetnet/blockage.hpp"

namespace hetnet {

namespace {

void check_speed(double u) {
  if (!(u >= 0.0)) throw DomainError("speed must be >= 0");
}

}  // namespace

double beam_reselection_rate(const TierParams& tier, double speed_kms) {
  check_speed(speed_kms);
  return std::ldexp(1.0, tier.codebook_exponent) * std::sqrt(tier.density_per_km2) * speed_kms /
         kPi;
}

double cell_crossing_rate(const TierParams& tier, double speed_kms) {
  check_speed(speed_kms);
  return 4.0 * std::sqrt(tier.density_per_km2) * speed_kms / kPi;
}

double blockage_handover_rate(double speed_kms, const BlockageParams& bp, double link_km) {
  check_speed(speed_kms);
  return -std::expm1(-expected_blockage_count(link_km, speed_kms, bp));
}

double reference_link_length(const SimulationConfig& cfg, std::size_t tier) {
  if (cfg.mobility.ref_distance_km > 0.0) return cfg.mobility.ref_distance_km;
  return TierAnalysis(cfg, tier, 1.0).mean_serving_distance();
}

OverheadBreakdown time_overhead(const SimulationConfig& cfg, std::size_t tier, double speed_kms) {
  const auto& t = cfg.tier(tier);
  const bool blockage = t.los_required || !cfg.mobility.blockage_handover_mmwave_only;
  const double link = blockage ? reference_link_length(cfg, tier) : 0.0;
  return time_overhead(cfg, tier, speed_kms, link);
}

OverheadBreakdown time_overhead(const SimulationConfig& cfg, std::size_t tier, double speed_kms,
                                double link_km) {
  const auto& t = cfg.tier(tier);
  const auto& m = cfg.mobility;
  OverheadBreakdown o;
  o.tier = tier;
  o.speed_kms = speed_kms;
  o.beam_rate = (t.omni() && m.omni_no_beam_reselection) ? 0.0 : beam_reselection_rate(t, speed_kms);
  o.cell_rate = cell_crossing_rate(t, speed_kms);
  const bool blockage = t.los_required || !m.blockage_handover_mmwave_only;
  o.blockage_rate = blockage ? blockage_handover_rate(speed_kms, cfg.blockage, link_km) : 0.0;
  o.time_overhead = o.beam_rate * m.align_time_s + (o.cell_rate + o.blockage_rate) * m.sweep_time_s;
  o.saturated = o.time_overhead >= 1.0;
  return o;
}

double ase(double time_overhead, double mean_rate_bps) {
  return std::max(0.0, 1.0 - time_overhead) * mean_rate_bps;
}

void write_overhead_csv(std::ostream& os, const std::vector<OverheadRow>& rows) {
  os << "u_kmh,tier,delta_r,delta_a,delta_b,t_ho,ase_bps\n";
  const auto old = os.precision(12);
  for (const auto& r : rows) {
    const auto& o = r.overhead;
    os << r.speed_kmh << ',' << o.tier << ',' << o.beam_rate << ',' << o.cell_rate << ','
       << o.blockage_rate << ',' << o.time_overhead << ',' << r.ase_bps << '\n';
  }
  os.precision(old);
}

}  // namespace hetnet
