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

// Independent network simulator used to check the analysis: PPP base
// stations around a typical user at the origin, rectangle blockages,
// Nakagami fading, random activity and beam orientations, plus
// random-direction mobility traces with handover counting.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hetnet/blockage.hpp"
#include "hetnet/core.hpp"

namespace hetnet {

struct TierRealization {
  std::size_t tier = 0;  // 1-based
  double disk_radius_km = 0.0;
  std::vector<double> x, y;             // km
  std::vector<std::uint8_t> los;        // link to the origin unobstructed
  std::vector<std::uint8_t> active;     // Bernoulli(χ)
  std::vector<double> fading;           // power fading draw; 0 for NLoS links
  std::vector<double> gain;             // antenna gain toward the origin; 0 for NLoS
  std::size_t serving = 0;              // == x.size() when uncovered
  bool covered() const noexcept { return serving < x.size(); }
};

struct NetworkRealization {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  std::vector<TierRealization> tiers;
  std::optional<BlockageField> field;  // present in field LoS mode
};

/// Disk radius used for tier `tier` (configured value or 3·R_B, at least
/// 2 km and 10 mean inter-site distances).
double realization_radius(const SimulationConfig& cfg, std::size_t tier);

/// One tier around the origin. `field` is required in field LoS mode for
/// LoS tiers and ignored otherwise.
TierRealization realize_tier(const SimulationConfig& cfg, std::size_t tier, double active_share,
                             std::uint64_t seed, std::uint64_t index,
                             const BlockageField* field = nullptr);

/// All tiers of one draw; `active_shares` holds one χ per tier.
NetworkRealization realize(const SimulationConfig& cfg, std::span<const double> active_shares,
                           std::uint64_t seed, std::uint64_t index = 0);

/// Linear SINR at the origin, or nullopt when the tier has no serving BS.
std::optional<double> empirical_sinr(const SimulationConfig& cfg, const TierRealization& tier);

struct CoverageEstimate {
  std::vector<double> theta;       // linear thresholds
  std::vector<double> coverage;    // fraction of draws with SINR > θ
  std::vector<double> std_error;
  double mean_sinr = 0.0;          // capped at analysis.theta_max, uncovered counted as 0
  std::size_t draws = 0;
  std::size_t uncovered = 0;
  std::vector<double> samples;     // linear SINR per draw (0 when uncovered) if requested
};

CoverageEstimate empirical_coverage(const SimulationConfig& cfg, std::size_t tier,
                                    double active_share, const std::vector<double>& theta,
                                    std::size_t draws, std::uint64_t seed,
                                    bool keep_samples = false);

struct RwpTrace {
  std::size_t tier = 0;
  std::vector<Point> waypoints;
  std::vector<double> leg_speed_kms;
  std::vector<double> time_s;           // sample times
  std::vector<Point> position;
  std::vector<std::size_t> serving;     // nearest BS of the tier
  std::vector<int> beam;                // sector of the serving BS covering the user
  std::vector<std::uint8_t> los;        // serving link unobstructed
  // Local deployment used for the trace.
  std::vector<double> bs_x, bs_y, bs_orientation;
  double duration_s = 0.0;
};

struct TraceCounts {
  std::size_t beam = 0;
  std::size_t cell = 0;
  std::size_t blockage = 0;
  double duration_s = 0.0;
};

/// Random-direction trace: straight legs of uniform direction and length
/// uniform on (0, 0.2 km), speed uniform on [speed_min, speed_max] per leg,
/// sampled so that consecutive positions are at most trace_step_km apart.
/// Base stations (and, with `with_blockage`, rectangles) are drawn in a disk
/// that covers the whole trace.
RwpTrace sample_trace(const SimulationConfig& cfg, std::size_t tier, double speed_min_kms,
                      double speed_max_kms, double duration_s, std::uint64_t seed,
                      std::uint64_t index, bool with_blockage);

/// Beam-sector crossings under an unchanged serving BS, serving-BS changes,
/// and LoS → blocked transitions of an unchanged serving link.
TraceCounts trace_handover_counts(const RwpTrace& trace, int codebook_exponent);

struct RateEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t events = 0;
  double exposure = 0.0;  // seconds or windows
};

struct TraceRates {
  RateEstimate beam, cell, blockage;
};
/// Aggregated per-second rates over `traces` traces of `duration_s` each.
TraceRates trace_rates(const SimulationConfig& cfg, std::size_t tier, double speed_kms,
                       std::size_t traces, double duration_s, std::uint64_t seed,
                       bool with_blockage);

/// Fraction of one-second windows in which a link of length `link_km`, LoS
/// at the start, becomes blocked while the user moves `speed_kms` in a
/// uniform direction (fresh rectangle field per window).
RateEstimate link_blockage_probability(const BlockageParams& bp, double speed_kms, double link_km,
                                       std::size_t windows, std::uint64_t seed,
                                       double step_km = 1e-3);

/// Mean number of rectangles that enter the region swept by the link in one
/// second, over `draws` field draws with uniform motion direction.
RateEstimate swept_region_count(const BlockageParams& bp, double speed_kms, double link_km,
                                std::size_t draws, std::uint64_t seed);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::string reason;
  double empirical = 0.0;
  double analytic = 0.0;
  double ci_half = 0.0;   // 99% half-width of the empirical value
  double tolerance = 0.0;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool complete = true;
  bool all_passed() const;
};

enum class Budget { fast, full };

struct ValidationOptions {
  Budget budget = Budget::fast;
  double time_limit_s = 0.0;      // <= 0: unlimited
  double analytic_beta_scale = 1.0;  // negative control: distort β on the analytic side
  std::uint64_t seed = 1;
};

ValidationReport validate_suite(const SimulationConfig& cfg, const ValidationOptions& opt);
std::string validation_json(const ValidationReport& report);

struct SinrSampleRow {
  std::uint64_t seed;
  std::size_t tier;
  double sinr_db;
};
struct TraceCountRow {
  std::uint64_t seed;
  TraceCounts counts;
};
void write_sinr_samples(std::ostream& os, const std::vector<SinrSampleRow>& rows);
void write_trace_counts(std::ostream& os, const std::vector<TraceCountRow>& rows);

}  // namespace hetnet
