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


#include "hetnet/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <random>

#include "hetnet/analytics.hpp"
#include "hetnet/mobility.hpp"
#include "hetnet/random.hpp"
#include "hetnet/simd.hpp"
#include "json.hpp"

namespace hetnet {

namespace {

// Per-tier substream index so tiers of one draw stay independent.
std::uint64_t substream(std::uint64_t index, std::size_t tier) { return index * 64 + tier; }

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finalizer over a combined word
  std::uint64_t z = a * 0x9E3779B97F4A7C15ull + b + 0x632BE59BD9B4E019ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double los_chance(const SimulationConfig& cfg, double r) {
  return cfg.analysis.blockage == AnalyticBlockage::step ? los_probability_step(r, cfg.blockage)
                                                         : los_probability(r, cfg.blockage);
}

bool even_exponent(double a, int& half) {
  const double h = a / 2.0;
  half = static_cast<int>(std::lround(h));
  return std::abs(h - half) < 1e-12 && half >= 1;
}

double z99() { return 2.5758293035489004; }

}  // namespace

double realization_radius(const SimulationConfig& cfg, std::size_t tier) {
  if (cfg.montecarlo.disk_radius_km > 0.0) return cfg.montecarlo.disk_radius_km;
  const auto& t = cfg.tier(tier);
  double r = std::max(2.0, 10.0 / std::sqrt(t.density_per_km2));
  const double rb = cfg.blockage.los_radius();
  if (std::isfinite(rb)) r = std::max(r, 3.0 * rb);
  return r;
}

TierRealization realize_tier(const SimulationConfig& cfg, std::size_t tier, double active_share,
                             std::uint64_t seed, std::uint64_t index, const BlockageField* field) {
  const auto& tp = cfg.tier(tier);
  if (!(active_share >= 0.0 && active_share <= 1.0)) throw DomainError("active share outside [0,1]");
  const bool use_field = tp.los_required && cfg.montecarlo.los_mode == LosMode::field &&
                         cfg.blockage.density() > 0.0;
  if (use_field && field == nullptr) throw DomainError("field LoS mode needs a blockage field");
  const std::uint64_t sub = substream(index, tier);
  auto pts = make_rng(seed, sub, Stream::base_stations);
  auto los_rng = make_rng(seed, sub, Stream::los);
  auto act_rng = make_rng(seed, sub, Stream::activity);
  auto fad_rng = make_rng(seed, sub, Stream::fading);
  auto ant_rng = make_rng(seed, sub, Stream::antennas);

  TierRealization out;
  out.tier = tier;
  out.disk_radius_km = realization_radius(cfg, tier);
  const double rho = out.disk_radius_km;
  const auto n = std::poisson_distribution<long>(tp.density_per_km2 * kPi * rho * rho)(pts);
  const auto count = static_cast<std::size_t>(n);
  out.x.resize(count);
  out.y.resize(count);
  out.los.resize(count);
  out.active.resize(count);
  out.fading.assign(count, 0.0);
  out.gain.assign(count, 0.0);
  std::vector<double> d2(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = rho * std::sqrt(uniform01(pts));
    const double ang = kTwoPi * uniform01(pts);
    out.x[i] = r * std::cos(ang);
    out.y[i] = r * std::sin(ang);
    d2[i] = r * r;
    if (!tp.los_required) {
      out.los[i] = 1;
    } else if (use_field) {
      out.los[i] = field->is_los({0.0, 0.0}, {out.x[i], out.y[i]}) ? 1 : 0;
    } else {
      out.los[i] = uniform01(los_rng) < los_chance(cfg, r) ? 1 : 0;
    }
    out.active[i] = uniform01(act_rng) < active_share ? 1 : 0;
  }

  const bool need_active = cfg.analysis.association == Association::nearest_active_los;
  out.serving = count;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    if (!out.los[i] || (need_active && !out.active[i])) continue;
    if (d2[i] < best) {
      best = d2[i];
      out.serving = i;
    }
  }

  const double mu = tp.nakagami_mu;
  std::gamma_distribution<double> nakagami(mu, 1.0 / mu);
  std::exponential_distribution<double> rayleigh(1.0);
  const bool rayleigh_interferers = cfg.montecarlo.interferer_fading == InterfererFading::rayleigh;
  const double pm = main_lobe_probability(tp);
  for (std::size_t i = 0; i < count; ++i) {
    if (!out.los[i]) continue;
    if (i == out.serving) {
      out.fading[i] = nakagami(fad_rng);
      out.gain[i] = tp.main_lobe_gain;
    } else {
      out.fading[i] = rayleigh_interferers ? rayleigh(fad_rng) : nakagami(fad_rng);
      // A uniformly oriented beam points at the origin with probability φ/2π.
      out.gain[i] = uniform01(ant_rng) < pm ? tp.main_lobe_gain : tp.side_lobe_gain;
    }
  }
  return out;
}

NetworkRealization realize(const SimulationConfig& cfg, std::span<const double> active_shares,
                           std::uint64_t seed, std::uint64_t index) {
  if (active_shares.size() != cfg.num_tiers()) throw DomainError("one active share per tier required");
  NetworkRealization net;
  net.seed = seed;
  net.index = index;
  if (cfg.montecarlo.los_mode == LosMode::field && cfg.blockage.density() > 0.0) {
    double rho = 0.0;
    for (std::size_t k = 1; k <= cfg.num_tiers(); ++k)
      if (cfg.tier(k).los_required) rho = std::max(rho, realization_radius(cfg, k));
    if (rho > 0.0)
      net.field = sample_field(cfg.blockage, rho, default_guard(cfg.blockage, SizeDistribution::degenerate),
                               SizeDistribution::degenerate, mix(seed, index));
  }
  for (std::size_t k = 1; k <= cfg.num_tiers(); ++k)
    net.tiers.push_back(realize_tier(cfg, k, active_shares[k - 1], seed, index,
                                     net.field ? &*net.field : nullptr));
  return net;
}

namespace {

std::optional<double> sinr_within(const SimulationConfig& cfg, const TierRealization& t,
                                  double max_radius) {
  if (!t.covered()) return std::nullopt;
  const auto& tp = cfg.tier(t.tier);
  const double a = cfg.analysis.pathloss_exponent;
  const std::size_t n = t.x.size();
  const double max2 = max_radius * max_radius;
  std::vector<double> w(n, 0.0), d2(n);
  for (std::size_t i = 0; i < n; ++i) {
    d2[i] = t.x[i] * t.x[i] + t.y[i] * t.y[i];
    if (i != t.serving && t.los[i] && t.active[i] && d2[i] <= max2)
      w[i] = tp.power_mw * t.gain[i] * t.fading[i];
  }
  const std::size_t s = t.serving;
  if (d2[s] > max2) return std::nullopt;
  double interference = 0.0, signal = 0.0;
  int half = 0;
  if (even_exponent(a, half)) {
    interference = simd::inverse_power_sum(w, d2, half);
    signal = tp.power_mw * t.gain[s] * t.fading[s] / std::pow(d2[s], half);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      if (w[i] != 0.0) interference += w[i] * std::pow(d2[i], -a / 2.0);
    signal = tp.power_mw * t.gain[s] * t.fading[s] * std::pow(d2[s], -a / 2.0);
  }
  return signal / (cfg.effective_noise(tp) + interference);
}

}  // namespace

std::optional<double> empirical_sinr(const SimulationConfig& cfg, const TierRealization& tier) {
  return sinr_within(cfg, tier, std::numeric_limits<double>::infinity());
}

CoverageEstimate empirical_coverage(const SimulationConfig& cfg, std::size_t tier,
                                    double active_share, const std::vector<double>& theta,
                                    std::size_t draws, std::uint64_t seed, bool keep_samples) {
  if (draws == 0) throw DomainError("at least one draw required");
  const auto& tp = cfg.tier(tier);
  const bool use_field = tp.los_required && cfg.montecarlo.los_mode == LosMode::field &&
                         cfg.blockage.density() > 0.0;
  const double rho = realization_radius(cfg, tier);
  const double guard = default_guard(cfg.blockage, SizeDistribution::degenerate);
  CoverageEstimate est;
  est.theta = theta;
  std::vector<std::size_t> hits(theta.size(), 0);
  double sum = 0.0;
  for (std::size_t d = 0; d < draws; ++d) {
    std::optional<BlockageField> field;
    if (use_field)
      field = sample_field(cfg.blockage, rho, guard, SizeDistribution::degenerate, mix(seed, d));
    const auto real = realize_tier(cfg, tier, active_share, seed, d, field ? &*field : nullptr);
    const auto s = empirical_sinr(cfg, real);
    const double v = s.value_or(0.0);
    if (!s) ++est.uncovered;
    for (std::size_t j = 0; j < theta.size(); ++j)
      if (v > theta[j]) ++hits[j];
    sum += std::min(v, cfg.analysis.theta_max);
    if (keep_samples) est.samples.push_back(v);
  }
  est.draws = draws;
  est.mean_sinr = sum / static_cast<double>(draws);
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const double p = static_cast<double>(hits[j]) / static_cast<double>(draws);
    est.coverage.push_back(p);
    est.std_error.push_back(std::sqrt(std::max(p * (1 - p), 1.0 / static_cast<double>(draws)) /
                                      static_cast<double>(draws)));
  }
  return est;
}

// ---------------------------------------------------------------- traces

RwpTrace sample_trace(const SimulationConfig& cfg, std::size_t tier, double speed_min_kms,
                      double speed_max_kms, double duration_s, std::uint64_t seed,
                      std::uint64_t index, bool with_blockage) {
  if (!(speed_min_kms >= 0.0 && speed_min_kms <= speed_max_kms))
    throw DomainError("need 0 <= speed_min <= speed_max");
  if (!(duration_s > 0.0)) throw DomainError("trace duration must be positive");
  const auto& tp = cfg.tier(tier);
  const std::uint64_t sub = substream(index, tier);
  auto mob = make_rng(seed, sub, Stream::mobility);
  auto pts = make_rng(seed, sub, Stream::base_stations);
  auto ant = make_rng(seed, sub, Stream::antennas);

  RwpTrace tr;
  tr.tier = tier;
  tr.duration_s = duration_s;
  tr.waypoints.push_back({0.0, 0.0});
  constexpr double kMaxLeg = 0.2;
  double t = 0.0;
  while (t < duration_s) {
    const double dir = kTwoPi * uniform01(mob);
    double len = kMaxLeg * uniform01(mob);
    const double speed = speed_min_kms + (speed_max_kms - speed_min_kms) * uniform01(mob);
    if (!(speed > 0.0)) len = 0.0;  // stationary leg: wait out the remaining time
    double dur = speed > 0.0 ? len / speed : duration_s - t;
    if (t + dur > duration_s) {
      dur = duration_s - t;
      len = speed * dur;
    }
    const Point& p = tr.waypoints.back();
    tr.waypoints.push_back({p.x + len * std::cos(dir), p.y + len * std::sin(dir)});
    tr.leg_speed_kms.push_back(speed);
    t += dur;
  }

  double extent = 0.0;
  for (const auto& w : tr.waypoints) extent = std::max(extent, std::hypot(w.x, w.y));
  const double margin = 5.0 / std::sqrt(tp.density_per_km2);
  const double rho = extent + margin;
  const auto n = static_cast<std::size_t>(
      std::poisson_distribution<long>(tp.density_per_km2 * kPi * rho * rho)(pts));
  for (std::size_t i = 0; i < n; ++i) {
    const double r = rho * std::sqrt(uniform01(pts));
    const double ang = kTwoPi * uniform01(pts);
    tr.bs_x.push_back(r * std::cos(ang));
    tr.bs_y.push_back(r * std::sin(ang));
    tr.bs_orientation.push_back(kTwoPi * uniform01(ant));
  }

  std::optional<BlockageField> field;
  if (with_blockage && tp.los_required && cfg.blockage.density() > 0.0)
    field = sample_field(cfg.blockage, rho, default_guard(cfg.blockage, SizeDistribution::degenerate),
                         SizeDistribution::degenerate, mix(seed, sub));

  const int sectors = 1 << std::max(tp.codebook_exponent, 0);
  const double sector_width = kTwoPi / sectors;
  auto sample = [&](Point p, double time) {
    tr.time_s.push_back(time);
    tr.position.push_back(p);
    const auto near = simd::nearest(tr.bs_x, tr.bs_y, p.x, p.y);
    tr.serving.push_back(near.index);
    if (near.index >= tr.bs_x.size()) {
      tr.beam.push_back(-1);
      tr.los.push_back(0);
      return;
    }
    const Point bs{tr.bs_x[near.index], tr.bs_y[near.index]};
    double bearing = std::atan2(p.y - bs.y, p.x - bs.x) - tr.bs_orientation[near.index];
    bearing -= kTwoPi * std::floor(bearing / kTwoPi);
    tr.beam.push_back(std::min(sectors - 1, static_cast<int>(bearing / sector_width)));
    tr.los.push_back(field ? (field->is_los(p, bs) ? 1 : 0) : 1);
  };

  const double step = cfg.montecarlo.trace_step_km;
  double time = 0.0;
  sample(tr.waypoints.front(), 0.0);
  for (std::size_t leg = 0; leg + 1 < tr.waypoints.size(); ++leg) {
    const Point a = tr.waypoints[leg], b = tr.waypoints[leg + 1];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const double speed = tr.leg_speed_kms[leg];
    const double dur = speed > 0.0 ? len / speed : duration_s - time;
    const auto parts = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / step)));
    for (std::size_t j = 1; j <= parts; ++j) {
      const double f = static_cast<double>(j) / static_cast<double>(parts);
      sample({a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)}, time + f * dur);
    }
    time += dur;
  }
  return tr;
}

TraceCounts trace_handover_counts(const RwpTrace& trace, int codebook_exponent) {
  TraceCounts c;
  c.duration_s = trace.duration_s;
  const int sectors = 1 << std::max(codebook_exponent, 0);
  for (std::size_t i = 1; i < trace.serving.size(); ++i) {
    if (trace.serving[i] != trace.serving[i - 1]) {
      ++c.cell;
      continue;
    }
    if (sectors > 1 && trace.beam[i] != trace.beam[i - 1]) {
      const int d = ((trace.beam[i] - trace.beam[i - 1]) % sectors + sectors) % sectors;
      c.beam += static_cast<std::size_t>(std::min(d, sectors - d));
    }
    if (trace.los[i - 1] && !trace.los[i]) ++c.blockage;
  }
  return c;
}

TraceRates trace_rates(const SimulationConfig& cfg, std::size_t tier, double speed_kms,
                       std::size_t traces, double duration_s, std::uint64_t seed,
                       bool with_blockage) {
  TraceCounts total;
  for (std::size_t i = 0; i < traces; ++i) {
    const auto tr = sample_trace(cfg, tier, speed_kms, speed_kms, duration_s, seed, i, with_blockage);
    const auto c = trace_handover_counts(tr, cfg.tier(tier).codebook_exponent);
    total.beam += c.beam;
    total.cell += c.cell;
    total.blockage += c.blockage;
    total.duration_s += c.duration_s;
  }
  auto rate = [&](std::size_t events) {
    RateEstimate r;
    r.events = events;
    r.exposure = total.duration_s;
    r.value = total.duration_s > 0.0 ? static_cast<double>(events) / total.duration_s : 0.0;
    r.std_error = total.duration_s > 0.0 ? std::sqrt(static_cast<double>(events)) / total.duration_s : 0.0;
    return r;
  };
  return {rate(total.beam), rate(total.cell), rate(total.blockage)};
}

RateEstimate link_blockage_probability(const BlockageParams& bp, double speed_kms, double link_km,
                                       std::size_t windows, std::uint64_t seed, double step_km) {
  if (!(link_km > 0.0)) throw DomainError("link length must be positive");
  if (!(step_km > 0.0)) throw DomainError("step must be positive");
  RateEstimate est;
  if (bp.density() <= 0.0 || speed_kms <= 0.0) return est;
  const double guard = default_guard(bp, SizeDistribution::degenerate);
  const double safe = link_km + speed_kms + step_km;
  const auto parts = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(speed_kms / step_km)));
  std::size_t exposed = 0, events = 0;
  for (std::size_t w = 0; w < windows; ++w) {
    auto rng = make_rng(seed, w, Stream::mobility);
    const double dir = kTwoPi * uniform01(rng);
    const auto field = sample_field(bp, safe, guard, SizeDistribution::degenerate, mix(seed, w));
    const Point bs{0.0, 0.0};
    if (!field.is_los(bs, {link_km, 0.0})) continue;
    ++exposed;
    for (std::size_t j = 1; j <= parts; ++j) {
      const double d = speed_kms * static_cast<double>(j) / static_cast<double>(parts);
      if (!field.is_los(bs, {link_km + d * std::cos(dir), d * std::sin(dir)})) {
        ++events;
        break;
      }
    }
  }
  est.events = events;
  est.exposure = static_cast<double>(exposed);
  if (exposed > 0) {
    const double p = static_cast<double>(events) / static_cast<double>(exposed);
    est.value = p;
    est.std_error = std::sqrt(p * (1 - p) / static_cast<double>(exposed));
  }
  return est;
}

RateEstimate swept_region_count(const BlockageParams& bp, double speed_kms, double link_km,
                                std::size_t draws, std::uint64_t seed) {
  if (!(link_km > 0.0)) throw DomainError("link length must be positive");
  RateEstimate est;
  if (bp.density() <= 0.0 || draws == 0) return est;
  const double guard = default_guard(bp, SizeDistribution::degenerate);
  const double safe = link_km + speed_kms;
  double sum = 0.0, sum2 = 0.0;
  std::size_t total = 0;
  for (std::size_t d = 0; d < draws; ++d) {
    auto rng = make_rng(seed, d, Stream::mobility);
    const double dir = kTwoPi * uniform01(rng);
    const auto field = sample_field(bp, safe, guard, SizeDistribution::degenerate, mix(seed, d));
    const Point bs{0.0, 0.0}, u0{link_km, 0.0};
    const Point u1{link_km + speed_kms * std::cos(dir), speed_kms * std::sin(dir)};
    std::size_t k = 0;
    for (const auto& r : field.rectangles())
      if (enters_swept_region(r, u0, u1, bs)) ++k;
    total += k;
    sum += static_cast<double>(k);
    sum2 += static_cast<double>(k) * static_cast<double>(k);
  }
  const double n = static_cast<double>(draws);
  est.events = total;
  est.exposure = n;
  est.value = sum / n;
  est.std_error = std::sqrt(std::max(sum2 / n - est.value * est.value, 0.0) / n);
  return est;
}

// ---------------------------------------------------------------- validation

bool ValidationReport::all_passed() const {
  return complete && std::all_of(checks.begin(), checks.end(),
                                 [](const ValidationCheck& c) { return c.passed || c.skipped; });
}

ValidationReport validate_suite(const SimulationConfig& cfg, const ValidationOptions& opt) {
  validate_config(cfg);
  const bool full = opt.budget == Budget::full;
  const auto start = std::chrono::steady_clock::now();
  ValidationReport rep;
  auto over_budget = [&] {
    if (opt.time_limit_s <= 0.0) return false;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >
           opt.time_limit_s;
  };
  auto run = [&](const std::string& name, const std::function<void(ValidationCheck&)>& body) {
    ValidationCheck c;
    c.name = name;
    if (over_budget()) {
      c.skipped = true;
      c.reason = "budget exhausted";
      rep.complete = false;
    } else {
      body(c);
    }
    rep.checks.push_back(std::move(c));
  };
  auto skip = [](ValidationCheck& c, std::string why) {
    c.skipped = true;
    c.reason = std::move(why);
  };
  const bool blockage = cfg.blockage.density() > 0.0 &&
                        (cfg.blockage.mean_length() > 0.0 || cfg.blockage.mean_width() > 0.0);
  const std::uint64_t seed = opt.seed;
  std::size_t mm = 0;  // first LoS tier
  for (std::size_t k = 1; k <= cfg.num_tiers() && mm == 0; ++k)
    if (cfg.tier(k).los_required) mm = k;

  // Poisson counts in the realization disk.
  run("poisson_count", [&](ValidationCheck& c) {
    const std::size_t k = cfg.num_tiers();
    const std::size_t n = full ? 2000 : 400;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      auto lc = cfg;
      lc.montecarlo.los_mode = LosMode::independent;
      sum += static_cast<double>(realize_tier(lc, k, 1.0, seed, i, nullptr).x.size());
    }
    const double rho = realization_radius(cfg, k);
    c.analytic = cfg.tier(k).density_per_km2 * kPi * rho * rho;
    c.empirical = sum / static_cast<double>(n);
    c.ci_half = 3.0 * std::sqrt(c.analytic / static_cast<double>(n));
    c.tolerance = c.ci_half;
    c.passed = std::abs(c.empirical - c.analytic) <= c.ci_half;
  });

  // LoS fraction of fixed-length links through sampled fields.
  for (double r : {0.05, 0.1, 0.2, 0.4}) {
    run("los_fraction_" + std::to_string(static_cast<int>(std::lround(r * 1000))) + "m",
        [&](ValidationCheck& c) {
          if (!blockage) return skip(c, "no blockages configured");
          const std::size_t n = full ? 40000 : 10000;
          const double guard = default_guard(cfg.blockage, SizeDistribution::degenerate);
          std::size_t hits = 0;
          for (std::size_t i = 0; i < n; ++i) {
            auto rng = make_rng(seed, i, Stream::los);
            const double ang = kTwoPi * uniform01(rng);
            const auto f = sample_field(cfg.blockage, r, guard, SizeDistribution::degenerate,
                                        mix(seed + 17, i));
            if (f.is_los({0, 0}, {r * std::cos(ang), r * std::sin(ang)})) ++hits;
          }
          const auto& bp = cfg.blockage;
          c.analytic = std::exp(-opt.analytic_beta_scale * bp.beta() * r - bp.p());
          c.empirical = static_cast<double>(hits) / static_cast<double>(n);
          c.ci_half = 3.0 * std::sqrt(c.analytic * (1 - c.analytic) / static_cast<double>(n));
          c.tolerance = c.ci_half;
          c.passed = std::abs(c.empirical - c.analytic) <= c.ci_half;
        });
  }

  // Fading draws and antenna-gain mixture.
  run("fading_mean", [&](ValidationCheck& c) {
    const std::size_t k = mm ? mm : 1;
    const double mu = cfg.tier(k).nakagami_mu;
    auto rng = make_rng(seed, 0, Stream::fading);
    std::gamma_distribution<double> g(mu, 1.0 / mu);
    const std::size_t n = full ? 400000 : 100000;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += g(rng);
    c.analytic = 1.0;
    c.empirical = sum / static_cast<double>(n);
    c.ci_half = 3.0 * std::sqrt(1.0 / mu / static_cast<double>(n));
    c.tolerance = c.ci_half;
    c.passed = std::abs(c.empirical - 1.0) <= c.ci_half;
  });
  run("main_lobe_frequency", [&](ValidationCheck& c) {
    if (!mm) return skip(c, "no directional tier");
    auto lc = cfg;
    lc.montecarlo.los_mode = LosMode::independent;
    const auto& tp = cfg.tier(mm);
    std::size_t main = 0, total = 0;
    for (std::size_t i = 0; total < (full ? 200000u : 50000u); ++i) {
      const auto t = realize_tier(lc, mm, 1.0, seed, i, nullptr);
      for (std::size_t j = 0; j < t.x.size(); ++j)
        if (t.los[j] && j != t.serving) {
          ++total;
          if (t.gain[j] == tp.main_lobe_gain) ++main;
        }
    }
    c.analytic = main_lobe_probability(tp);
    c.empirical = static_cast<double>(main) / static_cast<double>(total);
    c.ci_half = 3.0 * std::sqrt(c.analytic * (1 - c.analytic) / static_cast<double>(total));
    c.tolerance = c.ci_half;
    c.passed = std::abs(c.empirical - c.analytic) <= c.ci_half;
  });

  std::vector<double> theta_db;
  for (double t = -10.0; t <= 20.0 + 1e-9; t += 5.0) theta_db.push_back(t);
  std::vector<double> theta;
  for (double t : theta_db) theta.push_back(units::db_to_linear(t));

  // Exactness for Rayleigh fading on the omni tier.
  run("coverage_exact_tier1", [&](ValidationCheck& c) {
    auto lc = cfg;
    lc.montecarlo.interferer_fading = InterfererFading::rayleigh;
    if (lc.tier(1).nakagami_mu != 1) return skip(c, "tier 1 fading is not Rayleigh");
    const auto emp = empirical_coverage(lc, 1, 0.5, theta, full ? 100000 : 20000, seed);
    double worst = 0.0;
    for (std::size_t j = 0; j < theta.size(); ++j) {
      const double ana = coverage_probability(theta[j], lc, 1, 0.5);
      if (std::abs(emp.coverage[j] - ana) >= worst) {
        worst = std::abs(emp.coverage[j] - ana);
        c.analytic = ana;
        c.empirical = emp.coverage[j];
        c.ci_half = z99() * emp.std_error[j];
      }
    }
    c.tolerance = 0.02;
    c.passed = worst <= 0.02;
  });

  // The Alzer-based expression bounds coverage from above for μ > 1. The
  // bound is on the serving link only; interferers must follow the Rayleigh
  // law the Laplace transform assumes (Nakagami interferers break it near
  // full coverage).
  for (std::size_t k = 1; k <= cfg.num_tiers(); ++k) {
    if (cfg.tier(k).nakagami_mu <= 1) continue;
    run("coverage_bound_tier" + std::to_string(k), [&, k](ValidationCheck& c) {
      auto lc = cfg;
      lc.montecarlo.los_mode = LosMode::independent;
      lc.montecarlo.interferer_fading = InterfererFading::rayleigh;
      const auto emp = empirical_coverage(lc, k, 0.5, theta, full ? 40000 : 10000, seed);
      c.passed = true;
      double margin = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < theta.size(); ++j) {
        const double ana = coverage_probability(theta[j], lc, k, 0.5);
        const double half = z99() * emp.std_error[j];
        const double m = ana - (emp.coverage[j] - half);
        if (m < margin) {
          margin = m;
          c.analytic = ana;
          c.empirical = emp.coverage[j];
          c.ci_half = half;
        }
        if (m < 0.0) c.passed = false;
      }
    });
  }

  // Interference from beyond the disk is negligible: compare the same
  // draws truncated at ρ and at 1.5ρ.
  run("truncation_insensitivity", [&](ValidationCheck& c) {
    const std::size_t k = mm ? mm : 1;
    auto big = cfg;
    big.montecarlo.los_mode = LosMode::independent;
    const double rho = realization_radius(cfg, k);
    big.montecarlo.disk_radius_km = 1.5 * rho;
    const std::size_t n = full ? 20000 : 4000;
    std::size_t in_small = 0, in_big = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto t = realize_tier(big, k, 0.5, seed, i, nullptr);
      in_big += empirical_sinr(big, t).value_or(0.0) > 1.0;
      in_small += sinr_within(big, t, rho).value_or(0.0) > 1.0;
    }
    c.analytic = static_cast<double>(in_big) / static_cast<double>(n);
    c.empirical = static_cast<double>(in_small) / static_cast<double>(n);
    c.tolerance = 0.01;
    c.passed = std::abs(c.empirical - c.analytic) <= 0.01;
  });

  // Mean SINR falls as more interferers are active.
  run("mean_sinr_load_ordering", [&](ValidationCheck& c) {
    const std::size_t k = mm ? mm : 1;
    auto lc = cfg;
    lc.montecarlo.los_mode = LosMode::independent;
    const std::size_t n = full ? 20000 : 5000;
    const auto lo = empirical_coverage(lc, k, 0.5, {}, n, seed);
    const auto hi = empirical_coverage(lc, k, 0.9, {}, n, seed);
    c.analytic = lo.mean_sinr;
    c.empirical = hi.mean_sinr;
    c.passed = hi.mean_sinr < lo.mean_sinr;
  });

  // Handover rates along mobility traces.
  const double speed = units::kmh_to_kms(80.0);
  for (std::size_t k = 1; k <= cfg.num_tiers(); ++k) {
    const auto& tp = cfg.tier(k);
    run("cell_rate_tier" + std::to_string(k), [&, k](ValidationCheck& c) {
      const double secs = full ? 100000.0 : 20000.0;
      const auto r = trace_rates(cfg, k, speed, static_cast<std::size_t>(secs / 60.0), 60.0, seed, false);
      c.analytic = cell_crossing_rate(cfg.tier(k), speed);
      c.empirical = r.cell.value;
      c.ci_half = z99() * r.cell.std_error;
      c.tolerance = 0.05 * c.analytic;
      c.passed = std::abs(c.empirical - c.analytic) <= c.tolerance;
    });
    if (tp.codebook_exponent == 0) continue;
    run("beam_rate_tier" + std::to_string(k), [&, k](ValidationCheck& c) {
      const double secs = full ? 100000.0 : 20000.0;
      const auto r = trace_rates(cfg, k, speed, static_cast<std::size_t>(secs / 60.0), 60.0, seed, false);
      c.analytic = beam_reselection_rate(cfg.tier(k), speed);
      c.empirical = r.beam.value;
      c.ci_half = z99() * r.beam.std_error;
      c.tolerance = 0.05 * c.analytic;
      c.passed = std::abs(c.empirical - c.analytic) <= c.tolerance;
    });
  }
  const double link = 0.1;
  run("blockage_handover_rate", [&](ValidationCheck& c) {
    if (!blockage) return skip(c, "no blockages configured");
    const auto r = link_blockage_probability(cfg.blockage, speed, link, full ? 200000 : 50000, seed);
    c.analytic = blockage_handover_rate(speed, cfg.blockage, link);
    c.empirical = r.value;
    c.ci_half = z99() * r.std_error;
    c.tolerance = 0.05 * c.analytic;
    c.passed = std::abs(c.empirical - c.analytic) <= c.tolerance;
  });
  run("swept_region_count", [&](ValidationCheck& c) {
    if (!blockage) return skip(c, "no blockages configured");
    const auto r = swept_region_count(cfg.blockage, speed, link, full ? 400000 : 100000, seed);
    c.analytic = expected_blockage_count(link, speed, cfg.blockage);
    c.empirical = r.value;
    c.ci_half = z99() * r.std_error;
    c.tolerance = 0.03 * c.analytic;
    c.passed = std::abs(c.empirical - c.analytic) <= c.tolerance;
  });
  return rep;
}

std::string validation_json(const ValidationReport& report) {
  nlohmann::json j;
  j["complete"] = report.complete;
  j["passed"] = report.all_passed();
  auto& arr = j["checks"] = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json e{{"name", c.name},       {"passed", c.passed},     {"skipped", c.skipped},
                     {"empirical", c.empirical}, {"analytic", c.analytic}, {"ci_half", c.ci_half},
                     {"tolerance", c.tolerance}};
    if (!c.reason.empty()) e["reason"] = c.reason;
    arr.push_back(std::move(e));
  }
  return j.dump(2);
}

void write_sinr_samples(std::ostream& os, const std::vector<SinrSampleRow>& rows) {
  os << "seed,tier,sinr_db\n";
  const auto prec = os.precision(10);
  for (const auto& r : rows) os << r.seed << ',' << r.tier << ',' << r.sinr_db << '\n';
  os.precision(prec);
}

void write_trace_counts(std::ostream& os, const std::vector<TraceCountRow>& rows) {
  os << "seed,beam_ho,cell_ho,blk_ho,duration_s\n";
  for (const auto& r : rows)
    os << r.seed << ',' << r.counts.beam << ',' << r.counts.cell << ',' << r.counts.blockage << ','
       << r.counts.duration_s << '\n';
}

}  // namespace hetnet
