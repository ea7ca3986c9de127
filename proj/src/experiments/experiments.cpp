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


#include "hetnet/experiments.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hetnet/analytics.hpp"
#include "hetnet/mobility.hpp"

namespace hetnet {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Sweep points are independent; results land in preallocated slots so the
// output does not depend on the worker count.
template <class F>
void parallel_for(std::size_t n, F&& body) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(mu);
            if (!error) error = std::current_exception();
          }
        }
      });
  }
  if (error) std::rethrow_exception(error);
}

std::string num(double v) { return fmt::format("{}", v); }

// Sweep values appear in file names; keep them short and filesystem-safe.
std::string tag(double v) {
  std::string s = fmt::format("{}", v);
  std::replace(s.begin(), s.end(), '.', 'p');
  std::replace(s.begin(), s.end(), '-', 'm');
  return s;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

struct Writer {
  std::filesystem::path dir;
  ExperimentResult* result;
  json* files;

  void write(const std::string& name, const std::string& columns, const std::string& body,
             const std::string& description) {
    const auto path = dir / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw UsageError("cannot write " + path.string());
    os << body;
    if (!os) throw UsageError("write failed: " + path.string());
    result->files.push_back(path);
    (*files).push_back({{"file", name}, {"columns", columns}, {"description", description}});
  }
};

std::vector<std::size_t> as_tiers(const std::vector<double>& v, std::size_t k) {
  std::vector<std::size_t> out;
  for (double t : v) {
    if (t < 1 || t > static_cast<double>(k) || t != std::floor(t))
      throw UsageError(fmt::format("tier axis value {} outside 1..{}", t, k));
    out.push_back(static_cast<std::size_t>(t));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- specs

const std::vector<ExperimentId>& all_experiments() {
  static const std::vector<ExperimentId> ids{
      ExperimentId::sinr_vs_power, ExperimentId::rate_vs_power, ExperimentId::overhead_vs_speed,
      ExperimentId::evolution,     ExperimentId::delay_study,   ExperimentId::ase_comparison,
      ExperimentId::validate};
  return ids;
}

std::string_view experiment_name(ExperimentId id) {
  switch (id) {
    case ExperimentId::sinr_vs_power: return "sinr_vs_power";
    case ExperimentId::rate_vs_power: return "rate_vs_power";
    case ExperimentId::overhead_vs_speed: return "overhead_vs_speed";
    case ExperimentId::evolution: return "evolution";
    case ExperimentId::delay_study: return "delay_study";
    case ExperimentId::ase_comparison: return "ase_comparison";
    case ExperimentId::validate: return "validate";
  }
  return "?";
}

std::optional<ExperimentId> parse_experiment(std::string_view name) {
  for (auto id : all_experiments())
    if (experiment_name(id) == name) return id;
  return std::nullopt;
}

SweepAxis parse_sweep(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw UsageError("sweep must look like name=first:last:steps or name=v1,v2,...");
  SweepAxis axis;
  axis.parameter = std::string(text.substr(0, eq));
  const std::string rest(text.substr(eq + 1));
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || !std::isfinite(v))
      throw UsageError("sweep " + axis.parameter + ": bad number '" + s + "'");
    return v;
  };
  if (rest.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(rest);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("sweep " + axis.parameter + ": need first:last:steps");
    const double steps = number(parts[2]);
    if (steps < 1 || steps != std::floor(steps) || steps > 100000)
      throw UsageError("sweep " + axis.parameter + ": steps must be a positive integer");
    axis.values = linspace(number(parts[0]), number(parts[1]), static_cast<std::size_t>(steps));
  } else {
    std::stringstream ss(rest);
    for (std::string p; std::getline(ss, p, ',');) axis.values.push_back(number(p));
  }
  if (axis.values.empty()) throw UsageError("sweep " + axis.parameter + ": empty range");
  return axis;
}

std::map<std::string, std::vector<double>> preset_axes(ExperimentId id) {
  switch (id) {
    case ExperimentId::sinr_vs_power:
    case ExperimentId::rate_vs_power:
      return {{"power_dbm", linspace(-20.0, 70.0, 10)},
              {"active_share", {0.5, 0.9}},
              {"tier", {1, 2, 3}}};
    case ExperimentId::overhead_vs_speed:
      return {{"speed_kmh", linspace(0.0, 100.0, 11)}, {"density_scale", {1.0, 10.0}}};
    case ExperimentId::evolution:
      return {{"speed_kmh", {10.0, 80.0}}};
    case ExperimentId::delay_study:
      return {{"delay", {0.0, 10.0, 50.0}}};
    case ExperimentId::ase_comparison:
      return {{"blockage_per_km2", {50.0, 100.0}}, {"speed_kmh", linspace(0.0, 100.0, 21)}};
    case ExperimentId::validate:
      return {};
  }
  return {};
}

void check_spec(const ExperimentSpec& spec) {
  const auto presets = preset_axes(spec.id);
  for (const auto& a : spec.axes) {
    if (!presets.count(a.parameter))
      throw UsageError(fmt::format("experiment {} has no sweep axis '{}'", experiment_name(spec.id),
                                   a.parameter));
    if (a.values.empty()) throw UsageError("sweep " + a.parameter + ": empty range");
  }
}

std::vector<double> axis_values(const ExperimentSpec& spec, const std::string& parameter) {
  check_spec(spec);
  for (auto it = spec.axes.rbegin(); it != spec.axes.rend(); ++it)
    if (it->parameter == parameter) return it->values;
  const auto presets = preset_axes(spec.id);
  const auto it = presets.find(parameter);
  if (it == presets.end()) throw UsageError("unknown sweep axis " + parameter);
  return it->second;
}

KeyValues preset_overrides(ExperimentId id) {
  KeyValues kv;
  switch (id) {
    case ExperimentId::evolution:
    case ExperimentId::ase_comparison:
      kv["mobility.t_align_ms"] = "1000";
      kv["mobility.t_sweep_ms"] = "1000";
      kv["game.variant"] = "g2";
      break;
    case ExperimentId::delay_study:
      kv["mobility.t_align_ms"] = "1000";
      kv["mobility.t_sweep_ms"] = "1000";
      kv["game.variant"] = "g1";
      kv["game.utility"] = "closed_form";
      kv["game.cohort_speeds_kmh"] = "10";
      kv["game.dt"] = "0.1";
      break;
    default:
      break;
  }
  return kv;
}

// ---------------------------------------------------------------- studies

std::vector<PowerCurve> power_sweep(const SimulationConfig& cfg, PowerMetric metric,
                                    const std::vector<std::size_t>& tiers,
                                    const std::vector<double>& active_shares,
                                    const std::vector<double>& power_dbm) {
  for (double chi : active_shares)
    if (!(chi > 0.0 && chi <= 1.0)) throw DomainError("active share must lie in (0, 1]");
  std::vector<std::vector<PowerCurve>> per_tier(tiers.size());
  parallel_for(tiers.size(), [&](std::size_t i) {
    const UtilityTable table(cfg, tiers[i]);
    for (double chi : active_shares) {
      PowerCurve c;
      c.tier = tiers[i];
      c.active_share = chi;
      c.power_dbm = power_dbm;
      for (double p : power_dbm) {
        const double mw = units::dbm_to_mw(p);
        c.value.push_back(metric == PowerMetric::mean_sinr ? table.mean_sinr(chi, mw)
                                                           : table.mean_rate(chi, mw));
      }
      per_tier[i].push_back(std::move(c));
    }
  });
  std::vector<PowerCurve> out;
  for (auto& v : per_tier)
    for (auto& c : v) out.push_back(std::move(c));
  return out;
}

double curve_knee_dbm(const PowerCurve& curve) {
  if (curve.value.empty()) throw DomainError("empty curve");
  const double half = 0.5 * curve.value.back();
  for (std::size_t i = 0; i < curve.value.size(); ++i)
    if (curve.value[i] >= half) return curve.power_dbm[i];
  return curve.power_dbm.back();
}

std::vector<EvolutionRun> evolution_study(const SimulationConfig& cfg,
                                          const std::vector<double>& speeds_kmh,
                                          std::uint64_t seed) {
  const auto src = make_utility_source(cfg);
  std::vector<EvolutionRun> runs(speeds_kmh.size());
  parallel_for(speeds_kmh.size(), [&](std::size_t i) {
    auto c = cfg;
    c.game.cohorts = {{units::kmh_to_kms(speeds_kmh[i]), 1.0}};
    const GameModel model(c, src);
    auto& run = runs[i];
    run.speed_kmh = speeds_kmh[i];
    run.overhead = model.overhead(0);
    IntegrationOptions opt;
    opt.horizon = c.game.horizon;
    opt.dt = c.game.dt;
    opt.delay = c.game.delay;
    run.ode = integrate(model, model.initial_state(), opt);
    AgentOptions ag;
    ag.population = c.game.population;
    ag.max_iterations = static_cast<std::size_t>(std::ceil(c.game.horizon));
    ag.seed = seed;
    run.agents = evolve_agents(model, ag);
    run.equilibrium = find_equilibrium(model);
    if (run.equilibrium.kind == EquilibriumKind::interior)
      run.equilibrium = stability(run.equilibrium, model);
  });
  return runs;
}

std::string_view outcome_name(DelayOutcome o) {
  switch (o) {
    case DelayOutcome::monotone: return "monotone";
    case DelayOutcome::damped: return "damped";
    case DelayOutcome::sustained: return "sustained";
    case DelayOutcome::unclassified: return "unclassified";
  }
  return "?";
}

namespace {

void classify(DelayRun& run, double tolerance) {
  const auto& st = run.trajectory.states;
  const double tau = run.delay;
  run.window = tau > 0.0 ? static_cast<std::size_t>(std::ceil(4.0 * tau)) : 10;
  for (std::size_t w = 0; (w + 1) * run.window <= st.size(); ++w) {
    double lo = st[w * run.window][0], hi = lo;
    for (std::size_t i = w * run.window; i < (w + 1) * run.window; ++i) {
      lo = std::min(lo, st[i][0]);
      hi = std::max(hi, st[i][0]);
    }
    run.amplitude.push_back(hi - lo);
  }
  // Direction changes after the constant-history start-up.
  const auto transient = static_cast<std::size_t>(std::ceil(tau)) + 5;
  int last = 0;
  for (std::size_t i = std::max<std::size_t>(transient, 1); i < st.size(); ++i) {
    const double d = st[i][0] - st[i - 1][0];
    if (std::abs(d) < 1e-9) continue;
    const int s = d > 0 ? 1 : -1;
    if (last != 0 && s != last) ++run.reversals;
    last = s;
  }

  const auto& a = run.amplitude;
  if (run.trajectory.converged) {
    if (run.reversals == 0) {
      run.outcome = DelayOutcome::monotone;
      return;
    }
    bool decaying = run.reversals >= 2;
    for (std::size_t w = 1; w < a.size() && a[w - 1] > tolerance; ++w)
      decaying = decaying && a[w] < a[w - 1];
    run.outcome = decaying ? DelayOutcome::damped : DelayOutcome::unclassified;
    return;
  }
  bool sustained = a.size() >= 3;
  for (std::size_t w = 2; w < a.size(); ++w) sustained = sustained && a[w] >= 0.5 * a[1];
  run.outcome = sustained ? DelayOutcome::sustained : DelayOutcome::unclassified;
}

}  // namespace

DelayStudy delay_study(const SimulationConfig& cfg, const std::vector<double>& delays,
                       double horizon) {
  const auto src = make_utility_source(cfg);
  auto base = cfg;
  base.game.adaptation_rate = 1.0;
  base.game.delay = 0.0;
  DelayStudy study;
  {
    const GameModel unit(base, src);
    auto eq = find_equilibrium(unit);
    if (eq.kind != EquilibriumKind::interior)
      throw DomainError("delay study needs an interior equilibrium");
    eq = stability(eq, unit);
    double fastest = 0.0;
    for (double re : eq.eigenvalues_real) fastest = std::max(fastest, -re);
    if (!(fastest > 0.0)) throw NumericError("undelayed equilibrium is not attracting", fastest);
    study.adaptation_rate = 0.1 / fastest;
    for (auto& re : eq.eigenvalues_real) re *= study.adaptation_rate;
    for (auto& im : eq.eigenvalues_imag) im *= study.adaptation_rate;
    study.equilibrium = eq;
  }
  base.game.adaptation_rate = study.adaptation_rate;
  const GameModel model(base, src);
  study.runs.resize(delays.size());
  parallel_for(delays.size(), [&](std::size_t i) {
    IntegrationOptions opt;
    opt.horizon = horizon;
    opt.dt = base.game.dt;
    opt.delay = delays[i];
    auto& run = study.runs[i];
    run.delay = delays[i];
    run.trajectory = integrate(model, model.initial_state(), opt);
    classify(run, opt.tolerance);
  });
  return study;
}

std::optional<double> crossover_speed(const std::vector<double>& speed,
                                      const std::vector<double>& egt,
                                      const std::vector<double>& rate) {
  bool below = false;
  for (std::size_t i = 0; i < speed.size(); ++i) {
    const double d = egt[i] - rate[i];
    if (d < 0.0) {
      below = true;
    } else if (d > 0.0 && below && i > 0) {
      const double d0 = egt[i - 1] - rate[i - 1];
      if (d0 >= 0.0) return speed[i - 1];
      return speed[i - 1] + (speed[i] - speed[i - 1]) * (-d0) / (d - d0);
    }
  }
  return std::nullopt;
}

AseCurve ase_curve(const SimulationConfig& cfg, double blockage_density,
                   const std::vector<double>& speeds_kmh) {
  auto c = cfg;
  c.blockage = cfg.blockage.with_density(blockage_density);
  c.game.variant = GameVariant::g2_mean_rate;
  validate_config(c);
  const auto src = make_utility_source(c);
  AseCurve curve;
  curve.blockage_density = blockage_density;
  curve.speed_kmh = speeds_kmh;
  const std::size_t n = speeds_kmh.size(), k = c.num_tiers();
  curve.ase_egt.assign(n, 0.0);
  curve.ase_rate.assign(n, 0.0);
  curve.shares.assign(n, {});
  std::vector<std::size_t> rate_tier(n, 0);
  parallel_for(n, [&](std::size_t i) {
    auto ci = c;
    ci.game.cohorts = {{units::kmh_to_kms(speeds_kmh[i]), 1.0}};
    const GameModel model(ci, src);
    const auto eq = find_equilibrium(model);
    const auto& oh = model.overhead(0);
    double egt = 0.0;
    for (std::size_t t = 0; t < k; ++t)
      if (eq.shares[t] > 0.0) egt += eq.shares[t] * ase(oh[t], src->utility(t, eq.shares[t]));
    const auto base = baseline_select(BaselinePolicy::max_rate, model);
    curve.ase_egt[i] = egt;
    curve.ase_rate[i] = ase(oh[base.tier], src->utility(base.tier, 1.0));
    curve.shares[i] = eq.shares;
    rate_tier[i] = base.tier + 1;
  });
  curve.rate_tier = n ? rate_tier.front() : 0;
  curve.crossover_kmh = crossover_speed(curve.speed_kmh, curve.ase_egt, curve.ase_rate);
  return curve;
}

// ---------------------------------------------------------------- runner

ExperimentResult run_experiment(const ExperimentSpec& spec, const SimulationConfig& cfg) {
  validate_config(cfg);
  check_spec(spec);
  std::error_code ec;
  std::filesystem::create_directories(spec.output_dir, ec);
  if (ec) throw UsageError("cannot create output directory " + spec.output_dir.string());

  ExperimentResult result;
  json manifest;
  const auto name = std::string(experiment_name(spec.id));
  manifest["experiment"] = name;
  manifest["config_hash"] = fmt::format("{:016x}", config_hash(cfg));
  manifest["seed"] = spec.seed;
  manifest["budget"] = spec.budget == Budget::full ? "full" : "fast";
  manifest["effective_config"] = effective_key_values(cfg);
  json axes = json::object();
  for (const auto& [axis, values] : preset_axes(spec.id)) axes[axis] = axis_values(spec, axis);
  manifest["axes"] = axes;
  json files = json::array();
  json runtimes = json::object();
  json residuals = json::object();
  json results = json::object();
  Writer out{spec.output_dir, &result, &files};
  const auto t0 = Clock::now();

  switch (spec.id) {
    case ExperimentId::sinr_vs_power:
    case ExperimentId::rate_vs_power: {
      const bool sinr = spec.id == ExperimentId::sinr_vs_power;
      const auto curves = power_sweep(cfg, sinr ? PowerMetric::mean_sinr : PowerMetric::mean_rate,
                                      as_tiers(axis_values(spec, "tier"), cfg.num_tiers()),
                                      axis_values(spec, "active_share"),
                                      axis_values(spec, "power_dbm"));
      const std::string columns = sinr ? "p_dbm,mean_sinr,mean_sinr_db" : "p_dbm,mean_rate_bps";
      for (const auto& c : curves) {
        std::string body = columns + "\n";
        for (std::size_t i = 0; i < c.value.size(); ++i) {
          body += num(c.power_dbm[i]) + "," + num(c.value[i]);
          if (sinr) body += "," + num(units::linear_to_db(c.value[i]));
          body += "\n";
        }
        out.write(fmt::format("{}_tier{}_chi{}.csv", sinr ? "sinr" : "rate", c.tier, tag(c.active_share)),
                  columns, body,
                  fmt::format("tier {} at active share {}", c.tier, c.active_share));
        results[fmt::format("tier{}_chi{}", c.tier, tag(c.active_share))] = {
            {"knee_dbm", curve_knee_dbm(c)}, {"last", c.value.back()}};
      }
      runtimes["sweep_s"] = seconds_since(t0);
      break;
    }
    case ExperimentId::overhead_vs_speed: {
      const auto speeds = axis_values(spec, "speed_kmh");
      for (double scale : axis_values(spec, "density_scale")) {
        if (!(scale > 0.0)) throw UsageError("density_scale must be positive");
        auto c = cfg;
        for (auto& t : c.tiers) t.density_per_km2 *= scale;
        std::vector<double> rate(c.num_tiers());
        parallel_for(rate.size(), [&](std::size_t k) { rate[k] = UtilityTable(c, k + 1).mean_rate(1.0); });
        std::vector<OverheadRow> rows;
        for (double u : speeds)
          for (std::size_t k = 1; k <= c.num_tiers(); ++k) {
            const auto oh = time_overhead(c, k, units::kmh_to_kms(u));
            rows.push_back({u, oh, ase(oh.time_overhead, rate[k - 1])});
          }
        std::ostringstream os;
        write_overhead_csv(os, rows);
        out.write(fmt::format("overhead_scale{}.csv", tag(scale)),
                  "u_kmh,tier,delta_r,delta_a,delta_b,t_ho,ase_bps", os.str(),
                  fmt::format("all tiers with densities scaled by {}; ase_bps at full load", scale));
      }
      runtimes["sweep_s"] = seconds_since(t0);
      break;
    }
    case ExperimentId::evolution: {
      const auto runs = evolution_study(cfg, axis_values(spec, "speed_kmh"), spec.seed);
      const std::size_t k = cfg.num_tiers();
      for (const auto& r : runs) {
        std::ostringstream ode, ag;
        write_trajectory_csv(ode, r.ode, 0, k);
        write_trajectory_csv(ag, r.agents, 0, k);
        out.write(fmt::format("evolution_u{}_ode.csv", tag(r.speed_kmh)),
                  "iter,tier,share,payoff,mean_payoff", ode.str(),
                  fmt::format("replicator trajectory at {} km/h", r.speed_kmh));
        out.write(fmt::format("evolution_u{}_agents.csv", tag(r.speed_kmh)),
                  "iter,tier,share,payoff,mean_payoff", ag.str(),
                  fmt::format("agent-based trajectory at {} km/h", r.speed_kmh));
        json entry;
        entry["equilibrium"] = json::parse(equilibrium_json(r.equilibrium, k));
        entry["ode"] = {{"converged", r.ode.converged}, {"iterations", r.ode.iterations},
                        {"final", r.ode.states.back()}};
        entry["agents"] = {{"converged", r.agents.converged},
                           {"iterations", r.agents.iterations},
                           {"final", r.agents.states.back()}};
        entry["overhead"] = r.overhead;
        results[fmt::format("u{}", tag(r.speed_kmh))] = entry;
        residuals[fmt::format("u{}_max_drift", tag(r.speed_kmh))] = r.ode.max_drift;
        residuals[fmt::format("u{}_equilibrium", tag(r.speed_kmh))] = r.equilibrium.residual;
      }
      runtimes["study_s"] = seconds_since(t0);
      break;
    }
    case ExperimentId::delay_study: {
      const double horizon = spec.budget == Budget::full ? 2400.0 : 1200.0;
      const auto study = delay_study(cfg, axis_values(spec, "delay"), horizon);
      const std::size_t k = cfg.num_tiers();
      results["adaptation_rate"] = study.adaptation_rate;
      results["equilibrium"] = json::parse(equilibrium_json(study.equilibrium, k));
      for (const auto& r : study.runs) {
        std::ostringstream os;
        write_trajectory_csv(os, r.trajectory, 0, k);
        out.write(fmt::format("delay_tau{}.csv", tag(r.delay)), "iter,tier,share,payoff,mean_payoff",
                  os.str(), fmt::format("delayed replicator, tau = {} periods", r.delay));
        results[fmt::format("tau{}", tag(r.delay))] = {
            {"outcome", outcome_name(r.outcome)},   {"converged", r.trajectory.converged},
            {"iterations", r.trajectory.iterations}, {"window", r.window},
            {"amplitude", r.amplitude},             {"reversals", r.reversals}};
        residuals[fmt::format("tau{}_max_drift", tag(r.delay))] = r.trajectory.max_drift;
      }
      runtimes["study_s"] = seconds_since(t0);
      break;
    }
    case ExperimentId::ase_comparison: {
      const auto speeds = axis_values(spec, "speed_kmh");
      for (double lb : axis_values(spec, "blockage_per_km2")) {
        const auto t1 = Clock::now();
        const auto curve = ase_curve(cfg, lb, speeds);
        std::string body = "u_kmh,ase_egt_bps,ase_rate_bps";
        for (std::size_t t = 1; t <= cfg.num_tiers(); ++t) body += fmt::format(",share{}", t);
        const std::string columns = body;
        body += "\n";
        for (std::size_t i = 0; i < speeds.size(); ++i) {
          body += num(speeds[i]) + "," + num(curve.ase_egt[i]) + "," + num(curve.ase_rate[i]);
          for (double s : curve.shares[i]) body += "," + num(s);
          body += "\n";
        }
        out.write(fmt::format("ase_lb{}.csv", tag(lb)), columns, body,
                  fmt::format("EGT equilibrium vs max-rate ASE at {} blockages/km2", lb));
        json entry;
        entry["rate_tier"] = curve.rate_tier;
        entry["crossover_kmh"] = curve.crossover_kmh ? json(*curve.crossover_kmh) : json(nullptr);
        results[fmt::format("lb{}", tag(lb))] = entry;
        runtimes[fmt::format("lb{}_s", tag(lb))] = seconds_since(t1);
      }
      break;
    }
    case ExperimentId::validate: {
      ValidationOptions opt;
      opt.budget = spec.budget;
      opt.seed = spec.seed;
      const auto rep = validate_suite(cfg, opt);
      std::string body = "check,status,empirical,analytic,ci_half,tolerance\n";
      for (const auto& c : rep.checks)
        body += fmt::format("{},{},{},{},{},{}\n", c.name,
                            c.skipped ? "skip" : (c.passed ? "pass" : "fail"), num(c.empirical),
                            num(c.analytic), num(c.ci_half), num(c.tolerance));
      out.write("validation.csv", "check,status,empirical,analytic,ci_half,tolerance", body,
                "Monte Carlo vs analysis checks");
      runtimes["suite_s"] = seconds_since(t0);

      // Raw samples for external plotting.
      std::vector<SinrSampleRow> sinr_rows;
      for (std::size_t k = 1; k <= cfg.num_tiers(); ++k) {
        const auto est = empirical_coverage(cfg, k, 0.5, {}, 500, spec.seed, true);
        for (double s : est.samples)
          sinr_rows.push_back({spec.seed, k, s > 0.0 ? units::linear_to_db(s)
                                                     : -std::numeric_limits<double>::infinity()});
      }
      std::ostringstream ss;
      write_sinr_samples(ss, sinr_rows);
      out.write("sinr_samples.csv", "seed,tier,sinr_db", ss.str(),
                "500 realizations per tier at active share 0.5; -inf when uncovered");
      std::vector<TraceCountRow> trace_rows;
      const std::size_t kt = cfg.num_tiers();
      for (std::size_t i = 0; i < 20; ++i) {
        const auto tr = sample_trace(cfg, kt, cfg.mobility.v_min_kms, cfg.mobility.v_max_kms,
                                     cfg.montecarlo.trace_duration_s, spec.seed, i, true);
        trace_rows.push_back({spec.seed + i, trace_handover_counts(tr, cfg.tier(kt).codebook_exponent)});
      }
      std::ostringstream ts;
      write_trace_counts(ts, trace_rows);
      out.write("trace_counts.csv", "seed,beam_ho,cell_ho,blk_ho,duration_s", ts.str(),
                fmt::format("random-waypoint traces on tier {}", kt));
      json checks = json::parse(validation_json(rep));
      results["validation"] = checks;
      for (const auto& c : rep.checks)
        if (!c.skipped) residuals[c.name] = std::abs(c.empirical - c.analytic);
      result.validation_failed = !rep.all_passed();
      break;
    }
  }

  runtimes["total_s"] = seconds_since(t0);
  manifest["files"] = files;
  manifest["runtime_s"] = runtimes;
  manifest["residuals"] = residuals;
  manifest["results"] = results;
  result.manifest = spec.output_dir / (name + "_manifest.json");
  std::ofstream os(result.manifest, std::ios::binary);
  if (!os) throw UsageError("cannot write " + result.manifest.string());
  os << manifest.dump(2) << '\n';
  result.files.push_back(result.manifest);
  return result;
}

}  // namespace hetnet
