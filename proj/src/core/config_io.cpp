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

#include "hetnet/config_io.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace hetnet {

namespace {

std::string trim(std::string s) {
  const auto hash = s.find(" #");
  if (hash != std::string::npos) s.erase(hash);
  const auto semi = s.find(" ;");
  if (semi != std::string::npos) s.erase(semi);
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt(v[i]);
  }
  return out;
}

struct Reader {
  std::vector<FieldError>& errs;

  double number(const std::string& key, const std::string& raw) {
    double v = 0.0;
    const char* b = raw.data();
    const char* e = raw.data() + raw.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e) errs.push_back({key, "expected a number, got '" + raw + "'"});
    return v;
  }
  long integer(const std::string& key, const std::string& raw) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
    if (ec != std::errc() || ptr != raw.data() + raw.size())
      errs.push_back({key, "expected an integer, got '" + raw + "'"});
    return v;
  }
  bool boolean(const std::string& key, const std::string& raw) {
    if (raw == "true" || raw == "1" || raw == "on" || raw == "yes") return true;
    if (raw == "false" || raw == "0" || raw == "off" || raw == "no") return false;
    errs.push_back({key, "expected a boolean, got '" + raw + "'"});
    return false;
  }
  std::vector<double> list(const std::string& key, const std::string& raw) {
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(number(key, trim(item)));
    return out;
  }
  template <class E>
  E choice(const std::string& key, const std::string& raw,
           std::initializer_list<std::pair<const char*, E>> options) {
    std::string names;
    for (const auto& [name, value] : options) {
      if (raw == name) return value;
      names += names.empty() ? name : std::string("|") + name;
    }
    errs.push_back({key, "expected one of " + names + ", got '" + raw + "'"});
    return options.begin()->second;
  }
};

const char* name_of(PFormula f) { return f == PFormula::corrected ? "corrected" : "literal"; }
const char* name_of(GameVariant v) { return v == GameVariant::g1_mean_sinr ? "g1" : "g2"; }
const char* name_of(UtilityNormalization n) {
  return n == UtilityNormalization::none ? "none" : "max_full_load";
}
const char* name_of(UtilitySourceKind u) {
  return u == UtilitySourceKind::analytic ? "analytic" : "closed_form";
}
const char* name_of(AnalyticBlockage b) {
  return b == AnalyticBlockage::exponential ? "exponential" : "step";
}
const char* name_of(Association a) {
  return a == Association::nearest_los ? "nearest_los" : "nearest_active_los";
}
const char* name_of(LosMode m) { return m == LosMode::field ? "field" : "independent"; }
const char* name_of(InterfererFading f) {
  return f == InterfererFading::nakagami ? "nakagami" : "rayleigh";
}

}  // namespace

KeyValues parse_key_values(const std::string& text) {
  std::istringstream is(text);
  boost::property_tree::ptree pt;
  try {
    boost::property_tree::read_ini(is, pt);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::vector<FieldError>{{"<file>", e.what()}});
  }
  KeyValues kv;
  for (const auto& [section, body] : pt) {
    if (body.empty()) {
      throw ConfigError(std::vector<FieldError>{{section, "keys must live inside a [section]"}});
    }
    for (const auto& [key, value] : body) kv[section + "." + key] = trim(value.data());
  }
  return kv;
}

KeyValues load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(std::vector<FieldError>{{"--config", "cannot open '" + path + "'"}});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

void apply_override(KeyValues& kv, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto key = trim(assignment.substr(0, eq));
  if (eq == std::string::npos || key.find('.') == std::string::npos || key.front() == '.' ||
      key.back() == '.') {
    throw ConfigError(std::vector<FieldError>{{"--set", "expected section.key=value, got '" + assignment + "'"}});
  }
  kv[key] = trim(assignment.substr(eq + 1));
}

SimulationConfig build_config(const KeyValues& kv) {
  std::vector<FieldError> errs;
  Reader rd{errs};
  SimulationConfig cfg = default_config();
  std::set<std::string> used;

  auto get = [&](const std::string& key) -> const std::string* {
    auto it = kv.find(key);
    if (it == kv.end()) return nullptr;
    used.insert(key);
    return &it->second;
  };

  if (auto* v = get("network.seed")) cfg.seed = static_cast<std::uint64_t>(rd.integer("network.seed", *v));
  std::size_t k = cfg.tiers.size();
  if (auto* v = get("network.tiers")) {
    const long n = rd.integer("network.tiers", *v);
    if (n < 1 || n > 16) {
      errs.push_back({"network.tiers", "need 1..16 tiers"});
    } else {
      k = static_cast<std::size_t>(n);
    }
  }
  while (cfg.tiers.size() < k) {
    TierParams t = cfg.tiers.back();
    t.index = cfg.tiers.size() + 1;
    cfg.tiers.push_back(t);
  }
  cfg.tiers.resize(k);

  if (auto* v = get("analysis.noise_figure_db"))
    cfg.analysis.noise_figure_db = rd.number("analysis.noise_figure_db", *v);

  for (std::size_t i = 0; i < k; ++i) {
    auto& t = cfg.tiers[i];
    const std::string s = "tier" + std::to_string(i + 1) + ".";
    if (auto* v = get(s + "lambda_per_km2")) t.density_per_km2 = rd.number(s + "lambda_per_km2", *v);
    if (auto* v = get(s + "p_dbm")) t.power_mw = units::dbm_to_mw(rd.number(s + "p_dbm", *v));
    if (auto* v = get(s + "nakagami_mu")) t.nakagami_mu = static_cast<int>(rd.integer(s + "nakagami_mu", *v));
    if (auto* v = get(s + "codebook_n")) t.codebook_exponent = static_cast<int>(rd.integer(s + "codebook_n", *v));
    if (auto* v = get(s + "beamwidth_rad")) t.beamwidth_rad = rd.number(s + "beamwidth_rad", *v);
    if (auto* v = get(s + "main_lobe_db")) t.main_lobe_gain = units::db_to_linear(rd.number(s + "main_lobe_db", *v));
    if (auto* v = get(s + "side_lobe_db")) t.side_lobe_gain = units::db_to_linear(rd.number(s + "side_lobe_db", *v));
    if (auto* v = get(s + "bandwidth_hz")) t.bandwidth_hz = rd.number(s + "bandwidth_hz", *v);
    if (auto* v = get(s + "los_required")) t.los_required = rd.boolean(s + "los_required", *v);
    t.noise_mw = t.bandwidth_hz > 0.0
                     ? units::dbm_to_mw(units::thermal_noise_dbm(t.bandwidth_hz, cfg.analysis.noise_figure_db))
                     : 0.0;
    if (auto* v = get(s + "noise_dbm"); v && *v != "auto")
      t.noise_mw = units::dbm_to_mw(rd.number(s + "noise_dbm", *v));
  }

  {
    double dens = cfg.blockage.density(), len = cfg.blockage.mean_length(), wid = cfg.blockage.mean_width();
    PFormula mode = cfg.blockage.mode();
    if (auto* v = get("blockage.lambda_per_km2")) dens = rd.number("blockage.lambda_per_km2", *v);
    if (auto* v = get("blockage.mean_length_m")) len = units::m_to_km(rd.number("blockage.mean_length_m", *v));
    if (auto* v = get("blockage.mean_width_m")) wid = units::m_to_km(rd.number("blockage.mean_width_m", *v));
    if (auto* v = get("blockage.p_formula"))
      mode = rd.choice<PFormula>("blockage.p_formula", *v,
                                 {{"corrected", PFormula::corrected}, {"literal", PFormula::literal}});
    cfg.blockage = BlockageParams(dens, len, wid, mode);
  }

  auto& m = cfg.mobility;
  if (auto* v = get("mobility.v_min_kmh")) m.v_min_kms = units::kmh_to_kms(rd.number("mobility.v_min_kmh", *v));
  if (auto* v = get("mobility.v_max_kmh")) m.v_max_kms = units::kmh_to_kms(rd.number("mobility.v_max_kmh", *v));
  if (auto* v = get("mobility.t_align_ms")) m.align_time_s = 1e-3 * rd.number("mobility.t_align_ms", *v);
  if (auto* v = get("mobility.t_sweep_ms")) m.sweep_time_s = 1e-3 * rd.number("mobility.t_sweep_ms", *v);
  if (auto* v = get("mobility.t_threshold")) m.overhead_threshold = rd.number("mobility.t_threshold", *v);
  if (auto* v = get("mobility.ref_distance_m")) m.ref_distance_km = units::m_to_km(rd.number("mobility.ref_distance_m", *v));
  if (auto* v = get("mobility.omni_no_beam_reselection"))
    m.omni_no_beam_reselection = rd.boolean("mobility.omni_no_beam_reselection", *v);
  if (auto* v = get("mobility.blockage_handover_mmwave_only"))
    m.blockage_handover_mmwave_only = rd.boolean("mobility.blockage_handover_mmwave_only", *v);

  auto& g = cfg.game;
  if (auto* v = get("game.w1")) g.w1 = rd.number("game.w1", *v);
  if (auto* v = get("game.w2")) g.w2 = rd.number("game.w2", *v);
  if (auto* v = get("game.rho")) g.adaptation_rate = rd.number("game.rho", *v);
  if (auto* v = get("game.variant"))
    g.variant = rd.choice<GameVariant>("game.variant", *v,
                                       {{"g1", GameVariant::g1_mean_sinr}, {"g2", GameVariant::g2_mean_rate}});
  if (auto* v = get("game.delay")) g.delay = rd.number("game.delay", *v);
  if (auto* v = get("game.population")) {
    const long n = rd.integer("game.population", *v);
    g.population = n > 0 ? static_cast<std::size_t>(n) : 0;
  }
  if (auto* v = get("game.normalization"))
    g.normalization = rd.choice<UtilityNormalization>(
        "game.normalization", *v,
        {{"none", UtilityNormalization::none}, {"max_full_load", UtilityNormalization::max_full_load}});
  if (auto* v = get("game.utility"))
    g.utility_source = rd.choice<UtilitySourceKind>(
        "game.utility", *v,
        {{"analytic", UtilitySourceKind::analytic}, {"closed_form", UtilitySourceKind::closed_form}});
  if (auto* v = get("game.exact_payoffs")) g.exact_payoffs = rd.boolean("game.exact_payoffs", *v);
  if (auto* v = get("game.memo_step")) g.memo_step = rd.number("game.memo_step", *v);
  if (auto* v = get("game.dt")) g.dt = rd.number("game.dt", *v);
  if (auto* v = get("game.horizon")) g.horizon = rd.number("game.horizon", *v);
  {
    auto* speeds = get("game.cohort_speeds_kmh");
    auto* weights = get("game.cohort_weights");
    if (speeds) {
      const auto sp = rd.list("game.cohort_speeds_kmh", *speeds);
      std::vector<double> wt(sp.size(), sp.empty() ? 0.0 : 1.0 / static_cast<double>(sp.size()));
      if (weights) wt = rd.list("game.cohort_weights", *weights);
      if (wt.size() != sp.size()) {
        errs.push_back({"game.cohort_weights", "one weight per cohort speed required"});
      } else {
        g.cohorts.clear();
        for (std::size_t i = 0; i < sp.size(); ++i) g.cohorts.push_back({units::kmh_to_kms(sp[i]), wt[i]});
      }
    } else if (weights) {
      errs.push_back({"game.cohort_weights", "cohort weights given without cohort_speeds_kmh"});
    }
  }
  if (auto* v = get("game.initial_shares")) g.initial_shares = rd.list("game.initial_shares", *v);

  auto& a = cfg.analysis;
  if (auto* v = get("analysis.pathloss_exponent")) a.pathloss_exponent = rd.number("analysis.pathloss_exponent", *v);
  if (auto* v = get("analysis.pathloss_ref_m")) a.pathloss_ref_km = units::m_to_km(rd.number("analysis.pathloss_ref_m", *v));
  if (auto* v = get("analysis.blockage_model"))
    a.blockage = rd.choice<AnalyticBlockage>(
        "analysis.blockage_model", *v,
        {{"exponential", AnalyticBlockage::exponential}, {"step", AnalyticBlockage::step}});
  if (auto* v = get("analysis.association"))
    a.association = rd.choice<Association>(
        "analysis.association", *v,
        {{"nearest_los", Association::nearest_los}, {"nearest_active_los", Association::nearest_active_los}});
  if (auto* v = get("analysis.rel_tol")) a.rel_tol = rd.number("analysis.rel_tol", *v);
  if (auto* v = get("analysis.theta_max_db")) a.theta_max = units::db_to_linear(rd.number("analysis.theta_max_db", *v));

  auto& mc = cfg.montecarlo;
  if (auto* v = get("montecarlo.disk_radius_m")) mc.disk_radius_km = units::m_to_km(rd.number("montecarlo.disk_radius_m", *v));
  if (auto* v = get("montecarlo.los_mode"))
    mc.los_mode = rd.choice<LosMode>("montecarlo.los_mode", *v,
                                     {{"field", LosMode::field}, {"independent", LosMode::independent}});
  if (auto* v = get("montecarlo.interferer_fading"))
    mc.interferer_fading = rd.choice<InterfererFading>(
        "montecarlo.interferer_fading", *v,
        {{"nakagami", InterfererFading::nakagami}, {"rayleigh", InterfererFading::rayleigh}});
  if (auto* v = get("montecarlo.realizations")) {
    const long n = rd.integer("montecarlo.realizations", *v);
    mc.realizations = n > 0 ? static_cast<std::size_t>(n) : 0;
  }
  if (auto* v = get("montecarlo.traces")) {
    const long n = rd.integer("montecarlo.traces", *v);
    mc.traces = n > 0 ? static_cast<std::size_t>(n) : 0;
  }
  if (auto* v = get("montecarlo.trace_duration_s")) mc.trace_duration_s = rd.number("montecarlo.trace_duration_s", *v);
  if (auto* v = get("montecarlo.trace_step_m")) mc.trace_step_km = units::m_to_km(rd.number("montecarlo.trace_step_m", *v));

  for (const auto& [key, value] : kv)
    if (!used.count(key)) errs.push_back({key, "unknown key"});

  auto more = check_config(cfg);
  errs.insert(errs.end(), more.begin(), more.end());
  if (!errs.empty()) throw ConfigError(std::move(errs));
  return cfg;
}

KeyValues effective_key_values(const SimulationConfig& cfg) {
  KeyValues kv;
  kv["network.tiers"] = std::to_string(cfg.tiers.size());
  kv["network.seed"] = std::to_string(cfg.seed);
  for (const auto& t : cfg.tiers) {
    const std::string s = "tier" + std::to_string(t.index) + ".";
    kv[s + "lambda_per_km2"] = fmt(t.density_per_km2);
    kv[s + "p_dbm"] = fmt(units::mw_to_dbm(t.power_mw));
    kv[s + "nakagami_mu"] = std::to_string(t.nakagami_mu);
    kv[s + "codebook_n"] = std::to_string(t.codebook_exponent);
    kv[s + "beamwidth_rad"] = fmt(t.beamwidth_rad);
    kv[s + "main_lobe_db"] = fmt(units::linear_to_db(t.main_lobe_gain));
    kv[s + "side_lobe_db"] = fmt(units::linear_to_db(t.side_lobe_gain));
    kv[s + "bandwidth_hz"] = fmt(t.bandwidth_hz);
    kv[s + "noise_dbm"] = t.noise_mw > 0.0 ? fmt(units::mw_to_dbm(t.noise_mw)) : "-inf";
    kv[s + "los_required"] = t.los_required ? "true" : "false";
  }
  const auto& b = cfg.blockage;
  kv["blockage.lambda_per_km2"] = fmt(b.density());
  kv["blockage.mean_length_m"] = fmt(b.mean_length() * 1e3);
  kv["blockage.mean_width_m"] = fmt(b.mean_width() * 1e3);
  kv["blockage.p_formula"] = name_of(b.mode());
  const auto& m = cfg.mobility;
  kv["mobility.v_min_kmh"] = fmt(units::kms_to_kmh(m.v_min_kms));
  kv["mobility.v_max_kmh"] = fmt(units::kms_to_kmh(m.v_max_kms));
  kv["mobility.t_align_ms"] = fmt(m.align_time_s * 1e3);
  kv["mobility.t_sweep_ms"] = fmt(m.sweep_time_s * 1e3);
  kv["mobility.t_threshold"] = fmt(m.overhead_threshold);
  kv["mobility.ref_distance_m"] = fmt(m.ref_distance_km * 1e3);
  kv["mobility.omni_no_beam_reselection"] = m.omni_no_beam_reselection ? "true" : "false";
  kv["mobility.blockage_handover_mmwave_only"] = m.blockage_handover_mmwave_only ? "true" : "false";
  const auto& g = cfg.game;
  kv["game.w1"] = fmt(g.w1);
  kv["game.w2"] = fmt(g.w2);
  kv["game.rho"] = fmt(g.adaptation_rate);
  kv["game.variant"] = name_of(g.variant);
  kv["game.delay"] = fmt(g.delay);
  kv["game.population"] = std::to_string(g.population);
  kv["game.normalization"] = name_of(g.normalization);
  kv["game.utility"] = name_of(g.utility_source);
  kv["game.exact_payoffs"] = g.exact_payoffs ? "true" : "false";
  kv["game.memo_step"] = fmt(g.memo_step);
  kv["game.dt"] = fmt(g.dt);
  kv["game.horizon"] = fmt(g.horizon);
  std::vector<double> speeds, weights;
  for (const auto& c : g.cohorts) {
    speeds.push_back(units::kms_to_kmh(c.speed_kms));
    weights.push_back(c.weight);
  }
  kv["game.cohort_speeds_kmh"] = fmt_list(speeds);
  kv["game.cohort_weights"] = fmt_list(weights);
  if (!g.initial_shares.empty()) kv["game.initial_shares"] = fmt_list(g.initial_shares);
  const auto& a = cfg.analysis;
  kv["analysis.pathloss_exponent"] = fmt(a.pathloss_exponent);
  kv["analysis.pathloss_ref_m"] = fmt(a.pathloss_ref_km * 1e3);
  kv["analysis.blockage_model"] = name_of(a.blockage);
  kv["analysis.association"] = name_of(a.association);
  kv["analysis.rel_tol"] = fmt(a.rel_tol);
  kv["analysis.theta_max_db"] = fmt(units::linear_to_db(a.theta_max));
  kv["analysis.noise_figure_db"] = fmt(a.noise_figure_db);
  const auto& mc = cfg.montecarlo;
  kv["montecarlo.disk_radius_m"] = fmt(mc.disk_radius_km * 1e3);
  kv["montecarlo.los_mode"] = name_of(mc.los_mode);
  kv["montecarlo.interferer_fading"] = name_of(mc.interferer_fading);
  kv["montecarlo.realizations"] = std::to_string(mc.realizations);
  kv["montecarlo.traces"] = std::to_string(mc.traces);
  kv["montecarlo.trace_duration_s"] = fmt(mc.trace_duration_s);
  kv["montecarlo.trace_step_m"] = fmt(mc.trace_step_km * 1e3);
  return kv;
}

std::string to_config_text(const SimulationConfig& cfg) {
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections;
  for (const auto& [key, value] : effective_key_values(cfg)) {
    const auto dot = key.find('.');
    sections[key.substr(0, dot)].emplace_back(key.substr(dot + 1), value);
  }
  std::ostringstream os;
  for (const auto& [name, entries] : sections) {
    os << "[" << name << "]\n";
    for (const auto& [key, value] : entries) {
      if (key == "noise_dbm" && value == "-inf") continue;
      os << key << " = " << value << "\n";
    }
    os << "\n";
  }
  return os.str();
}

std::uint64_t config_hash(const SimulationConfig& cfg) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& [key, value] : effective_key_values(cfg)) {
    for (char c : key + "=" + value + "\n") {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

}  // namespace hetnet
