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


#include "hetnet/egt.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <functional>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>

#include "hetnet/analytics.hpp"
#include "hetnet/mobility.hpp"
#include "hetnet/random.hpp"
#include "json.hpp"

namespace hetnet {

namespace {

constexpr double kExtinct = 1e-12;

double inf_norm_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double inf_norm(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Replicator field of every cohort at `state`.
std::vector<double> field(const GameModel& model, std::span<const double> state) {
  const std::size_t k = model.tiers();
  const double rate = model.game().adaptation_rate;
  const auto pi = model.payoff_vector(state);
  std::vector<double> out(state.size(), 0.0);
  for (std::size_t c = 0; c < model.cohorts(); ++c) {
    auto x = state.subspan(c * k, k);
    auto p = std::span<const double>(pi).subspan(c * k, k);
    const auto d = replicator_rhs(x, p, rate);
    std::copy(d.begin(), d.end(), out.begin() + static_cast<std::ptrdiff_t>(c * k));
  }
  return out;
}

// Clamp to the simplex after a step; returns the largest |Σ − 1| before the fix.
double project(std::vector<double>& state, std::size_t k) {
  double drift = 0.0;
  for (std::size_t c = 0; c * k < state.size(); ++c) {
    auto first = state.begin() + static_cast<std::ptrdiff_t>(c * k);
    double sum = 0.0;
    for (auto it = first; it != first + static_cast<std::ptrdiff_t>(k); ++it) {
      sum += *it;
    }
    drift = std::max(drift, std::abs(sum - 1.0));
    double pos = 0.0;
    for (auto it = first; it != first + static_cast<std::ptrdiff_t>(k); ++it) {
      if (*it < kExtinct) *it = 0.0;
      pos += *it;
    }
    if (pos > 0.0)
      for (auto it = first; it != first + static_cast<std::ptrdiff_t>(k); ++it) *it /= pos;
  }
  return drift;
}

std::vector<PayoffBreakdown> all_payoffs(const GameModel& model, std::span<const double> state) {
  std::vector<PayoffBreakdown> out;
  out.reserve(model.cohorts());
  for (std::size_t c = 0; c < model.cohorts(); ++c) out.push_back(model.payoffs(state, c));
  return out;
}

void finish(Trajectory& traj, const GameModel& model, double tol, std::size_t window) {
  traj.iterations = settled_from(traj, tol, window, traj.converged);
  if (!traj.states.empty() && !traj.aborted)
    traj.final_speed = inf_norm(field(model, traj.states.back()));
}

}  // namespace

// ---------------------------------------------------------------- utilities

struct AnalyticUtility::Impl {
  GameVariant variant;
  bool exact;
  double step;
  std::vector<UtilityTable> tables;
  std::vector<std::vector<double>> grid;  // per tier, values at j·step

  double evaluate(std::size_t tier0, double load) const {
    const auto& t = tables[tier0];
    return variant == GameVariant::g1_mean_sinr ? t.mean_sinr(load) : t.mean_rate(load);
  }
};

AnalyticUtility::AnalyticUtility(const SimulationConfig& cfg, GameVariant variant, bool exact,
                                 double memo_step)
    : impl_(std::make_unique<Impl>()) {
  if (!(memo_step > 0.0 && memo_step <= 0.5)) throw DomainError("memo step must lie in (0, 0.5]");
  impl_->variant = variant;
  impl_->exact = exact;
  impl_->step = memo_step;
  impl_->tables.reserve(cfg.num_tiers());
  for (std::size_t k = 1; k <= cfg.num_tiers(); ++k) impl_->tables.emplace_back(cfg, k);
  if (exact) return;
  const auto nodes = static_cast<std::size_t>(std::ceil(1.0 / memo_step - 1e-9));
  impl_->grid.resize(cfg.num_tiers());
  for (std::size_t k = 0; k < cfg.num_tiers(); ++k) {
    auto& g = impl_->grid[k];
    g.resize(nodes + 1);
    for (std::size_t j = 0; j <= nodes; ++j)
      g[j] = impl_->evaluate(k, std::min(1.0, static_cast<double>(j) * memo_step));
  }
}

AnalyticUtility::~AnalyticUtility() = default;

std::size_t AnalyticUtility::tiers() const { return impl_->tables.size(); }

double AnalyticUtility::utility(std::size_t tier0, double load) const {
  load = std::clamp(load, 0.0, 1.0);
  if (impl_->exact) return impl_->evaluate(tier0, load);
  const auto& g = impl_->grid.at(tier0);
  const std::size_t last = g.size() - 1;
  const double pos = load / impl_->step;
  const auto j = std::min(static_cast<std::size_t>(pos), last - 1);
  const double x0 = static_cast<double>(j) * impl_->step;
  const double x1 = std::min(1.0, static_cast<double>(j + 1) * impl_->step);
  const double w = (load - x0) / (x1 - x0);
  return g[j] + w * (g[j + 1] - g[j]);
}

ClosedFormUtility::ClosedFormUtility(const SimulationConfig& cfg, double ref_distance_km) {
  for (std::size_t k = 1; k <= cfg.num_tiers(); ++k)
    coeff_.push_back(mean_sinr_closed(cfg, k, 1.0, ref_distance_km));
}

double ClosedFormUtility::utility(std::size_t tier0, double load) const {
  return coeff_.at(tier0) / std::max(load, 1e-9);
}

std::shared_ptr<const UtilitySource> make_utility_source(const SimulationConfig& cfg) {
  const auto& g = cfg.game;
  if (g.utility_source == UtilitySourceKind::closed_form) {
    if (g.variant != GameVariant::g1_mean_sinr)
      throw DomainError("closed-form utilities exist for mean SINR only");
    double r = cfg.mobility.ref_distance_km;
    if (!(r > 0.0)) r = 0.5 * cfg.blockage.los_radius();
    return std::make_shared<ClosedFormUtility>(cfg, r);
  }
  return std::make_shared<AnalyticUtility>(cfg, g.variant, g.exact_payoffs, g.memo_step);
}

// ---------------------------------------------------------------- model

GameModel::GameModel(const SimulationConfig& cfg, std::shared_ptr<const UtilitySource> utilities)
    : GameModel(cfg.game, cfg.mobility.overhead_threshold, std::move(utilities), [&] {
        std::vector<std::vector<double>> rows;
        for (const auto& c : cfg.game.cohorts) {
          std::vector<double> row;
          for (std::size_t k = 1; k <= cfg.num_tiers(); ++k)
            row.push_back(time_overhead(cfg, k, c.speed_kms).time_overhead);
          rows.push_back(std::move(row));
        }
        return rows;
      }()) {}

GameModel::GameModel(const GameConfig& game, double overhead_threshold,
                     std::shared_ptr<const UtilitySource> utilities,
                     std::vector<std::vector<double>> overheads)
    : game_(game),
      threshold_(overhead_threshold),
      utilities_(std::move(utilities)),
      tiers_(utilities_ ? utilities_->tiers() : 0),
      overheads_(std::move(overheads)) {
  if (!utilities_ || tiers_ == 0) throw DomainError("game model needs a utility source");
  if (overheads_.empty()) throw DomainError("game model needs at least one cohort");
  for (const auto& row : overheads_)
    if (row.size() != tiers_) throw DomainError("overhead row size differs from the tier count");
  if (game_.cohorts.size() == overheads_.size()) {
    for (const auto& c : game_.cohorts) weights_.push_back(c.weight);
  } else {
    weights_.assign(overheads_.size(), 1.0 / static_cast<double>(overheads_.size()));
  }
  if (game_.normalization == UtilityNormalization::max_full_load) {
    double m = 0.0;
    for (std::size_t k = 0; k < tiers_; ++k) m = std::max(m, utilities_->utility(k, 1.0));
    if (m > 0.0 && std::isfinite(m)) norm_ = m;
  }
}

std::vector<double> GameModel::loads(std::span<const double> state) const {
  if (state.size() != state_size()) throw DomainError("state size differs from cohorts × tiers");
  std::vector<double> out(tiers_, 0.0);
  for (std::size_t c = 0; c < weights_.size(); ++c)
    for (std::size_t k = 0; k < tiers_; ++k) out[k] += weights_[c] * state[c * tiers_ + k];
  return out;
}

std::vector<double> GameModel::normalized_utilities(std::span<const double> loads) const {
  std::vector<double> out(tiers_);
  for (std::size_t k = 0; k < tiers_; ++k) out[k] = utilities_->utility(k, loads[k]) / norm_;
  return out;
}

PayoffBreakdown GameModel::payoffs(std::span<const double> state, std::size_t cohort) const {
  const auto load = loads(state);
  PayoffBreakdown b;
  b.utility = normalized_utilities(load);
  b.overhead = overheads_.at(cohort);
  b.payoff.resize(tiers_);
  for (std::size_t k = 0; k < tiers_; ++k) {
    b.payoff[k] = game_.w1 * b.utility[k] - game_.w2 * (b.overhead[k] - threshold_);
    b.mean_payoff += state[cohort * tiers_ + k] * b.payoff[k];
  }
  return b;
}

std::vector<double> GameModel::payoff_vector(std::span<const double> state) const {
  const auto u = normalized_utilities(loads(state));
  std::vector<double> out(state_size());
  for (std::size_t c = 0; c < weights_.size(); ++c)
    for (std::size_t k = 0; k < tiers_; ++k)
      out[c * tiers_ + k] = game_.w1 * u[k] - game_.w2 * (overheads_[c][k] - threshold_);
  return out;
}

std::vector<double> GameModel::initial_state() const {
  std::vector<double> one = game_.initial_shares;
  if (one.empty()) {
    const auto u = PopulationShares::uniform(tiers_);
    one.assign(u.values().begin(), u.values().end());
  }
  if (one.size() != tiers_) throw DomainError("initial shares size differs from the tier count");
  std::vector<double> out;
  for (std::size_t c = 0; c < weights_.size(); ++c) out.insert(out.end(), one.begin(), one.end());
  return out;
}

double payoff(const GameModel& model, std::size_t tier0, const PopulationShares& shares,
              std::size_t cohort) {
  if (shares.size() != model.tiers()) throw DomainError("shares size differs from the tier count");
  std::vector<double> state;
  for (std::size_t c = 0; c < model.cohorts(); ++c)
    state.insert(state.end(), shares.values().begin(), shares.values().end());
  return model.payoffs(state, cohort).payoff.at(tier0);
}

std::vector<double> replicator_rhs(std::span<const double> shares, std::span<const double> payoffs,
                                   double rate) {
  if (shares.size() != payoffs.size()) throw DomainError("shares and payoffs differ in size");
  double mean = 0.0;
  for (std::size_t i = 0; i < shares.size(); ++i) mean += shares[i] * payoffs[i];
  std::vector<double> out(shares.size(), 0.0);
  for (std::size_t i = 0; i < shares.size(); ++i)
    if (shares[i] > kExtinct) out[i] = rate * shares[i] * (payoffs[i] - mean);
  return out;
}

// ---------------------------------------------------------------- dynamics

std::size_t settled_from(const Trajectory& traj, double tol, std::size_t window, bool& settled) {
  settled = false;
  const std::size_t n = traj.states.size();
  if (n < 2) return 0;
  std::vector<double> delta(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) delta[i] = inf_norm_diff(traj.states[i], traj.states[i - 1]);
  if (window == 0) {
    std::size_t first = n;
    for (std::size_t i = n - 1; i >= 1; --i) {
      if (delta[i] >= tol) break;
      first = i;
    }
    settled = first < n;
    return settled ? first : n - 1;
  }
  for (std::size_t i = 1; i + window <= n; ++i) {
    bool ok = true;
    for (std::size_t j = i; j < i + window && ok; ++j) ok = delta[j] < tol;
    if (ok) {
      settled = true;
      return i;
    }
  }
  return n - 1;
}

Trajectory integrate(const GameModel& model, std::vector<double> x, const IntegrationOptions& opt) {
  if (x.size() != model.state_size()) throw DomainError("initial state size differs from the model");
  if (!(opt.dt > 0.0 && opt.dt <= 1.0)) throw DomainError("step must lie in (0, 1]");
  if (!(opt.horizon > 0.0)) throw DomainError("horizon must be positive");
  if (opt.delay < 0.0) throw DomainError("delay must be >= 0");
  const auto per_period = static_cast<std::size_t>(std::llround(1.0 / opt.dt));
  const double dt = 1.0 / static_cast<double>(per_period);
  if (opt.delay > 0.0 && opt.delay < dt) throw DomainError("delay shorter than the step");
  const auto periods = static_cast<std::size_t>(std::ceil(opt.horizon - 1e-12));
  const std::size_t k = model.tiers();
  const std::size_t n = x.size();

  Trajectory traj;
  traj.max_drift = project(x, k);
  auto record = [&](double t) {
    traj.time.push_back(t);
    traj.states.push_back(x);
    traj.payoffs.push_back(all_payoffs(model, x));
    if (!all_finite(x)) traj.aborted = true;
    for (const auto& p : traj.payoffs.back())
      if (!all_finite(p.payoff)) traj.aborted = true;
  };
  record(0.0);
  if (traj.aborted) return traj;

  auto axpy = [n](const std::vector<double>& a, double h, const std::vector<double>& b) {
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = a[i] + h * b[i];
    return r;
  };

  if (opt.delay == 0.0) {
    // Payoffs that grow without bound as a share empties make the field
    // stiff near the boundary; a step that would leave the simplex is
    // replaced by two half steps.
    std::function<void(double, int)> advance = [&](double h, int depth) {
      const auto k1 = field(model, x);
      const auto k2 = field(model, axpy(x, 0.5 * h, k1));
      const auto k3 = field(model, axpy(x, 0.5 * h, k2));
      const auto k4 = field(model, axpy(x, h, k3));
      auto y = x;
      for (std::size_t i = 0; i < n; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      bool inside = all_finite(y);
      for (std::size_t c = 0; inside && c < n; c += k) {
        double sum = 0.0;
        for (std::size_t i = c; i < c + k; ++i) {
          inside = inside && y[i] >= -kExtinct;
          sum += y[i];
        }
        inside = inside && std::abs(sum - 1.0) <= 1e-12;
      }
      if (!inside && depth < 24) {
        advance(0.5 * h, depth + 1);
        advance(0.5 * h, depth + 1);
        return;
      }
      x = std::move(y);
      traj.max_drift = std::max(traj.max_drift, project(x, k));
    };
    for (std::size_t p = 1; p <= periods && !traj.aborted; ++p) {
      for (std::size_t s = 0; s < per_period; ++s) advance(dt, 0);
      record(static_cast<double>(p));
    }
    finish(traj, model, opt.tolerance, 0);
    return traj;
  }

  // Delayed field: the derivative at t depends only on the state at t − τ.
  std::vector<std::vector<double>> hx{x};
  std::vector<std::vector<double>> hf{field(model, x)};
  const std::vector<double> start = x;
  auto history = [&](double t) -> std::vector<double> {
    if (t <= 0.0) return start;
    const double pos = t / dt;
    auto m = static_cast<std::size_t>(pos);
    if (m >= hx.size() - 1) return hx.back();
    const double s = pos - static_cast<double>(m);
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i)
      r[i] = h00 * hx[m][i] + h10 * dt * hf[m][i] + h01 * hx[m + 1][i] + h11 * dt * hf[m + 1][i];
    return r;
  };
  std::size_t step = 0;
  for (std::size_t p = 1; p <= periods && !traj.aborted; ++p) {
    for (std::size_t s = 0; s < per_period; ++s, ++step) {
      const double t = static_cast<double>(step) * dt;
      const auto& k1 = hf.back();
      const auto k2 = field(model, history(t + 0.5 * dt - opt.delay));
      const auto k4 = field(model, history(t + dt - opt.delay));
      for (std::size_t i = 0; i < n; ++i) x[i] += dt / 6.0 * (k1[i] + 4.0 * k2[i] + k4[i]);
      traj.max_drift = std::max(traj.max_drift, project(x, k));
      hx.push_back(x);
      hf.push_back(k4);
    }
    record(static_cast<double>(p));
  }
  finish(traj, model, opt.tolerance, 0);
  return traj;
}

Trajectory evolve_agents(const GameModel& model, const AgentOptions& opt) {
  if (opt.population < 1) throw DomainError("population must be >= 1");
  const std::size_t k = model.tiers();
  const std::size_t cohorts = model.cohorts();
  const auto& cfg_cohorts = model.game().cohorts;
  const auto init = model.initial_state();

  // Agent table: cohort and current tier.
  std::vector<std::size_t> cohort_of, tier_of;
  std::vector<std::size_t> cohort_size(cohorts);
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < cohorts; ++c) {
    const double w = cfg_cohorts.size() == cohorts ? cfg_cohorts[c].weight
                                                   : 1.0 / static_cast<double>(cohorts);
    cohort_size[c] = c + 1 == cohorts
                         ? opt.population - assigned
                         : static_cast<std::size_t>(std::llround(w * static_cast<double>(opt.population)));
    assigned += cohort_size[c];
    std::vector<double> shares(init.begin() + static_cast<std::ptrdiff_t>(c * k),
                               init.begin() + static_cast<std::ptrdiff_t>((c + 1) * k));
    auto counts = PopulationShares(shares).agent_counts(cohort_size[c]);
    // Rounding remainder goes to the largest share.
    const auto total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    auto big = static_cast<std::size_t>(std::max_element(shares.begin(), shares.end()) - shares.begin());
    counts[big] = counts[big] + cohort_size[c] - std::min(total, counts[big] + cohort_size[c]);
    if (total > cohort_size[c]) counts[big] -= std::min(counts[big], total - cohort_size[c]);
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t a = 0; a < counts[t]; ++a) {
        cohort_of.push_back(c);
        tier_of.push_back(t);
      }
  }

  auto state_of = [&] {
    std::vector<double> s(cohorts * k, 0.0);
    for (std::size_t a = 0; a < tier_of.size(); ++a) s[cohort_of[a] * k + tier_of[a]] += 1.0;
    for (std::size_t c = 0; c < cohorts; ++c)
      for (std::size_t t = 0; t < k; ++t)
        s[c * k + t] /= static_cast<double>(std::max<std::size_t>(cohort_size[c], 1));
    return s;
  };

  auto rng = make_rng(opt.seed, 0, Stream::agents);
  const double rate = model.game().adaptation_rate;
  Trajectory traj;
  auto x = state_of();
  auto record = [&](double t) {
    traj.time.push_back(t);
    traj.states.push_back(x);
    traj.payoffs.push_back(all_payoffs(model, x));
    for (const auto& p : traj.payoffs.back())
      if (!all_finite(p.payoff)) traj.aborted = true;
  };
  record(0.0);
  std::vector<std::size_t> better;
  for (std::size_t it = 1; it <= opt.max_iterations && !traj.aborted; ++it) {
    const auto& pays = traj.payoffs.back();
    auto next = tier_of;
    for (std::size_t a = 0; a < tier_of.size(); ++a) {
      const auto& pb = pays[cohort_of[a]];
      const double own = pb.payoff[tier_of[a]];
      const double gap = pb.mean_payoff - own;
      if (!(gap > 0.0)) continue;
      const double prob = opt.always_switch ? 1.0 : std::min(1.0, rate * gap);
      if (uniform01(rng) >= prob) continue;
      better.clear();
      for (std::size_t t = 0; t < k; ++t)
        if (pb.payoff[t] > own) better.push_back(t);
      if (better.empty()) continue;
      next[a] = better[std::uniform_int_distribution<std::size_t>(0, better.size() - 1)(rng)];
    }
    tier_of.swap(next);
    x = state_of();
    record(static_cast<double>(it));
  }
  const double tol = std::max(opt.tolerance, 1.5 / static_cast<double>(opt.population));
  finish(traj, model, tol, std::max<std::size_t>(opt.window, 1));
  return traj;
}

// ---------------------------------------------------------------- equilibria

namespace {

// Newton on the equal-payoff conditions of each cohort's support.
std::vector<double> polish(const GameModel& model, std::vector<double> x) {
  const std::size_t k = model.tiers();
  const std::size_t cohorts = model.cohorts();
  for (int round = 0; round < 4; ++round) {
    std::vector<std::size_t> idx;  // support positions in the flat state
    std::vector<std::size_t> first_of(cohorts), count_of(cohorts);
    for (std::size_t c = 0; c < cohorts; ++c) {
      first_of[c] = idx.size();
      for (std::size_t t = 0; t < k; ++t)
        if (x[c * k + t] > 1e-6) idx.push_back(c * k + t);
      count_of[c] = idx.size() - first_of[c];
    }
    const std::size_t m = idx.size();
    auto residual = [&](const std::vector<double>& y) {
      auto z = x;
      for (std::size_t i = 0; i < m; ++i) z[idx[i]] = y[i];
      const auto pi = model.payoff_vector(z);
      Eigen::VectorXd g(m);
      for (std::size_t c = 0; c < cohorts; ++c) {
        const std::size_t f = first_of[c];
        double sum = 0.0;
        for (std::size_t j = 0; j < count_of[c]; ++j) sum += y[f + j];
        g(static_cast<Eigen::Index>(f)) = sum - 1.0;
        for (std::size_t j = 1; j < count_of[c]; ++j)
          g(static_cast<Eigen::Index>(f + j)) = pi[idx[f + j]] - pi[idx[f]];
      }
      return g;
    };
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = x[idx[i]];
    bool dropped = false;
    for (int iter = 0; iter < 60; ++iter) {
      const auto g = residual(y);
      if (g.lpNorm<Eigen::Infinity>() < 1e-14) break;
      Eigen::MatrixXd jac(m, m);
      for (std::size_t j = 0; j < m; ++j) {
        const double h = 1e-7;
        auto yp = y, ym = y;
        yp[j] += h;
        ym[j] -= h;
        jac.col(static_cast<Eigen::Index>(j)) = (residual(yp) - residual(ym)) / (2 * h);
      }
      const Eigen::VectorXd d = jac.colPivHouseholderQr().solve(-g);
      if (!d.allFinite()) break;
      double scale = 1.0;
      for (std::size_t i = 0; i < m; ++i)
        if (y[i] + d(static_cast<Eigen::Index>(i)) < 0.0)
          scale = std::min(scale, 0.5 * y[i] / -d(static_cast<Eigen::Index>(i)));
      for (std::size_t i = 0; i < m; ++i) y[i] += scale * d(static_cast<Eigen::Index>(i));
      if (scale < 1.0 && *std::min_element(y.begin(), y.end()) < 1e-9) {
        dropped = true;
        break;
      }
    }
    for (std::size_t i = 0; i < m; ++i) x[idx[i]] = std::max(y[i], 0.0);
    project(x, k);
    if (!dropped) break;
  }
  return x;
}

EquilibriumReport describe(const GameModel& model, std::vector<double> x) {
  const std::size_t k = model.tiers();
  EquilibriumReport r;
  r.residual = inf_norm(field(model, x));
  bool interior = true;
  for (double v : x) interior = interior && v > 1e-6;
  r.kind = interior ? EquilibriumKind::interior : EquilibriumKind::boundary;
  const auto pi = model.payoff_vector(x);
  for (std::size_t c = 0; c < model.cohorts(); ++c) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t t = 0; t < k; ++t)
      if (x[c * k + t] > 1e-6) {
        lo = std::min(lo, pi[c * k + t]);
        hi = std::max(hi, pi[c * k + t]);
      }
    r.payoff_spread = std::max(r.payoff_spread, hi - lo);
  }
  r.shares = std::move(x);
  return r;
}

// Nash condition: no unused tier pays more than the used ones.
bool is_nash(const GameModel& model, const std::vector<double>& x) {
  const std::size_t k = model.tiers();
  const auto pi = model.payoff_vector(x);
  for (std::size_t c = 0; c < model.cohorts(); ++c) {
    double used = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < k; ++t)
      if (x[c * k + t] > 1e-6) used = std::max(used, pi[c * k + t]);
    for (std::size_t t = 0; t < k; ++t)
      if (x[c * k + t] <= 1e-6 && pi[c * k + t] > used + 1e-9) return false;
  }
  return true;
}

void simplex_grid(std::size_t k, std::size_t steps, bool interior,
                  const std::function<void(const std::vector<double>&)>& visit) {
  std::vector<std::size_t> c(k, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == k) {
      c[i] = left;
      if (interior && left == 0) return;
      std::vector<double> x(k);
      for (std::size_t j = 0; j < k; ++j)
        x[j] = static_cast<double>(c[j]) / static_cast<double>(steps);
      visit(x);
      return;
    }
    for (std::size_t v = interior ? 1 : 0; v <= left; ++v) {
      c[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, steps);
}

}  // namespace

EquilibriumReport find_equilibrium(const GameModel& model, double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 1.0)) throw DomainError("grid step must lie in (0, 1]");
  const std::size_t k = model.tiers();
  std::vector<std::vector<double>> starts{model.initial_state()};
  const auto steps = static_cast<std::size_t>(std::llround(1.0 / grid_step));
  simplex_grid(k, std::max<std::size_t>(steps, k), true, [&](const std::vector<double>& one) {
    std::vector<double> s;
    for (std::size_t c = 0; c < model.cohorts(); ++c) s.insert(s.end(), one.begin(), one.end());
    starts.push_back(std::move(s));
  });

  IntegrationOptions opt;
  opt.horizon = std::max(model.game().horizon, 200.0);
  opt.dt = model.game().dt;
  std::optional<EquilibriumReport> best;
  bool best_nash = false;
  for (auto& s : starts) {
    const auto traj = integrate(model, s, opt);
    if (traj.aborted) continue;
    auto rep = describe(model, polish(model, traj.states.back()));
    const bool nash = is_nash(model, rep.shares);
    auto better = [&] {
      if (!best) return true;
      if (nash != best_nash) return nash;
      if ((rep.kind == EquilibriumKind::interior) != (best->kind == EquilibriumKind::interior))
        return rep.kind == EquilibriumKind::interior;
      return rep.residual < best->residual;
    };
    if (better()) {
      best = std::move(rep);
      best_nash = nash;
    }
  }
  if (!best) throw NumericError("no trajectory reached a finite end state", 0.0);
  return *best;
}

EquilibriumReport stability(EquilibriumReport eq, const GameModel& model, double step) {
  if (eq.kind != EquilibriumKind::interior)
    throw DomainError("stability analysis needs an interior equilibrium");
  const std::size_t k = model.tiers();
  const std::size_t cohorts = model.cohorts();
  if (k < 2) throw DomainError("stability analysis needs at least two tiers");
  const std::size_t dim = cohorts * (k - 1);
  Eigen::MatrixXd jac(dim, dim);
  for (std::size_t c = 0; c < cohorts; ++c)
    for (std::size_t i = 0; i + 1 < k; ++i) {
      auto plus = eq.shares, minus = eq.shares;
      plus[c * k + i] += step;
      plus[c * k + k - 1] -= step;
      minus[c * k + i] -= step;
      minus[c * k + k - 1] += step;
      const auto fp = field(model, plus), fm = field(model, minus);
      const auto col = static_cast<Eigen::Index>(c * (k - 1) + i);
      for (std::size_t d = 0; d < cohorts; ++d)
        for (std::size_t j = 0; j + 1 < k; ++j)
          jac(static_cast<Eigen::Index>(d * (k - 1) + j), col) =
              (fp[d * k + j] - fm[d * k + j]) / (2 * step);
    }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(jac, false);
  const auto ev = solver.eigenvalues();
  eq.eigenvalues_real.clear();
  eq.eigenvalues_imag.clear();
  eq.stable = true;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    eq.eigenvalues_real.push_back(ev(i).real());
    eq.eigenvalues_imag.push_back(ev(i).imag());
    eq.stable = eq.stable && ev(i).real() < 0.0;
  }
  return eq;
}

double analytic_stability_slope(const GameModel& model, const ClosedFormUtility& utility,
                                double share1) {
  if (model.tiers() != 2 || utility.tiers() != 2 || model.cohorts() != 1)
    throw DomainError("the closed-form slope covers one cohort and two tiers");
  if (!(share1 > 0.0 && share1 < 1.0)) throw DomainError("share must lie in (0, 1)");
  const double share2 = 1.0 - share1;
  // Both tier loads move when χ₁ moves: dπ₂/dχ₁ = −dπ₂/dχ₂.
  const double w = model.game().w1 / model.normalizer();
  return -model.game().adaptation_rate * share1 * share2 * w *
         (utility.coefficient(0) / (share1 * share1) + utility.coefficient(1) / (share2 * share2));
}

// ---------------------------------------------------------------- baselines

BaselineResult baseline_select(BaselinePolicy policy, const GameModel& model, std::size_t users,
                               std::uint64_t seed, double grid_step) {
  const std::size_t k = model.tiers();
  auto replicate = [&](const std::vector<double>& one) {
    std::vector<double> s;
    for (std::size_t c = 0; c < model.cohorts(); ++c) s.insert(s.end(), one.begin(), one.end());
    return s;
  };
  auto mean_payoff = [&](const std::vector<double>& one) {
    const auto state = replicate(one);
    double m = 0.0;
    const auto& g = model.game();
    for (std::size_t c = 0; c < model.cohorts(); ++c) {
      const double w = g.cohorts.size() == model.cohorts() ? g.cohorts[c].weight
                                                           : 1.0 / static_cast<double>(model.cohorts());
      m += w * model.payoffs(state, c).mean_payoff;
    }
    return m;
  };

  BaselineResult r;
  switch (policy) {
    case BaselinePolicy::max_rate: {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t t = 0; t < k; ++t) {
        const double u = model.utilities().utility(t, 1.0);
        if (u > best) {
          best = u;
          r.tier = t;
        }
      }
      r.shares.assign(k, 0.0);
      r.shares[r.tier] = 1.0;
      break;
    }
    case BaselinePolicy::random: {
      if (users < 1) throw DomainError("random baseline needs at least one user");
      auto rng = make_rng(seed, 0, Stream::agents);
      std::uniform_int_distribution<std::size_t> pick(0, k - 1);
      r.shares.assign(k, 0.0);
      for (std::size_t i = 0; i < users; ++i) r.shares[pick(rng)] += 1.0;
      for (auto& s : r.shares) s /= static_cast<double>(users);
      r.tier = static_cast<std::size_t>(std::max_element(r.shares.begin(), r.shares.end()) -
                                        r.shares.begin());
      break;
    }
    case BaselinePolicy::exhaustive: {
      if (!(grid_step > 0.0 && grid_step <= 1.0)) throw DomainError("grid step must lie in (0, 1]");
      const auto steps = static_cast<std::size_t>(std::llround(1.0 / grid_step));
      double best = -std::numeric_limits<double>::infinity();
      simplex_grid(k, steps, false, [&](const std::vector<double>& x) {
        const double m = mean_payoff(x);
        if (m > best) {
          best = m;
          r.shares = x;
        }
      });
      r.tier = static_cast<std::size_t>(std::max_element(r.shares.begin(), r.shares.end()) -
                                        r.shares.begin());
      break;
    }
  }
  r.mean_payoff = mean_payoff(r.shares);
  return r;
}

// ---------------------------------------------------------------- output

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, std::size_t cohort,
                          std::size_t tiers) {
  os << "iter,tier,share,payoff,mean_payoff\n";
  const auto prec = os.precision(12);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const auto& pb = traj.payoffs[i].at(cohort);
    for (std::size_t t = 0; t < tiers; ++t)
      os << i << ',' << t + 1 << ',' << traj.states[i][cohort * tiers + t] << ',' << pb.payoff[t]
         << ',' << pb.mean_payoff << '\n';
  }
  os.precision(prec);
}

std::string equilibrium_json(const EquilibriumReport& eq, std::size_t tiers) {
  nlohmann::json j;
  j["type"] = eq.kind == EquilibriumKind::interior ? "interior" : "boundary";
  nlohmann::json cohorts = nlohmann::json::array();
  for (std::size_t c = 0; c * tiers < eq.shares.size(); ++c)
    cohorts.push_back(std::vector<double>(eq.shares.begin() + static_cast<std::ptrdiff_t>(c * tiers),
                                          eq.shares.begin() + static_cast<std::ptrdiff_t>((c + 1) * tiers)));
  j["shares"] = cohorts;
  j["eigenvalues_real"] = eq.eigenvalues_real;
  j["eigenvalues_imag"] = eq.eigenvalues_imag;
  j["stable"] = eq.stable;
  j["residual"] = eq.residual;
  j["payoff_spread"] = eq.payoff_spread;
  return j.dump(2);
}

}  // namespace hetnet
