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


#include "hetnet/analytics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "hetnet/numeric.hpp"

namespace hetnet {

namespace {

struct GainMode {
  double gain;
  double prob;
};

std::vector<GainMode> interferer_gains(const TierParams& t) {
  const double pm = main_lobe_probability(t);
  if (t.main_lobe_gain == t.side_lobe_gain || pm >= 1.0) return {{t.main_lobe_gain, 1.0}};
  return {{t.main_lobe_gain, pm}, {t.side_lobe_gain, 1.0 - pm}};
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// Log-scale quadrature over [lo, hi] (both > 0): ∫ g(x) dx = ∫ g(e^t) e^t dt.
numeric::QuadResult integrate_log(const std::function<double(double)>& g, double lo, double hi,
                                  double tol) {
  auto h = [&](double t) {
    const double x = std::exp(t);
    return g(x) * x;
  };
  return numeric::integrate(h, std::log(lo), std::log(hi), tol);
}

// Smallest θ below which coverage is treated as flat (its contribution is
// added analytically as θ_lo·P(0)).
constexpr double kThetaFloor = 1e-12;
// Coverage tails decay like θ^(−2/a); beyond this the rate integrand is
// negligible at double precision.
constexpr double kThetaCeil = 1e40;

}  // namespace

double alzer_eta(double mu) {
  if (!(mu >= 1.0) || std::floor(mu) != mu) throw DomainError("Alzer η needs an integer shape >= 1");
  return mu * std::pow(std::tgamma(mu + 1.0), -1.0 / mu);
}

// ---- stand-alone Laplace evaluators ---------------------------------------

namespace {

double los_factor(const LaplaceEvaluator& ev, double x) {
  if (!ev.tier.los_required) return 1.0;
  if (ev.model == AnalyticBlockage::step) return x < ev.blockage.los_radius() ? 1.0 : 0.0;
  return std::exp(-ev.blockage.beta() * x - ev.blockage.p());
}

void check_evaluator(double s, const LaplaceEvaluator& ev) {
  if (!(s >= 0.0)) throw DomainError("Laplace transform needs s >= 0");
  if (!(ev.pathloss_exponent > 2.0)) throw DomainError("path-loss exponent must exceed 2");
  if (!(ev.active_share >= 0.0 && ev.active_share <= 1.0))
    throw DomainError("active share outside [0,1]");
  if (!(ev.serving_distance >= 0.0)) throw DomainError("negative serving distance");
}

double outer_radius(const LaplaceEvaluator& ev) {
  return ev.tier.los_required ? ev.blockage.los_radius() : std::numeric_limits<double>::infinity();
}

}  // namespace

double laplace_numeric(double s, const LaplaceEvaluator& ev) {
  check_evaluator(s, ev);
  if (s == 0.0 || ev.tier.density_per_km2 == 0.0 || ev.active_share == 0.0) return 1.0;
  const double a = ev.pathloss_exponent;
  const double r0 = ev.serving_distance;
  double expo = 0.0;
  for (const auto& g : interferer_gains(ev.tier)) {
    if (g.prob == 0.0) continue;
    const double omega = std::pow(s * g.gain * ev.tier.power_mw, 1.0 / a);
    // Ω²∫_{r0/Ω}^∞ z/(1+z^a) p_L(zΩ) dz
    auto integrand = [&](double z) { return z / (1.0 + std::pow(z, a)) * los_factor(ev, z * omega); };
    const double z0 = r0 / omega;
    double j = 0.0;
    const double zmax = outer_radius(ev) / omega;
    if (std::isfinite(zmax)) {
      if (zmax > z0) j = numeric::integrate(integrand, z0, zmax, ev.rel_tol).value;
    } else {
      j = numeric::integrate_tail(integrand, z0, std::max(1.0, z0), ev.rel_tol).value;
    }
    expo += g.prob * omega * omega * j;
  }
  return std::exp(-kTwoPi * ev.tier.density_per_km2 * ev.active_share * expo);
}

double laplace_closed_a4(double s, const LaplaceEvaluator& ev) {
  check_evaluator(s, ev);
  if (ev.pathloss_exponent != 4.0) throw DomainError("closed form requires a = 4");
  if (s == 0.0) return 1.0;
  const double big_r = outer_radius(ev);
  const double r0 = ev.serving_distance;
  double expo = 0.0;
  for (const auto& g : interferer_gains(ev.tier)) {
    const double omega2 = std::sqrt(s * g.gain * ev.tier.power_mw);
    const double hi = std::isfinite(big_r) ? std::atan(big_r * big_r / omega2) : kPi / 2.0;
    const double lo = std::atan(r0 * r0 / omega2);
    expo += g.prob * omega2 * std::max(hi - lo, 0.0);
  }
  return std::exp(-kPi * ev.tier.density_per_km2 * ev.active_share * expo);
}

double laplace_closed_a4_compact(double s, const LaplaceEvaluator& ev) {
  check_evaluator(s, ev);
  if (ev.pathloss_exponent != 4.0) throw DomainError("closed form requires a = 4");
  if (s == 0.0) return 1.0;
  const double big_r = outer_radius(ev);
  const double r0 = ev.serving_distance;
  double expo = 0.0;
  for (const auto& g : interferer_gains(ev.tier)) {
    const double omega2 = std::sqrt(s * g.gain * ev.tier.power_mw);
    double ang = 0.0;
    if (!std::isfinite(big_r)) {
      ang = std::atan2(omega2, r0 * r0);
    } else if (r0 < big_r) {
      // arctan X − arctan Y = atan2(X − Y, 1 + XY) for X, Y >= 0.
      ang = std::atan2((big_r * big_r - r0 * r0) * omega2,
                       omega2 * omega2 + big_r * big_r * r0 * r0);
    }
    expo += g.prob * omega2 * ang;
  }
  return std::exp(-kPi * ev.tier.density_per_km2 * ev.active_share * expo);
}

double laplace_upper_bound(double s, const LaplaceEvaluator& ev) {
  check_evaluator(s, ev);
  const double big_r = outer_radius(ev);
  const double r0 = ev.serving_distance;
  if (r0 > big_r) throw DomainError("bound requires r <= R");
  if (s == 0.0 || r0 == big_r) return 1.0;
  double mean_gain = 0.0;
  for (const auto& g : interferer_gains(ev.tier)) mean_gain += g.prob * g.gain;
  const double inv = 1.0 / (r0 * r0) - (std::isfinite(big_r) ? 1.0 / (big_r * big_r) : 0.0);
  return std::exp(-kPi * ev.tier.density_per_km2 * ev.active_share * s * ev.tier.power_mw *
                  mean_gain * inv);
}

// ---- TierAnalysis -----------------------------------------------------------

TierAnalysis::TierAnalysis(const SimulationConfig& cfg, std::size_t tier_index1,
                           double active_share)
    : tier_(cfg.tier(tier_index1)),
      chi_(active_share),
      a_(cfg.analysis.pathloss_exponent),
      rel_tol_(cfg.analysis.rel_tol),
      theta_max_(cfg.analysis.theta_max),
      noise_(cfg.effective_noise(cfg.tier(tier_index1))),
      beta_(cfg.blockage.beta()),
      p_(cfg.blockage.p()),
      los_radius_(cfg.blockage.los_radius()) {
  if (!(chi_ >= 0.0 && chi_ <= 1.0)) throw DomainError("active share outside [0,1]");
  if (!(a_ > 2.0)) throw DomainError("mean SINR diverges for path-loss exponent <= 2");
  if (!tier_.los_required) {
    los_ = Los::none;
  } else if (cfg.analysis.blockage == AnalyticBlockage::step) {
    los_ = Los::step;
  } else {
    los_ = Los::exponential;
  }
  serve_density_ = cfg.analysis.association == Association::nearest_los
                       ? tier_.density_per_km2
                       : tier_.density_per_km2 * chi_;
  eta_ = alzer_eta(tier_.nakagami_mu);
}

double TierAnalysis::los_probability(double r) const {
  switch (los_) {
    case Los::none: return 1.0;
    case Los::step: return r < los_radius_ ? 1.0 : 0.0;
    case Los::exponential: return std::exp(-beta_ * r - p_);
  }
  return 1.0;
}

double TierAnalysis::u_integral(double r) const {
  switch (los_) {
    case Los::none: return 0.5 * r * r;
    case Los::step: {
      const double m = std::min(r, los_radius_);
      return 0.5 * m * m;
    }
    case Los::exponential: {
      if (beta_ == 0.0) return std::exp(-p_) * 0.5 * r * r;
      const double br = beta_ * r;
      // 1 − e^{−x}(1+x) loses precision for small x; use expm1.
      const double core = -std::expm1(-br) - br * std::exp(-br);
      return std::exp(-p_) / (beta_ * beta_) * core;
    }
  }
  return 0.0;
}

double TierAnalysis::serving_pdf(double r) const {
  if (!(r >= 0.0)) throw DomainError("negative distance");
  if (serve_density_ == 0.0) throw DomainError("no serving BS: zero active density");
  return kTwoPi * serve_density_ * r * los_probability(r) *
         std::exp(-kTwoPi * serve_density_ * u_integral(r));
}

double TierAnalysis::serving_exponent(double r) const {
  return kTwoPi * serve_density_ * u_integral(r);
}

double TierAnalysis::serving_mass() const {
  if (serve_density_ == 0.0) return 0.0;
  double u_inf = std::numeric_limits<double>::infinity();
  if (los_ == Los::step) u_inf = 0.5 * los_radius_ * los_radius_;
  if (los_ == Los::exponential && beta_ > 0.0) u_inf = std::exp(-p_) / (beta_ * beta_);
  return -std::expm1(-kTwoPi * serve_density_ * u_inf);
}

namespace {

struct DistanceRange {
  double lo;
  double hi;
};

}  // namespace

double TierAnalysis::gain_integral(double omega, double r0) const {
  // ∫_{r0}^∞ x p_L(x) / (1 + (x/Ω)^a) dx
  if (omega == 0.0) return 0.0;
  const double o2 = omega * omega;
  if (a_ == 4.0 && los_ == Los::none) {
    return 0.5 * o2 * std::atan2(o2, r0 * r0);
  }
  if (a_ == 4.0 && los_ == Los::step) {
    if (r0 >= los_radius_) return 0.0;
    const double r2 = los_radius_ * los_radius_, q2 = r0 * r0;
    return 0.5 * o2 * std::atan2((r2 - q2) * o2, o2 * o2 + r2 * q2);
  }
  // Dimensionless form Ω²∫ z p_L(Ωz)/(1+z^a) dz keeps the quadrature scale-free.
  auto f = [&](double z) {
    const double za = a_ == 4.0 ? (z * z) * (z * z) : std::pow(z, a_);
    return z * los_probability(z * omega) / (1.0 + za);
  };
  const double tol = 0.1 * rel_tol_;
  const double abs_tol = 1e-3 * tol;
  const double z0 = r0 / omega;
  if (los_ == Los::step) {
    if (r0 >= los_radius_) return 0.0;
    return o2 * numeric::integrate(f, z0, los_radius_ / omega, tol, abs_tol).value;
  }
  return o2 * numeric::integrate_light(f, z0, std::numeric_limits<double>::infinity(), tol, abs_tol)
                  .value;
}

double TierAnalysis::interference_exponent(double s, double r0) const {
  if (s == 0.0 || chi_ == 0.0) return 0.0;
  double e = 0.0;
  for (const auto& g : interferer_gains(tier_)) {
    if (g.prob == 0.0) continue;
    const double omega = std::pow(s * g.gain * tier_.power_mw, 1.0 / a_);
    e += g.prob * gain_integral(omega, r0);
  }
  return kTwoPi * tier_.density_per_km2 * chi_ * e;
}

double TierAnalysis::laplace(double s, double r0) const {
  return std::exp(-interference_exponent(s, r0));
}

double TierAnalysis::covered_given_distance(double theta, double r) const {
  // Σ_ξ (−1)^{ξ+1} C(μ,ξ) L(s_ξ) e^{−s_ξ σ²},  s_ξ = ηξ r^a θ / (P M)
  const int mu = tier_.nakagami_mu;
  const double base = eta_ * std::pow(r, a_) * theta / (tier_.power_mw * tier_.main_lobe_gain);
  double sum = 0.0;
  for (int xi = 1; xi <= mu; ++xi) {
    const double s = base * xi;
    const double term = std::exp(-interference_exponent(s, r) - s * noise_);
    sum += ((xi % 2 == 1) ? 1.0 : -1.0) * binomial(mu, xi) * term;
  }
  return sum;
}

namespace {

// Distance window holding all but ~1e-15 of the serving-distance mass.
DistanceRange distance_window(double density, double beta, double los_radius, bool step,
                              bool blocked) {
  const double nn = 1.0 / std::sqrt(kPi * density);
  DistanceRange w{1e-8 * nn, 7.0 * nn};
  if (blocked && beta > 0.0) w.hi = std::min(w.hi, 40.0 / beta);
  if (step) w.hi = std::min(w.hi, los_radius);
  w.lo = std::min(w.lo, 0.5 * w.hi);
  return w;
}

}  // namespace

double TierAnalysis::coverage(double theta, bool conditioned) const {
  if (!(theta >= 0.0)) throw DomainError("coverage threshold must be >= 0");
  const double mass = serving_mass();
  if (mass == 0.0) return 0.0;
  if (std::isinf(theta)) return 0.0;
  const auto w = distance_window(serve_density_, beta_, los_radius_, los_ == Los::step,
                                 los_ == Los::exponential);
  auto g = [&](double r) { return serving_pdf(r) * covered_given_distance(theta, r); };
  const auto q = integrate_log(g, w.lo, w.hi, rel_tol_);
  residual_ = q.error;
  const double pc = std::clamp(q.value, 0.0, mass);
  return conditioned ? pc / mass : pc;
}

double TierAnalysis::mean_sinr() const {
  if (serving_mass() == 0.0) return 0.0;
  const double outer_tol = rel_tol_ * 10.0;
  auto g = [&](double theta) { return coverage(theta); };
  const auto q = integrate_log(g, kThetaFloor, theta_max_, outer_tol);
  residual_ = q.error;
  return q.value + kThetaFloor * serving_mass();
}

double TierAnalysis::mean_sinr_distance_outer() const {
  if (serving_mass() == 0.0) return 0.0;
  const double outer_tol = rel_tol_ * 10.0;
  const auto w = distance_window(serve_density_, beta_, los_radius_, los_ == Los::step,
                                 los_ == Los::exponential);
  auto inner = [&](double r) {
    auto h = [&](double theta) { return covered_given_distance(theta, r); };
    const auto q = integrate_log(h, kThetaFloor, theta_max_, rel_tol_);
    return serving_pdf(r) * (q.value + kThetaFloor);
  };
  const auto q = integrate_log(inner, w.lo, w.hi, outer_tol);
  residual_ = q.error;
  return q.value;
}

double TierAnalysis::mean_rate() const {
  if (tier_.bandwidth_hz == 0.0 || serving_mass() == 0.0) return 0.0;
  const double outer_tol = rel_tol_ * 10.0;
  auto g = [&](double theta) { return coverage(theta) / (1.0 + theta); };
  const auto q = integrate_log(g, kThetaFloor, kThetaCeil, outer_tol);
  residual_ = q.error;
  const double nats = q.value + kThetaFloor * serving_mass();
  return tier_.bandwidth_hz / std::numbers::ln2 * nats;
}

double TierAnalysis::mean_serving_distance() const {
  const double mass = serving_mass();
  if (mass == 0.0) throw DomainError("no serving BS");
  const auto w = distance_window(serve_density_, beta_, los_radius_, los_ == Los::step,
                                 los_ == Los::exponential);
  auto g = [&](double r) { return r * serving_pdf(r); };
  return integrate_log(g, w.lo, w.hi, rel_tol_).value / mass;
}

// ---- UtilityTable -----------------------------------------------------------

namespace {

std::vector<std::pair<double, double>> legendre_rule(int n) {
  // Newton iteration on P_n from the Chebyshev-like initial guess.
  std::vector<std::pair<double, double>> r(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
  }
  return r;
}

// Composite Gauss-Legendre nodes over [lo, hi], panels no wider than `width`.
void gauss_panels(double lo, double hi, double width, int order, std::vector<double>& nodes,
                  std::vector<double>& weights) {
  if (!(hi > lo)) return;
  const auto rule = legendre_rule(order);
  const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    for (const auto& [x, w] : rule) {
      nodes.push_back(mid + 0.5 * h * x);
      weights.push_back(0.5 * h * w);
    }
  }
}

constexpr double kTableThetaLo = 1e-12;
constexpr double kTableThetaHi = 1e24;

}  // namespace

UtilityTable::UtilityTable(const SimulationConfig& cfg, std::size_t tier_index1)
    : tier_(cfg.tier(tier_index1)),
      active_association_(cfg.analysis.association == Association::nearest_active_los),
      theta_max_(cfg.analysis.theta_max) {
  // Reference analysis at χ = 1 supplies the interference kernel; the χ
  // dependence is restored at evaluation time.
  const TierAnalysis ref(cfg, tier_index1, 1.0);
  const double lambda = tier_.density_per_km2;
  const double beta = cfg.blockage.beta();
  const bool step = tier_.los_required && cfg.analysis.blockage == AnalyticBlockage::step;
  const bool blocked = tier_.los_required && !step;
  // Widest serving-distance law we need: thinning down to 1% activity.
  const double widest = active_association_ ? 0.01 * lambda : lambda;
  const double nn = 1.0 / std::sqrt(kPi * widest);
  double r_hi = 7.0 * nn;
  if (blocked && beta > 0.0) r_hi = std::min(r_hi, 40.0 / beta);
  if (step) r_hi = std::min(r_hi, cfg.blockage.los_radius());
  const double r_lo = 1e-6 / std::sqrt(kPi * lambda);

  std::vector<double> lr, wr;
  // 8-point panels, one per unit of ln r and two per unit of ln θ.
  constexpr int order = 8;
  constexpr double rw = 1.0, tw = 2.0;
  gauss_panels(std::log(r_lo), std::log(r_hi), rw, order, lr, wr);
  std::vector<double> lt, wt;
  gauss_panels(std::log(kTableThetaLo), std::log(theta_max_), tw, order, lt, wt);
  gauss_panels(std::log(theta_max_), std::log(kTableThetaHi), tw, order, lt, wt);

  const int mu = tier_.nakagami_mu;
  const double a = cfg.analysis.pathloss_exponent;
  const double eta = alzer_eta(mu);
  const double noise = cfg.effective_noise(tier_);
  const double serve_density = lambda;  // χ = 1 reference

  // Distance-only factors.
  std::vector<double> pdf_part(lr.size()), thin(lr.size());
  for (std::size_t j = 0; j < lr.size(); ++j) {
    const double r = std::exp(lr[j]);
    const double pl = ref.los_probability(r);
    // pdf at χ = 1 is 2πλ r p_L e^{−2πλU}; keep e^{−2πλU} separate when the
    // serving density scales with χ.
    const double u = ref.serving_exponent(r);
    thin[j] = active_association_ ? u : 0.0;
    pdf_part[j] = kTwoPi * serve_density * r * pl * (active_association_ ? 1.0 : std::exp(-u)) *
                  r * wr[j];
    if (!std::isfinite(pdf_part[j]) || pl == 0.0) {
      pdf_part[j] = 0.0;
      thin[j] = 0.0;
    }
  }

  theta_.resize(lt.size());
  weight_.resize(lt.size());
  blocks_.resize(lt.size());
  for (std::size_t i = 0; i < lt.size(); ++i) {
    const double theta = std::exp(lt[i]);
    theta_[i] = theta;
    weight_[i] = wt[i] * theta;
    auto& b = blocks_[i];
    b.scale.reserve(lr.size() * mu);
    b.exponent.reserve(lr.size() * mu);
    b.noise.reserve(lr.size() * mu);
    for (std::size_t j = 0; j < lr.size(); ++j) {
      if (pdf_part[j] == 0.0) continue;
      const double r = std::exp(lr[j]);
      const double base = eta * std::pow(r, a) * theta / (tier_.power_mw * tier_.main_lobe_gain);
      for (int xi = 1; xi <= mu; ++xi) {
        const double s = base * xi;
        b.scale.push_back(((xi % 2 == 1) ? 1.0 : -1.0) * binomial(mu, xi) * pdf_part[j]);
        // interference_exponent is linear in χ; evaluate it at χ = 1.
        b.exponent.push_back(std::min(-std::log(ref.laplace(s, r)), 1e300) + thin[j]);
        b.noise.push_back(s * noise);
      }
    }
  }
  mass_ = ref.serving_mass();
}

double UtilityTable::power_ratio(double power_mw) const {
  return power_mw > 0.0 ? tier_.power_mw / power_mw : 1.0;
}

double UtilityTable::coverage_at(std::size_t node, double chi, double ratio) const {
  const auto& b = blocks_[node];
  double sum = 0.0;
  for (std::size_t k = 0; k < b.scale.size(); ++k)
    sum += b.scale[k] * std::exp(-chi * b.exponent[k] - ratio * b.noise[k]);
  if (active_association_) sum *= chi;
  return std::max(sum, 0.0);
}

double UtilityTable::mean_sinr(double chi, double power_mw) const {
  const double ratio = power_ratio(power_mw);
  double sum = 0.0;
  for (std::size_t i = 0; i < theta_.size() && theta_[i] < theta_max_; ++i)
    sum += weight_[i] * coverage_at(i, chi, ratio);
  return sum + kTableThetaLo * (active_association_ && chi == 0.0 ? 0.0 : mass_);
}

double UtilityTable::mean_rate(double chi, double power_mw) const {
  if (tier_.bandwidth_hz == 0.0) return 0.0;
  const double ratio = power_ratio(power_mw);
  double sum = 0.0;
  for (std::size_t i = 0; i < theta_.size(); ++i)
    sum += weight_[i] / (1.0 + theta_[i]) * coverage_at(i, chi, ratio);
  return tier_.bandwidth_hz / std::numbers::ln2 * sum;
}

// ---- free functions ---------------------------------------------------------

double serving_distance_pdf(double r, const SimulationConfig& cfg, std::size_t tier,
                            double active_share) {
  if (!(active_share > 0.0)) throw DomainError("no serving BS: active share is zero");
  return TierAnalysis(cfg, tier, active_share).serving_pdf(r);
}

double coverage_probability(double theta, const SimulationConfig& cfg, std::size_t tier,
                            double active_share, bool conditioned) {
  return TierAnalysis(cfg, tier, active_share).coverage(theta, conditioned);
}

double mean_sinr(const SimulationConfig& cfg, std::size_t tier, double active_share) {
  return TierAnalysis(cfg, tier, active_share).mean_sinr();
}

double mean_rate(const SimulationConfig& cfg, std::size_t tier, double active_share) {
  return TierAnalysis(cfg, tier, active_share).mean_rate();
}

SinrStats sinr_stats(const SimulationConfig& cfg, std::size_t tier, double active_share,
                     const std::vector<double>& theta_db) {
  TierAnalysis ta(cfg, tier, active_share);
  SinrStats st;
  st.tier = tier;
  st.active_share = active_share;
  for (double db : theta_db) {
    const double th = units::db_to_linear(db);
    st.theta.push_back(th);
    st.coverage.push_back(ta.coverage(th));
    st.residual += ta.last_residual();
  }
  st.mean_sinr = ta.mean_sinr();
  st.residual += ta.last_residual();
  st.mean_rate_bps = ta.mean_rate();
  st.residual += ta.last_residual();
  return st;
}

double mean_sinr_closed(const SimulationConfig& cfg, std::size_t tier, double active_share,
                        double ref_distance_km) {
  const auto& t = cfg.tier(tier);
  const double big_r = cfg.blockage.los_radius();
  if (!(active_share > 0.0)) throw DomainError("closed-form SINR needs χ > 0");
  if (!(ref_distance_km > 0.0 && ref_distance_km < big_r))
    throw DomainError("closed-form SINR needs 0 < r̃ < R_B");
  const double r2 = ref_distance_km * ref_distance_km;
  const double big_r2 = big_r * big_r;
  return t.main_lobe_gain * big_r2 /
         (kPi * t.density_per_km2 * active_share * r2 * (big_r2 - r2) * t.mean_interferer_gain());
}

}  // namespace hetnet
