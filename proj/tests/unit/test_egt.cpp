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


#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "hetnet/egt.hpp"

using namespace hetnet;

namespace {

// Congestion utilities c_k / χ_k with fixed per-tier overheads.
GameModel congestion_model(std::vector<double> coeff, std::vector<double> overhead,
                           double rate = 1.0) {
  GameConfig g;
  g.adaptation_rate = rate;
  g.normalization = UtilityNormalization::none;
  const std::size_t k = coeff.size();
  auto src = std::make_shared<FunctionUtility>(
      k, [coeff](std::size_t t, double x) { return coeff[t] / std::max(x, 1e-9); });
  return GameModel(g, 0.0, src, {std::move(overhead)});
}

double simplex_error(const std::vector<double>& x) {
  return std::abs(std::accumulate(x.begin(), x.end(), 0.0) - 1.0);
}

}  // namespace

TEST_CASE("replicator field is tangent to the simplex") {
  const std::vector<double> x{0.2, 0.3, 0.5}, p{1.0, -2.0, 0.7};
  const auto d = replicator_rhs(x, p, 1.3);
  CHECK(std::abs(d[0] + d[1] + d[2]) < 1e-15);
  const auto z = replicator_rhs(x, std::vector<double>{2.0, 2.0, 2.0}, 1.0);
  for (double v : z) CHECK(v == 0.0);
  const auto e = replicator_rhs(std::vector<double>{0.0, 0.5, 0.5}, p, 1.0);
  CHECK(e[0] == 0.0);
}

TEST_CASE("integration keeps the state on the simplex and converges") {
  const auto m = congestion_model({1.0, 0.5, 0.25}, {0.0, 0.1, 0.3});
  IntegrationOptions opt;
  opt.horizon = 60;
  const auto tr = integrate(m, {0.6, 0.3, 0.1}, opt);
  CHECK(tr.max_drift < 1e-12);
  for (const auto& s : tr.states) CHECK(simplex_error(s) < 1e-12);
  CHECK(tr.converged);
  CHECK(tr.iterations <= 40);
  for (std::size_t i = 1; i < tr.time.size(); ++i) CHECK(tr.time[i] > tr.time[i - 1]);
}

TEST_CASE("payoff shift and time rescaling leave trajectories unchanged") {
  auto base = congestion_model({1.0, 0.5}, {0.0, 0.2});
  auto shifted = congestion_model({1.0, 0.5}, {-0.7, -0.5});
  IntegrationOptions opt;
  opt.horizon = 20;
  const auto a = integrate(base, {0.3, 0.7}, opt);
  const auto b = integrate(shifted, {0.3, 0.7}, opt);
  CHECK(a.states.back()[0] == doctest::Approx(b.states.back()[0]).epsilon(1e-12));

  auto fast = congestion_model({1.0, 0.5}, {0.0, 0.2}, 2.0);
  IntegrationOptions half = opt;
  half.horizon = 10;
  half.dt = 0.025;
  const auto c = integrate(fast, {0.3, 0.7}, half);
  CHECK(c.states.back()[0] == doctest::Approx(a.states.back()[0]).epsilon(1e-9));
}

TEST_CASE("zero delay takes the undelayed path") {
  const auto m = congestion_model({1.0, 0.5, 0.25}, {0.0, 0.1, 0.3});
  IntegrationOptions opt;
  opt.horizon = 10;
  const auto a = integrate(m, {0.6, 0.3, 0.1}, opt);
  opt.delay = 0.0;
  const auto b = integrate(m, {0.6, 0.3, 0.1}, opt);
  CHECK(a.states == b.states);
  opt.delay = 0.01;
  CHECK_THROWS_AS(integrate(m, {0.6, 0.3, 0.1}, opt), DomainError);
}

TEST_CASE("delayed dynamics with constant history") {
  const auto m = congestion_model({1.0, 0.5}, {0.0, 0.0}, 0.1);
  IntegrationOptions opt;
  opt.horizon = 300;
  opt.delay = 2.0;
  opt.dt = 0.1;
  const auto tr = integrate(m, {0.9, 0.1}, opt);
  CHECK(tr.converged);
  CHECK(tr.states.back()[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-4));
}

TEST_CASE("interior equilibrium and its stability") {
  // No overhead: equal payoffs at χ₁ = c₁/(c₁ + c₂).
  const auto m = congestion_model({0.3, 0.1}, {0.0, 0.0});
  auto eq = find_equilibrium(m);
  REQUIRE(eq.kind == EquilibriumKind::interior);
  CHECK(eq.shares[0] == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(eq.residual < 1e-9);
  eq = stability(eq, m);
  REQUIRE(eq.eigenvalues_real.size() == 1);
  CHECK(eq.stable);
  const double slope = -0.75 * 0.25 * (0.3 / (0.75 * 0.75) + 0.1 / (0.25 * 0.25));
  CHECK(eq.eigenvalues_real[0] == doctest::Approx(slope).epsilon(1e-6));

  SimulationConfig cfg = default_config();
  cfg.tiers.resize(2);
  cfg.tiers[0].nakagami_mu = cfg.tiers[1].nakagami_mu = 1;
  cfg.analysis.blockage = AnalyticBlockage::step;
  cfg.game.normalization = UtilityNormalization::none;
  auto cf = std::make_shared<ClosedFormUtility>(cfg, 0.1);
  GameModel gm(cfg.game, 0.0, cf, {{0.0, 0.0}});
  auto ge = stability(find_equilibrium(gm), gm);
  CHECK(ge.eigenvalues_real[0] ==
        doctest::Approx(analytic_stability_slope(gm, *cf, ge.shares[0])).epsilon(1e-6));
}

TEST_CASE("boundary equilibria are rejected by the stability check") {
  // Tier 2 never pays: everyone ends on tier 1.
  GameConfig g;
  g.normalization = UtilityNormalization::none;
  auto src = std::make_shared<FunctionUtility>(2, [](std::size_t t, double) { return t == 0 ? 1.0 : 0.0; });
  GameModel m(g, 0.0, src, {{0.0, 0.0}});
  const auto eq = find_equilibrium(m);
  CHECK(eq.kind == EquilibriumKind::boundary);
  CHECK(eq.shares[0] == doctest::Approx(1.0));
  CHECK_THROWS_AS(stability(eq, m), DomainError);
}

TEST_CASE("agent protocol") {
  SUBCASE("equal payoffs: nobody moves") {
    GameConfig g;
    g.normalization = UtilityNormalization::none;
    auto src = std::make_shared<FunctionUtility>(3, [](std::size_t, double) { return 1.0; });
    GameModel m(g, 0.0, src, {{0.0, 0.0, 0.0}});
    AgentOptions opt;
    opt.max_iterations = 20;
    const auto tr = evolve_agents(m, opt);
    for (const auto& s : tr.states) CHECK(s == tr.states.front());
  }
  SUBCASE("agents track the mean-field equilibrium") {
    const auto m = congestion_model({1.0, 0.5, 0.25}, {0.0, 0.1, 0.3});
    AgentOptions opt;
    opt.population = 1000;
    opt.max_iterations = 100;
    const auto ag = evolve_agents(m, opt);
    const auto eq = find_equilibrium(m);
    CHECK(ag.converged);
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(ag.states.back()[k] - eq.shares[k]) < 0.02);
    const auto again = evolve_agents(m, opt);
    CHECK(again.states == ag.states);
  }
}

TEST_CASE("baselines") {
  const auto m = congestion_model({1.0, 0.5, 0.25}, {0.0, 0.1, 0.3});
  const auto best = baseline_select(BaselinePolicy::exhaustive, m);
  const auto rnd = baseline_select(BaselinePolicy::random, m);
  const auto maxr = baseline_select(BaselinePolicy::max_rate, m);
  CHECK(maxr.tier == 0);
  CHECK(best.mean_payoff >= rnd.mean_payoff);
  CHECK(best.mean_payoff >= maxr.mean_payoff);
  double sum = 0;
  for (double s : rnd.shares) sum += s;
  CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("trajectory and equilibrium output") {
  const auto m = congestion_model({1.0, 0.5}, {0.0, 0.0});
  IntegrationOptions opt;
  opt.horizon = 3;
  const auto tr = integrate(m, {0.5, 0.5}, opt);
  std::ostringstream os;
  write_trajectory_csv(os, tr, 0, 2);
  CHECK(os.str().rfind("iter,tier,share,payoff,mean_payoff\n0,1,0.5,", 0) == 0);
  const auto js = equilibrium_json(find_equilibrium(m), 2);
  CHECK(js.find("\"type\": \"interior\"") != std::string::npos);
}
