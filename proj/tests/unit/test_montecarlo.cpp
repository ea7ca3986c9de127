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
#include <sstream>

#include "hetnet/montecarlo.hpp"

using namespace hetnet;

TEST_CASE("BS counts follow the Poisson mean") {
  auto cfg = default_config();
  cfg.montecarlo.disk_radius_km = 1.0;
  cfg.montecarlo.los_mode = LosMode::independent;
  const std::size_t draws = 400;
  double sum = 0.0;
  for (std::size_t i = 0; i < draws; ++i) sum += static_cast<double>(realize_tier(cfg, 2, 0.5, 7, i).x.size());
  const double mean = 100.0 * kPi;
  CHECK(std::abs(sum / draws - mean) < 4.0 * std::sqrt(mean / draws));
}

TEST_CASE("realizations are deterministic per seed and index") {
  auto cfg = default_config();
  const std::vector<double> chi{0.5, 0.5, 0.5};
  const auto a = realize(cfg, chi, 11, 3);
  const auto b = realize(cfg, chi, 11, 3);
  const auto c = realize(cfg, chi, 11, 4);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(a.tiers[k].x == b.tiers[k].x);
    CHECK(a.tiers[k].los == b.tiers[k].los);
    CHECK(a.tiers[k].fading == b.tiers[k].fading);
  }
  CHECK(a.tiers[1].x != c.tiers[1].x);
}

TEST_CASE("no load means no active interferers") {
  auto cfg = default_config();
  cfg.montecarlo.los_mode = LosMode::independent;
  for (std::size_t i = 0; i < 20; ++i) {
    const auto t = realize_tier(cfg, 3, 0.0, 5, i);
    for (std::size_t j = 0; j < t.x.size(); ++j)
      if (j != t.serving) CHECK(t.active[j] == 0);
    if (t.covered()) {
      const auto s = empirical_sinr(cfg, t);
      REQUIRE(s);
      // Noise-limited: the serving link alone decides the SINR.
      const double r = std::hypot(t.x[t.serving], t.y[t.serving]);
      const auto& tp = cfg.tier(3);
      const double expect = tp.power_mw * t.fading[t.serving] * t.gain[t.serving] *
                            std::pow(r, -4.0) / cfg.effective_noise(tp);
      CHECK(*s == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("single base station SINR") {
  auto cfg = default_config();
  TierRealization t;
  t.tier = 1;
  t.disk_radius_km = 1.0;
  t.x = {0.1, 0.5};
  t.y = {0.0, 0.0};
  t.los = {1, 1};
  t.active = {1, 0};
  t.fading = {1.0, 1.0};
  t.gain = {1.0, 1.0};
  t.serving = 0;
  const auto& tp = cfg.tier(1);
  const double signal = tp.power_mw * std::pow(0.1, -4.0);
  CHECK(*empirical_sinr(cfg, t) == doctest::Approx(signal / cfg.effective_noise(tp)).epsilon(1e-12));
  t.active[1] = 1;
  const double interf = tp.power_mw * std::pow(0.5, -4.0);
  CHECK(*empirical_sinr(cfg, t) ==
        doctest::Approx(signal / (cfg.effective_noise(tp) + interf)).epsilon(1e-12));
  t.serving = t.x.size();
  CHECK_FALSE(empirical_sinr(cfg, t));
}

TEST_CASE("a stationary user never hands over") {
  const auto cfg = default_config();
  const auto tr = sample_trace(cfg, 3, 0.0, 0.0, 30.0, 1, 0, true);
  const auto c = trace_handover_counts(tr, cfg.tier(3).codebook_exponent);
  CHECK(c.beam == 0);
  CHECK(c.cell == 0);
  CHECK(c.blockage == 0);
  CHECK(c.duration_s == doctest::Approx(30.0));
}

TEST_CASE("handover counting on a hand-made trace") {
  RwpTrace tr;
  tr.serving = {0, 0, 0, 1, 1, 1};
  tr.beam = {0, 1, 7, 7, 7, 7};
  tr.los = {1, 1, 1, 1, 0, 1};
  tr.duration_s = 5.0;
  const auto c = trace_handover_counts(tr, 3);
  CHECK(c.cell == 1);
  CHECK(c.beam == 3);  // 0→1, then 1→7 wraps through 0 (two boundaries)
  CHECK(c.blockage == 1);
  CHECK(trace_handover_counts(tr, 0).beam == 0);
}

TEST_CASE("without blockages links never get blocked") {
  const BlockageParams none(0.0, 0.0, 0.0, PFormula::corrected);
  CHECK(link_blockage_probability(none, 0.02, 0.1, 200, 1).value == 0.0);
  CHECK(swept_region_count(none, 0.02, 0.1, 200, 1).value == 0.0);
}

TEST_CASE("coverage estimate bookkeeping") {
  auto cfg = default_config();
  cfg.montecarlo.interferer_fading = InterfererFading::rayleigh;
  const std::vector<double> theta{0.1, 1.0, 10.0};
  const auto est = empirical_coverage(cfg, 1, 0.5, theta, 300, 3, true);
  CHECK(est.draws == 300);
  CHECK(est.samples.size() == 300);
  CHECK(est.coverage[0] >= est.coverage[1]);
  CHECK(est.coverage[1] >= est.coverage[2]);
  const auto again = empirical_coverage(cfg, 1, 0.5, theta, 300, 3, true);
  CHECK(again.samples == est.samples);

  std::ostringstream os;
  write_sinr_samples(os, {{3, 1, 4.5}});
  CHECK(os.str().rfind("seed,tier,sinr_db\n3,1,4.5", 0) == 0);
  std::ostringstream ts;
  write_trace_counts(ts, {{3, TraceCounts{2, 1, 0, 60.0}}});
  CHECK(ts.str().rfind("seed,beam_ho,cell_ho,blk_ho,duration_s\n3,2,1,0,60", 0) == 0);
}
