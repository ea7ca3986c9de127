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

#include <sstream>

#include "hetnet/mobility.hpp"

using namespace hetnet;

TEST_CASE("handover rates at 10 km/h") {
  const auto cfg = default_config();
  const double u = units::kmh_to_kms(10.0);
  CHECK(beam_reselection_rate(cfg.tier(2), u) == doctest::Approx(7.074e-2).epsilon(1e-3));
  CHECK(cell_crossing_rate(cfg.tier(2), u) == doctest::Approx(3.537e-2).epsilon(1e-3));
  CHECK(blockage_handover_rate(u, cfg.blockage, 0.1) == doctest::Approx(7.883e-3).epsilon(2e-3));
}

TEST_CASE("overhead conventions") {
  auto cfg = default_config();
  const double u = units::kmh_to_kms(30.0);
  const auto omni = time_overhead(cfg, 1, u);
  CHECK(omni.beam_rate == 0.0);
  CHECK(omni.blockage_rate == 0.0);
  CHECK(omni.time_overhead == doctest::Approx(omni.cell_rate * cfg.mobility.sweep_time_s));
  const auto mm = time_overhead(cfg, 3, u, 0.1);
  CHECK(mm.time_overhead == doctest::Approx(mm.beam_rate * cfg.mobility.align_time_s +
                                            (mm.cell_rate + mm.blockage_rate) * cfg.mobility.sweep_time_s));
  const auto still = time_overhead(cfg, 3, 0.0);
  CHECK(still.time_overhead == 0.0);
  CHECK(ase(still.time_overhead, 1e9) == 1e9);
  CHECK(ase(1.2, 1e9) == 0.0);
}

TEST_CASE("overhead grows with speed and density") {
  auto cfg = default_config();
  cfg.mobility.align_time_s = cfg.mobility.sweep_time_s = 1.0;
  for (std::size_t k = 1; k <= 3; ++k) {
    double prev_u = -1.0;
    for (double kmh : {0.0, 20.0, 40.0, 60.0, 80.0}) {
      double prev_l = -1.0;
      for (double scale : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        auto c = cfg;
        c.tiers[k - 1].density_per_km2 *= scale;
        const double t = time_overhead(c, k, units::kmh_to_kms(kmh), 0.1).time_overhead;
        if (kmh > 0) CHECK(t > prev_l);
        prev_l = t;
      }
      const double t = time_overhead(cfg, k, units::kmh_to_kms(kmh), 0.1).time_overhead;
      CHECK(t >= prev_u);
      prev_u = t;
    }
    const auto fast = time_overhead(cfg, k, units::kmh_to_kms(1000.0), 0.1);
    if (k == 3) CHECK(fast.saturated);
  }
}

TEST_CASE("overhead CSV") {
  std::ostringstream os;
  write_overhead_csv(os, {{10.0, time_overhead(default_config(), 2, units::kmh_to_kms(10.0)), 1.0}});
  CHECK(os.str().rfind("u_kmh,tier,delta_r,delta_a,delta_b,t_ho,ase_bps\n", 0) == 0);
}
