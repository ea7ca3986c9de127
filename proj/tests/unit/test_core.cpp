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

#include "hetnet/config_io.hpp"
#include "hetnet/core.hpp"

using namespace hetnet;

namespace {

bool has_error(const ConfigError& e, const std::string& field, const std::string& text) {
  for (const auto& f : e.errors())
    if (f.field == field && f.constraint.find(text) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("default deployment validates") {
  const auto cfg = default_config();
  CHECK(check_config(cfg).empty());
  CHECK(cfg.num_tiers() == 3);
  CHECK(cfg.tier(2).density_per_km2 == 100.0);
  CHECK(units::mw_to_dbm(cfg.tier(1).power_mw) == doctest::Approx(40.0));
  CHECK(cfg.blockage.p() == doctest::Approx(0.01));
  CHECK(cfg.blockage.beta() == doctest::Approx(4.0 / kPi));
  CHECK(cfg.blockage.los_radius() == doctest::Approx(1.10517).epsilon(1e-4));
}

TEST_CASE("main lobe below side lobe is rejected") {
  auto kv = KeyValues{{"tier2.main_lobe_db", "-6"}};
  try {
    build_config(kv);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(has_error(e, "tier2.main_lobe_db", "main lobe gain below side lobe"));
  }
}

TEST_CASE("initial shares off the simplex are rejected") {
  auto kv = KeyValues{{"game.initial_shares", "0.5,0.5,0.1"}};
  try {
    build_config(kv);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(has_error(e, "game.initial_shares", "shares do not sum to 1"));
  }
  CHECK_THROWS_AS(PopulationShares({0.5, 0.5, 0.1}), DomainError);
}

TEST_CASE("main lobe probability") {
  const auto cfg = default_config();
  CHECK(main_lobe_probability(cfg.tier(1)) == 1.0);
  CHECK(main_lobe_probability(cfg.tier(2)) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(main_lobe_probability(cfg.tier(3)) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  for (const auto& t : cfg.tiers) {
    const double pm = main_lobe_probability(t);
    CHECK(pm > 0.0);
    CHECK(pm <= 1.0);
    CHECK(pm + (1.0 - pm) == 1.0);
  }
}

TEST_CASE("dBm round trip") {
  for (double dbm : {-120.0, -30.5, 0.0, 17.3, 46.0}) {
    const double back = units::mw_to_dbm(units::dbm_to_mw(dbm));
    CHECK(std::abs(back - dbm) <= 1e-9 * std::max(1.0, std::abs(dbm)));
  }
}

TEST_CASE("blockage constants re-derive on every change") {
  BlockageParams b;
  for (double d : {0.0, 10.0, 250.0}) {
    for (double l : {0.0, 0.005, 0.03}) {
      const auto c = b.with_density(d).with_length(l).with_width(0.02);
      const double beta = 2.0 * d * (l + 0.02) / kPi;
      const double p = d * l * 0.02;
      CHECK(c.beta() == doctest::Approx(beta).epsilon(1e-12));
      CHECK(c.p() == doctest::Approx(p).epsilon(1e-12));
      if (beta > 0.0)
        CHECK(c.los_radius() == doctest::Approx(std::sqrt(2.0 * std::exp(-p)) / beta).epsilon(1e-12));
      else
        CHECK(std::isinf(c.los_radius()));
    }
  }
  const auto lit = b.with_mode(PFormula::literal);
  CHECK(lit.p() == doctest::Approx(0.01 * 0.01));
}

TEST_CASE("config text round trip and hash") {
  const auto text = R"(
# comment
[tier2]
p_dbm = 33   # inline comment
[game]
cohort_speeds_kmh = 0, 80
cohort_weights = 0.5, 0.5
)";
  auto kv = parse_key_values(text);
  apply_override(kv, "mobility.t_align_ms=1000");
  const auto cfg = build_config(kv);
  CHECK(units::mw_to_dbm(cfg.tier(2).power_mw) == doctest::Approx(33.0));
  CHECK(cfg.game.cohorts.size() == 2);
  CHECK(cfg.mobility.align_time_s == doctest::Approx(1.0));

  const auto again = build_config(parse_key_values(to_config_text(cfg)));
  CHECK(config_hash(again) == config_hash(cfg));
  CHECK(config_hash(cfg) != config_hash(default_config()));

  auto bad = KeyValues{{"tier9.nonsense", "1"}};
  CHECK_THROWS_AS(build_config(bad), ConfigError);
  KeyValues kv2;
  CHECK_THROWS_AS(apply_override(kv2, "novalue"), ConfigError);
}
