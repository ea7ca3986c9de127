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

#include "hetnet/blockage.hpp"
#include "hetnet/numeric.hpp"
#include "hetnet/random.hpp"

using namespace hetnet;

TEST_CASE("LoS probability values") {
  const BlockageParams none(100.0, 0.0, 0.0, PFormula::corrected);
  CHECK(los_probability(0.7, none) == 1.0);
  const BlockageParams bp;
  CHECK(los_probability(0.0, bp) == doctest::Approx(0.99005).epsilon(1e-5));
  CHECK(los_probability(0.5, bp) == doctest::Approx(std::exp(-0.63662 - 0.01)).epsilon(1e-5));
  CHECK(los_probability(0.5, bp) == doctest::Approx(0.52387).epsilon(1e-4));
  CHECK_THROWS_AS(los_probability(-1.0, bp), DomainError);
  CHECK(los_probability_step(0.0, bp) == 1.0);
  CHECK(los_probability_step(2.0 * bp.los_radius(), bp) == 0.0);
  CHECK(los_probability_step(1e9, none) == 1.0);
  double prev = 1.0;
  for (double r = 0.0; r < 3.0; r += 0.1) {
    CHECK(los_probability(r, bp) <= prev);
    prev = los_probability(r, bp);
  }
}

TEST_CASE("field sampling") {
  const BlockageParams bp;
  CHECK(sample_field(bp.with_density(0.0), 1.0, 0.1, SizeDistribution::degenerate, 3)
            .rectangles()
            .empty());
  const auto a = sample_field(bp, 1.0, 0.1, SizeDistribution::degenerate, 42);
  const auto b = sample_field(bp, 1.0, 0.1, SizeDistribution::degenerate, 42);
  REQUIRE(a.rectangles().size() == b.rectangles().size());
  for (std::size_t i = 0; i < a.rectangles().size(); ++i) {
    CHECK(a.rectangles()[i].center.x == b.rectangles()[i].center.x);
    CHECK(a.rectangles()[i].theta == b.rectangles()[i].theta);
  }
  // Poisson mean over a unit-area disk.
  const double radius = 1.0 / std::sqrt(kPi);
  double sum = 0.0;
  const int seeds = 10000;
  for (int s = 0; s < seeds; ++s)
    sum += static_cast<double>(
        sample_field(bp, radius, 0.0, SizeDistribution::degenerate, s).rectangles().size());
  const double mean = sum / seeds;
  CHECK(std::abs(mean - 100.0) < 3.0 * std::sqrt(100.0 / seeds));

  std::ostringstream os;
  a.write_csv(os);
  CHECK(os.str().rfind("cx,cy,len,wid,theta\n", 0) == 0);
}

TEST_CASE("is_los basics") {
  const BlockageField empty({}, 1.0, 0.1, 0);
  CHECK(empty.is_los({0, 0}, {0.9, 0}));
  const BlockageField one({Rectangle{{0.25, 0.0}, 0.02, 0.02, 0.0}}, 1.0, 0.1, 0);
  CHECK_FALSE(one.is_los({0, 0}, {0.5, 0}));
  CHECK(one.is_los({0, 0.05}, {0.5, 0.05}));
  CHECK_FALSE(one.is_los({0.25, 0.0}, {0.25, 0.0}));  // endpoint inside
  CHECK_THROWS_AS(one.is_los({0, 0}, {1.5, 0}), DomainError);
}

TEST_CASE("is_los fraction converges to the LoS probability") {
  const BlockageParams bp;
  const int draws = 100000;
  for (double r : {0.05, 0.1, 0.3, 0.5}) {
    // A few large fields, many independent link placements per field.
    int los = 0;
    const int fields = 50;
    for (int f = 0; f < fields; ++f) {
      const auto field = sample_field(bp, 5.0, default_guard(bp, SizeDistribution::degenerate),
                                      SizeDistribution::degenerate, 1000 + f);
      auto rng = make_rng(f, 0, Stream::mobility);
      for (int i = 0; i < draws / fields; ++i) {
        const double rad = (4.0 - r) * std::sqrt(uniform01(rng));
        const double ang = kTwoPi * uniform01(rng);
        const double dir = kTwoPi * uniform01(rng);
        const Point a{rad * std::cos(ang), rad * std::sin(ang)};
        const Point b{a.x + r * std::cos(dir), a.y + r * std::sin(dir)};
        los += field.is_los(a, b) ? 1 : 0;
      }
    }
    const double frac = static_cast<double>(los) / draws;
    CHECK(std::abs(frac - los_probability(r, bp)) < 0.02);
  }
}

TEST_CASE("swept area formula and exact geometry") {
  CHECK(swept_intersection_area(0.1, 0.0, 0.01, 0.01, 0.3, 0.7) == 0.0);
  CHECK(swept_intersection_area(0.1, 0.01, 0.01, 0.02, 0.0, 0.0) ==
        doctest::Approx(0.02 * 0.01));
  const double f = swept_intersection_area(0.1, 0.01, 0.01, 0.01, kPi / 4, kPi / 2);
  CHECK(f == doctest::Approx(0.5 * 0.1 * 0.01 + 0.01 * 0.01 * (std::sqrt(0.5) + std::sqrt(0.5))));
  // Exact region = triangle + Minkowski boundary terms; with a degenerate
  // (zero-size) rectangle both reduce to the triangle area.
  CHECK(swept_region_area_exact(0.1, 0.01, 0.0, 0.0, 0.0, kPi / 2) ==
        doctest::Approx(0.5 * 0.1 * 0.01).epsilon(1e-12));
  CHECK(swept_region_area_exact(0.1, 0.0, 0.01, 0.01, 0.2, 0.3) == doctest::Approx(0.0));
  // Membership test integrates to the exact area.
  auto rng = make_rng(5, 0, Stream::blockages);
  const Point u0{0, 0}, bs{0.1, 0}, u1{0.01 * std::cos(1.0), 0.01 * std::sin(1.0)};
  const double box = 0.16;
  int in = 0;
  const int n = 400000;
  for (int i = 0; i < n; ++i) {
    Rectangle r{{-0.03 + box * uniform01(rng), -0.05 + 0.1 * uniform01(rng)}, 0.01, 0.01, 0.4};
    in += enters_swept_region(r, u0, u1, bs) ? 1 : 0;
  }
  const double est = box * 0.1 * in / n;
  CHECK(est == doctest::Approx(swept_region_area_exact(0.1, 0.01, 0.01, 0.01, 0.4, 1.0)).epsilon(0.02));
}

TEST_CASE("special-function constants and E[K]") {
  const auto& k = blockage_constants();
  const double gamma = 0.57721566490153286;
  CHECK(k.zeta == doctest::Approx(gamma + std::log(kPi) - 0.07366791204642548).epsilon(1e-12));
  CHECK(k.zeta == doctest::Approx(1.648278).epsilon(1e-6));
  CHECK(k.si_2pi == doctest::Approx(1.4181515761326284).epsilon(1e-12));
  const BlockageParams bp;
  const double u = 10.0 / 3600.0;
  CHECK(expected_blockage_count(0.1, 0.0, bp) == 0.0);
  CHECK(expected_blockage_count(0.1, u, bp) == doctest::Approx(7.914e-3).epsilon(1e-3));
  CHECK(expected_blockage_count(0.1, 2 * u, bp) ==
        doctest::Approx(2 * expected_blockage_count(0.1, u, bp)).epsilon(1e-15));
}
