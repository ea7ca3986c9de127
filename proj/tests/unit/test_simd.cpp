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
#include <random>
#include <vector>

#include "hetnet/simd.hpp"

using namespace hetnet;

TEST_CASE("SIMD kernels agree with the scalar reference") {
  if (simd::detected_isa() != simd::Isa::avx2) {
    MESSAGE("AVX2 unavailable; equivalence test skipped");
    return;
  }
#if defined(HETNET_HAVE_AVX2)
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 64u, 1023u}) {
    std::vector<double> xs(n), ys(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = pos(rng);
      ys[i] = pos(rng);
      w[i] = (i % 5 == 0) ? 0.0 : std::abs(pos(rng));
    }
    if (n > 8) {  // duplicate points exercise tie-breaking
      xs[n - 1] = xs[2];
      ys[n - 1] = ys[2];
    }
    for (int q = 0; q < 20; ++q) {
      const double qx = pos(rng), qy = pos(rng);
      const auto a = simd::scalar::nearest(xs, ys, qx, qy);
      const auto b = simd::avx2::nearest(xs, ys, qx, qy);
      CHECK(a.index == b.index);
      CHECK(a.dist2 == b.dist2);
    }
    std::vector<double> d_s(n), d_v(n);
    simd::scalar::squared_distances(xs, ys, 0.1, -0.2, d_s);
    simd::avx2::squared_distances(xs, ys, 0.1, -0.2, d_v);
    CHECK(d_s == d_v);
    if (n > 0) d_s[0] = 0.0;  // zero weight on a zero distance must be skipped
    d_v = d_s;
    for (int k : {1, 2, 3}) {
      const double s = simd::scalar::inverse_power_sum(w, d_s, k);
      const double v = simd::avx2::inverse_power_sum(w, d_v, k);
      CHECK(std::isfinite(v));
      CHECK(v == doctest::Approx(s).epsilon(1e-12));
    }
    CHECK(simd::scalar::count_within(d_s, 2.0) == simd::avx2::count_within(d_s, 2.0));
  }
#endif
}

TEST_CASE("dispatch honours forced ISA") {
  const auto before = simd::active_isa();
  CHECK(simd::set_isa(simd::Isa::scalar) == simd::Isa::scalar);
  CHECK(simd::active_isa() == simd::Isa::scalar);
  std::vector<double> xs{1.0, 0.0, 2.0}, ys{0.0, 0.5, 0.0};
  const auto r = simd::nearest(xs, ys, 0.0, 0.0);
  CHECK(r.index == 1);
  CHECK(r.dist2 == doctest::Approx(0.25));
  simd::set_isa(before);
}
