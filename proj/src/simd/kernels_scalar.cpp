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


#include "hetnet/simd.hpp"

namespace hetnet::simd::scalar {

Nearest nearest(std::span<const double> xs, std::span<const double> ys, double qx, double qy) {
  Nearest best{xs.size(), 0.0};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - qx;
    const double dy = ys[i] - qy;
    const double d2 = dx * dx + dy * dy;
    if (best.index == xs.size() || d2 < best.dist2) best = {i, d2};
  }
  return best;
}

void squared_distances(std::span<const double> xs, std::span<const double> ys, double qx,
                       double qy, std::span<double> out) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - qx;
    const double dy = ys[i] - qy;
    out[i] = dx * dx + dy * dy;
  }
}

namespace {
inline double inv_pow(double d2, int k) {
  double p = d2;
  for (int j = 1; j < k; ++j) p *= d2;
  return 1.0 / p;
}
}  // namespace

double inverse_power_sum(std::span<const double> weights, std::span<const double> d2,
                         int half_exponent) {
  double sum = 0.0;
  for (std::size_t i = 0; i < d2.size(); ++i)
    if (weights[i] != 0.0) sum += weights[i] * inv_pow(d2[i], half_exponent);
  return sum;
}

std::size_t count_within(std::span<const double> d2, double radius2) {
  std::size_t n = 0;
  for (double v : d2) n += v < radius2 ? 1 : 0;
  return n;
}

}  // namespace hetnet::simd::scalar
