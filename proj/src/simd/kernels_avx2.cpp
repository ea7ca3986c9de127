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


// Built with -mavx2 -ffp-contract=off: distances must round exactly like the
// scalar reference so nearest-point results are bit-identical.

#include <immintrin.h>

#include <limits>

#include "hetnet/simd.hpp"

namespace hetnet::simd::avx2 {

Nearest nearest(std::span<const double> xs, std::span<const double> ys, double qx, double qy) {
  const std::size_t n = xs.size();
  if (n == 0) return {0, 0.0};
  const __m256d vqx = _mm256_set1_pd(qx);
  const __m256d vqy = _mm256_set1_pd(qy);
  __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d best_idx = _mm256_set1_pd(-1.0);
  __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  const __m256d four = _mm256_set1_pd(4.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs.data() + i), vqx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys.data() + i), vqy);
    const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const __m256d lt = _mm256_cmp_pd(d2, best, _CMP_LT_OQ);
    best = _mm256_blendv_pd(best, d2, lt);
    best_idx = _mm256_blendv_pd(best_idx, idx, lt);
    idx = _mm256_add_pd(idx, four);
  }
  alignas(32) double bv[4];
  alignas(32) double bi[4];
  _mm256_store_pd(bv, best);
  _mm256_store_pd(bi, best_idx);
  Nearest out{n, 0.0};
  for (int lane = 0; lane < 4; ++lane) {
    if (bi[lane] < 0.0) continue;
    const auto li = static_cast<std::size_t>(bi[lane]);
    if (out.index == n || bv[lane] < out.dist2 || (bv[lane] == out.dist2 && li < out.index))
      out = {li, bv[lane]};
  }
  for (; i < n; ++i) {
    const double dx = xs[i] - qx;
    const double dy = ys[i] - qy;
    const double d2 = dx * dx + dy * dy;
    if (out.index == n || d2 < out.dist2) out = {i, d2};
  }
  return out;
}

void squared_distances(std::span<const double> xs, std::span<const double> ys, double qx,
                       double qy, std::span<double> out) {
  const std::size_t n = xs.size();
  const __m256d vqx = _mm256_set1_pd(qx);
  const __m256d vqy = _mm256_set1_pd(qy);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs.data() + i), vqx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys.data() + i), vqy);
    _mm256_storeu_pd(out.data() + i,
                     _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
  }
  for (; i < n; ++i) {
    const double dx = xs[i] - qx;
    const double dy = ys[i] - qy;
    out[i] = dx * dx + dy * dy;
  }
}

double inverse_power_sum(std::span<const double> weights, std::span<const double> d2,
                         int half_exponent) {
  const std::size_t n = d2.size();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d w = _mm256_loadu_pd(weights.data() + i);
    const __m256d r2 = _mm256_loadu_pd(d2.data() + i);
    __m256d p = r2;
    for (int j = 1; j < half_exponent; ++j) p = _mm256_mul_pd(p, r2);
    // Zero weights may sit on zero distances; mask them out before dividing.
    const __m256d live = _mm256_cmp_pd(w, zero, _CMP_NEQ_OQ);
    p = _mm256_blendv_pd(one, p, live);
    acc = _mm256_add_pd(acc, _mm256_and_pd(live, _mm256_div_pd(w, p)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    if (weights[i] == 0.0) continue;
    double p = d2[i];
    for (int j = 1; j < half_exponent; ++j) p *= d2[i];
    sum += weights[i] / p;
  }
  return sum;
}

std::size_t count_within(std::span<const double> d2, double radius2) {
  const std::size_t n = d2.size();
  const __m256d r = _mm256_set1_pd(radius2);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d lt = _mm256_cmp_pd(_mm256_loadu_pd(d2.data() + i), r, _CMP_LT_OQ);
    count += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(lt)));
  }
  for (; i < n; ++i) count += d2[i] < radius2 ? 1 : 0;
  return count;
}

}  // namespace hetnet::simd::avx2
