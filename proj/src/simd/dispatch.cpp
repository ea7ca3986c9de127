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


#include <atomic>
#include <cstdlib>
#include <string_view>

#include "hetnet/simd.hpp"

namespace hetnet::simd {

namespace {

Isa initial_isa() {
  const Isa best = detected_isa();
  if (const char* env = std::getenv("HETNET_SIMD")) {
    if (std::string_view(env) == "scalar") return Isa::scalar;
  }
  return best;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

Isa detected_isa() {
#if defined(HETNET_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
  return Isa::scalar;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

Isa set_isa(Isa isa) {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2) isa = Isa::scalar;
  current().store(isa, std::memory_order_relaxed);
  return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

#if defined(HETNET_HAVE_AVX2)
#define HETNET_DISPATCH(fn, ...) \
  (active_isa() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define HETNET_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

Nearest nearest(std::span<const double> xs, std::span<const double> ys, double qx, double qy) {
  return HETNET_DISPATCH(nearest, xs, ys, qx, qy);
}

void squared_distances(std::span<const double> xs, std::span<const double> ys, double qx,
                       double qy, std::span<double> out) {
  HETNET_DISPATCH(squared_distances, xs, ys, qx, qy, out);
}

double inverse_power_sum(std::span<const double> weights, std::span<const double> d2,
                         int half_exponent) {
  return HETNET_DISPATCH(inverse_power_sum, weights, d2, half_exponent);
}

std::size_t count_within(std::span<const double> d2, double radius2) {
  return HETNET_DISPATCH(count_within, d2, radius2);
}

}  // namespace hetnet::simd
