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


#pragma once

// Hot loops of the Monte Carlo simulator. Every kernel has a portable scalar
// reference and an AVX2 variant; the variant is picked once at startup from
// CPUID and can be forced with HETNET_SIMD=scalar|avx2.

#include <cstddef>
#include <span>

namespace hetnet::simd {

enum class Isa { scalar, avx2 };

struct Nearest {
  std::size_t index;  // == size of the input when it was empty
  double dist2;
};

/// Best ISA supported by this CPU (ignores the environment override).
Isa detected_isa();
/// ISA the dispatching entry points currently use.
Isa active_isa();
/// Forces the dispatching entry points onto `isa`; falls back to scalar when
/// the CPU lacks support. Returns the ISA actually selected.
Isa set_isa(Isa isa);
const char* isa_name(Isa isa);

// Dispatching entry points.

/// Index of the point closest to (qx, qy); ties resolve to the lowest index.
Nearest nearest(std::span<const double> xs, std::span<const double> ys, double qx, double qy);
void squared_distances(std::span<const double> xs, std::span<const double> ys, double qx,
                       double qy, std::span<double> out);
/// Σ weight_i / d2_i^half_exponent, i.e. a power-law sum for the even
/// exponent a = 2·half_exponent. Entries with weight 0 are skipped.
double inverse_power_sum(std::span<const double> weights, std::span<const double> d2,
                         int half_exponent);
/// Number of entries with d2 < radius2.
std::size_t count_within(std::span<const double> d2, double radius2);

namespace scalar {
Nearest nearest(std::span<const double> xs, std::span<const double> ys, double qx, double qy);
void squared_distances(std::span<const double> xs, std::span<const double> ys, double qx,
                       double qy, std::span<double> out);
double inverse_power_sum(std::span<const double> weights, std::span<const double> d2,
                         int half_exponent);
std::size_t count_within(std::span<const double> d2, double radius2);
}  // namespace scalar

#if defined(HETNET_HAVE_AVX2)
namespace avx2 {
Nearest nearest(std::span<const double> xs, std::span<const double> ys, double qx, double qy);
void squared_distances(std::span<const double> xs, std::span<const double> ys, double qx,
                       double qy, std::span<double> out);
double inverse_power_sum(std::span<const double> weights, std::span<const double> d2,
                         int half_exponent);
std::size_t count_within(std::span<const double> d2, double radius2);
}  // namespace avx2
#endif

}  // namespace hetnet::simd
