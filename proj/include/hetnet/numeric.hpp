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

#include <functional>
#include <limits>

namespace hetnet::numeric {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // Kronrod error estimate
};

/// Adaptive Gauss-Kronrod over [a, b]; b may be +inf. Throws NumericError
/// when the error estimate stays above `rel_tol` by more than a safety factor.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, double abs_tol = 0.0);

/// Single 15-point Kronrod pass over [a, b] (b may be +inf) for smooth,
/// cheap inner integrals; same failure policy as integrate().
QuadResult integrate_light(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, double abs_tol = 0.0);

/// ∫_a^∞ f, split at `a + scale` so the finite head is resolved separately
/// from the mapped tail.
QuadResult integrate_tail(const std::function<double(double)>& f, double a, double scale,
                          double rel_tol, double abs_tol = 0.0);

/// Sine integral Si(x) = ∫_0^x sin t / t dt.
double sine_integral(double x);
/// Entire cosine integral Cin(x) = ∫_0^x (1 - cos t) / t dt = γ + ln x - Ci(x).
double entire_cosine_integral(double x);

}  // namespace hetnet::numeric
