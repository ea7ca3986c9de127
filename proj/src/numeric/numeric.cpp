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


#include "hetnet/numeric.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "hetnet/core.hpp"

namespace hetnet::numeric {

namespace {

constexpr unsigned kMaxDepth = 18;
// Kronrod estimates are pessimistic; only a gross miss is treated as failure.
constexpr double kFailFactor = 1e4;

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, double abs_tol) {
  if (a == b) return {};
  double err = 0.0;
  double l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, kMaxDepth, rel_tol, &err, &l1);
  if (!std::isfinite(v)) throw NumericError("quadrature produced a non-finite value", err);
  if (err > kFailFactor * (rel_tol * l1 + abs_tol) && err > 1e-300) {
    throw NumericError("quadrature did not converge on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]",
                       err);
  }
  return {v, err};
}

QuadResult integrate_light(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, double abs_tol) {
  if (a == b) return {};
  double err = 0.0;
  double l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, kMaxDepth, rel_tol, &err, &l1);
  if (!std::isfinite(v)) throw NumericError("quadrature produced a non-finite value", err);
  if (err > kFailFactor * (rel_tol * l1 + abs_tol) && err > 1e-300)
    throw NumericError("quadrature did not converge", err);
  return {v, err};
}

QuadResult integrate_tail(const std::function<double(double)>& f, double a, double scale,
                          double rel_tol, double abs_tol) {
  const auto head = integrate(f, a, a + scale, rel_tol, abs_tol);
  const auto tail = integrate(f, a + scale, std::numeric_limits<double>::infinity(), rel_tol,
                              abs_tol + rel_tol * std::abs(head.value));
  return {head.value + tail.value, head.error + tail.error};
}

double sine_integral(double x) {
  if (x == 0.0) return 0.0;
  auto sinc = [](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; };
  return integrate(sinc, 0.0, x, 1e-14).value;
}

double entire_cosine_integral(double x) {
  if (x == 0.0) return 0.0;
  auto g = [](double t) {
    // (1 - cos t)/t = 2 sin^2(t/2)/t, which stays accurate near 0.
    if (t == 0.0) return 0.0;
    const double h = std::sin(0.5 * t);
    return 2.0 * h * h / t;
  };
  return integrate(g, 0.0, x, 1e-14).value;
}

}  // namespace hetnet::numeric
