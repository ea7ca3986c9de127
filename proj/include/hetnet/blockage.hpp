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

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hetnet/core.hpp"

namespace hetnet {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Rectangle {
  Point center;
  double length = 0.0;  // along `theta`
  double width = 0.0;
  double theta = 0.0;   // orientation, radians
};

enum class SizeDistribution { degenerate, exponential };

/// One realization of the rectangle process. Centers cover a disk of radius
/// safe_radius + guard; LoS queries are only valid inside safe_radius.
class BlockageField {
 public:
  BlockageField() = default;
  BlockageField(std::vector<Rectangle> rects, double safe_radius_km, double guard_km,
                std::uint64_t seed);

  const std::vector<Rectangle>& rectangles() const noexcept { return rects_; }
  double safe_radius() const noexcept { return safe_radius_; }
  double outer_radius() const noexcept { return safe_radius_ + guard_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// True iff the closed segment a-b meets no rectangle. Throws DomainError
  /// when an endpoint lies outside the safe radius.
  bool is_los(Point a, Point b) const;

  /// `cx,cy,len,wid,theta` per rectangle, km and radians.
  void write_csv(std::ostream& os) const;

 private:
  void build_grid();
  bool hits(const Rectangle& r, Point a, Point b) const;

  std::vector<Rectangle> rects_;
  double safe_radius_ = 0.0;
  double guard_ = 0.0;
  std::uint64_t seed_ = 0;
  // Uniform bucket grid over the bounding square of the generation disk.
  double cell_ = 1.0;
  double origin_ = 0.0;
  int cells_ = 0;
  std::vector<std::uint32_t> cell_start_;
  std::vector<std::uint32_t> cell_items_;
};

/// exp(-β·r - p). Throws DomainError for r < 0.
double los_probability(double r_km, const BlockageParams& bp);
/// 1 for r < R_B, else 0.
double los_probability_step(double r_km, const BlockageParams& bp);

/// Poisson(λ_b·area) rectangles with uniform centers and orientations in a
/// disk of radius safe_radius + guard.
BlockageField sample_field(const BlockageParams& bp, double safe_radius_km, double guard_km,
                           SizeDistribution sizes, std::uint64_t seed);
/// Guard needed so every rectangle that can touch the safe disk is sampled
/// (exact for degenerate sizes).
double default_guard(const BlockageParams& bp, SizeDistribution sizes);

inline bool is_los(Point a, Point b, const BlockageField& field) { return field.is_los(a, b); }

/// Closed-form area (km^2) of the region where a new blockage center must
/// fall while the user moves `displacement_km` at angle `motion_angle` to the
/// link, for a rectangle at orientation `theta` relative to the link.
double swept_intersection_area(double link_km, double displacement_km, double length_km,
                               double width_km, double theta, double motion_angle);

/// Exact area of the same region: centers whose rectangle meets the triangle
/// swept by the link but not the initial link.
double swept_region_area_exact(double link_km, double displacement_km, double length_km,
                               double width_km, double theta, double motion_angle);

/// True iff a rectangle touches the triangle swept by a link from `user0` to
/// `bs` while the user moves to `user1`, but not the initial link.
bool enters_swept_region(const Rectangle& rect, Point user0, Point user1, Point bs);

struct BlockageConstants {
  double zeta;    // γ + ln π − Ci(π) = Cin(π)
  double si_2pi;  // Si(2π)
};
const BlockageConstants& blockage_constants();

/// Mean number of blockages crossing a link of length `link_km` per second
/// for a user moving at `speed_kms`.
double expected_blockage_count(double link_km, double speed_kms, const BlockageParams& bp);

}  // namespace hetnet
