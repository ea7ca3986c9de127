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


#include "hetnet/blockage.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>

#include "hetnet/numeric.hpp"
#include "hetnet/random.hpp"

namespace hetnet {

namespace {

double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::array<Point, 4> corners(const Rectangle& r) {
  const double c = std::cos(r.theta), s = std::sin(r.theta);
  const double hl = 0.5 * r.length, hw = 0.5 * r.width;
  const Point u{c * hl, s * hl};
  const Point v{-s * hw, c * hw};
  const Point m = r.center;
  return {Point{m.x + u.x + v.x, m.y + u.y + v.y}, Point{m.x - u.x + v.x, m.y - u.y + v.y},
          Point{m.x - u.x - v.x, m.y - u.y - v.y}, Point{m.x + u.x - v.x, m.y + u.y - v.y}};
}

// Area of the convex hull (Andrew's monotone chain).
double hull_area(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(),
            [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k > 0 ? k - 1 : 0);
  double a = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Point p = h[i], q = h[(i + 1) % h.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * std::abs(a);
}

// Separating-axis test for two convex polygons given as vertex lists.
template <std::size_t N, std::size_t M>
bool convex_overlap(const std::array<Point, N>& p, const std::array<Point, M>& q) {
  auto separated_along_edges = [](const auto& a, const auto& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Point e0 = a[i], e1 = a[(i + 1) % a.size()];
      const double nx = -(e1.y - e0.y), ny = e1.x - e0.x;
      if (nx == 0.0 && ny == 0.0) continue;
      double amin = std::numeric_limits<double>::infinity(), amax = -amin;
      double bmin = amin, bmax = -amin;
      for (const Point& v : a) {
        const double d = nx * v.x + ny * v.y;
        amin = std::min(amin, d);
        amax = std::max(amax, d);
      }
      for (const Point& v : b) {
        const double d = nx * v.x + ny * v.y;
        bmin = std::min(bmin, d);
        bmax = std::max(bmax, d);
      }
      if (amax < bmin || bmax < amin) return true;
    }
    return false;
  };
  return !separated_along_edges(p, q) && !separated_along_edges(q, p);
}

}  // namespace

BlockageField::BlockageField(std::vector<Rectangle> rects, double safe_radius_km,
                             double guard_km, std::uint64_t seed)
    : rects_(std::move(rects)), safe_radius_(safe_radius_km), guard_(guard_km), seed_(seed) {
  build_grid();
}

void BlockageField::build_grid() {
  cells_ = 0;
  cell_start_.clear();
  cell_items_.clear();
  if (rects_.empty()) return;
  double max_half_diag = 0.0;
  for (const auto& r : rects_)
    max_half_diag = std::max(max_half_diag, 0.5 * std::hypot(r.length, r.width));
  const double extent = outer_radius() + max_half_diag;
  const double area = 4.0 * extent * extent;
  // About one rectangle per cell, never finer than the largest footprint.
  cell_ = std::max(std::sqrt(area / static_cast<double>(rects_.size())), 2.0 * max_half_diag);
  cells_ = std::clamp(static_cast<int>(std::ceil(2.0 * extent / cell_)), 1, 2048);
  cell_ = 2.0 * extent / cells_;
  origin_ = -extent;

  const auto n = static_cast<std::size_t>(cells_) * static_cast<std::size_t>(cells_);
  std::vector<std::uint32_t> counts(n + 1, 0);
  auto for_each_cell = [&](const Rectangle& r, auto&& fn) {
    const auto c = corners(r);
    double x0 = c[0].x, x1 = c[0].x, y0 = c[0].y, y1 = c[0].y;
    for (const auto& p : c) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    const int i0 = std::clamp(static_cast<int>(std::floor((x0 - origin_) / cell_)), 0, cells_ - 1);
    const int i1 = std::clamp(static_cast<int>(std::floor((x1 - origin_) / cell_)), 0, cells_ - 1);
    const int j0 = std::clamp(static_cast<int>(std::floor((y0 - origin_) / cell_)), 0, cells_ - 1);
    const int j1 = std::clamp(static_cast<int>(std::floor((y1 - origin_) / cell_)), 0, cells_ - 1);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) fn(static_cast<std::size_t>(j) * cells_ + i);
  };
  for (const auto& r : rects_) for_each_cell(r, [&](std::size_t c) { ++counts[c + 1]; });
  for (std::size_t c = 0; c < n; ++c) counts[c + 1] += counts[c];
  cell_start_ = counts;
  cell_items_.resize(counts[n]);
  std::vector<std::uint32_t> fill(counts.begin(), counts.end() - 1);
  for (std::uint32_t k = 0; k < rects_.size(); ++k)
    for_each_cell(rects_[k], [&](std::size_t c) { cell_items_[fill[c]++] = k; });
}

bool BlockageField::hits(const Rectangle& r, Point a, Point b) const {
  // Segment in the rectangle's frame, clipped against the box (Liang-Barsky).
  const double c = std::cos(r.theta), s = std::sin(r.theta);
  const double ax = a.x - r.center.x, ay = a.y - r.center.y;
  const double bx = b.x - r.center.x, by = b.y - r.center.y;
  const double px = c * ax + s * ay, py = -s * ax + c * ay;
  const double dx = c * bx + s * by - px, dy = -s * bx + c * by - py;
  const double hl = 0.5 * r.length, hw = 0.5 * r.width;
  double t0 = 0.0, t1 = 1.0;
  auto clip = [&](double p, double q) {
    if (p == 0.0) return q >= 0.0;
    const double t = q / p;
    if (p < 0.0) {
      if (t > t1) return false;
      t0 = std::max(t0, t);
    } else {
      if (t < t0) return false;
      t1 = std::min(t1, t);
    }
    return true;
  };
  return clip(-dx, px + hl) && clip(dx, hl - px) && clip(-dy, py + hw) && clip(dy, hw - py) &&
         t0 <= t1;
}

bool BlockageField::is_los(Point a, Point b) const {
  const double lim = safe_radius_ * (1.0 + 1e-12);
  if (std::hypot(a.x, a.y) > lim || std::hypot(b.x, b.y) > lim)
    throw DomainError("LoS query outside the guarded field region");
  if (cells_ == 0) return true;

  // Amanatides-Woo traversal of the cells under the segment.
  const double fx = (a.x - origin_) / cell_, fy = (a.y - origin_) / cell_;
  const double gx = (b.x - origin_) / cell_, gy = (b.y - origin_) / cell_;
  int ix = std::clamp(static_cast<int>(std::floor(fx)), 0, cells_ - 1);
  int iy = std::clamp(static_cast<int>(std::floor(fy)), 0, cells_ - 1);
  const int jx = std::clamp(static_cast<int>(std::floor(gx)), 0, cells_ - 1);
  const int jy = std::clamp(static_cast<int>(std::floor(gy)), 0, cells_ - 1);
  const double dx = gx - fx, dy = gy - fy;
  const int sx = dx > 0 ? 1 : -1, sy = dy > 0 ? 1 : -1;
  constexpr double inf = std::numeric_limits<double>::infinity();
  double tmax_x = dx != 0.0 ? ((ix + (dx > 0 ? 1 : 0)) - fx) / dx : inf;
  double tmax_y = dy != 0.0 ? ((iy + (dy > 0 ? 1 : 0)) - fy) / dy : inf;
  const double tdx = dx != 0.0 ? 1.0 / std::abs(dx) : inf;
  const double tdy = dy != 0.0 ? 1.0 / std::abs(dy) : inf;
  int budget = std::abs(jx - ix) + std::abs(jy - iy) + 1;
  while (budget-- > 0) {
    const std::size_t c = static_cast<std::size_t>(iy) * cells_ + ix;
    for (std::uint32_t k = cell_start_[c]; k < cell_start_[c + 1]; ++k)
      if (hits(rects_[cell_items_[k]], a, b)) return false;
    if (ix == jx && iy == jy) break;
    if (tmax_x < tmax_y) {
      ix += sx;
      tmax_x += tdx;
    } else {
      iy += sy;
      tmax_y += tdy;
    }
  }
  return true;
}

void BlockageField::write_csv(std::ostream& os) const {
  os << "cx,cy,len,wid,theta\n";
  const auto old = os.precision(17);
  for (const auto& r : rects_)
    os << r.center.x << ',' << r.center.y << ',' << r.length << ',' << r.width << ','
       << r.theta << '\n';
  os.precision(old);
}

double los_probability(double r_km, const BlockageParams& bp) {
  if (!(r_km >= 0.0)) throw DomainError("LoS probability: negative distance");
  return std::exp(-bp.beta() * r_km - bp.p());
}

double los_probability_step(double r_km, const BlockageParams& bp) {
  if (!(r_km >= 0.0)) throw DomainError("LoS probability: negative distance");
  return r_km < bp.los_radius() ? 1.0 : 0.0;
}

double default_guard(const BlockageParams& bp, SizeDistribution sizes) {
  const double scale = sizes == SizeDistribution::degenerate ? 1.0 : 10.0;
  return 0.5 * scale * std::hypot(bp.mean_length(), bp.mean_width());
}

BlockageField sample_field(const BlockageParams& bp, double safe_radius_km, double guard_km,
                           SizeDistribution sizes, std::uint64_t seed) {
  const double outer = safe_radius_km + guard_km;
  auto rng = make_rng(seed, 0, Stream::blockages);
  std::vector<Rectangle> rects;
  const double mean = bp.density() * kPi * outer * outer;
  if (mean > 0.0) {
    const auto n = std::poisson_distribution<std::size_t>(mean)(rng);
    rects.reserve(n);
    std::exponential_distribution<double> len_exp(1.0 / std::max(bp.mean_length(), 1e-300));
    std::exponential_distribution<double> wid_exp(1.0 / std::max(bp.mean_width(), 1e-300));
    for (std::size_t i = 0; i < n; ++i) {
      const double rad = outer * std::sqrt(uniform01(rng));
      const double ang = kTwoPi * uniform01(rng);
      Rectangle r;
      r.center = {rad * std::cos(ang), rad * std::sin(ang)};
      r.theta = kTwoPi * (1.0 - uniform01(rng));
      if (sizes == SizeDistribution::degenerate) {
        r.length = bp.mean_length();
        r.width = bp.mean_width();
      } else {
        r.length = len_exp(rng);
        r.width = wid_exp(rng);
      }
      rects.push_back(r);
    }
  }
  return BlockageField(std::move(rects), safe_radius_km, guard_km, seed);
}

double swept_intersection_area(double link_km, double displacement_km, double length_km,
                               double width_km, double theta, double motion_angle) {
  const double u = displacement_km;
  return 0.5 * link_km * u * std::abs(std::sin(motion_angle)) +
         width_km * u * std::abs(std::cos(theta - motion_angle)) +
         length_km * u * std::abs(std::sin(theta - motion_angle));
}

double swept_region_area_exact(double link_km, double displacement_km, double length_km,
                               double width_km, double theta, double motion_angle) {
  const Rectangle k{{0.0, 0.0}, length_km, width_km, theta};
  const auto kc = corners(k);
  const Point user0{0.0, 0.0};
  const Point bs{link_km, 0.0};
  const Point user1{displacement_km * std::cos(motion_angle),
                    displacement_km * std::sin(motion_angle)};
  std::vector<Point> swept, initial;
  for (const Point& c : kc) {
    for (const Point& v : {user0, bs, user1}) swept.push_back({v.x + c.x, v.y + c.y});
    for (const Point& v : {user0, bs}) initial.push_back({v.x + c.x, v.y + c.y});
  }
  return hull_area(std::move(swept)) - hull_area(std::move(initial));
}

bool enters_swept_region(const Rectangle& rect, Point user0, Point user1, Point bs) {
  const auto rc = corners(rect);
  const std::array<Point, 3> tri{user0, user1, bs};
  if (!convex_overlap(rc, tri)) return false;
  const std::array<Point, 2> seg{user0, bs};
  return !convex_overlap(rc, seg);
}

const BlockageConstants& blockage_constants() {
  static const BlockageConstants k{numeric::entire_cosine_integral(kPi),
                                   numeric::sine_integral(kTwoPi)};
  return k;
}

double expected_blockage_count(double link_km, double speed_kms, const BlockageParams& bp) {
  if (!(link_km >= 0.0 && speed_kms >= 0.0))
    throw DomainError("blockage count: negative link length or speed");
  const auto& k = blockage_constants();
  return speed_kms * bp.density() / kTwoPi * (link_km * k.zeta + bp.mean_width() * k.si_2pi);
}

}  // namespace hetnet
