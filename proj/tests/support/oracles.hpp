// Copyright 2026 The scenesplat Authors
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

// Independent reference computations shared by unit and acceptance tests.

#ifndef SCENESPLAT_TESTS__SUPPORT__ORACLES_HPP_
#define SCENESPLAT_TESTS__SUPPORT__ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "scenesplat/scene/geometry.hpp"

namespace scenesplat::testing
{

/// Point containment by explicit local-frame bounds (no SAT).
inline bool raster_contains(const OrientedBox & box, double x, double y)
{
  const double dx = x - box.pose.x(), dy = y - box.pose.y();
  const double c = std::cos(box.pose.heading()), s = std::sin(box.pose.heading());
  const double lx = c * dx + s * dy, ly = -s * dx + c * dy;
  return std::abs(lx) <= 0.5 * box.dims.length && std::abs(ly) <= 0.5 * box.dims.width;
}

/// Axis-aligned bounds of a box from its rotated half extents.
inline void raster_bounds(const OrientedBox & b, double & x0, double & x1, double & y0, double & y1)
{
  const double c = std::abs(std::cos(b.pose.heading())), s = std::abs(std::sin(b.pose.heading()));
  const double hx = 0.5 * (b.dims.length * c + b.dims.width * s);
  const double hy = 0.5 * (b.dims.length * s + b.dims.width * c);
  x0 = b.pose.x() - hx;
  x1 = b.pose.x() + hx;
  y0 = b.pose.y() - hy;
  y1 = b.pose.y() + hy;
}

/// Overlap test by sampling cell centers over the shared bounding region.
inline bool raster_collide(const OrientedBox & a, const OrientedBox & b, double cell = 0.01)
{
  double ax0, ax1, ay0, ay1, bx0, bx1, by0, by1;
  raster_bounds(a, ax0, ax1, ay0, ay1);
  raster_bounds(b, bx0, bx1, by0, by1);
  const double x0 = std::max(ax0, bx0), x1 = std::min(ax1, bx1);
  const double y0 = std::max(ay0, by0), y1 = std::min(ay1, by1);
  if (x0 > x1 || y0 > y1) {
    return false;
  }
  for (double x = std::floor(x0 / cell) * cell + 0.5 * cell; x <= x1; x += cell) {
    for (double y = std::floor(y0 / cell) * cell + 0.5 * cell; y <= y1; y += cell) {
      if (raster_contains(a, x, y) && raster_contains(b, x, y)) {
        return true;
      }
    }
  }
  return false;
}

/// Random pair of boxes, sizes 0.5-5 m, centers within 6 m of each other.
inline std::pair<OrientedBox, OrientedBox> random_box_pair(std::mt19937_64 & rng)
{
  std::uniform_real_distribution<double> size(0.5, 5.0), pos(-3.0, 3.0), ang(-M_PI, M_PI);
  OrientedBox a{{size(rng), size(rng)}, Pose2(pos(rng), pos(rng), ang(rng))};
  OrientedBox b{{size(rng), size(rng)}, Pose2(pos(rng), pos(rng), ang(rng))};
  return {a, b};
}

/// Signed penetration depth along the separating axes: positive when the
/// boxes overlap, negative for the gap size when they do not. Used to skip
/// pairs within one raster cell of tangency.
inline double sat_depth(const OrientedBox & a, const OrientedBox & b)
{
  const auto ca = transform_footprint(a.dims, a.pose), cb = transform_footprint(b.dims, b.pose);
  double best = 1e300;
  for (const auto * poly : {&ca, &cb}) {
    for (int i = 0; i < 4; ++i) {
      const Vec2 e = (*poly)[(i + 1) % 4] - (*poly)[i];
      const double n = std::hypot(e.x, e.y);
      const Vec2 axis{-e.y / n, e.x / n};
      double a0 = 1e300, a1 = -1e300, b0 = 1e300, b1 = -1e300;
      for (const auto & p : ca) {
        const double d = p.x * axis.x + p.y * axis.y;
        a0 = std::min(a0, d);
        a1 = std::max(a1, d);
      }
      for (const auto & p : cb) {
        const double d = p.x * axis.x + p.y * axis.y;
        b0 = std::min(b0, d);
        b1 = std::max(b1, d);
      }
      best = std::min(best, std::min(a1, b1) - std::max(a0, b0));
    }
  }
  return best;
}

/// Central difference of f at x along coordinate i.
inline double central_difference(
  const std::function<double(const std::vector<double> &)> & f, std::vector<double> x, std::size_t i,
  double eps)
{
  const double x0 = x[i];
  x[i] = x0 + eps;
  const double fp = f(x);
  x[i] = x0 - eps;
  const double fm = f(x);
  return (fp - fm) / (2.0 * eps);
}

}  // namespace scenesplat::testing

#endif  // SCENESPLAT_TESTS__SUPPORT__ORACLES_HPP_
