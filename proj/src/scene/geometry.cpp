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

#include "scenesplat/scene/geometry.hpp"

#include <algorithm>
#include <limits>

#include "scenesplat/common/error.hpp"

namespace scenesplat
{

double normalize_angle(double radians)
{
  double r = std::remainder(radians, 2.0 * kPi);
  if (r <= -kPi) {
    r += 2.0 * kPi;
  }
  return r;
}

Corners canonical_corners(BoxDims dims)
{
  const double hl = 0.5 * dims.length;
  const double hw = 0.5 * dims.width;
  return {Vec2{hl, -hw}, Vec2{hl, hw}, Vec2{-hl, hw}, Vec2{-hl, -hw}};
}

Corners transform_footprint(BoxDims dims, const Pose2 & pose)
{
  if (!(dims.length > 0.0) || !(dims.width > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "footprint dimensions must be positive");
  }
  if (!pose.is_finite()) {
    throw Error(ErrorCode::InvalidInput, "pose has non-finite components");
  }
  Corners out = canonical_corners(dims);
  for (auto & c : out) {
    c = pose.to_world(c);
  }
  return out;
}

namespace
{

// Projection interval of a box onto a unit axis.
struct Interval
{
  double lo;
  double hi;
};

Interval project(const Corners & c, Vec2 axis)
{
  Interval iv{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto & p : c) {
    const double d = p.dot(axis);
    iv.lo = std::min(iv.lo, d);
    iv.hi = std::max(iv.hi, d);
  }
  return iv;
}

}  // namespace

bool boxes_collide(const OrientedBox & a, const OrientedBox & b)
{
  const Corners ca = corners(a);
  const Corners cb = corners(b);
  const std::array<Vec2, 4> axes = {
    unit_vector(a.pose.heading()), unit_vector(a.pose.heading() + 0.5 * kPi),
    unit_vector(b.pose.heading()), unit_vector(b.pose.heading() + 0.5 * kPi)};
  for (const auto & axis : axes) {
    const Interval ia = project(ca, axis);
    const Interval ib = project(cb, axis);
    if (ia.hi < ib.lo || ib.hi < ia.lo) {
      return false;
    }
  }
  return true;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b)
{
  const Vec2 ab = b - a;
  const double len2 = ab.dot(ab);
  if (len2 == 0.0) {
    return (p - a).norm();
  }
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

bool point_in_polygon(Vec2 p, std::span<const Vec2> polygon)
{
  const std::size_t n = polygon.size();
  if (n < 3) {
    return false;
  }
  constexpr double kBoundaryEps = 1e-12;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[j];
    if (point_segment_distance(p, a, b) <= kBoundaryEps) {
      return true;
    }
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) {
        inside = !inside;
      }
    }
  }
  return inside;
}

namespace
{

int orientation(Vec2 a, Vec2 b, Vec2 c)
{
  const double v = (b - a).cross(c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p)
{
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d)
{
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool polygon_is_simple(std::span<const Vec2> polygon)
{
  const std::size_t n = polygon.size();
  if (n < 3) {
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[(i + 1) % n];
    if (a == b) {
      return false;
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      // skip edges sharing a vertex with edge i
      if (j == i + 1 || (i == 0 && j == n - 1)) {
        continue;
      }
      if (segments_intersect(a, b, polygon[j], polygon[(j + 1) % n])) {
        return false;
      }
    }
  }
  return true;
}

Aabb bounding_box(const Corners & c)
{
  Aabb box{c[0], c[0]};
  for (const auto & p : c) {
    box.min.x = std::min(box.min.x, p.x);
    box.min.y = std::min(box.min.y, p.y);
    box.max.x = std::max(box.max.x, p.x);
    box.max.y = std::max(box.max.y, p.y);
  }
  return box;
}

}  // namespace scenesplat
