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

#ifndef SCENESPLAT__SCENE__GEOMETRY_HPP_
#define SCENESPLAT__SCENE__GEOMETRY_HPP_

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace scenesplat
{

inline constexpr double kPi = std::numbers::pi;

/// Wrap an angle into (-pi, pi]. Idempotent.
double normalize_angle(double radians);

/// Signed smallest rotation taking `from` onto `to`, in (-pi, pi].
inline double angle_diff(double to, double from) { return normalize_angle(to - from); }

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

struct Vec2
{
  double x{0.0};
  double y{0.0};

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend bool operator==(const Vec2 &, const Vec2 &) = default;

  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
};

inline Vec2 unit_vector(double heading) { return {std::cos(heading), std::sin(heading)}; }

/// Rotate `v` counter-clockwise by `radians`.
inline Vec2 rotate(Vec2 v, double radians)
{
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Ground-plane pose. The heading is kept normalized to (-pi, pi].
class Pose2
{
public:
  Pose2() = default;
  Pose2(double x, double y, double heading) : x_(x), y_(y), heading_(normalize_angle(heading)) {}
  Pose2(Vec2 p, double heading) : Pose2(p.x, p.y, heading) {}

  double x() const { return x_; }
  double y() const { return y_; }
  double heading() const { return heading_; }
  Vec2 position() const { return {x_, y_}; }

  bool is_finite() const
  {
    return std::isfinite(x_) && std::isfinite(y_) && std::isfinite(heading_);
  }

  /// Map a point from this pose's local frame (+x forward, +y left) to the world.
  Vec2 to_world(Vec2 local) const { return position() + rotate(local, heading_); }
  /// Map a world point into this pose's local frame.
  Vec2 to_local(Vec2 world) const { return rotate(world - position(), -heading_); }

  friend bool operator==(const Pose2 &, const Pose2 &) = default;

private:
  double x_{0.0};
  double y_{0.0};
  double heading_{0.0};
};

/// Footprint extents of a box centered on the agent reference point.
struct BoxDims
{
  double length{0.0};  // along heading
  double width{0.0};

  friend bool operator==(const BoxDims &, const BoxDims &) = default;
};

struct OrientedBox
{
  BoxDims dims;
  Pose2 pose;

  /// Same box grown by `margin` on every side.
  OrientedBox inflated(double margin) const
  {
    return {{dims.length + 2.0 * margin, dims.width + 2.0 * margin}, pose};
  }
};

using Corners = std::array<Vec2, 4>;
using Polygon = std::vector<Vec2>;

/// Corners of the canonical box (centered at the origin, heading +x) in
/// counter-clockwise order starting at the front-right corner.
Corners canonical_corners(BoxDims dims);

/// Rigid transform of a canonical footprint: R(heading) * corner + (x, y).
/// Throws InvalidInput for non-positive dims or non-finite poses.
Corners transform_footprint(BoxDims dims, const Pose2 & pose);

inline Corners corners(const OrientedBox & box) { return transform_footprint(box.dims, box.pose); }

/// Separating-axis overlap test on both boxes' edge normals. Touching
/// boxes count as colliding.
bool boxes_collide(const OrientedBox & a, const OrientedBox & b);

/// Even-odd point-in-polygon; points on the boundary count as inside.
bool point_in_polygon(Vec2 p, std::span<const Vec2> polygon);

/// Distance from `p` to the closed segment [a, b].
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// True when the closed segments [a, b] and [c, d] share at least one point.
bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

/// True when no two non-adjacent edges of the implicitly closed polygon meet.
bool polygon_is_simple(std::span<const Vec2> polygon);

struct Aabb
{
  Vec2 min;
  Vec2 max;

  bool overlaps(const Aabb & o) const
  {
    return min.x <= o.max.x && o.min.x <= max.x && min.y <= o.max.y && o.min.y <= max.y;
  }
};

Aabb bounding_box(const Corners & c);

}  // namespace scenesplat

#endif  // SCENESPLAT__SCENE__GEOMETRY_HPP_
