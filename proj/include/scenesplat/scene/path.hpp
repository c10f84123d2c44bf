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

#ifndef SCENESPLAT__SCENE__PATH_HPP_
#define SCENESPLAT__SCENE__PATH_HPP_

#include <span>
#include <vector>

#include "scenesplat/scene/geometry.hpp"
#include "scenesplat/scene/scenario.hpp"

namespace scenesplat
{

/// Arc-length parameterized chain of straight and constant-curvature pieces.
/// Queries before 0 or past the end extend the first/last tangent.
class Path
{
public:
  explicit Path(const Pose2 & start) : start_(start), end_(start) {}

  Path & straight(double length);
  /// Signed turn: positive angle turns left (CCW). Radius must be > 0.
  Path & arc(double radius, double angle);

  double length() const { return length_; }
  const Pose2 & start() const { return start_; }
  const Pose2 & end() const { return end_; }
  Pose2 pose_at(double s) const;

private:
  struct Piece
  {
    Pose2 start;
    double s0;
    double length;
    double curvature;  // 1/m, signed
  };

  static Pose2 advance(const Pose2 & from, double curvature, double ds);

  Pose2 start_;
  Pose2 end_;
  double length_{0.0};
  std::vector<Piece> pieces_;
};

/// Piecewise-linear path through recorded positions, parameterized by arc
/// length. Repeated points add no length. Queries outside [0, length]
/// extend the first/last segment; a path without length extends along
/// `fallback_heading`.
class PolylinePath
{
public:
  PolylinePath(std::vector<Vec2> points, double fallback_heading);
  double length() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
  /// Arc length at input vertex `i`.
  double vertex_s(std::size_t i) const { return cumulative_[i]; }
  std::size_t vertex_count() const { return points_.size(); }
  Pose2 pose_at(double s) const;
  /// Pose shifted `lateral` meters to the left of the path at `s`.
  Pose2 offset_pose_at(double s, double lateral) const;

private:
  /// Index of the first vertex of the segment holding `s`.
  std::size_t segment_at(double s) const;
  double heading_of(std::size_t seg) const;

  std::vector<Vec2> points_;
  std::vector<double> cumulative_;
  std::vector<std::size_t> moving_;  // vertices that start a non-zero segment
  double fallback_heading_;
};

/// Arc lengths obtained by trapezoidal integration of per-frame speeds.
std::vector<double> integrate_speeds(std::span<const double> speeds, double timestep, double s0 = 0.0);

/// Track that follows `path` with the given per-frame speeds, frame k at
/// t = (first_frame + k) * timestep.
Trajectory follow_path(
  const Path & path, std::span<const double> speeds, double timestep, int first_frame = 0,
  double s0 = 0.0);

Trajectory follow_path(
  const PolylinePath & path, std::span<const double> speeds, double timestep, int first_frame = 0,
  double s0 = 0.0);

/// Same pose for `frames` frames, speed 0.
Trajectory stationary_track(const Pose2 & pose, int frames, double timestep, int first_frame = 0);

}  // namespace scenesplat

#endif  // SCENESPLAT__SCENE__PATH_HPP_
