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

#include "scenesplat/scene/path.hpp"

#include <cmath>
#include <utility>

#include "scenesplat/common/error.hpp"

namespace scenesplat
{

Pose2 Path::advance(const Pose2 & from, double curvature, double ds)
{
  if (std::abs(curvature) < 1e-12) {
    return {from.position() + ds * unit_vector(from.heading()), from.heading()};
  }
  const double r = 1.0 / curvature;
  const double dpsi = curvature * ds;
  // rotate about the turn center, which sits r to the left of the pose
  const Vec2 center = from.to_world({0.0, r});
  const Vec2 rel = from.position() - center;
  return {center + rotate(rel, dpsi), from.heading() + dpsi};
}

Path & Path::straight(double length)
{
  if (!(length >= 0.0)) {
    throw Error(ErrorCode::InvalidInput, "straight piece needs a non-negative length");
  }
  if (length > 0.0) {
    pieces_.push_back({end_, length_, length, 0.0});
    length_ += length;
    end_ = advance(end_, 0.0, length);
  }
  return *this;
}

Path & Path::arc(double radius, double angle)
{
  if (!(radius > 0.0) || !std::isfinite(angle)) {
    throw Error(ErrorCode::InvalidInput, "arc needs a positive radius and finite angle");
  }
  const double len = radius * std::abs(angle);
  if (len > 0.0) {
    const double k = (angle > 0.0 ? 1.0 : -1.0) / radius;
    pieces_.push_back({end_, length_, len, k});
    length_ += len;
    end_ = advance(end_, k, len);
  }
  return *this;
}

Pose2 Path::pose_at(double s) const
{
  if (pieces_.empty() || s <= 0.0) {
    return advance(start_, 0.0, s);
  }
  if (s >= length_) {
    return advance(end_, 0.0, s - length_);
  }
  // few pieces per path, linear scan is fine
  for (const auto & p : pieces_) {
    if (s <= p.s0 + p.length) {
      return advance(p.start, p.curvature, s - p.s0);
    }
  }
  return end_;
}

std::vector<double> integrate_speeds(std::span<const double> speeds, double timestep, double s0)
{
  std::vector<double> s(speeds.size(), s0);
  for (std::size_t k = 1; k < speeds.size(); ++k) {
    s[k] = s[k - 1] + 0.5 * (speeds[k - 1] + speeds[k]) * timestep;
  }
  return s;
}

namespace
{

template <typename P>
Trajectory follow_any(const P & path, std::span<const double> speeds, double timestep, int first_frame, double s0)
{
  Trajectory traj;
  traj.timestep = timestep;
  const auto s = integrate_speeds(speeds, timestep, s0);
  traj.points.reserve(speeds.size());
  for (std::size_t k = 0; k < speeds.size(); ++k) {
    const double t = static_cast<double>(first_frame + static_cast<int>(k)) * timestep;
    traj.points.push_back({t, path.pose_at(s[k]), std::max(0.0, speeds[k]), true});
  }
  return traj;
}

}  // namespace

Trajectory follow_path(
  const Path & path, std::span<const double> speeds, double timestep, int first_frame, double s0)
{
  return follow_any(path, speeds, timestep, first_frame, s0);
}

Trajectory follow_path(
  const PolylinePath & path, std::span<const double> speeds, double timestep, int first_frame,
  double s0)
{
  return follow_any(path, speeds, timestep, first_frame, s0);
}

PolylinePath::PolylinePath(std::vector<Vec2> points, double fallback_heading)
: points_(std::move(points)), fallback_heading_(fallback_heading)
{
  if (points_.empty()) {
    throw Error(ErrorCode::InvalidInput, "polyline path needs at least one point");
  }
  cumulative_.assign(points_.size(), 0.0);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const double d = (points_[i] - points_[i - 1]).norm();
    cumulative_[i] = cumulative_[i - 1] + d;
    if (d > 0.0) {
      moving_.push_back(i - 1);
    }
  }
}

double PolylinePath::heading_of(std::size_t seg) const
{
  const Vec2 d = points_[seg + 1] - points_[seg];
  return std::atan2(d.y, d.x);
}

std::size_t PolylinePath::segment_at(double s) const
{
  // last moving segment whose start is at or before s
  std::size_t lo = 0;
  std::size_t hi = moving_.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (cumulative_[moving_[mid]] <= s) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return moving_[lo];
}

Pose2 PolylinePath::pose_at(double s) const
{
  if (moving_.empty()) {
    return {points_.front() + s * unit_vector(fallback_heading_), fallback_heading_};
  }
  const std::size_t seg = segment_at(s);
  const double h = heading_of(seg);
  const double s0 = cumulative_[seg];
  const Vec2 a = points_[seg];
  if (s == s0) {
    return {a, h};
  }
  const Vec2 b = points_[seg + 1];
  const double len = cumulative_[seg + 1] - s0;
  const double u = (s - s0) / len;
  return {a + u * (b - a), h};
}

Pose2 PolylinePath::offset_pose_at(double s, double lateral) const
{
  const Pose2 p = pose_at(s);
  return {p.to_world({0.0, lateral}), p.heading()};
}

Trajectory stationary_track(const Pose2 & pose, int frames, double timestep, int first_frame)
{
  Trajectory traj;
  traj.timestep = timestep;
  for (int k = 0; k < frames; ++k) {
    traj.points.push_back({(first_frame + k) * timestep, pose, 0.0, true});
  }
  return traj;
}

}  // namespace scenesplat
