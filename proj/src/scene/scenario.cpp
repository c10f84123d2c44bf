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

#include "scenesplat/scene/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "scenesplat/common/error.hpp"

namespace scenesplat
{

namespace
{
constexpr double kGridTolerance = 1e-6;
}  // namespace

std::string_view to_string(AgentKind kind)
{
  switch (kind) {
    case AgentKind::Vehicle:
      return "vehicle";
    case AgentKind::Cyclist:
      return "cyclist";
    case AgentKind::StaticObject:
      return "static_object";
    case AgentKind::Pedestrian:
      return "pedestrian";
  }
  return "vehicle";
}

std::optional<AgentKind> parse_agent_kind(std::string_view text)
{
  for (auto kind :
       {AgentKind::Vehicle, AgentKind::Cyclist, AgentKind::StaticObject, AgentKind::Pedestrian}) {
    if (text == to_string(kind)) {
      return kind;
    }
  }
  return std::nullopt;
}

std::size_t Trajectory::valid_count() const
{
  return static_cast<std::size_t>(
    std::count_if(points.begin(), points.end(), [](const TrackPoint & p) { return p.valid; }));
}

int frame_of(double t, double timestep) { return static_cast<int>(std::lround(t / timestep)); }

TrackPoint interpolate(const Trajectory & traj, double t)
{
  if (traj.points.empty() || !std::isfinite(t) || t < traj.start_time() - kGridTolerance ||
      t > traj.end_time() + kGridTolerance) {
    throw Error(ErrorCode::OutOfRange, "time " + std::to_string(t) + " outside trajectory span");
  }
  const auto & pts = traj.points;
  auto upper = std::lower_bound(
    pts.begin(), pts.end(), t, [](const TrackPoint & p, double v) { return p.t < v; });
  if (upper == pts.end()) {
    upper = std::prev(pts.end());
  }
  if (std::abs(upper->t - t) <= kGridTolerance || upper == pts.begin()) {
    if (!upper->valid) {
      throw Error(ErrorCode::OutOfRange, "sample at " + std::to_string(t) + " is invalid");
    }
    return *upper;
  }
  const TrackPoint & a = *std::prev(upper);
  const TrackPoint & b = *upper;
  if (std::abs(a.t - t) <= kGridTolerance) {
    if (!a.valid) {
      throw Error(ErrorCode::OutOfRange, "sample at " + std::to_string(t) + " is invalid");
    }
    return a;
  }
  if (!a.valid || !b.valid) {
    throw Error(ErrorCode::OutOfRange, "interpolation bracket at " + std::to_string(t) +
                                         " contains an invalid sample");
  }
  const double u = (t - a.t) / (b.t - a.t);
  TrackPoint out;
  out.t = t;
  out.pose = Pose2(
    a.pose.x() + u * (b.pose.x() - a.pose.x()), a.pose.y() + u * (b.pose.y() - a.pose.y()),
    a.pose.heading() + u * angle_diff(b.pose.heading(), a.pose.heading()));
  out.speed = a.speed + u * (b.speed - a.speed);
  out.valid = true;
  return out;
}

Pose2 interpolate_pose(const Trajectory & traj, double t) { return interpolate(traj, t).pose; }

std::optional<TrackPoint> sample_at(const Trajectory & traj, double t)
{
  if (traj.points.empty()) {
    return std::nullopt;
  }
  const int k = frame_of(t - traj.start_time(), traj.timestep);
  if (k < 0 || k >= static_cast<int>(traj.points.size())) {
    return std::nullopt;
  }
  const TrackPoint & p = traj.points[static_cast<std::size_t>(k)];
  if (!p.valid || std::abs(p.t - t) > kGridTolerance) {
    return std::nullopt;
  }
  return p;
}

void validate_trajectory(const Trajectory & traj, bool dynamic)
{
  if (!(traj.timestep > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "trajectory timestep must be positive");
  }
  for (std::size_t i = 0; i < traj.points.size(); ++i) {
    const auto & p = traj.points[i];
    if (!std::isfinite(p.t) || !p.pose.is_finite() || !std::isfinite(p.speed)) {
      throw Error(ErrorCode::InvalidInput, "trajectory sample has non-finite fields");
    }
    if (p.speed < 0.0) {
      throw Error(ErrorCode::InvalidInput, "trajectory speed must be non-negative");
    }
    const double steps = p.t / traj.timestep;
    if (std::abs(steps - std::round(steps)) > kGridTolerance) {
      throw Error(ErrorCode::InvalidInput, "sample time is not a multiple of the timestep");
    }
    if (i > 0 && std::abs(p.t - traj.points[i - 1].t - traj.timestep) > kGridTolerance) {
      throw Error(ErrorCode::InvalidInput, "sample times must advance by exactly one timestep");
    }
  }
  if (dynamic && traj.valid_count() < 2) {
    throw Error(ErrorCode::InvalidInput, "dynamic agents need at least two valid samples");
  }
  if (!dynamic && traj.valid_count() < 1) {
    throw Error(ErrorCode::InvalidInput, "agents need at least one valid sample");
  }
}

bool point_in_drivable(Vec2 p, const MapModel & map)
{
  return std::any_of(map.drivable_area.begin(), map.drivable_area.end(), [&](const Polygon & poly) {
    return point_in_polygon(p, poly);
  });
}

std::optional<LaneProjection> nearest_lane(Vec2 p, const MapModel & map)
{
  std::optional<LaneProjection> best;
  for (const auto & lane : map.lanes) {
    for (std::size_t i = 0; i + 1 < lane.centerline.size(); ++i) {
      const Vec2 a = lane.centerline[i];
      const Vec2 b = lane.centerline[i + 1];
      const double d = point_segment_distance(p, a, b);
      if (!best || d < best->distance) {
        const Vec2 dir = b - a;
        best = LaneProjection{&lane, d, std::atan2(dir.y, dir.x)};
      }
    }
  }
  return best;
}

void validate_map(const MapModel & map)
{
  std::set<std::uint32_t> ids;
  for (const auto & lane : map.lanes) {
    if (lane.centerline.size() < 2) {
      throw Error(ErrorCode::InvalidInput, "lane centerline needs at least two points");
    }
    if (!(lane.width > 0.0)) {
      throw Error(ErrorCode::InvalidInput, "lane width must be positive");
    }
    if (!ids.insert(lane.id).second) {
      throw Error(ErrorCode::InvalidInput, "duplicate lane id " + std::to_string(lane.id));
    }
  }
  auto check_polygons = [](const std::vector<Polygon> & polys, const char * what) {
    for (const auto & poly : polys) {
      if (!polygon_is_simple(poly)) {
        throw Error(ErrorCode::InvalidInput, std::string(what) + " polygon is not simple");
      }
    }
  };
  check_polygons(map.crosswalks, "crosswalk");
  check_polygons(map.drivable_area, "drivable");
}

const AgentNode * Scenario::find(AgentId id) const
{
  auto it = std::find_if(agents.begin(), agents.end(), [&](const AgentNode & a) { return a.id == id; });
  return it == agents.end() ? nullptr : &*it;
}

AgentNode * Scenario::find(AgentId id)
{
  auto it = std::find_if(agents.begin(), agents.end(), [&](const AgentNode & a) { return a.id == id; });
  return it == agents.end() ? nullptr : &*it;
}

const AgentNode & Scenario::ego() const
{
  auto it = std::find_if(agents.begin(), agents.end(), [](const AgentNode & a) { return a.is_ego; });
  if (it == agents.end()) {
    throw Error(ErrorCode::InvalidInput, "scenario has no ego agent");
  }
  return *it;
}

AgentId Scenario::next_id() const
{
  std::uint32_t max_id = 0;
  for (const auto & a : agents) {
    max_id = std::max(max_id, to_underlying(a.id));
  }
  return AgentId{max_id + 1};
}

void validate_scenario(const Scenario & s)
{
  if (!(s.timestep > 0.0) || s.horizon <= 0) {
    throw Error(ErrorCode::InvalidInput, "timestep and horizon must be positive");
  }
  validate_map(s.map);
  std::set<std::uint32_t> ids;
  int egos = 0;
  const double span = s.horizon * s.timestep;
  for (const auto & a : s.agents) {
    if (!ids.insert(to_underlying(a.id)).second) {
      throw Error(ErrorCode::InvalidInput, "duplicate agent id " + std::to_string(to_underlying(a.id)));
    }
    if (!(a.footprint.length > 0.0) || !(a.footprint.width > 0.0) || !(a.height > 0.0)) {
      throw Error(ErrorCode::InvalidInput, "footprint dimensions must be positive");
    }
    if (a.is_ego) {
      ++egos;
    }
    if (std::abs(a.trajectory.timestep - s.timestep) > 1e-12) {
      throw Error(ErrorCode::InvalidInput, "agent timestep differs from scenario timestep");
    }
    validate_trajectory(a.trajectory, a.kind != AgentKind::StaticObject);
    if (a.trajectory.start_time() < -kGridTolerance || a.trajectory.end_time() > span + kGridTolerance) {
      throw Error(ErrorCode::InvalidInput, "trajectory of agent " +
                                             std::to_string(to_underlying(a.id)) +
                                             " exceeds the scenario horizon");
    }
  }
  if (egos != 1) {
    throw Error(ErrorCode::InvalidInput, "exactly one agent must be flagged ego");
  }
}

}  // namespace scenesplat
