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

#ifndef SCENESPLAT__SCENE__SCENARIO_HPP_
#define SCENESPLAT__SCENE__SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scenesplat/scene/geometry.hpp"

namespace scenesplat
{

inline constexpr double kDefaultTimestep = 0.1;
inline constexpr int kDefaultHorizon = 100;
inline constexpr double kPedestrianFootprint = 0.5;

enum class AgentId : std::uint32_t {};

inline std::uint32_t to_underlying(AgentId id) { return static_cast<std::uint32_t>(id); }

enum class AgentKind { Vehicle, Cyclist, StaticObject, Pedestrian };

/// Rigid scene-graph nodes are everything except pedestrians.
inline bool is_rigid(AgentKind kind) { return kind != AgentKind::Pedestrian; }
inline bool is_vehicle_like(AgentKind kind)
{
  return kind == AgentKind::Vehicle || kind == AgentKind::Cyclist;
}

std::string_view to_string(AgentKind kind);
std::optional<AgentKind> parse_agent_kind(std::string_view text);

struct TrackPoint
{
  double t{0.0};
  Pose2 pose;
  double speed{0.0};
  bool valid{true};

  friend bool operator==(const TrackPoint &, const TrackPoint &) = default;
};

struct Trajectory
{
  std::vector<TrackPoint> points;
  double timestep{kDefaultTimestep};

  bool empty() const { return points.empty(); }
  double start_time() const { return points.front().t; }
  double end_time() const { return points.back().t; }
  std::size_t valid_count() const;

  friend bool operator==(const Trajectory &, const Trajectory &) = default;
};

/// Frame index of time `t` on a grid of step `timestep`.
int frame_of(double t, double timestep);

/// Linear interpolation of position and speed, shortest-arc heading.
/// Throws OutOfRange outside the trajectory span or when a bracketing
/// sample is flagged invalid.
TrackPoint interpolate(const Trajectory & traj, double t);
Pose2 interpolate_pose(const Trajectory & traj, double t);

/// Sample at `t` when it lies on a valid grid point of the trajectory.
std::optional<TrackPoint> sample_at(const Trajectory & traj, double t);

/// Throws InvalidInput naming the violated invariant.
void validate_trajectory(const Trajectory & traj, bool dynamic);

struct AgentNode
{
  AgentId id{};
  AgentKind kind{AgentKind::Vehicle};
  BoxDims footprint;
  double height{1.5};
  Trajectory trajectory;
  std::string appearance_caption;
  bool is_ego{false};

  OrientedBox box_at(const Pose2 & pose) const { return {footprint, pose}; }

  friend bool operator==(const AgentNode &, const AgentNode &) = default;
};

struct Lane
{
  std::uint32_t id{0};
  std::vector<Vec2> centerline;
  double width{3.5};
  std::vector<std::uint32_t> successors;

  friend bool operator==(const Lane &, const Lane &) = default;
};

struct MapModel
{
  std::vector<Lane> lanes;
  std::vector<Polygon> crosswalks;
  std::vector<Polygon> drivable_area;

  friend bool operator==(const MapModel &, const MapModel &) = default;
};

/// True iff `p` lies in any drivable polygon (boundary inclusive).
bool point_in_drivable(Vec2 p, const MapModel & map);

/// Nearest lane to `p` and its local direction there, if the map has lanes.
struct LaneProjection
{
  const Lane * lane{nullptr};
  double distance{0.0};
  double heading{0.0};
};
std::optional<LaneProjection> nearest_lane(Vec2 p, const MapModel & map);

void validate_map(const MapModel & map);

struct Scenario
{
  std::vector<AgentNode> agents;
  MapModel map;
  int horizon{kDefaultHorizon};
  double timestep{kDefaultTimestep};
  std::uint64_t seed{0};

  const AgentNode * find(AgentId id) const;
  AgentNode * find(AgentId id);
  const AgentNode & ego() const;
  AgentId next_id() const;

  friend bool operator==(const Scenario &, const Scenario &) = default;
};

/// Throws InvalidInput naming the violated scenario invariant.
void validate_scenario(const Scenario & scenario);

}  // namespace scenesplat

#endif  // SCENESPLAT__SCENE__SCENARIO_HPP_
