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

#ifndef SCENESPLAT__EDIT__MOTION_HPP_
#define SCENESPLAT__EDIT__MOTION_HPP_

#include <optional>
#include <string>
#include <vector>

#include "scenesplat/edit/command.hpp"
#include "scenesplat/scene/path.hpp"
#include "scenesplat/scene/scenario.hpp"

namespace scenesplat
{

struct MotionDefaults
{
  double turn_radius{8.0};    // m
  double decel{3.0};          // m/s^2
  double accel{2.0};          // m/s^2
  double speed{5.0};          // m/s, insertion speed
  double speed_change{3.0};   // m/s, accelerate/decelerate without an explicit speed
  double follow_gap{10.0};    // m, center to center along the leader's path
  double reverse_speed{2.0};  // m/s
};

/// Where and how fast the synthesized motion begins.
struct MotionStart
{
  Pose2 pose;
  double speed{0.0};
  int frame{0};
};

struct SynthesizedMotion
{
  Trajectory trajectory;
  std::vector<std::string> warnings;
};

/// Anchor pose at `t` composed with `offset` (longitudinal forward, lateral
/// left) in the anchor frame; heading is the anchor heading plus
/// `rotation`. Throws NotFound for an unknown anchor and OutOfRange when the
/// anchor has no valid pose at `t`.
Pose2 resolve_anchor_position(
  const Scenario & scene, AgentId anchor, Vec2 offset, double t, double rotation = 0.0);

/// Arc-length to travel straight before a 90 degree turn of `radius` ends
/// on the nearest crossing lane that runs toward the turn side.
std::optional<double> turn_entry_distance(
  const MapModel & map, const Pose2 & start, bool left, double radius);

/// Motion Controller. Frames run from start.frame to the scenario horizon
/// (exclusive) on the scenario timestep. Stop, Accelerate, and Decelerate
/// follow `along` when given (the agent's own path), otherwise a straight
/// line. Follow needs `leader`. Geometry problems (no junction ahead, track
/// leaving the drivable area) are reported as warnings. Throws
/// UnsupportedAction when `kind` cannot perform the action and OutOfRange
/// when start.frame is outside the horizon.
SynthesizedMotion synthesize_trajectory(
  const Scenario & scene, AgentKind kind, const MotionStart & start, const ActionParams & params,
  const MotionDefaults & defaults = {}, const PolylinePath * along = nullptr,
  const Trajectory * leader = nullptr);

}  // namespace scenesplat

#endif  // SCENESPLAT__EDIT__MOTION_HPP_
