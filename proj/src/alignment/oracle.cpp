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

#include "scenesplat/alignment/oracle.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace scenesplat
{

std::string_view location_sector(double bearing)
{
  static constexpr std::array<std::pair<std::string_view, double>, 8> kSectors{{
    {proto::kFront, 0.0},
    {proto::kFrontLeft, 45.0},
    {proto::kLeft, 90.0},
    {proto::kRearLeft, 135.0},
    {proto::kBehind, 180.0},
    {proto::kRearRight, -135.0},
    {proto::kRight, -90.0},
    {proto::kFrontRight, -45.0},
  }};
  const double deg = rad2deg(normalize_angle(bearing));
  for (const auto & [name, center] : kSectors) {
    double off = std::fmod(deg - center + 540.0, 360.0) - 180.0;
    if (std::abs(off) <= kSectorHalfWidthDeg) {
      return name;
    }
  }
  return proto::kFront;  // unreachable for finite input
}

std::string_view motion_rule(const KinematicFeatures & f, AgentKind kind)
{
  if (kind == AgentKind::Pedestrian) {
    if (f.mean_speed < kMovingSpeed) {
      return proto::kStanding;
    }
    if (f.initial_speed > kPedestrianWalkSpeed && f.final_speed < kPedestrianRestSpeed) {
      return proto::kStopping;
    }
    // net displacement in the ego frame
    const double lon = std::cos(f.displacement_bearing) * f.straightness * f.path_length;
    const double lat = std::sin(f.displacement_bearing) * f.straightness * f.path_length;
    if (std::abs(lat) > std::abs(lon) && std::abs(lat) >= kCrossingMinLateral) {
      // decreasing lateral coordinate = moving from the ego's left to its right
      return lat < 0.0 ? proto::kCrossingLeftToRight : proto::kCrossingRightToLeft;
    }
    return proto::kWalkingStraight;
  }

  if (f.mean_speed < kMovingSpeed) {
    return proto::kStationary;
  }
  const double turn = rad2deg(f.net_heading_change);
  if (turn >= kTurnMinDeg && turn <= kTurnMaxDeg) {
    return proto::kTurnLeft;
  }
  if (turn >= -kTurnMaxDeg && turn <= -kTurnMinDeg) {
    return proto::kTurnRight;
  }
  if (std::abs(turn) > kUTurnMinDeg) {
    return proto::kUTurn;
  }
  if (f.initial_speed > kVehicleCruiseSpeed && f.final_speed < kVehicleRestSpeed) {
    return proto::kStopping;
  }
  if (f.final_speed > kVehicleCruiseSpeed && f.initial_speed < kVehicleRestSpeed) {
    return proto::kStarting;
  }
  return proto::kStraight;
}

OracleLabel oracle_label(const KinematicFeatures & f, AgentKind kind)
{
  return {motion_rule(f, kind), location_sector(f.mean_position_bearing)};
}

OracleLabel oracle_label(
  const Trajectory & traj, const Trajectory & ego_traj, AgentKind kind,
  std::optional<TimeWindow> window)
{
  return oracle_label(extract_features(traj, ego_traj, window), kind);
}

AlignmentLabel to_indices(const OracleLabel & label, const Codebooks & books, AgentKind kind)
{
  return {books.motion_for(kind).require(label.motion), books.location.require(label.location)};
}

}  // namespace scenesplat
