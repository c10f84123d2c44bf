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

#ifndef SCENESPLAT__ALIGNMENT__ORACLE_HPP_
#define SCENESPLAT__ALIGNMENT__ORACLE_HPP_

#include <optional>
#include <string_view>

#include "scenesplat/alignment/codebook.hpp"
#include "scenesplat/alignment/features.hpp"
#include "scenesplat/alignment/loss.hpp"

namespace scenesplat
{

/// Prototype names assigned by the rule labeler.
struct OracleLabel
{
  std::string_view motion;
  std::string_view location;

  friend bool operator==(const OracleLabel &, const OracleLabel &) = default;
};

// Rule thresholds.
inline constexpr double kMovingSpeed = 0.5;           // m/s, below = stationary / standing
inline constexpr double kTurnMinDeg = 45.0;
inline constexpr double kTurnMaxDeg = 135.0;
inline constexpr double kUTurnMinDeg = 150.0;
inline constexpr double kVehicleCruiseSpeed = 2.0;   // m/s
inline constexpr double kVehicleRestSpeed = 0.3;     // m/s
inline constexpr double kPedestrianWalkSpeed = 0.8;  // m/s
inline constexpr double kPedestrianRestSpeed = 0.2;  // m/s
inline constexpr double kCrossingMinLateral = 1.0;   // m
inline constexpr double kSectorHalfWidthDeg = 22.5;

/// Sector name for an ego-frame bearing; boundaries go to the earlier
/// sector in the order front, front-left, left, ..., front-right.
std::string_view location_sector(double bearing);

/// Motion name from precomputed features. Vehicle rules apply to every
/// kind except Pedestrian.
std::string_view motion_rule(const KinematicFeatures & f, AgentKind kind);

/// Deterministic rule labeler over extract_features(traj, ego_traj, window).
OracleLabel oracle_label(
  const Trajectory & traj, const Trajectory & ego_traj, AgentKind kind,
  std::optional<TimeWindow> window = std::nullopt);

OracleLabel oracle_label(const KinematicFeatures & f, AgentKind kind);

/// Codebook indices for a label. Throws UnknownLabel.
AlignmentLabel to_indices(const OracleLabel & label, const Codebooks & books, AgentKind kind);

}  // namespace scenesplat

#endif  // SCENESPLAT__ALIGNMENT__ORACLE_HPP_
