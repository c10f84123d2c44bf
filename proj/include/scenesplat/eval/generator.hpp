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

#ifndef SCENESPLAT__EVAL__GENERATOR_HPP_
#define SCENESPLAT__EVAL__GENERATOR_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "scenesplat/alignment/codebook.hpp"
#include "scenesplat/alignment/training.hpp"
#include "scenesplat/eval/maps.hpp"
#include "scenesplat/scene/scenario.hpp"

namespace scenesplat
{

/// Location sectors in counter-clockwise order starting at the front.
inline constexpr std::array<std::string_view, 8> kSectorNames{
  proto::kFront, proto::kFrontLeft, proto::kLeft, proto::kRearLeft,
  proto::kBehind, proto::kRearRight, proto::kRight, proto::kFrontRight};

/// Ego-frame bearing of a sector center. Throws UnknownLabel.
double sector_center(std::string_view name);

/// Mean of all sample positions.
Vec2 mean_position(const Trajectory & traj);

struct PrototypeCount
{
  AgentKind kind{AgentKind::Vehicle};
  std::string motion;
  int count{0};
};

struct SyntheticSpec
{
  std::uint64_t seed{0};
  std::vector<PrototypeCount> counts;
  MapTemplate map{MapTemplate::FourWayIntersection};
  double jitter{0.0};  // position noise std, meters
  int horizon{kDefaultHorizon};
  double timestep{kDefaultTimestep};
};

/// Prototype names the generator realized for one agent.
struct ConstructedLabel
{
  std::string motion;
  std::string location;

  friend bool operator==(const ConstructedLabel &, const ConstructedLabel &) = default;
};

/// One scenario holding a stationary ego (id 0) and the labeled agent (id 1).
struct CorpusItem
{
  Scenario scenario;
  AgentId agent{1};
  AgentKind kind{AgentKind::Vehicle};
  ConstructedLabel label;
};

/// Everything needed to realize one labeled agent track.
struct AgentRecipe
{
  AgentKind kind{AgentKind::Vehicle};
  std::string motion;
  std::string location;  // ego-relative sector; empty = random
};

/// Deterministic generation. Items appear in spec order, each realizing its
/// motion on the map template with the ego placed so the agent's mean
/// position falls in a random location sector (bearing within 15 degrees of
/// the sector center, range 10-25 m). Throws Incompatible when a prototype
/// cannot be realized on the template (turns and u-turns need the
/// intersection; crossings need a crosswalk), InvalidInput for negative
/// counts or jitter, UnknownLabel for unknown motions.
std::vector<CorpusItem> generate_corpus(const SyntheticSpec & spec);

/// Agent track for one recipe on `map_template`, frames [0, horizon).
/// `ego_heading` receives a heading compatible with the label semantics.
struct RealizedTrack
{
  AgentNode agent;
  std::vector<double> ego_headings;  // admissible ego headings
};
RealizedTrack realize_motion(
  const AgentRecipe & recipe, MapTemplate map_template, int horizon, double timestep,
  std::mt19937_64 & rng);

/// Pose for a stationary ego whose frame puts `target` at `bearing` and
/// `range`.
Pose2 ego_pose_for(Vec2 target, double ego_heading, double bearing, double range);

/// Balanced spec: `per_vehicle` items for each vehicle motion and
/// `per_pedestrian` for each pedestrian motion on the intersection template.
SyntheticSpec balanced_spec(
  std::uint64_t seed, int per_vehicle, int per_pedestrian, double jitter = 0.0);

/// Features and codebook indices for training.
std::vector<LabeledTrajectory> to_training_set(
  const std::vector<CorpusItem> & corpus, const Codebooks & books);

/// Ego used by every generated scenario.
AgentNode make_ego(const Pose2 & pose, int horizon, double timestep);

}  // namespace scenesplat

#endif  // SCENESPLAT__EVAL__GENERATOR_HPP_
