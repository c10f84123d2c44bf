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

#ifndef SCENESPLAT__REFINE__REFINEMENT_HPP_
#define SCENESPLAT__REFINE__REFINEMENT_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scenesplat/edit/edit_engine.hpp"
#include "scenesplat/kernels/execution.hpp"
#include "scenesplat/scene/scenario.hpp"

namespace scenesplat
{

struct RefinementConfig
{
  int horizon_steps{80};
  int history_steps{11};
  double timestep{0.1};
  double min_gap{2.0};            // m, boxes grow by min_gap / 2 per side
  double yield_time_margin{1.5};  // s
  double max_decel{4.0};          // m/s^2
  double max_accel{2.0};          // m/s^2, recovery after yielding
  bool bypass{false};
  int max_passes{10};

  /// Throws InvalidInput naming the offending field.
  void validate() const;
};

enum class ConflictType { VehVeh, VehPed };
enum class Resolution { Yield, Detour, Stop, Unresolved };

std::string_view to_string(ConflictType type);
std::string_view to_string(Resolution resolution);

struct Conflict
{
  AgentId a{};  // a < b
  AgentId b{};
  double t{0.0};
  Vec2 location;
  ConflictType type{ConflictType::VehVeh};
  Resolution resolution{Resolution::Unresolved};

  friend bool operator==(const Conflict &, const Conflict &) = default;
};

struct RolloutResult
{
  std::map<std::uint32_t, Trajectory> refined;  // agent id -> track
  std::vector<Conflict> conflicts;
  bool valid{true};
  int passes{0};
};

/// Agents whose track never moves (static kind, or one repeated pose).
bool is_static_agent(const AgentNode & agent);

/// Earliest overlap per agent pair over frames [0, window end), boxes grown
/// by min_gap / 2 per side (static pairs unpadded, pedestrian pairs
/// skipped). Resolution is left Unresolved.
std::vector<Conflict> predict_conflicts(
  const Scenario & scene, const RefinementConfig & config, Execution exec = Execution::Parallel);

/// First frame after the history window: frames before it are the
/// observed history, frames from it up to the window end are rolled out.
int rollout_end_frame(const Scenario & scene, const RefinementConfig & config);

/// Rollout contract shared by the built-in rule predictor and any external
/// model: (scene with planned tracks, edited agents, config) -> refined
/// tracks and conflicts.
class Predictor
{
public:
  virtual ~Predictor() = default;
  virtual RolloutResult predict(
    const Scenario & scene, const std::vector<EditedAgent> & edited,
    const RefinementConfig & config) const = 0;
};

/// Deterministic priority rollout: edited agents first, then by earliest
/// arrival at a conflict; each agent re-times along its own path
/// (car-following against the occupancy of higher-priority agents, with
/// the yield margin), vehicles may shift laterally around static blockers,
/// and passes repeat with demotions until no conflict remains or
/// max_passes is reached.
class RulePredictor final : public Predictor
{
public:
  RolloutResult predict(
    const Scenario & scene, const std::vector<EditedAgent> & edited,
    const RefinementConfig & config) const override;
};

/// Planned tracks verbatim when bypassing, the predictor's rollout
/// otherwise. Throws MissingHistory naming the first non-edited moving
/// agent without a complete history.
RolloutResult refine(
  const Scenario & scene, const std::vector<EditedAgent> & edited, const RefinementConfig & config,
  const Predictor & predictor = RulePredictor{});

/// Scene with every refined track swapped in.
Scenario apply_rollout(const Scenario & scene, const RolloutResult & result);

struct RolloutFlags
{
  bool collision_veh{false};
  bool collision_ped{false};
  bool offroad{false};
  bool failure{false};
};

struct MotionMetrics
{
  double collision_veh{0.0};
  double collision_ped{0.0};
  double offroad{0.0};
  double failure{0.0};
  std::size_t count{0};
};

/// Raw-footprint overlaps by pair type, vehicle centers off the drivable
/// area, and failure = any of those or an unresolved conflict.
RolloutFlags validate(const RolloutResult & result, const Scenario & scene);

/// Fraction of flagged rollouts per category; zeros for an empty list.
MotionMetrics aggregate(const std::vector<RolloutFlags> & flags);

std::string serialize_rollout(const RolloutResult & result, double timestep);

}  // namespace scenesplat

#endif  // SCENESPLAT__REFINE__REFINEMENT_HPP_
