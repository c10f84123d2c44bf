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

#ifndef SCENESPLAT__EDIT__EDIT_ENGINE_HPP_
#define SCENESPLAT__EDIT__EDIT_ENGINE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "scenesplat/edit/assets.hpp"
#include "scenesplat/edit/command.hpp"
#include "scenesplat/edit/motion.hpp"
#include "scenesplat/query/object_query.hpp"

namespace scenesplat
{

struct EditConfig
{
  QueryWeights query;
  MotionDefaults motion;
  double moving_speed{0.5};  // mean speed that makes an agent "moving"
};

struct EditModels
{
  QueryModels query;
  const AssetBank & bank;
};

/// Planned trajectory of an edited or inserted agent; feeds refinement.
struct EditedAgent
{
  AgentId id{};
  Trajectory initial_trajectory;  // tau_edit, from the edit start frame on
  int start_frame{0};
};

struct QueryTrace
{
  std::string role;  // "target" or "anchor"
  std::string text;
  QueryResult result;
};

struct EditResult
{
  Scenario scenario;
  std::vector<EditedAgent> edited;
  std::vector<AgentId> removed;
  std::vector<QueryTrace> queries;
  std::optional<std::string> asset_id;
  double asset_score{0.0};
  std::vector<std::string> warnings;
  std::vector<std::string> log;

  std::vector<AgentId> edited_ids() const;
};

/// True when the agent's mean speed over valid samples reaches `threshold`.
bool is_moving(const AgentNode & agent, double threshold = 0.5);

/// Apply one command to a copy of `scene`. Remove deletes the target or the
/// group; Replace swaps footprint, height, kind, and caption (dims times
/// scale) and keeps the track; Modify keeps samples before start_time and
/// appends the synthesized motion; Add inserts a new agent at the anchor
/// offset or the explicit position. Throws QueryResolution when a query
/// finds no candidate, EditInvariant when the edited scene is invalid, and
/// the motion/asset errors of the helpers.
EditResult apply_edit(
  const Scenario & scene, const EditCommand & cmd, const EditModels & models,
  const EditConfig & config = {});

/// Structured summary of an edit (no scenario payload).
std::string serialize_edit_summary(const EditResult & result);

}  // namespace scenesplat

#endif  // SCENESPLAT__EDIT__EDIT_ENGINE_HPP_
