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

#ifndef SCENESPLAT__EDIT__COMMAND_HPP_
#define SCENESPLAT__EDIT__COMMAND_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "scenesplat/scene/geometry.hpp"

namespace scenesplat
{

enum class EditTask { Add, Remove, Replace, Modify };
enum class GroupSelector { AllMovingVehicles, AllMovingPedestrians, AllStaticObjects };
enum class Action {
  GoStraight,
  TurnLeft,
  TurnRight,
  Stop,
  Accelerate,
  Decelerate,
  Follow,
  StaticPlace,
  Reverse,
};

std::string_view to_string(EditTask task);
std::string_view to_string(GroupSelector group);
std::string_view to_string(Action action);
std::optional<EditTask> parse_edit_task(std::string_view text);
std::optional<GroupSelector> parse_group_selector(std::string_view text);
std::optional<Action> parse_action(std::string_view text);

struct AssetParams
{
  std::string query;
  double scale{1.0};
  double rotation_deg{0.0};
  Vec2 offset;  // (longitudinal +forward, lateral +left) in the anchor frame, meters

  friend bool operator==(const AssetParams &, const AssetParams &) = default;
};

struct ActionParams
{
  Action action{Action::GoStraight};
  std::optional<double> speed;              // m/s
  std::optional<double> relative_distance;  // m
  std::optional<Vec2> end_position;

  friend bool operator==(const ActionParams &, const ActionParams &) = default;
};

struct EditCommand
{
  EditTask task{EditTask::Add};
  std::optional<std::string> target_query;
  std::optional<std::string> anchor_query;
  std::optional<GroupSelector> group;
  std::optional<AssetParams> asset;
  std::optional<ActionParams> action;
  std::optional<double> start_time;     // s
  std::optional<Vec2> position;         // explicit placement, world frame
  std::optional<double> direction_deg;  // explicit heading, world frame

  friend bool operator==(const EditCommand &, const EditCommand &) = default;
};

/// Line grammar:
///
///   <task> [target="..."] [anchor="..."] [group=<id>] [asset="..."]
///          [action=<id>] [speed=<f>] [start_time=<f>]
///          [offset=<behind|ahead|left|right>:<f>[,...]] [at=<x>,<y>]
///          [to=<x>,<y>] [direction=<deg>] [scale=<f>] [rotation=<deg>]
///          [distance=<f>]
///
/// Tasks, keys, and identifiers are case-insensitive; quoted strings are
/// kept verbatim (\" and \\ escape). Numbers are plain decimals. Throws
/// SyntaxError (with a 1-based column) on malformed input and Constraint
/// naming the violated rule when the fields do not fit the task.
EditCommand parse_command(std::string_view text);

/// Canonical line for a command; parse_command(format_command(c)) == c.
std::string format_command(const EditCommand & cmd);

/// Throws Constraint when `cmd` breaks a task rule.
void validate_command(const EditCommand & cmd);

/// Shortest decimal (no exponent) that parses back to `value`.
std::string format_decimal(double value);

}  // namespace scenesplat

#endif  // SCENESPLAT__EDIT__COMMAND_HPP_
