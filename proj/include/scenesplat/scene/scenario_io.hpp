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

#ifndef SCENESPLAT__SCENE__SCENARIO_IO_HPP_
#define SCENESPLAT__SCENE__SCENARIO_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "scenesplat/common/json_writer.hpp"
#include "scenesplat/scene/scenario.hpp"

namespace scenesplat
{

inline constexpr int kScenarioFormatVersion = 1;
inline constexpr int kScenarioDigits = 9;

// Scenario document layout (UTF-8 JSON):
//
//   format: 1
//   meta:   {timestep, horizon, seed}
//   map:    {lanes: [{id, centerline: [[x, y]...], width, successors}],
//            crosswalks: [[[x, y]...]], drivable_area: [[[x, y]...]]}
//   agents: [{id, kind, dims: [length, width, height], appearance_caption,
//             is_ego, track: [[t, x, y, heading, speed, valid]...]}]
//
// Numbers carry 9 significant digits, so serialize(parse(text)) == text for
// any text produced by serialize_scenario.

std::string serialize_scenario(const Scenario & scenario);
Scenario parse_scenario(std::string_view text);

Scenario load_scenario(const std::filesystem::path & path);
void save_scenario(const Scenario & scenario, const std::filesystem::path & path);

/// Copy with every number rounded to the on-disk precision.
Scenario quantized(const Scenario & scenario);

// Building blocks shared with other documents.
void write_trajectory(JsonWriter & w, const Trajectory & traj);
Trajectory read_trajectory(const nlohmann::json & track, double timestep);
void write_map(JsonWriter & w, const MapModel & map);
MapModel read_map(const nlohmann::json & j);

std::string read_text_file(const std::filesystem::path & path);
void write_text_file(const std::filesystem::path & path, std::string_view text);

}  // namespace scenesplat

#endif  // SCENESPLAT__SCENE__SCENARIO_IO_HPP_
