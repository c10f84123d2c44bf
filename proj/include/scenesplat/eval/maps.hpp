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

#ifndef SCENESPLAT__EVAL__MAPS_HPP_
#define SCENESPLAT__EVAL__MAPS_HPP_

#include <optional>
#include <string_view>

#include "scenesplat/scene/scenario.hpp"

namespace scenesplat
{

enum class MapTemplate { StraightRoad, FourWayIntersection, CrosswalkRoad };

std::string_view to_string(MapTemplate t);
std::optional<MapTemplate> parse_map_template(std::string_view text);

// Template geometry. Roads are two 4 m lanes with right-hand traffic,
// spanning +-100 m; the intersection corners are chamfered so 8 m turn
// arcs stay on the drivable area.
inline constexpr double kLaneWidth = 4.0;
inline constexpr double kLaneOffset = 2.0;      // lane centerline distance from the road axis
inline constexpr double kRoadHalfWidth = 4.0;
inline constexpr double kSidewalkOffset = 6.0;  // sidewalk line distance from the road axis
inline constexpr double kRoadExtent = 100.0;
inline constexpr double kCornerChamfer = 8.0;
inline constexpr double kIntersectionCrosswalkOffset = 6.0;  // crosswalk center from the junction center

MapModel make_map(MapTemplate t);

}  // namespace scenesplat

#endif  // SCENESPLAT__EVAL__MAPS_HPP_
