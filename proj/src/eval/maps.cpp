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

#include "scenesplat/eval/maps.hpp"

namespace scenesplat
{

std::string_view to_string(MapTemplate t)
{
  switch (t) {
    case MapTemplate::StraightRoad:
      return "straight-road";
    case MapTemplate::FourWayIntersection:
      return "4-way-intersection";
    case MapTemplate::CrosswalkRoad:
      return "crosswalk-road";
  }
  return "straight-road";
}

std::optional<MapTemplate> parse_map_template(std::string_view text)
{
  for (auto t : {MapTemplate::StraightRoad, MapTemplate::FourWayIntersection, MapTemplate::CrosswalkRoad}) {
    if (text == to_string(t)) {
      return t;
    }
  }
  return std::nullopt;
}

namespace
{

Polygon rect(double x0, double y0, double x1, double y1)
{
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

Lane lane(std::uint32_t id, Vec2 a, Vec2 b) { return {id, {a, b}, kLaneWidth, {}}; }

}  // namespace

MapModel make_map(MapTemplate t)
{
  const double e = kRoadExtent;
  const double h = kRoadHalfWidth;
  const double o = kLaneOffset;
  MapModel map;
  map.lanes.push_back(lane(1, {-e, -o}, {e, -o}));  // eastbound
  map.lanes.push_back(lane(2, {e, o}, {-e, o}));    // westbound
  if (t != MapTemplate::FourWayIntersection) {
    map.drivable_area.push_back(rect(-e, -h, e, h));
    if (t == MapTemplate::CrosswalkRoad) {
      map.crosswalks.push_back(rect(-2.0, -h, 2.0, h));
    }
    return map;
  }

  map.lanes.push_back(lane(3, {o, -e}, {o, e}));  // northbound
  map.lanes.push_back(lane(4, {-o, e}, {-o, -e}));  // southbound
  const double c = h + kCornerChamfer;
  map.drivable_area.push_back({
    {-e, -h}, {-c, -h}, {-h, -c}, {-h, -e}, {h, -e}, {h, -c}, {c, -h}, {e, -h},
    {e, h}, {c, h}, {h, c}, {h, e}, {-h, e}, {-h, c}, {-c, h}, {-e, h},
  });
  const double m = kIntersectionCrosswalkOffset;
  map.crosswalks.push_back(rect(-m - 1.0, -h, -m + 1.0, h));  // west
  map.crosswalks.push_back(rect(m - 1.0, -h, m + 1.0, h));    // east
  map.crosswalks.push_back(rect(-h, -m - 1.0, h, -m + 1.0));  // south
  map.crosswalks.push_back(rect(-h, m - 1.0, h, m + 1.0));    // north
  return map;
}

}  // namespace scenesplat
