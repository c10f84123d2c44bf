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

#include "scenesplat/scene/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include "scenesplat/common/error.hpp"

namespace scenesplat
{

using nlohmann::json;

namespace
{

[[noreturn]] void format_error(const std::string & what)
{
  throw Error(ErrorCode::Format, "scenario document: " + what);
}

const json & require(const json & j, const char * key)
{
  if (!j.is_object() || !j.contains(key)) {
    format_error(std::string("missing key '") + key + "'");
  }
  return j.at(key);
}

double as_number(const json & j, const char * what)
{
  if (!j.is_number()) {
    format_error(std::string(what) + " must be a number");
  }
  return j.get<double>();
}

Vec2 read_point(const json & j)
{
  if (!j.is_array() || j.size() != 2) {
    format_error("points must be [x, y] pairs");
  }
  return {as_number(j[0], "x"), as_number(j[1], "y")};
}

std::vector<Vec2> read_points(const json & j)
{
  if (!j.is_array()) {
    format_error("expected a coordinate array");
  }
  std::vector<Vec2> out;
  out.reserve(j.size());
  for (const auto & p : j) {
    out.push_back(read_point(p));
  }
  return out;
}

void write_points(JsonWriter & w, const std::vector<Vec2> & pts)
{
  w.begin_array(true);
  for (const auto & p : pts) {
    w.begin_array(true).value(p.x).value(p.y).end_array();
  }
  w.end_array();
}

void write_polygons(JsonWriter & w, const std::vector<Polygon> & polys)
{
  w.begin_array();
  for (const auto & poly : polys) {
    write_points(w, poly);
  }
  w.end_array();
}

std::vector<Polygon> read_polygons(const json & j)
{
  if (!j.is_array()) {
    format_error("expected a polygon list");
  }
  std::vector<Polygon> out;
  for (const auto & poly : j) {
    out.push_back(read_points(poly));
  }
  return out;
}

}  // namespace

void write_trajectory(JsonWriter & w, const Trajectory & traj)
{
  w.begin_array();
  for (const auto & p : traj.points) {
    w.begin_array(true)
      .value(p.t)
      .value(p.pose.x())
      .value(p.pose.y())
      .value(p.pose.heading())
      .value(p.speed)
      .value(p.valid)
      .end_array();
  }
  w.end_array();
}

Trajectory read_trajectory(const json & track, double timestep)
{
  if (!track.is_array()) {
    format_error("track must be an array");
  }
  Trajectory traj;
  traj.timestep = timestep;
  traj.points.reserve(track.size());
  for (const auto & row : track) {
    if (!row.is_array() || row.size() != 6) {
      format_error("track rows must be [t, x, y, heading, speed, valid]");
    }
    TrackPoint p;
    p.t = as_number(row[0], "t");
    p.pose = Pose2(as_number(row[1], "x"), as_number(row[2], "y"), as_number(row[3], "heading"));
    p.speed = as_number(row[4], "speed");
    if (row[5].is_boolean()) {
      p.valid = row[5].get<bool>();
    } else if (row[5].is_number_integer()) {
      p.valid = row[5].get<int>() != 0;
    } else {
      format_error("valid flag must be a boolean");
    }
    traj.points.push_back(p);
  }
  return traj;
}

void write_map(JsonWriter & w, const MapModel & map)
{
  w.begin_object();
  w.key("lanes").begin_array();
  for (const auto & lane : map.lanes) {
    w.begin_object();
    w.key("id").value(lane.id);
    w.key("centerline");
    write_points(w, lane.centerline);
    w.key("width").value(lane.width);
    w.key("successors").begin_array(true);
    for (auto s : lane.successors) {
      w.value(s);
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.key("crosswalks");
  write_polygons(w, map.crosswalks);
  w.key("drivable_area");
  write_polygons(w, map.drivable_area);
  w.end_object();
}

MapModel read_map(const json & j)
{
  MapModel map;
  for (const auto & lj : require(j, "lanes")) {
    Lane lane;
    lane.id = require(lj, "id").get<std::uint32_t>();
    lane.centerline = read_points(require(lj, "centerline"));
    lane.width = as_number(require(lj, "width"), "lane width");
    for (const auto & s : require(lj, "successors")) {
      lane.successors.push_back(s.get<std::uint32_t>());
    }
    map.lanes.push_back(std::move(lane));
  }
  map.crosswalks = read_polygons(require(j, "crosswalks"));
  map.drivable_area = read_polygons(require(j, "drivable_area"));
  return map;
}

std::string serialize_scenario(const Scenario & s)
{
  JsonWriter w(kScenarioDigits);
  w.begin_object();
  w.key("format").value(kScenarioFormatVersion);
  w.key("meta").begin_object(true);
  w.key("timestep").value(s.timestep);
  w.key("horizon").value(s.horizon);
  w.key("seed").value(s.seed);
  w.end_object();
  w.key("map");
  write_map(w, s.map);
  w.key("agents").begin_array();
  for (const auto & a : s.agents) {
    w.begin_object();
    w.key("id").value(to_underlying(a.id));
    w.key("kind").value(to_string(a.kind));
    w.key("dims").begin_array(true).value(a.footprint.length).value(a.footprint.width).value(a.height).end_array();
    w.key("appearance_caption").value(a.appearance_caption);
    w.key("is_ego").value(a.is_ego);
    w.key("track");
    write_trajectory(w, a.trajectory);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

Scenario parse_scenario(std::string_view text)
{
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error & e) {
    format_error(e.what());
  }
  try {
    const json & fmt = require(j, "format");
    if (!fmt.is_number_integer() || fmt.get<int>() != kScenarioFormatVersion) {
      format_error("unsupported format version");
    }
    Scenario s;
    const json & meta = require(j, "meta");
    s.timestep = as_number(require(meta, "timestep"), "timestep");
    s.horizon = require(meta, "horizon").get<int>();
    s.seed = require(meta, "seed").get<std::uint64_t>();
    s.map = read_map(require(j, "map"));
    for (const auto & aj : require(j, "agents")) {
      AgentNode a;
      a.id = AgentId{require(aj, "id").get<std::uint32_t>()};
      const auto kind = parse_agent_kind(require(aj, "kind").get<std::string>());
      if (!kind) {
        format_error("unknown agent kind");
      }
      a.kind = *kind;
      const json & dims = require(aj, "dims");
      if (!dims.is_array() || dims.size() != 3) {
        format_error("dims must be [length, width, height]");
      }
      a.footprint = {as_number(dims[0], "length"), as_number(dims[1], "width")};
      a.height = as_number(dims[2], "height");
      a.appearance_caption = require(aj, "appearance_caption").get<std::string>();
      a.is_ego = require(aj, "is_ego").get<bool>();
      a.trajectory = read_trajectory(require(aj, "track"), s.timestep);
      s.agents.push_back(std::move(a));
    }
    validate_scenario(s);
    return s;
  } catch (const json::exception & e) {
    format_error(e.what());
  }
}

Scenario quantized(const Scenario & s)
{
  auto q = [](double v) { return round_significant(v, kScenarioDigits); };
  Scenario out = s;
  out.timestep = q(s.timestep);
  for (auto & lane : out.map.lanes) {
    lane.width = q(lane.width);
    for (auto & p : lane.centerline) p = {q(p.x), q(p.y)};
  }
  for (auto * polys : {&out.map.crosswalks, &out.map.drivable_area}) {
    for (auto & poly : *polys) {
      for (auto & p : poly) p = {q(p.x), q(p.y)};
    }
  }
  for (auto & a : out.agents) {
    a.footprint = {q(a.footprint.length), q(a.footprint.width)};
    a.height = q(a.height);
    a.trajectory.timestep = out.timestep;
    for (auto & p : a.trajectory.points) {
      p.t = q(p.t);
      p.pose = Pose2(q(p.pose.x()), q(p.pose.y()), q(p.pose.heading()));
      p.speed = q(p.speed);
    }
  }
  return out;
}

std::string read_text_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path & path, std::string_view text)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::Io, "cannot write " + path.string());
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

Scenario load_scenario(const std::filesystem::path & path) { return parse_scenario(read_text_file(path)); }

void save_scenario(const Scenario & scenario, const std::filesystem::path & path)
{
  write_text_file(path, serialize_scenario(scenario));
}

}  // namespace scenesplat
