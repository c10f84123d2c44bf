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

#include "scenesplat/eval/generator.hpp"

#include <array>
#include <cmath>
#include <string_view>

#include "scenesplat/alignment/features.hpp"
#include "scenesplat/alignment/oracle.hpp"
#include "scenesplat/common/error.hpp"
#include "scenesplat/common/random.hpp"
#include "scenesplat/scene/path.hpp"

namespace scenesplat
{

namespace
{

constexpr double kTurnRadius = 8.0;
constexpr double kUTurnRadius = 2.0;
constexpr double kSectorJitterDeg = 15.0;
constexpr double kMinRange = 10.0;
constexpr double kMaxRange = 25.0;

constexpr std::array<const char *, 6> kVehicleCaptions{
  "black sedan", "white truck", "red hatchback", "silver suv", "blue van", "yellow taxi"};
constexpr std::array<const char *, 4> kPedestrianCaptions{
  "pedestrian in a red jacket", "pedestrian with a backpack", "person in a green coat",
  "pedestrian with an umbrella"};

Pose2 rotated(const Pose2 & p, double q) { return {rotate(p.position(), q), p.heading() + q}; }

int pick(std::mt19937_64 & rng, int n) { return static_cast<int>(uniform_index(rng, static_cast<std::size_t>(n))); }

// Speed profiles, one value per frame.
std::vector<double> constant_speed(int frames, double v) { return std::vector<double>(frames, v); }

std::vector<double> braking(int frames, double dt, double v0, double t_brake, double decel)
{
  std::vector<double> v(frames);
  for (int k = 0; k < frames; ++k) {
    const double t = k * dt;
    v[k] = t <= t_brake ? v0 : std::max(0.0, v0 - decel * (t - t_brake));
  }
  return v;
}

std::vector<double> launching(int frames, double dt, double t_start, double accel, double v_max)
{
  std::vector<double> v(frames);
  for (int k = 0; k < frames; ++k) {
    const double t = k * dt;
    v[k] = t <= t_start ? 0.0 : std::min(v_max, accel * (t - t_start));
  }
  return v;
}

bool has_intersection(MapTemplate t) { return t == MapTemplate::FourWayIntersection; }
bool has_crosswalk(MapTemplate t) { return t != MapTemplate::StraightRoad; }

// Rotation applied to a canonical eastbound / southern-sidewalk setup.
double approach_rotation(MapTemplate t, std::mt19937_64 & rng)
{
  return has_intersection(t) ? 0.5 * kPi * pick(rng, 4) : kPi * pick(rng, 2);
}

std::vector<double> road_axes(MapTemplate t, double q)
{
  if (has_intersection(t)) {
    return {q, q + 0.5 * kPi, q + kPi, q - 0.5 * kPi};
  }
  return {q, q + kPi};
}

AgentNode vehicle_node(std::mt19937_64 & rng)
{
  AgentNode a;
  a.kind = AgentKind::Vehicle;
  const int c = pick(rng, static_cast<int>(kVehicleCaptions.size()));
  a.appearance_caption = kVehicleCaptions[c];
  const bool truck = a.appearance_caption.find("truck") != std::string::npos ||
                     a.appearance_caption.find("van") != std::string::npos;
  a.footprint = truck ? BoxDims{6.0, 1.95} : BoxDims{4.6, 1.9};
  a.height = truck ? 2.8 : 1.5;
  return a;
}

AgentNode pedestrian_node(std::mt19937_64 & rng)
{
  AgentNode a;
  a.kind = AgentKind::Pedestrian;
  a.appearance_caption = kPedestrianCaptions[pick(rng, static_cast<int>(kPedestrianCaptions.size()))];
  a.footprint = {kPedestrianFootprint, kPedestrianFootprint};
  a.height = 1.7;
  return a;
}

Trajectory vehicle_track(
  std::string_view motion, MapTemplate map, int frames, double dt, double q, std::mt19937_64 & rng)
{
  const double T = (frames - 1) * dt;
  const double lane_y = -kLaneOffset;
  if (motion == proto::kStationary) {
    const Pose2 p(uniform(rng, -60.0, 60.0), lane_y, 0.0);
    return stationary_track(rotated(p, q), frames, dt);
  }
  if (motion == proto::kStraight) {
    const double v = uniform(rng, 4.0, 10.0);
    const Pose2 start(-0.5 * v * T + uniform(rng, -10.0, 10.0), lane_y, 0.0);
    return follow_path(Path(rotated(start, q)).straight(250.0), constant_speed(frames, v), dt);
  }
  if (motion == proto::kTurnLeft || motion == proto::kTurnRight || motion == proto::kUTurn) {
    if (!has_intersection(map)) {
      throw Error(ErrorCode::Incompatible, std::string(motion) + " needs the 4-way-intersection template");
    }
    const bool uturn = motion == proto::kUTurn;
    const double v = uturn ? uniform(rng, 3.0, 5.0) : uniform(rng, 4.0, 7.0);
    const double arc_len = uturn ? kUTurnRadius * kPi : kTurnRadius * 0.5 * kPi;
    const double before = uniform(rng, 0.2, 0.45) * (v * T - arc_len);
    double arc_x = 0.0;  // canonical x where the arc begins
    if (motion == proto::kTurnLeft) arc_x = kLaneOffset - kTurnRadius;
    if (motion == proto::kTurnRight) arc_x = -kLaneOffset - kTurnRadius;
    if (uturn) arc_x = uniform(rng, -2.0, 2.0);
    const Pose2 start(arc_x - before, lane_y, 0.0);
    Path path(rotated(start, q));
    path.straight(before);
    if (uturn) {
      path.arc(kUTurnRadius, kPi);
    } else {
      path.arc(kTurnRadius, motion == proto::kTurnLeft ? 0.5 * kPi : -0.5 * kPi);
    }
    path.straight(200.0);
    return follow_path(path, constant_speed(frames, v), dt);
  }
  if (motion == proto::kStopping) {
    const double v0 = uniform(rng, 6.0, 10.0);
    const double a = uniform(rng, 2.5, 4.0);
    const double tb = uniform(rng, 1.0, 4.0);
    const Pose2 start(uniform(rng, -40.0, -20.0), lane_y, 0.0);
    return follow_path(Path(rotated(start, q)).straight(250.0), braking(frames, dt, v0, tb, a), dt);
  }
  if (motion == proto::kStarting) {
    const double ts = uniform(rng, 1.0, 3.0);
    const double a = uniform(rng, 1.5, 3.0);
    const double vmax = uniform(rng, 6.0, 10.0);
    const Pose2 start(uniform(rng, -30.0, -10.0), lane_y, 0.0);
    return follow_path(Path(rotated(start, q)).straight(250.0), launching(frames, dt, ts, a, vmax), dt);
  }
  throw Error(ErrorCode::UnknownLabel, "unknown vehicle motion '" + std::string(motion) + "'");
}

// Returns the track and the admissible ego headings (ego-frame semantics of
// crossing and walking depend on them).
std::pair<Trajectory, std::vector<double>> pedestrian_track(
  std::string_view motion, MapTemplate map, int frames, double dt, double q, std::mt19937_64 & rng)
{
  const double side = -kSidewalkOffset;
  const auto axes = road_axes(map, q);
  if (motion == proto::kStanding) {
    const Pose2 p(uniform(rng, -30.0, 30.0), side, uniform(rng, -kPi, kPi));
    return {stationary_track(rotated(p, q), frames, dt), axes};
  }
  if (motion == proto::kWalkingStraight || motion == proto::kStopping) {
    const double dir = pick(rng, 2) == 0 ? 0.0 : kPi;
    const Pose2 start(uniform(rng, -20.0, 20.0), side, dir);
    const double v = uniform(rng, 1.0, 1.6);
    auto speeds = motion == proto::kStopping
                    ? braking(frames, dt, uniform(rng, 1.2, 1.6), uniform(rng, 4.0, 6.0), 1.0)
                    : constant_speed(frames, v);
    auto traj = follow_path(Path(rotated(start, q)).straight(100.0), speeds, dt);
    if (motion == proto::kStopping) {
      return {std::move(traj), axes};
    }
    const double h = dir + q;
    return {std::move(traj), {h, h + kPi}};
  }
  if (motion == proto::kCrossingLeftToRight || motion == proto::kCrossingRightToLeft) {
    if (!has_crosswalk(map)) {
      throw Error(ErrorCode::Incompatible, std::string(motion) + " needs a template with a crosswalk");
    }
    const double x = has_intersection(map) ? -kIntersectionCrosswalkOffset + uniform(rng, -0.7, 0.7)
                                           : uniform(rng, -1.5, 1.5);
    const bool north = pick(rng, 2) == 0;
    const double v = uniform(rng, 1.1, 1.6);
    const double y0 = (north ? -1.0 : 1.0) * (kSidewalkOffset + uniform(rng, 0.0, 1.0));
    const Pose2 start(x, y0, north ? 0.5 * kPi : -0.5 * kPi);
    const Pose2 world = rotated(start, q);
    auto traj = follow_path(Path(world).straight(100.0), constant_speed(frames, v), dt);
    // walking direction d: an ego heading of d + 90 deg sees the walker move
    // toward its right, d - 90 deg toward its left
    const double d = world.heading();
    const double h = motion == proto::kCrossingLeftToRight ? d + 0.5 * kPi : d - 0.5 * kPi;
    return {std::move(traj), {h}};
  }
  throw Error(ErrorCode::UnknownLabel, "unknown pedestrian motion '" + std::string(motion) + "'");
}

void add_jitter(Trajectory & traj, double jitter, std::mt19937_64 & rng)
{
  if (jitter <= 0.0) return;
  for (auto & p : traj.points) {
    const double dx = normal(rng, 0.0, jitter);
    const double dy = normal(rng, 0.0, jitter);
    p.pose = Pose2(p.pose.x() + dx, p.pose.y() + dy, p.pose.heading());
  }
}

}  // namespace

double sector_center(std::string_view name)
{
  for (std::size_t i = 0; i < kSectorNames.size(); ++i) {
    if (kSectorNames[i] == name) {
      return deg2rad(45.0 * static_cast<double>(i));
    }
  }
  throw Error(ErrorCode::UnknownLabel, "unknown location sector '" + std::string(name) + "'");
}

Vec2 mean_position(const Trajectory & traj)
{
  Vec2 s{};
  for (const auto & p : traj.points) {
    s = s + p.pose.position();
  }
  return (1.0 / static_cast<double>(traj.points.size())) * s;
}

AgentNode make_ego(const Pose2 & pose, int horizon, double timestep)
{
  AgentNode ego;
  ego.id = AgentId{0};
  ego.kind = AgentKind::Vehicle;
  ego.footprint = {4.6, 1.9};
  ego.appearance_caption = "ego vehicle";
  ego.is_ego = true;
  ego.trajectory = stationary_track(pose, horizon, timestep);
  return ego;
}

Pose2 ego_pose_for(Vec2 target, double ego_heading, double bearing, double range)
{
  const Vec2 offset = range * unit_vector(ego_heading + bearing);
  return {target - offset, ego_heading};
}

RealizedTrack realize_motion(
  const AgentRecipe & recipe, MapTemplate map_template, int horizon, double timestep,
  std::mt19937_64 & rng)
{
  const double q = approach_rotation(map_template, rng);
  RealizedTrack out;
  if (recipe.kind == AgentKind::Pedestrian) {
    out.agent = pedestrian_node(rng);
    auto [traj, headings] = pedestrian_track(recipe.motion, map_template, horizon, timestep, q, rng);
    out.agent.trajectory = std::move(traj);
    out.ego_headings = std::move(headings);
  } else {
    out.agent = vehicle_node(rng);
    out.agent.kind = recipe.kind;
    out.agent.trajectory = vehicle_track(recipe.motion, map_template, horizon, timestep, q, rng);
    out.ego_headings = road_axes(map_template, q);
  }
  return out;
}

std::vector<CorpusItem> generate_corpus(const SyntheticSpec & spec)
{
  if (!(spec.jitter >= 0.0)) {
    throw Error(ErrorCode::InvalidInput, "jitter must be non-negative");
  }
  if (spec.horizon < 2 || !(spec.timestep > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "horizon and timestep must be positive");
  }
  std::mt19937_64 rng(spec.seed);
  const MapModel map = make_map(spec.map);
  std::vector<CorpusItem> corpus;
  for (const auto & pc : spec.counts) {
    if (pc.count < 0) {
      throw Error(ErrorCode::InvalidInput, "prototype counts must be non-negative");
    }
    for (int i = 0; i < pc.count; ++i) {
      auto realized = realize_motion({pc.kind, pc.motion, {}}, spec.map, spec.horizon, spec.timestep, rng);
      AgentNode & agent = realized.agent;
      agent.id = AgentId{1};
      add_jitter(agent.trajectory, spec.jitter, rng);

      const auto sector = kSectorNames[uniform_index(rng, kSectorNames.size())];
      const double bearing = sector_center(sector) + deg2rad(uniform(rng, -kSectorJitterDeg, kSectorJitterDeg));
      const double range = uniform(rng, kMinRange, kMaxRange);
      const double heading = realized.ego_headings[uniform_index(rng, realized.ego_headings.size())];
      const Pose2 ego_pose = ego_pose_for(mean_position(agent.trajectory), heading, bearing, range);

      CorpusItem item;
      item.scenario.map = map;
      item.scenario.horizon = spec.horizon;
      item.scenario.timestep = spec.timestep;
      item.scenario.seed = spec.seed;
      item.scenario.agents.push_back(make_ego(ego_pose, spec.horizon, spec.timestep));
      item.scenario.agents.push_back(std::move(agent));
      item.kind = pc.kind;
      item.label = {pc.motion, std::string(sector)};
      corpus.push_back(std::move(item));
    }
  }
  return corpus;
}

SyntheticSpec balanced_spec(std::uint64_t seed, int per_vehicle, int per_pedestrian, double jitter)
{
  SyntheticSpec spec;
  spec.seed = seed;
  spec.jitter = jitter;
  spec.map = MapTemplate::FourWayIntersection;
  for (const auto & [name, desc] : default_entries(CodebookKind::VehicleMotion)) {
    spec.counts.push_back({AgentKind::Vehicle, name, per_vehicle});
  }
  for (const auto & [name, desc] : default_entries(CodebookKind::PedestrianMotion)) {
    spec.counts.push_back({AgentKind::Pedestrian, name, per_pedestrian});
  }
  return spec;
}

std::vector<LabeledTrajectory> to_training_set(
  const std::vector<CorpusItem> & corpus, const Codebooks & books)
{
  std::vector<LabeledTrajectory> out;
  out.reserve(corpus.size());
  for (const auto & item : corpus) {
    const auto & ego = item.scenario.ego();
    const auto * agent = item.scenario.find(item.agent);
    LabeledTrajectory lt;
    lt.kind = item.kind;
    lt.features = extract_features(agent->trajectory, ego.trajectory);
    lt.label = {books.motion_for(item.kind).require(item.label.motion), books.location.require(item.label.location)};
    out.push_back(lt);
  }
  return out;
}

}  // namespace scenesplat
