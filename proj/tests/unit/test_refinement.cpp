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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "scenesplat/common/error.hpp"
#include "scenesplat/eval/maps.hpp"
#include "scenesplat/refine/refinement.hpp"
#include "scenesplat/scene/path.hpp"

namespace scenesplat
{
namespace
{

constexpr double kDt = 0.1;
constexpr int kHorizon = 90;

AgentNode agent(std::uint32_t id, AgentKind kind, BoxDims dims, Trajectory traj)
{
  AgentNode a;
  a.id = AgentId{id};
  a.kind = kind;
  a.footprint = dims;
  a.trajectory = std::move(traj);
  a.appearance_caption = "agent";
  return a;
}

/// Straight motion from `start` with a per-frame speed profile v(k).
template <typename F>
Trajectory straight(const Pose2 & start, F speed, int frames = kHorizon + 1)
{
  std::vector<double> v;
  for (int k = 0; k < frames; ++k) {
    v.push_back(speed(k));
  }
  Path path(start);
  path.straight(500.0);
  return follow_path(path, v, kDt);
}

Scenario base_scene()
{
  Scenario s;
  s.map = make_map(MapTemplate::StraightRoad);
  s.horizon = kHorizon;
  s.timestep = kDt;
  AgentNode ego = agent(0, AgentKind::Vehicle, {4.5, 1.9}, stationary_track({-60.0, 2.0, kPi}, kHorizon + 1, kDt));
  ego.is_ego = true;
  s.agents.push_back(ego);
  return s;
}

double rear_to_front_gap(const Pose2 & lead, const Pose2 & follow, double length)
{
  return (lead.x() - 0.5 * length) - (follow.x() + 0.5 * length);
}

void expect_kinematic_bounds(const RolloutResult & r, const RefinementConfig & cfg)
{
  for (const auto & [id, traj] : r.refined) {
    for (std::size_t k = 1; k < traj.points.size(); ++k) {
      EXPECT_GE(traj.points[k].speed, 0.0);
      if (traj.points[k].t >= cfg.history_steps * kDt - 1e-9) {
        EXPECT_GE(traj.points[k].speed - traj.points[k - 1].speed, -cfg.max_decel * kDt - 1e-9)
          << "agent " << id << " frame " << k;
      }
    }
  }
}

TEST(Refinement, SingleAgentKeepsPlannedTrack)
{
  Scenario s = base_scene();
  s.agents.push_back(agent(1, AgentKind::Vehicle, {4.5, 1.9}, straight({0.0, -2.0, 0.0}, [](int) { return 6.0; })));
  RefinementConfig cfg;
  const auto r = refine(s, {{AgentId{1}, s.agents[1].trajectory, 0}}, cfg);
  ASSERT_TRUE(r.valid);
  const auto & planned = s.agents[1].trajectory.points;
  const auto & refined = r.refined.at(1).points;
  ASSERT_EQ(refined.size(), planned.size());
  for (std::size_t k = 0; k < planned.size(); ++k) {
    EXPECT_NEAR(refined[k].pose.x(), planned[k].pose.x(), 1e-9);
    EXPECT_NEAR(refined[k].pose.y(), planned[k].pose.y(), 1e-9);
    EXPECT_NEAR(refined[k].speed, planned[k].speed, 1e-9);
  }
}

TEST(Refinement, FollowerStopsBehindBrakingLeader)
{
  Scenario s = base_scene();
  // leader 15 m ahead at 8 m/s, brakes at 3 m/s^2 from t = 2 s
  auto leader_speed = [](int k) { return k < 20 ? 8.0 : std::max(0.0, 8.0 - 3.0 * (k - 20) * kDt); };
  s.agents.push_back(agent(1, AgentKind::Vehicle, {4.5, 1.9}, straight({15.0, -2.0, 0.0}, leader_speed)));
  s.agents.push_back(agent(2, AgentKind::Vehicle, {4.5, 1.9}, straight({0.0, -2.0, 0.0}, [](int) { return 8.0; })));
  RefinementConfig cfg;
  ASSERT_FALSE(predict_conflicts(s, cfg).empty());

  const auto r = refine(s, {{AgentId{1}, s.agents[1].trajectory, 0}}, cfg);
  EXPECT_TRUE(r.valid);
  expect_kinematic_bounds(r, cfg);
  const auto & lead = r.refined.at(1).points;
  const auto & follow = r.refined.at(2).points;
  ASSERT_EQ(lead.size(), follow.size());
  for (std::size_t k = 0; k < lead.size(); ++k) {
    EXPECT_GT(rear_to_front_gap(lead[k].pose, follow[k].pose, 4.5), 0.0) << "frame " << k;
  }
  EXPECT_LT(follow.back().speed, 1e-9);
  EXPECT_GE(rear_to_front_gap(lead.back().pose, follow.back().pose, 4.5), cfg.min_gap);
  // the leader is the conditioning track and keeps its plan
  EXPECT_EQ(r.refined.at(1), s.agents[1].trajectory);
  ASSERT_FALSE(r.conflicts.empty());
  EXPECT_NE(r.conflicts.front().resolution, Resolution::Unresolved);
}

TEST(Refinement, PedestrianStopsBeforeInsertedCone)
{
  Scenario s = base_scene();
  s.agents.push_back(agent(1, AgentKind::Pedestrian, {0.5, 0.5}, straight({0.0, 6.0, 0.0}, [](int) { return 1.4; })));
  s.agents.push_back(agent(2, AgentKind::StaticObject, {0.6, 0.6}, stationary_track({8.0, 6.0, 0.0}, kHorizon + 1, kDt)));
  RefinementConfig cfg;
  const auto r = refine(s, {{AgentId{2}, s.agents[2].trajectory, 0}}, cfg);
  EXPECT_TRUE(r.valid);
  expect_kinematic_bounds(r, cfg);
  const auto & ped = r.refined.at(1).points;
  bool stopped = false;
  for (const auto & p : ped) {
    const double gap = (8.0 - 0.3) - (p.pose.x() + 0.25);
    EXPECT_GE(gap, cfg.min_gap - 1e-9);
    stopped = stopped || p.speed == 0.0;
  }
  EXPECT_TRUE(stopped);
  ASSERT_EQ(r.conflicts.size(), 1u);
  EXPECT_EQ(r.conflicts[0].type, ConflictType::VehPed);
  EXPECT_EQ(r.conflicts[0].resolution, Resolution::Stop);
}

TEST(Refinement, PedestrianYieldsToCrossingVehicleAndResumes)
{
  Scenario s = base_scene();
  s.map = make_map(MapTemplate::CrosswalkRoad);
  // vehicle passes x = 20 at t = 3 s; pedestrian would reach the lane then too
  s.agents.push_back(agent(1, AgentKind::Vehicle, {4.5, 1.9}, straight({-4.0, -2.0, 0.0}, [](int) { return 8.0; })));
  s.agents.push_back(agent(2, AgentKind::Pedestrian, {0.5, 0.5}, straight({20.0, -8.0, kPi / 2}, [](int) { return 2.0; })));
  RefinementConfig cfg;
  const auto planned = predict_conflicts(s, cfg);
  ASSERT_EQ(planned.size(), 1u);
  EXPECT_EQ(planned[0].type, ConflictType::VehPed);

  const auto r = refine(s, {{AgentId{1}, s.agents[1].trajectory, 0}}, cfg);
  EXPECT_TRUE(r.valid);
  expect_kinematic_bounds(r, cfg);
  const auto flags = validate(r, s);
  EXPECT_FALSE(flags.collision_ped);
  EXPECT_FALSE(flags.failure);
  // resumes once clear
  EXPECT_GT(r.refined.at(2).points.back().speed, 0.5);
}

TEST(Refinement, VehicleDetoursAroundStaticBlocker)
{
  Scenario s = base_scene();
  s.agents.push_back(agent(1, AgentKind::Vehicle, {4.5, 1.9}, straight({0.0, -2.0, 0.0}, [](int) { return 6.0; })));
  s.agents.push_back(agent(2, AgentKind::StaticObject, {0.6, 2.0}, stationary_track({35.0, -2.0, 0.0}, kHorizon + 1, kDt)));
  RefinementConfig cfg;
  const auto r = refine(s, {{AgentId{2}, s.agents[2].trajectory, 0}}, cfg);
  EXPECT_TRUE(r.valid);
  ASSERT_EQ(r.conflicts.size(), 1u);
  EXPECT_EQ(r.conflicts[0].resolution, Resolution::Detour);
  const auto flags = validate(r, s);
  EXPECT_FALSE(flags.failure);
  double max_shift = 0.0;
  for (const auto & p : r.refined.at(1).points) {
    max_shift = std::max(max_shift, std::abs(p.pose.y() + 2.0));
  }
  EXPECT_GT(max_shift, 0.0);
  EXPECT_LE(max_shift, kLaneWidth + 1e-9);
}

TEST(Refinement, BypassReturnsPlannedTracksVerbatim)
{
  Scenario s = base_scene();
  s.agents.push_back(agent(1, AgentKind::Vehicle, {4.5, 1.9}, straight({0.0, -2.0, 0.0}, [](int) { return 10.0; })));
  s.agents.push_back(agent(2, AgentKind::Vehicle, {4.5, 1.9}, straight({50.0, -2.0, kPi}, [](int) { return 10.0; })));
  RefinementConfig cfg;
  cfg.bypass = true;
  const auto r = refine(s, {}, cfg);
  for (const auto & a : s.agents) {
    EXPECT_EQ(r.refined.at(to_underlying(a.id)), a.trajectory);
  }
  EXPECT_FALSE(r.valid);
  ASSERT_EQ(r.conflicts.size(), 1u);
  EXPECT_EQ(r.conflicts[0].resolution, Resolution::Unresolved);
}

TEST(Refinement, HeadOnConflictFrameMatchesAnalyticContact)
{
  Scenario s = base_scene();
  s.agents.push_back(agent(1, AgentKind::Vehicle, {4.5, 1.9}, straight({0.0, -2.0, 0.0}, [](int) { return 10.0; })));
  s.agents.push_back(agent(2, AgentKind::Vehicle, {4.5, 1.9}, straight({50.0, -2.0, kPi}, [](int) { return 10.0; })));
  RefinementConfig cfg;
  const auto c = predict_conflicts(s, cfg);
  ASSERT_EQ(c.size(), 1u);
  // centers close at 20 m/s; inflated lengths touch at 4.5 + 2 = 6.5 m
  const double t_contact = (50.0 - 6.5) / 20.0;
  EXPECT_NEAR(c[0].t, std::ceil(t_contact / kDt - 1e-9) * kDt, 1e-9);
  EXPECT_EQ(c[0].type, ConflictType::VehVeh);
  EXPECT_EQ(c[0].a, AgentId{1});
}

TEST(Refinement, HistoryIsPreserved)
{
  Scenario s = base_scene();
  auto leader_speed = [](int k) { return k < 15 ? 8.0 : std::max(0.0, 8.0 - 4.0 * (k - 15) * kDt); };
  s.agents.push_back(agent(1, AgentKind::Vehicle, {4.5, 1.9}, straight({12.0, -2.0, 0.0}, leader_speed)));
  s.agents.push_back(agent(2, AgentKind::Vehicle, {4.5, 1.9}, straight({0.0, -2.0, 0.0}, [](int) { return 8.0; })));
  RefinementConfig cfg;
  const auto r = refine(s, {{AgentId{1}, s.agents[1].trajectory, 0}}, cfg);
  for (std::size_t i = 1; i < s.agents.size(); ++i) {
    const auto & planned = s.agents[i].trajectory.points;
    const auto & refined = r.refined.at(to_underlying(s.agents[i].id)).points;
    for (int k = 0; k < cfg.history_steps; ++k) {
      EXPECT_EQ(refined[static_cast<std::size_t>(k)], planned[static_cast<std::size_t>(k)]);
    }
  }
}

TEST(Refinement, MissingHistoryIsReported)
{
  Scenario s = base_scene();
  auto traj = straight({0.0, -2.0, 0.0}, [](int) { return 5.0; });
  traj.points[3].valid = false;
  s.agents.push_back(agent(1, AgentKind::Vehicle, {4.5, 1.9}, traj));
  try {
    refine(s, {}, RefinementConfig{});
    FAIL() << "expected MissingHistory";
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingHistory);
  }
}

TEST(Refinement, ConfigValidation)
{
  RefinementConfig cfg;
  cfg.min_gap = 0.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = RefinementConfig{};
  cfg.history_steps = 1;
  EXPECT_THROW(cfg.validate(), Error);
  EXPECT_NO_THROW(RefinementConfig{}.validate());
}

TEST(Refinement, SerializationIsDeterministic)
{
  Scenario s = base_scene();
  s.agents.push_back(agent(1, AgentKind::Vehicle, {4.5, 1.9}, straight({15.0, -2.0, 0.0}, [](int k) {
    return k < 20 ? 8.0 : std::max(0.0, 8.0 - 3.0 * (k - 20) * kDt);
  })));
  s.agents.push_back(agent(2, AgentKind::Vehicle, {4.5, 1.9}, straight({0.0, -2.0, 0.0}, [](int) { return 8.0; })));
  const std::vector<EditedAgent> edited{{AgentId{1}, s.agents[1].trajectory, 0}};
  const auto a = serialize_rollout(refine(s, edited, RefinementConfig{}), kDt);
  const auto b = serialize_rollout(refine(s, edited, RefinementConfig{}), kDt);
  EXPECT_EQ(a, b);
}

TEST(Refinement, AggregateRates)
{
  std::vector<RolloutFlags> flags(4);
  flags[0].collision_veh = flags[0].failure = true;
  flags[1].offroad = flags[1].failure = true;
  const auto m = aggregate(flags);
  EXPECT_DOUBLE_EQ(m.collision_veh, 0.25);
  EXPECT_DOUBLE_EQ(m.offroad, 0.25);
  EXPECT_DOUBLE_EQ(m.failure, 0.5);
  EXPECT_DOUBLE_EQ(aggregate({}).failure, 0.0);
}

}  // namespace
}  // namespace scenesplat
