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

#include "scenesplat/common/error.hpp"
#include "scenesplat/edit/edit_engine.hpp"
#include "scenesplat/eval/generator.hpp"
#include "scenesplat/eval/maps.hpp"
#include "support/models.hpp"

namespace scenesplat
{
namespace
{

constexpr int kHorizon = 80;
constexpr double kDt = 0.1;

Trajectory constant_track(Pose2 start, double speed)
{
  Trajectory t;
  t.timestep = kDt;
  const Vec2 dir = unit_vector(start.heading());
  for (int k = 0; k <= kHorizon; ++k) {
    const Vec2 p = start.position() + (speed * k * kDt) * dir;
    t.points.push_back({k * kDt, Pose2(p, start.heading()), speed, true});
  }
  return t;
}

AgentNode agent(std::uint32_t id, AgentKind kind, BoxDims dims, std::string caption, Trajectory traj)
{
  AgentNode a;
  a.id = AgentId{id};
  a.kind = kind;
  a.footprint = dims;
  a.appearance_caption = std::move(caption);
  a.trajectory = std::move(traj);
  return a;
}

Scenario road(bool with_sedan = true)
{
  Scenario s;
  s.map = make_map(MapTemplate::StraightRoad);
  s.horizon = kHorizon;
  s.timestep = kDt;
  s.agents.push_back(make_ego(Pose2(-60.0, -2.0, 0.0), kHorizon, kDt));
  if (with_sedan) {
    s.agents.push_back(
      agent(1, AgentKind::Vehicle, {4.6, 1.9}, "black sedan car", constant_track({-30.0, -2.0, 0.0}, 6.0)));
  }
  return s;
}

const AgentNode * by_caption(const Scenario & s, std::string_view caption)
{
  for (const auto & a : s.agents) {
    if (a.appearance_caption == caption) {
      return &a;
    }
  }
  return nullptr;
}

EditResult edit(const Scenario & s, std::string_view command)
{
  return apply_edit(s, parse_command(command), testing::trained().edit_models());
}

// ---- grammar ----

TEST(ParseCommand, AddWithAnchorOffsetAndAction)
{
  const auto c = parse_command(R"(add asset="police car" anchor="black sedan" offset=behind:10 action=go_straight speed=4.5 start_time=1)");
  EXPECT_EQ(c.task, EditTask::Add);
  ASSERT_TRUE(c.asset && c.anchor_query && c.action);
  EXPECT_EQ(c.asset->query, "police car");
  EXPECT_EQ(*c.anchor_query, "black sedan");
  EXPECT_DOUBLE_EQ(c.asset->offset.x, -10.0);
  EXPECT_DOUBLE_EQ(c.asset->offset.y, 0.0);
  EXPECT_EQ(c.action->action, Action::GoStraight);
  EXPECT_DOUBLE_EQ(*c.action->speed, 4.5);
  EXPECT_DOUBLE_EQ(*c.start_time, 1.0);
}

TEST(ParseCommand, ExplicitPlacementAndGroups)
{
  const auto a = parse_command(R"(add asset="concrete barrier" at=10,2 direction=90 scale=1.5)");
  ASSERT_TRUE(a.position && a.direction_deg);
  EXPECT_DOUBLE_EQ(a.position->x, 10.0);
  EXPECT_DOUBLE_EQ(a.position->y, 2.0);
  EXPECT_DOUBLE_EQ(*a.direction_deg, 90.0);
  EXPECT_DOUBLE_EQ(a.asset->scale, 1.5);

  const auto r = parse_command("remove group=all_moving_vehicles");
  EXPECT_EQ(r.task, EditTask::Remove);
  EXPECT_EQ(r.group, GroupSelector::AllMovingVehicles);
}

TEST(ParseCommand, FormatRoundTrips)
{
  for (const char * text : {
         R"(add asset="police car" anchor="black sedan car" action=follow distance=12)",
         R"(add asset="school bus" at=2,-40 direction=90 action=turn_right speed=5)",
         R"(modify target="black sedan car" action=stop start_time=2)",
         R"(replace target="orange cone" asset="barrier")",
         R"(remove group=all_static_objects)",
         R"(add asset="child" anchor="pedestrian" offset=left:2)",
       }) {
    const auto c = parse_command(text);
    const auto again = parse_command(format_command(c));
    EXPECT_EQ(c, again) << text;
    EXPECT_EQ(format_command(again), format_command(c));
  }
}

TEST(ParseCommand, SyntaxErrorsReportColumn)
{
  auto column_of = [](std::string_view text) -> std::size_t {
    try {
      parse_command(text);
    } catch (const SyntaxError & e) {
      return e.column();
    }
    return 0;
  };
  EXPECT_EQ(column_of("launch target=\"x\""), 1u);
  EXPECT_EQ(column_of("remove colour=\"x\""), 8u);
  EXPECT_EQ(column_of("remove target=\"unterminated"), 15u);
  EXPECT_EQ(column_of("modify target=\"x\" action=fly"), 26u);
  EXPECT_EQ(column_of(""), 1u);
}

TEST(ParseCommand, ConstraintViolations)
{
  for (const char * text : {
         R"(add at=1,2)",
         R"(add asset="cone")",
         R"(add asset="cone" at=1,2 offset=ahead:3)",
         R"(remove)",
         R"(replace target="car")",
         R"(modify target="car")",
         R"(modify target="car" action=follow)",
       }) {
    try {
      parse_command(text);
      ADD_FAILURE() << text;
    } catch (const Error & e) {
      EXPECT_EQ(e.code(), ErrorCode::Constraint) << text;
    }
  }
}

// ---- asset retrieval ----

TEST(RetrieveAsset, SingleAssetBank)
{
  const AssetBank bank{default_asset_bank().front()};
  const auto m = retrieve_asset(bank, "anything at all", std::nullopt, testing::trained().encoder);
  ASSERT_NE(m.asset, nullptr);
  EXPECT_EQ(m.asset->id, bank.front().id);
}

TEST(RetrieveAsset, PicksMatchingCaption)
{
  const auto & enc = testing::trained().encoder;
  EXPECT_EQ(retrieve_asset(default_asset_bank(), "traffic cone", std::nullopt, enc).asset->id, "cone");
  EXPECT_EQ(retrieve_asset(default_asset_bank(), "concrete barrier", std::nullopt, enc).asset->id, "barrier");
  EXPECT_EQ(retrieve_asset(default_asset_bank(), "school bus", AgentKind::Vehicle, enc).asset->id, "school_bus");
}

TEST(RetrieveAsset, EmptyKindFilterIsNotFound)
{
  AssetBank vehicles;
  for (const auto & a : default_asset_bank()) {
    if (a.kind == AgentKind::Vehicle) {
      vehicles.push_back(a);
    }
  }
  try {
    retrieve_asset(vehicles, "pedestrian", AgentKind::Pedestrian, testing::trained().encoder);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFound);
  }
  EXPECT_THROW(retrieve_asset({}, "cone", std::nullopt, testing::trained().encoder), Error);
}

TEST(AssetBankIo, RoundTrip)
{
  const auto & bank = default_asset_bank();
  EXPECT_EQ(parse_asset_bank(serialize_asset_bank(bank)), bank);
}

// ---- motion synthesis ----

TEST(AnchorPosition, OffsetInAnchorFrame)
{
  auto s = road(false);
  s.agents.push_back(agent(1, AgentKind::Vehicle, {4.6, 1.9}, "car", constant_track({0.0, 0.0, kPi / 2}, 2.0)));
  const Pose2 behind = resolve_anchor_position(s, AgentId{1}, {-10.0, 0.0}, 1.0);
  EXPECT_NEAR(behind.x(), 0.0, 1e-9);
  EXPECT_NEAR(behind.y(), -8.0, 1e-9);
  EXPECT_NEAR(behind.heading(), kPi / 2, 1e-12);
  const Pose2 left = resolve_anchor_position(s, AgentId{1}, {0.0, 3.0}, 0.0, kPi / 2);
  EXPECT_NEAR(left.x(), -3.0, 1e-9);
  EXPECT_NEAR(left.y(), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(left.heading()), kPi, 1e-12);
}

TEST(AnchorPosition, Errors)
{
  const auto s = road();
  try {
    resolve_anchor_position(s, AgentId{42}, {}, 0.0);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFound);
  }
  try {
    resolve_anchor_position(s, AgentId{1}, {}, 100.0);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
  }
}

TEST(Synthesize, StaticPlaceHoldsPose)
{
  const auto s = road(false);
  const MotionStart start{Pose2(5.0, 2.0, 0.3), 0.0, 10};
  const auto m = synthesize_trajectory(s, AgentKind::StaticObject, start, {Action::StaticPlace});
  ASSERT_FALSE(m.trajectory.empty());
  EXPECT_NEAR(m.trajectory.start_time(), 1.0, 1e-12);
  for (const auto & p : m.trajectory.points) {
    EXPECT_EQ(p.pose, start.pose);
    EXPECT_EQ(p.speed, 0.0);
  }
}

TEST(Synthesize, GoStraightConstantSpeed)
{
  const auto s = road(false);
  ActionParams go{Action::GoStraight};
  go.speed = 5.0;
  const auto m = synthesize_trajectory(s, AgentKind::Vehicle, {Pose2(-50.0, -2.0, 0.0), 5.0, 0}, go);
  const auto p = interpolate(m.trajectory, 2.0);
  EXPECT_NEAR(p.pose.x(), -40.0, 1e-6);
  EXPECT_NEAR(p.pose.y(), -2.0, 1e-6);
  EXPECT_NEAR(p.pose.heading(), 0.0, 1e-9);
  EXPECT_NEAR(p.speed, 5.0, 1e-9);
}

TEST(Synthesize, StopDeceleratesToRest)
{
  // 6 m/s at 3 m/s^2: rest after v/a = 2 s and v^2/(2a) = 6 m
  const auto s = road(false);
  const auto m = synthesize_trajectory(s, AgentKind::Vehicle, {Pose2(-50.0, -2.0, 0.0), 6.0, 0}, {Action::Stop});
  const auto at_rest = interpolate(m.trajectory, 2.0);
  EXPECT_NEAR(at_rest.speed, 0.0, 1e-9);
  EXPECT_NEAR(at_rest.pose.x(), -44.0, 1e-6);
  EXPECT_NEAR(interpolate(m.trajectory, 1.0).speed, 3.0, 1e-9);
  EXPECT_NEAR(interpolate(m.trajectory, 1.0).pose.x(), -50.0 + 4.5, 1e-6);
  const auto & last = m.trajectory.points.back();
  EXPECT_NEAR(last.pose.x(), -44.0, 1e-6);
  EXPECT_EQ(last.speed, 0.0);
  for (std::size_t i = 1; i < m.trajectory.points.size(); ++i) {
    EXPECT_LE(m.trajectory.points[i].speed, m.trajectory.points[i - 1].speed + 1e-12);
  }
}

TEST(Synthesize, FollowKeepsGapAlongLeaderPath)
{
  const auto s = road(false);
  const Trajectory leader = constant_track({-20.0, -2.0, 0.0}, 6.0);
  ActionParams follow{Action::Follow};
  follow.relative_distance = 12.0;
  const auto m = synthesize_trajectory(
    s, AgentKind::Vehicle, {Pose2(-32.0, -2.0, 0.0), 6.0, 0}, follow, {}, nullptr, &leader);
  ASSERT_GE(m.trajectory.points.size(), 2u);
  for (const auto & p : m.trajectory.points) {
    const auto lead = sample_at(leader, p.t);
    ASSERT_TRUE(lead.has_value());
    EXPECT_NEAR((lead->pose.position() - p.pose.position()).norm(), 12.0, 0.1);
  }
  EXPECT_THROW(synthesize_trajectory(s, AgentKind::Vehicle, {Pose2(), 0.0, 0}, follow), Error);
}

// ---- edit application ----

TEST(ApplyEdit, RemoveSoleNonEgoAgent)
{
  const auto s = road();
  const auto r = edit(s, R"(remove target="black sedan car")");
  ASSERT_EQ(r.scenario.agents.size(), 1u);
  EXPECT_TRUE(r.scenario.agents.front().is_ego);
  ASSERT_EQ(r.removed.size(), 1u);
  EXPECT_EQ(r.removed.front(), AgentId{1});
  EXPECT_EQ(r.scenario.agents.front(), s.agents.front());
}

TEST(ApplyEdit, ModifyStopKeepsPrefix)
{
  const auto s = road();
  const auto r = edit(s, R"(modify target="black sedan car" action=stop start_time=2)");
  const auto & before = s.find(AgentId{1})->trajectory;
  const auto & after = r.scenario.find(AgentId{1})->trajectory;
  ASSERT_EQ(r.edited.size(), 1u);
  EXPECT_EQ(r.edited.front().start_frame, 20);
  for (int k = 0; k <= 20; ++k) {
    EXPECT_EQ(after.points[k], before.points[k]) << k;
  }
  // rest 2 s later, 6 m past the pose at the edit start
  const auto rest = interpolate(after, 4.0);
  EXPECT_NEAR(rest.speed, 0.0, 1e-9);
  EXPECT_NEAR(rest.pose.x(), interpolate(before, 2.0).pose.x() + 6.0, 1e-6);
  validate_scenario(r.scenario);
}

TEST(ApplyEdit, AddObjectLeavesOthersUntouched)
{
  const auto s = road();
  const auto r = edit(s, R"(add asset="concrete barrier" at=10,2 direction=0)");
  ASSERT_EQ(r.scenario.agents.size(), s.agents.size() + 1);
  for (const auto & a : s.agents) {
    EXPECT_EQ(*r.scenario.find(a.id), a);
  }
  EXPECT_EQ(r.asset_id, "barrier");
  const auto * added = r.scenario.find(r.edited.front().id);
  ASSERT_NE(added, nullptr);
  EXPECT_EQ(added->kind, AgentKind::StaticObject);
  EXPECT_NEAR(added->trajectory.points.front().pose.x(), 10.0, 1e-12);
  EXPECT_NEAR(added->trajectory.points.front().pose.y(), 2.0, 1e-12);
  validate_scenario(r.scenario);
}

TEST(ApplyEdit, ReplaceKeepsTrackSwapsAsset)
{
  auto s = road();
  s.agents.push_back(agent(2, AgentKind::StaticObject, {0.6, 0.6}, "orange traffic cone", [] {
    Trajectory t = constant_track({0.0, 5.0, 0.0}, 0.0);
    return t;
  }()));
  const auto r = edit(s, R"(replace target="orange traffic cone" asset="concrete barrier")");
  EXPECT_EQ(r.asset_id, "barrier");
  EXPECT_EQ(by_caption(r.scenario, "orange traffic cone"), nullptr);
  ASSERT_EQ(r.edited.size(), 1u);
  const auto * replaced = r.scenario.find(r.edited.front().id);
  ASSERT_NE(replaced, nullptr);
  EXPECT_EQ(replaced->trajectory.points.front().pose.position(), Vec2(0.0, 5.0));
  EXPECT_EQ(*r.scenario.find(AgentId{1}), *s.find(AgentId{1}));
}

TEST(ApplyEdit, GroupRemoveMovingVehicles)
{
  auto s = road();
  s.agents.push_back(agent(2, AgentKind::Vehicle, {4.6, 1.9}, "parked van", constant_track({20.0, 2.0, kPi}, 0.0)));
  s.agents.push_back(agent(3, AgentKind::Pedestrian, {0.5, 0.5}, "walker", constant_track({0.0, 6.0, 0.0}, 1.2)));
  const auto r = edit(s, "remove group=all_moving_vehicles");
  EXPECT_EQ(r.removed, std::vector<AgentId>{AgentId{1}});
  EXPECT_NE(r.scenario.find(AgentId{0}), nullptr);  // ego survives
  EXPECT_NE(r.scenario.find(AgentId{2}), nullptr);
  EXPECT_NE(r.scenario.find(AgentId{3}), nullptr);
}

TEST(ApplyEdit, DoesNotMutateInput)
{
  const auto s = road();
  const auto copy = s;
  (void)edit(s, R"(modify target="black sedan car" action=stop start_time=2)");
  EXPECT_EQ(s, copy);
}

}  // namespace
}  // namespace scenesplat
