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
#include <string>

#include "scenesplat/common/error.hpp"
#include "scenesplat/eval/benchmarks.hpp"
#include "scenesplat/eval/maps.hpp"
#include "scenesplat/scene/path.hpp"
#include "scenesplat/scene/scenario.hpp"
#include "scenesplat/scene/scenario_io.hpp"

namespace scenesplat
{
namespace
{

Trajectory two_points(const Pose2 & a, const Pose2 & b)
{
  Trajectory t;
  t.timestep = 0.1;
  t.points = {{0.0, a, 1.0, true}, {0.1, b, 1.0, true}};
  return t;
}

TEST(InterpolatePose, SampleTimeReturnsSampleExactly)
{
  const auto tr = two_points({0.3, -0.7, 0.2}, {1.1, 0.4, 0.5});
  EXPECT_EQ(interpolate_pose(tr, 0.1), tr.points[1].pose);
  EXPECT_EQ(interpolate_pose(tr, 0.0), tr.points[0].pose);
}

TEST(InterpolatePose, LinearMidpoint)
{
  const auto p = interpolate_pose(two_points({0, 0, 0}, {2, 0, 0}), 0.05);
  EXPECT_NEAR(p.x(), 1.0, 1e-12);
  EXPECT_NEAR(p.y(), 0.0, 1e-12);
  EXPECT_NEAR(p.heading(), 0.0, 1e-12);
}

TEST(InterpolatePose, HeadingTakesShortestArc)
{
  const auto p = interpolate_pose(two_points({0, 0, deg2rad(170)}, {0, 0, deg2rad(-170)}), 0.05);
  EXPECT_NEAR(std::abs(p.heading()), kPi, 1e-12);
}

TEST(InterpolatePose, OutsideSpanOrInvalidThrows)
{
  auto tr = two_points({0, 0, 0}, {2, 0, 0});
  EXPECT_THROW(interpolate_pose(tr, 0.2), Error);
  tr.points[1].valid = false;
  EXPECT_THROW(interpolate_pose(tr, 0.05), Error);
}

TEST(FollowPath, TrapezoidalArcLength)
{
  const std::vector<double> v{0.0, 1.0, 2.0, 3.0};
  const auto s = integrate_speeds(v, 0.5);
  ASSERT_EQ(s.size(), 4u);
  // 0.5 * (v_k + v_k+1) * dt, accumulated
  EXPECT_NEAR(s[1], 0.25, 1e-12);
  EXPECT_NEAR(s[2], 1.0, 1e-12);
  EXPECT_NEAR(s[3], 2.25, 1e-12);
}

TEST(Path, QuarterArcEndPose)
{
  Path p(Pose2(0, 0, 0));
  p.straight(5.0).arc(10.0, kPi / 2);
  EXPECT_NEAR(p.length(), 5.0 + 10.0 * kPi / 2, 1e-12);
  // left arc of radius 10 starting at (5, 0) heading +x ends at (15, 10) heading +y
  EXPECT_NEAR(p.end().x(), 15.0, 1e-9);
  EXPECT_NEAR(p.end().y(), 10.0, 1e-9);
  EXPECT_NEAR(p.end().heading(), kPi / 2, 1e-12);
  const auto mid = p.pose_at(5.0 + 10.0 * kPi / 4);
  EXPECT_NEAR(mid.x(), 5.0 + 10.0 * std::sin(kPi / 4), 1e-9);
  EXPECT_NEAR(mid.y(), 10.0 - 10.0 * std::cos(kPi / 4), 1e-9);
}

TEST(PolylinePath, LateralOffsetIsLeftOfHeading)
{
  const PolylinePath p({{0, 0}, {10, 0}, {10, 10}}, 0.0);
  EXPECT_NEAR(p.length(), 20.0, 1e-12);
  const auto q = p.offset_pose_at(5.0, 1.5);
  EXPECT_NEAR(q.x(), 5.0, 1e-12);
  EXPECT_NEAR(q.y(), 1.5, 1e-12);
  EXPECT_NEAR(p.pose_at(15.0).heading(), kPi / 2, 1e-12);
}

TEST(ValidateScenario, RejectsBrokenInvariants)
{
  auto s = task_base_scene();
  EXPECT_NO_THROW(validate_scenario(s));

  auto dup = s;
  dup.agents[2].id = dup.agents[1].id;
  EXPECT_THROW(validate_scenario(dup), Error);

  auto no_ego = s;
  no_ego.agents[0].is_ego = false;
  EXPECT_THROW(validate_scenario(no_ego), Error);

  auto bad_dims = s;
  bad_dims.agents[1].footprint.width = 0.0;
  EXPECT_THROW(validate_scenario(bad_dims), Error);
}

TEST(ScenarioIo, SerializeParseIsByteIdentical)
{
  const auto text = read_text_file(std::string(SCENESPLAT_DATA_DIR) + "/sample_scenario.json");
  const auto scene = parse_scenario(text);
  EXPECT_EQ(serialize_scenario(scene), text);
  EXPECT_EQ(parse_scenario(serialize_scenario(scene)), scene);
}

TEST(ScenarioIo, QuantizedSceneRoundTripsExactly)
{
  const auto q = quantized(task_base_scene());
  EXPECT_EQ(parse_scenario(serialize_scenario(q)), q);
}

TEST(ScenarioIo, MalformedDocumentsAreFormatErrors)
{
  auto expect_format = [](const std::string & text) {
    try {
      parse_scenario(text);
      FAIL() << "accepted: " << text;
    } catch (const Error & e) {
      EXPECT_EQ(e.code(), ErrorCode::Format) << e.what();
    }
  };
  expect_format("not json");
  expect_format("[]");
  expect_format("{\"format\": 99}");
  auto text = serialize_scenario(task_base_scene());
  text.replace(text.find("\"timestep\": 0.1"), 15, "\"timestep\": \"x\"");
  expect_format(text);
}

TEST(Maps, TemplatesAreValid)
{
  for (auto t : {MapTemplate::StraightRoad, MapTemplate::FourWayIntersection, MapTemplate::CrosswalkRoad}) {
    const auto m = make_map(t);
    EXPECT_NO_THROW(validate_map(m)) << to_string(t);
    EXPECT_EQ(parse_map_template(to_string(t)), t);
    EXPECT_FALSE(m.lanes.empty());
  }
  EXPECT_FALSE(make_map(MapTemplate::CrosswalkRoad).crosswalks.empty());
}

}  // namespace
}  // namespace scenesplat
