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
#include <random>

#include "scenesplat/eval/maps.hpp"
#include "scenesplat/scene/geometry.hpp"
#include "scenesplat/scene/scenario.hpp"
#include "support/oracles.hpp"

namespace scenesplat
{
namespace
{

TEST(TransformFootprint, IdentityPoseKeepsCanonicalCorners)
{
  const BoxDims d{2.0, 4.0};
  const auto c = transform_footprint(d, Pose2(0.0, 0.0, 0.0));
  const auto k = canonical_corners(d);
  for (int i = 0; i < 4; ++i) {
    EXPECT_DOUBLE_EQ(c[i].x, k[i].x);
    EXPECT_DOUBLE_EQ(c[i].y, k[i].y);
  }
}

TEST(TransformFootprint, QuarterTurnMapsXToY)
{
  const auto p = Pose2(0.0, 0.0, kPi / 2).to_world({1.0, 0.0});
  EXPECT_NEAR(p.x, 0.0, 1e-15);
  EXPECT_NEAR(p.y, 1.0, 1e-15);
}

TEST(TransformFootprint, HalfTurnNegatesThenShifts)
{
  const BoxDims d{2.0, 4.0};
  const auto c = transform_footprint(d, Pose2(3.0, -1.0, kPi));
  const auto k = canonical_corners(d);
  for (int i = 0; i < 4; ++i) {
    // rotation by pi is [[-1, 0], [0, -1]]
    EXPECT_NEAR(c[i].x, -k[i].x + 3.0, 1e-12);
    EXPECT_NEAR(c[i].y, -k[i].y - 1.0, 1e-12);
  }
}

TEST(BoxesCollide, SpecCases)
{
  const OrientedBox a{{2.0, 4.0}, Pose2(0.0, 0.0, 0.3)};
  EXPECT_TRUE(boxes_collide(a, a));
  EXPECT_FALSE(boxes_collide(a, {{2.0, 4.0}, Pose2(100.0, 0.0, 0.0)}));
  // 4 long, 2 wide, centers 3 apart along heading: half extents 2 + 2 > 3
  EXPECT_TRUE(boxes_collide({{4.0, 2.0}, Pose2(0, 0, 0)}, {{4.0, 2.0}, Pose2(3, 0, 0)}));
  EXPECT_FALSE(boxes_collide({{4.0, 2.0}, Pose2(0, 0, 0)}, {{4.0, 2.0}, Pose2(4.01, 0, 0)}));
}

TEST(BoxesCollide, TouchingEdgesCount)
{
  EXPECT_TRUE(boxes_collide({{4.0, 2.0}, Pose2(0, 0, 0)}, {{4.0, 2.0}, Pose2(4.0, 0, 0)}));
}

TEST(BoxesCollide, DiamondCornerIntoSquareEdge)
{
  // diamond reaching 0.1 m into a square across its edge
  const OrientedBox square{{2.0, 2.0}, Pose2(0, 0, 0)};
  const double half_diag = std::sqrt(2.0);
  const OrientedBox diamond{{2.0, 2.0}, Pose2(1.0 + half_diag - 0.1, 0.0, kPi / 4)};
  EXPECT_TRUE(boxes_collide(square, diamond));
  const OrientedBox apart{{2.0, 2.0}, Pose2(1.0 + half_diag + 0.1, 0.0, kPi / 4)};
  EXPECT_FALSE(boxes_collide(square, apart));
}

TEST(BoxesCollide, AgreesWithRasterOracle)
{
  std::mt19937_64 rng(99);
  int overlaps = 0;
  for (int i = 0; i < 300; ++i) {
    const auto [a, b] = testing::random_box_pair(rng);
    const bool expect = testing::raster_collide(a, b);
    overlaps += expect ? 1 : 0;
    ASSERT_EQ(boxes_collide(a, b), expect) << "pair " << i;
    ASSERT_EQ(boxes_collide(b, a), expect) << "pair " << i;
  }
  // the generator must exercise both outcomes
  EXPECT_GT(overlaps, 30);
  EXPECT_LT(overlaps, 270);
}

TEST(PointInDrivable, SpecCases)
{
  MapModel map;
  map.drivable_area.push_back({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  EXPECT_TRUE(point_in_drivable({0.5, 0.5}, map));
  EXPECT_FALSE(point_in_drivable({1000.5, 0.5}, map));
  EXPECT_TRUE(point_in_drivable({0.5, 0.0}, map));
  EXPECT_TRUE(point_in_drivable({1.0, 1.0}, map));
}

TEST(PointInDrivable, IntersectionTemplate)
{
  const auto map = make_map(MapTemplate::FourWayIntersection);
  EXPECT_TRUE(point_in_drivable({0.0, 0.0}, map));
  EXPECT_TRUE(point_in_drivable({50.0, -2.0}, map));
  EXPECT_FALSE(point_in_drivable({50.0, 50.0}, map));
}

TEST(NormalizeAngle, WrapsIntoHalfOpenRange)
{
  EXPECT_NEAR(normalize_angle(3 * kPi), kPi, 1e-12);
  EXPECT_NEAR(normalize_angle(-kPi / 2 + 4 * kPi), -kPi / 2, 1e-12);
  EXPECT_NEAR(angle_diff(deg2rad(-170), deg2rad(170)), deg2rad(20), 1e-12);
}

TEST(PolygonPredicates, SimpleAndSelfIntersecting)
{
  const std::vector<Vec2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const std::vector<Vec2> bowtie{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  EXPECT_TRUE(polygon_is_simple(square));
  EXPECT_FALSE(polygon_is_simple(bowtie));
  EXPECT_TRUE(segments_intersect({0, 0}, {1, 1}, {0, 1}, {1, 0}));
  EXPECT_NEAR(point_segment_distance({0.5, 2.0}, {0, 0}, {1, 0}), 2.0, 1e-12);
}

}  // namespace
}  // namespace scenesplat
