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

#include <map>

#include "scenesplat/common/error.hpp"
#include "scenesplat/eval/benchmarks.hpp"
#include "scenesplat/eval/generator.hpp"
#include "scenesplat/eval/maps.hpp"
#include "support/models.hpp"

namespace scenesplat
{
namespace
{

const MotionReport & motion_report()
{
  static const MotionReport r = run_motion_benchmark(conflict_suite(), RefinementConfig{});
  return r;
}

TEST(TaskSuite, CategorySizes)
{
  const auto suite = task_suite();
  ASSERT_EQ(suite.size(), 38u);
  std::map<TaskCategory, int> per;
  for (const auto & c : suite) {
    ++per[c.category];
  }
  EXPECT_EQ(per[TaskCategory::AddVehicle], 6);
  EXPECT_EQ(per[TaskCategory::AddObject], 9);
  EXPECT_EQ(per[TaskCategory::AddPedestrian], 7);
  EXPECT_EQ(per[TaskCategory::ModifyVehicle], 5);
  EXPECT_EQ(per[TaskCategory::ModifyPedestrian], 5);
  EXPECT_EQ(per[TaskCategory::Remove], 6);
  EXPECT_NO_THROW(validate_scenario(task_base_scene()));
}

TEST(TaskSuite, EmptyScriptGivesEmptyTable)
{
  const auto m = run_task_benchmark({}, task_base_scene(), testing::trained().edit_models(), {}, {});
  EXPECT_EQ(m.total.total, 0u);
  EXPECT_EQ(m.total.rate(), 0.0);
  EXPECT_TRUE(m.outcomes.empty());
  for (const auto & c : m.per_category) {
    EXPECT_EQ(c.total, 0u);
  }
}

TEST(TaskSuite, MalformedCommandsFailGracefully)
{
  const auto cases = malformed_task_cases();
  ASSERT_FALSE(cases.empty());
  TaskMetrics m;
  ASSERT_NO_THROW(m = run_task_benchmark(cases, task_base_scene(), testing::trained().edit_models(), {}, {}));
  ASSERT_EQ(m.outcomes.size(), cases.size());
  for (const auto & o : m.outcomes) {
    EXPECT_FALSE(o.completed) << o.command;
    EXPECT_FALSE(o.error.empty()) << o.command;
  }
}

TEST(MotionSuite, SizeAndBaseScenesValid)
{
  const auto suite = conflict_suite();
  ASSERT_EQ(suite.size(), 20u);
  for (const auto & c : suite) {
    EXPECT_NO_THROW(validate_scenario(c.scene)) << c.name;
    EXPECT_FALSE(c.edited.empty()) << c.name;
  }
}

TEST(MotionSuite, AllStaticSuiteHasZeroRates)
{
  MotionCase c;
  c.name = "parked";
  c.scene.map = make_map(MapTemplate::StraightRoad);
  c.scene.horizon = 40;
  c.scene.agents.push_back(make_ego(Pose2(-20.0, -2.0, 0.0), 40, c.scene.timestep));
  AgentNode parked = make_ego(Pose2(10.0, 2.0, kPi), 40, c.scene.timestep);
  parked.id = AgentId{1};
  parked.is_ego = false;
  c.scene.agents.push_back(parked);
  c.edited.push_back({AgentId{1}, parked.trajectory, 0});
  const auto r = run_motion_benchmark({c}, RefinementConfig{});
  EXPECT_EQ(r.refined.count, 1u);
  EXPECT_EQ(r.refined.failure, 0.0);
  EXPECT_EQ(r.bypass.failure, 0.0);
  EXPECT_EQ(r.bypass.collision_veh, 0.0);
  EXPECT_EQ(r.bypass.offroad, 0.0);
  EXPECT_EQ(aggregate({}).count, 0u);
  EXPECT_EQ(aggregate({}).failure, 0.0);
}

TEST(MotionSuite, BypassNeverBeatsRefinement)
{
  const auto & r = motion_report();
  ASSERT_EQ(r.outcomes.size(), 20u);
  for (const auto & o : r.outcomes) {
    EXPECT_GE(o.bypass.failure, o.refined.failure) << o.name;
  }
  EXPECT_GE(r.bypass.failure, r.refined.failure);
}

TEST(MotionSuite, BoxCanyonIsUnresolvable)
{
  const auto & r = motion_report();
  bool seen = false;
  for (const auto & o : r.outcomes) {
    if (o.name == "box_canyon") {
      seen = true;
      EXPECT_TRUE(o.refined.failure);
      EXPECT_TRUE(o.bypass.failure);
      EXPECT_GT(o.unresolved, 0u);
    }
  }
  EXPECT_TRUE(seen);
}

TEST(MotionSuite, RefinedRollout)
{
  const auto & r = motion_report();
  EXPECT_LE(r.refined.failure, 0.10);
  EXPECT_GE(r.bypass.failure, 0.5);
}

TEST(Report, DeterministicSerialization)
{
  BenchSpec spec;
  spec.ambiguity_cases = 6;
  const auto a = serialize_report(run_querying(spec));
  const auto b = serialize_report(run_querying(spec));
  EXPECT_EQ(a, b);
  BenchmarkReport empty;
  EXPECT_EQ(serialize_report(empty), serialize_report(empty));
  EXPECT_NO_THROW(render_tables(empty));
}

TEST(Report, MotionSerializationStable)
{
  BenchmarkReport r;
  r.motion = motion_report();
  const auto text = serialize_report(r);
  BenchmarkReport again;
  again.motion = run_motion_benchmark(conflict_suite(), RefinementConfig{});
  EXPECT_EQ(serialize_report(again), text);
}

TEST(BenchSpec, RoundTrip)
{
  BenchSpec spec;
  spec.query_seed = 99;
  spec.ambiguity_cases = 12;
  spec.training.jitter = 0.2;
  spec.include_malformed = false;
  const auto text = serialize_bench_spec(spec);
  const auto parsed = parse_bench_spec(text);
  EXPECT_EQ(serialize_bench_spec(parsed), text);
  EXPECT_EQ(parsed.query_seed, 99u);
  EXPECT_EQ(parsed.ambiguity_cases, 12);
  EXPECT_DOUBLE_EQ(parsed.training.jitter, 0.2);
  EXPECT_FALSE(parsed.include_malformed);
}

TEST(BenchSpec, RejectsMalformed)
{
  EXPECT_THROW(parse_bench_spec("{"), Error);
  EXPECT_THROW(parse_bench_spec(R"({"ambiguity_cases": "many"})"), Error);
}

}  // namespace
}  // namespace scenesplat
