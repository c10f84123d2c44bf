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

#include "scenesplat/eval/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "scenesplat/alignment/text_encoder.hpp"
#include "scenesplat/common/error.hpp"
#include "scenesplat/common/json_writer.hpp"
#include "scenesplat/common/random.hpp"
#include "scenesplat/edit/command.hpp"
#include "scenesplat/eval/generator.hpp"
#include "scenesplat/eval/maps.hpp"
#include "scenesplat/scene/path.hpp"
#include "scenesplat/scene/scenario_io.hpp"

namespace scenesplat
{

AlignmentModel train_default_model(const TrainingSetup & setup, const Codebooks & books)
{
  const auto corpus =
    generate_corpus(balanced_spec(setup.corpus_seed, setup.per_vehicle, setup.per_pedestrian, setup.jitter));
  const auto data = to_training_set(corpus, books);
  return {train_projectors(data, books, setup.training).projectors, setup.training};
}

// ---- querying ---------------------------------------------------------------

namespace
{

constexpr int kSuiteHorizon = 90;
constexpr double kSuiteDt = 0.1;
constexpr double kSectorJitterDeg = 15.0;

const std::map<std::string_view, std::string_view> & query_phrases()
{
  static const std::map<std::string_view, std::string_view> phrases{
    {proto::kStationary, "parked"},
    {proto::kStraight, "going straight"},
    {proto::kTurnLeft, "turning left"},
    {proto::kTurnRight, "turning right"},
    {proto::kUTurn, "making a u turn"},
    {proto::kStopping, "stopping"},
    {proto::kStarting, "starting accelerating"},
    {proto::kStanding, "standing still"},
    {proto::kWalkingStraight, "walking straight"},
    {proto::kCrossingLeftToRight, "crossing from left to right"},
    {proto::kCrossingRightToLeft, "crossing from right to left"},
    {proto::kFront, "in front"},
    {proto::kFrontLeft, "front left"},
    {proto::kLeft, "on the left side"},
    {proto::kRearLeft, "rear left"},
    {proto::kBehind, "behind"},
    {proto::kRearRight, "rear right"},
    {proto::kRight, "on the right side"},
    {proto::kFrontRight, "front right"},
  };
  return phrases;
}

std::vector<std::string> motion_names(AgentKind kind)
{
  std::vector<std::string> out;
  const auto book = kind == AgentKind::Pedestrian ? CodebookKind::PedestrianMotion : CodebookKind::VehicleMotion;
  for (const auto & [name, desc] : default_entries(book)) {
    out.push_back(name);
  }
  return out;
}

/// Realizes `motion` and expresses it in the frame of an ego at the origin
/// so that the agent's mean position falls in `sector`.
AgentNode agent_in_ego_frame(
  AgentKind kind, const std::string & motion, std::string_view sector, std::mt19937_64 & rng)
{
  auto realized = realize_motion(
    {kind, motion, std::string(sector)}, MapTemplate::FourWayIntersection, kSuiteHorizon + 1, kSuiteDt, rng);
  const double bearing = sector_center(sector) + deg2rad(uniform(rng, -kSectorJitterDeg, kSectorJitterDeg));
  const double range = uniform(rng, 10.0, 25.0);
  const double heading = realized.ego_headings[uniform_index(rng, realized.ego_headings.size())];
  const Pose2 ego = ego_pose_for(mean_position(realized.agent.trajectory), heading, bearing, range);
  AgentNode agent = std::move(realized.agent);
  for (auto & p : agent.trajectory.points) {
    p.pose = Pose2(ego.to_local(p.pose.position()), p.pose.heading() - ego.heading());
  }
  return agent;
}

}  // namespace

std::vector<QueryCase> ambiguity_suite(std::uint64_t seed, int cases)
{
  if (cases < 0) {
    throw Error(ErrorCode::InvalidInput, "case count must be non-negative");
  }
  std::mt19937_64 rng(seed);
  const auto & phrases = query_phrases();
  std::vector<QueryCase> out;
  for (int i = 0; i < cases; ++i) {
    // vehicles and pedestrians alternate in pairs; motion and location ties alternate
    const AgentKind kind = (i / 2) % 2 == 0 ? AgentKind::Vehicle : AgentKind::Pedestrian;
    const bool motion_tie = (i / 4) % 3 != 2;
    const std::string caption =
      kind == AgentKind::Vehicle ? "black sedan car" : "person with a red backpack";
    const auto motions = motion_names(kind);

    std::string m_truth;
    std::string m_other;
    std::string_view s_truth;
    std::string_view s_other;
    m_truth = motions[uniform_index(rng, motions.size())];
    s_truth = kSectorNames[uniform_index(rng, kSectorNames.size())];
    if (motion_tie) {
      do {
        m_other = motions[uniform_index(rng, motions.size())];
      } while (m_other == m_truth);
      s_other = s_truth;
    } else {
      m_other = m_truth;
      do {
        s_other = kSectorNames[uniform_index(rng, kSectorNames.size())];
      } while (s_other == s_truth);
    }

    AgentNode truth = agent_in_ego_frame(kind, m_truth, s_truth, rng);
    AgentNode other = agent_in_ego_frame(kind, m_other, s_other, rng);
    const bool truth_first = i % 2 == 0;
    truth.id = AgentId{truth_first ? 1u : 2u};
    other.id = AgentId{truth_first ? 2u : 1u};
    truth.appearance_caption = caption;
    other.appearance_caption = caption;

    QueryCase qc;
    qc.scene.map = make_map(MapTemplate::FourWayIntersection);
    qc.scene.horizon = kSuiteHorizon;
    qc.scene.timestep = kSuiteDt;
    qc.scene.seed = seed;
    qc.scene.agents.push_back(make_ego(Pose2(0.0, 0.0, 0.0), kSuiteHorizon + 1, kSuiteDt));
    if (truth_first) {
      qc.scene.agents.push_back(std::move(truth));
      qc.scene.agents.push_back(std::move(other));
    } else {
      qc.scene.agents.push_back(std::move(other));
      qc.scene.agents.push_back(std::move(truth));
    }
    const std::string_view cue = motion_tie ? phrases.at(m_truth) : phrases.at(s_truth);
    qc.request.text = caption + " " + std::string(cue);
    qc.truth = AgentId{truth_first ? 1u : 2u};
    qc.kind = kind;
    out.push_back(std::move(qc));
  }
  return out;
}

QueryMetrics run_query_benchmark(
  const std::vector<QueryCase> & cases, const QueryModels & models, const QueryWeights & weights)
{
  QueryMetrics m;
  std::size_t veh_ok = 0;
  std::size_t ped_ok = 0;
  for (const auto & c : cases) {
    bool ok = false;
    try {
      ok = query(c.scene, c.request, models, weights).chosen == c.truth;
    } catch (const Error &) {
      ok = false;
    }
    if (c.kind == AgentKind::Pedestrian) {
      ++m.pedestrian_cases;
      ped_ok += ok ? 1 : 0;
    } else {
      ++m.vehicle_cases;
      veh_ok += ok ? 1 : 0;
    }
  }
  auto ratio = [](std::size_t a, std::size_t b) { return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b); };
  m.vehicle = ratio(veh_ok, m.vehicle_cases);
  m.pedestrian = ratio(ped_ok, m.pedestrian_cases);
  m.total = ratio(veh_ok + ped_ok, m.vehicle_cases + m.pedestrian_cases);
  return m;
}

// ---- task completion ----------------------------------------------------------

std::string_view to_string(TaskCategory category)
{
  switch (category) {
    case TaskCategory::AddVehicle:
      return "add_vehicle";
    case TaskCategory::AddObject:
      return "add_object";
    case TaskCategory::AddPedestrian:
      return "add_pedestrian";
    case TaskCategory::ModifyVehicle:
      return "modify_vehicle";
    case TaskCategory::ModifyPedestrian:
      return "modify_pedestrian";
    case TaskCategory::Remove:
      return "remove";
  }
  return "add_vehicle";
}

namespace
{

constexpr BoxDims kCar{4.5, 1.9};
constexpr BoxDims kPed{0.5, 0.5};

std::vector<double> speeds(const std::function<double(int)> & v, int frames = kSuiteHorizon + 1)
{
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(frames));
  for (int k = 0; k < frames; ++k) {
    out.push_back(v(k));
  }
  return out;
}

std::function<double(int)> constant(double v)
{
  return [v](int) { return v; };
}

/// Cruise at v0, then brake at `decel` from `t_brake` seconds.
std::function<double(int)> braking(double v0, double t_brake, double decel)
{
  return [=](int k) { return std::max(0.0, k * kSuiteDt <= t_brake ? v0 : v0 - decel * (k * kSuiteDt - t_brake)); };
}

Trajectory drive(const Path & path, const std::function<double(int)> & v)
{
  return follow_path(path, speeds(v), kSuiteDt);
}

Trajectory straight_drive(const Pose2 & start, const std::function<double(int)> & v)
{
  Path p(start);
  p.straight(400.0);
  return drive(p, v);
}

Trajectory parked(const Pose2 & pose) { return stationary_track(pose, kSuiteHorizon + 1, kSuiteDt); }

class SceneBuilder
{
public:
  explicit SceneBuilder(MapTemplate map)
  {
    scene_.map = make_map(map);
    scene_.horizon = kSuiteHorizon;
    scene_.timestep = kSuiteDt;
  }

  AgentId add(AgentKind kind, BoxDims dims, std::string caption, Trajectory traj, bool ego = false)
  {
    AgentNode a;
    a.id = AgentId{static_cast<std::uint32_t>(scene_.agents.size())};
    a.kind = kind;
    a.footprint = dims;
    a.height = kind == AgentKind::Pedestrian ? 1.7 : kind == AgentKind::StaticObject ? 1.0 : 1.5;
    a.appearance_caption = std::move(caption);
    a.trajectory = std::move(traj);
    a.is_ego = ego;
    scene_.agents.push_back(std::move(a));
    return scene_.agents.back().id;
  }

  AgentId edited(AgentKind kind, BoxDims dims, std::string caption, Trajectory traj)
  {
    const AgentId id = add(kind, dims, std::move(caption), std::move(traj));
    edited_.push_back({id, scene_.agents.back().trajectory, 0});
    return id;
  }

  /// Ego parked at the far west end of the westbound lane.
  void distant_ego() { add(AgentKind::Vehicle, kCar, "ego vehicle", parked({-95.0, 2.0, kPi}), true); }

  MotionCase finish(std::string name)
  {
    validate_scenario(scene_);
    return {std::move(name), std::move(scene_), std::move(edited_)};
  }

  Scenario scene() { return scene_; }

private:
  Scenario scene_;
  std::vector<EditedAgent> edited_;
};

}  // namespace

Scenario task_base_scene()
{
  SceneBuilder b(MapTemplate::FourWayIntersection);
  b.add(AgentKind::Vehicle, {4.6, 1.9}, "ego vehicle", parked({-25.0, -2.0, 0.0}), true);
  b.add(AgentKind::Vehicle, kCar, "black sedan car", straight_drive({60.0, 2.0, kPi}, constant(6.0)));
  b.add(AgentKind::Vehicle, {5.5, 2.1}, "white pickup truck", straight_drive({2.0, -60.0, kPi / 2}, constant(5.0)));
  b.add(AgentKind::Vehicle, {4.8, 2.0}, "silver suv parked", parked({30.0, -2.0, 0.0}));
  b.add(AgentKind::Pedestrian, kPed, "person with a red backpack", straight_drive({-50.0, -6.0, 0.0}, constant(1.3)));
  b.add(AgentKind::Pedestrian, kPed, "pedestrian in a green coat", parked({-10.0, 6.5, 0.0}));
  b.add(AgentKind::StaticObject, {0.6, 0.6}, "orange traffic cone", parked({-15.0, -5.0, 0.0}));
  b.add(AgentKind::Cyclist, {1.8, 0.6}, "blue bicycle cyclist", straight_drive({-2.0, 50.0, -kPi / 2}, constant(4.0)));
  b.add(AgentKind::Vehicle, kCar, "yellow taxi", straight_drive({95.0, 2.0, kPi}, constant(6.0)));
  Scenario s = b.scene();
  s.seed = 38;
  validate_scenario(s);
  return s;
}

std::vector<TaskCase> task_suite()
{
  using C = TaskCategory;
  return {
    {C::AddVehicle, R"(add asset="yellow bulldozer" anchor="black sedan car" offset=behind:10)"},
    {C::AddVehicle, R"(add asset="police car" anchor="black sedan car" action=follow distance=12)"},
    {C::AddVehicle, R"(add asset="red suv" at=-60,-2 direction=0 action=go_straight speed=3)"},
    {C::AddVehicle, R"(add asset="school bus" at=2,-40 direction=90 action=turn_right speed=5)"},
    {C::AddVehicle, R"(add asset="white sedan" at=-2,40 direction=-90 action=turn_left speed=5)"},
    {C::AddVehicle, R"(add asset="yellow taxi cab" anchor="white pickup truck" offset=ahead:15 action=go_straight speed=5)"},

    {C::AddObject, R"(add asset="traffic cone" anchor="black sedan car" offset=ahead:20)"},
    {C::AddObject, R"(add asset="concrete barrier" at=-2,20 direction=0)"},
    {C::AddObject, R"(add asset="stop sign" at=6,-6)"},
    {C::AddObject, R"(add asset="warning sign" anchor="silver suv" offset=behind:6)"},
    {C::AddObject, R"(add asset="trash bin" at=-12,7)"},
    {C::AddObject, R"(add asset="barrel" anchor="white pickup truck" offset=ahead:25)"},
    {C::AddObject, R"(add asset="cardboard box debris" at=-40,2)"},
    {C::AddObject, R"(add asset="traffic cone" anchor="person with a red backpack" offset=ahead:5)"},
    {C::AddObject, R"(add asset="concrete barrier" at=10,2 direction=90 scale=1.5)"},

    {C::AddPedestrian, R"(add asset="pedestrian walking from left to right with a red backpack" at=20,6)"},
    {C::AddPedestrian, R"(add asset="pedestrian crossing from right to left" at=-20,-6)"},
    {C::AddPedestrian, R"(add asset="child" anchor="pedestrian in a green coat" offset=left:2)"},
    {C::AddPedestrian, R"(add asset="jogger" at=-40,-6.5)"},
    {C::AddPedestrian, R"(add asset="person with umbrella" at=-5,7)"},
    {C::AddPedestrian, R"(add asset="pedestrian" at=15,-6 direction=180 action=go_straight speed=1.2)"},
    {C::AddPedestrian, R"(add asset="pedestrian" at=-8,8 direction=-90 action=go_straight speed=1.4)"},

    {C::ModifyVehicle, R"(modify target="black sedan car" action=stop start_time=2)"},
    {C::ModifyVehicle, R"(modify target="white pickup truck" action=turn_left speed=9 start_time=1)"},
    {C::ModifyVehicle, R"(modify target="yellow taxi" action=accelerate)"},
    {C::ModifyVehicle, R"(modify target="blue bicycle cyclist" action=decelerate start_time=1)"},
    {C::ModifyVehicle, R"(modify target="silver suv" action=go_straight speed=6)"},

    {C::ModifyPedestrian, R"(modify target="person with a red backpack" action=stop start_time=2)"},
    {C::ModifyPedestrian, R"(modify target="pedestrian in a green coat" action=go_straight speed=1.2)"},
    {C::ModifyPedestrian, R"(modify target="person with a red backpack" action=turn_left start_time=1)"},
    {C::ModifyPedestrian, R"(modify target="person with a red backpack" action=accelerate)"},
    {C::ModifyPedestrian, R"(modify target="pedestrian in a green coat" action=turn_right speed=1)"},

    {C::Remove, R"(remove target="black sedan car")"},
    {C::Remove, R"(remove target="orange traffic cone")"},
    {C::Remove, R"(remove group=all_moving_vehicles)"},
    {C::Remove, R"(remove group=all_moving_pedestrians)"},
    {C::Remove, R"(remove group=all_static_objects)"},
    {C::Remove, R"(remove target="pedestrian in a green coat")"},
  };
}

std::vector<TaskCase> malformed_task_cases()
{
  using C = TaskCategory;
  return {
    {C::AddObject, R"(add asset="traffic cone" offset=behind:x)"},
    {C::ModifyVehicle, R"(modify target="black sedan car")"},
    {C::Remove, R"(teleport target="black sedan car")"},
    {C::AddVehicle, R"(add asset="police car" anchor="black sedan car" speed=-3 action=go_straight)"},
    {C::AddPedestrian, R"(add asset="pedestrian at=1,2)"},
  };
}

TaskMetrics run_task_benchmark(
  const std::vector<TaskCase> & cases, const Scenario & base, const EditModels & models,
  const EditConfig & edit_config, const RefinementConfig & refine_config)
{
  TaskMetrics m;
  m.outcomes.resize(cases.size());
  for (std::size_t i = 0; i < cases.size(); ++i) {
    TaskOutcome & o = m.outcomes[i];
    o.category = cases[i].category;
    o.command = cases[i].command;
    try {
      const EditCommand cmd = parse_command(cases[i].command);
      o.grammar_valid = true;
      const EditResult edit = apply_edit(base, cmd, models, edit_config);
      const RolloutResult rollout = refine(edit.scenario, edit.edited, refine_config);
      o.completed = rollout.valid;
      if (!o.completed) {
        o.error = "refinement left unresolved conflicts";
      }
    } catch (const Error & e) {
      o.error = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    auto & cat = m.per_category[static_cast<std::size_t>(o.category)];
    ++cat.total;
    ++m.total.total;
    if (o.completed) {
      ++cat.completed;
      ++m.total.completed;
    }
  }
  return m;
}

// ---- motion generation -----------------------------------------------------------

std::vector<MotionCase> conflict_suite()
{
  using K = AgentKind;
  std::vector<MotionCase> suite;
  const auto straight = MapTemplate::StraightRoad;
  const auto junction = MapTemplate::FourWayIntersection;

  {
    SceneBuilder b(straight);
    b.distant_ego();
    b.edited(K::Vehicle, kCar, "braking leader", straight_drive({15.0, -2.0, 0.0}, braking(8.0, 2.0, 3.0)));
    b.add(K::Vehicle, kCar, "follower", straight_drive({0.0, -2.0, 0.0}, constant(8.0)));
    suite.push_back(b.finish("rear_end_braking"));
  }
  {
    SceneBuilder b(straight);
    b.distant_ego();
    b.edited(K::Vehicle, kCar, "slow cut in", straight_drive({25.0, -2.0, 0.0}, constant(3.0)));
    b.add(K::Vehicle, kCar, "through car", straight_drive({0.0, -2.0, 0.0}, constant(8.0)));
    suite.push_back(b.finish("slow_insert_ahead"));
  }
  {
    SceneBuilder b(junction);
    b.distant_ego();
    b.edited(K::Vehicle, kCar, "northbound", straight_drive({2.0, -40.0, kPi / 2}, constant(8.0)));
    b.add(K::Vehicle, kCar, "eastbound", straight_drive({-40.0, -2.0, 0.0}, constant(8.0)));
    suite.push_back(b.finish("junction_crossing"));
  }
  {
    SceneBuilder b(MapTemplate::CrosswalkRoad);
    b.distant_ego();
    b.edited(K::Pedestrian, kPed, "crossing pedestrian", straight_drive({0.0, -7.0, kPi / 2}, constant(1.4)));
    b.add(K::Vehicle, kCar, "approaching car", straight_drive({-30.0, -2.0, 0.0}, constant(8.0)));
    suite.push_back(b.finish("pedestrian_crossing"));
  }
  {
    SceneBuilder b(straight);
    b.distant_ego();
    b.edited(K::StaticObject, {0.6, 0.6}, "cone", parked({40.0, -2.0, 0.0}));
    b.add(K::Vehicle, kCar, "driver", straight_drive({0.0, -2.0, 0.0}, constant(7.0)));
    suite.push_back(b.finish("cone_in_lane"));
  }
  {
    SceneBuilder b(straight);
    b.distant_ego();
    b.edited(K::StaticObject, {0.6, 0.6}, "cone", parked({8.0, -6.0, 0.0}));
    b.add(K::Pedestrian, kPed, "walker", straight_drive({0.0, -6.0, 0.0}, constant(1.4)));
    suite.push_back(b.finish("cone_on_sidewalk"));
  }
  {
    SceneBuilder b(straight);
    b.distant_ego();
    b.edited(K::StaticObject, {0.6, 2.5}, "barrier", parked({40.0, -2.0, 0.0}));
    b.add(K::Vehicle, kCar, "driver", straight_drive({0.0, -2.0, 0.0}, constant(6.0)));
    b.add(K::Vehicle, kCar, "oncoming", straight_drive({80.0, 2.0, kPi}, constant(6.0)));
    suite.push_back(b.finish("barrier_with_oncoming"));
  }
  {
    SceneBuilder b(junction);
    b.distant_ego();
    Path turn({-30.0, -2.0, 0.0});
    turn.straight(24.0).arc(8.0, kPi / 2).straight(200.0);
    b.edited(K::Vehicle, kCar, "left turner", drive(turn, constant(6.0)));
    b.add(K::Vehicle, kCar, "oncoming", straight_drive({40.0, 2.0, kPi}, constant(8.0)));
    suite.push_back(b.finish("left_turn_across_oncoming"));
  }
  {
    SceneBuilder b(straight);
    b.distant_ego();
    b.edited(K::Vehicle, kCar, "hard braking leader", straight_drive({24.0, -2.0, 0.0}, braking(8.0, 2.0, 4.0)));
    b.add(K::Vehicle, kCar, "middle", straight_drive({12.0, -2.0, 0.0}, constant(8.0)));
    b.add(K::Vehicle, kCar, "last", straight_drive({0.0, -2.0, 0.0}, constant(8.0)));
    suite.push_back(b.finish("chain_braking"));
  }
  {
    SceneBuilder b(straight);
    b.distant_ego();
    b.edited(K::Vehicle, kCar, "fast edited", straight_drive({0.0, -2.0, 0.0}, constant(10.0)));
    b.add(K::Vehicle, kCar, "slow ahead", straight_drive({25.0, -2.0, 0.0}, constant(5.0)));
    suite.push_back(b.finish("fast_behind_slow"));
  }
  {
    SceneBuilder b(junction);
    b.distant_ego();
    b.edited(K::Pedestrian, kPed, "crosswalk walker", straight_drive({6.0, -9.0, kPi / 2}, constant(1.4)));
    Path turn({2.0, -40.0, kPi / 2});
    turn.straight(30.0).arc(8.0, -kPi / 2).straight(200.0);
    b.add(K::Vehicle, kCar, "right turner", drive(turn, constant(6.0)));
    suite.push_back(b.finish("right_turn_vs_pedestrian"));
  }
  {
    SceneBuilder b(straight);
    b.distant_ego();
    b.edited(K::Vehicle, kCar, "parked car", parked({30.0, -2.0, 0.0}));
    b.add(K::Vehicle, kCar, "driver", straight_drive({0.0, -2.0, 0.0}, constant(6.0)));
    suite.push_back(b.finish("parked_in_lane"));
  }
  {
    SceneBuilder b(junction);
    b.distant_ego();
    Path turn({2.0, -30.0, kPi / 2});
    turn.straight(20.0).arc(8.0, -kPi / 2).straight(200.0);
    b.edited(K::Vehicle, kCar, "merging right turner", drive(turn, constant(6.0)));
    b.add(K::Vehicle, kCar, "eastbound", straight_drive({-20.0, -2.0, 0.0}, constant(6.0)));
    suite.push_back(b.finish("right_turn_merge"));
  }
  {
    SceneBuilder b(straight);
    b.distant_ego();
    b.edited(K::Pedestrian, kPed, "pedestrian standing in lane", parked({30.0, -2.0, 0.0}));
    b.add(K::Vehicle, kCar, "driver", straight_drive({0.0, -2.0, 0.0}, constant(6.0)));
    suite.push_back(b.finish("pedestrian_in_lane"));
  }
  {
    SceneBuilder b(junction);
    b.distant_ego();
    b.edited(K::Cyclist, {1.8, 0.6}, "cyclist", straight_drive({-2.0, 25.0, -kPi / 2}, constant(5.0)));
    b.add(K::Vehicle, kCar, "eastbound", straight_drive({-38.0, -2.0, 0.0}, constant(8.0)));
    suite.push_back(b.finish("cyclist_crossing"));
  }
  {
    SceneBuilder b(straight);
    b.distant_ego();
    b.edited(K::Vehicle, kCar, "lone driver", straight_drive({0.0, -2.0, 0.0}, constant(7.0)));
    b.add(K::Vehicle, kCar, "opposite lane", straight_drive({60.0, 2.0, kPi}, constant(5.0)));
    suite.push_back(b.finish("no_conflict"));
  }
  {
    SceneBuilder b(straight);
    b.distant_ego();
    // reversing: heading east, moving west
    Trajectory rev = parked({20.0, -2.0, 0.0});
    for (std::size_t k = 0; k < rev.points.size(); ++k) {
      const double t = static_cast<double>(k) * kSuiteDt;
      rev.points[k].pose = Pose2(20.0 - 2.0 * t, -2.0, 0.0);
      rev.points[k].speed = 2.0;
    }
    b.edited(K::Vehicle, kCar, "reversing car", rev);
    b.add(K::Vehicle, kCar, "waiting car", parked({4.0, -2.0, 0.0}));
    suite.push_back(b.finish("reverse_toward_waiting_car"));
  }
  {
    SceneBuilder b(MapTemplate::CrosswalkRoad);
    b.distant_ego();
    b.edited(K::Pedestrian, kPed, "first walker", straight_drive({-0.5, -7.0, kPi / 2}, constant(1.3)));
    b.edited(K::Pedestrian, kPed, "second walker", straight_drive({0.8, 7.5, -kPi / 2}, constant(1.5)));
    b.add(K::Vehicle, kCar, "approaching car", straight_drive({-32.0, -2.0, 0.0}, constant(8.0)));
    b.add(K::Vehicle, kCar, "oncoming car", straight_drive({35.0, 2.0, kPi}, constant(8.0)));
    suite.push_back(b.finish("pedestrian_group_crossing"));
  }
  {
    SceneBuilder b(straight);
    b.distant_ego();
    b.edited(K::Vehicle, kCar, "accelerating", straight_drive({0.0, -2.0, 0.0}, [](int k) {
      return std::min(12.0, 5.0 + 2.0 * k * kSuiteDt);
    }));
    b.add(K::Vehicle, kCar, "queue head", straight_drive({48.0, -2.0, 0.0}, constant(2.0)));
    b.add(K::Vehicle, kCar, "queue tail", straight_drive({40.0, -2.0, 0.0}, constant(2.0)));
    suite.push_back(b.finish("accelerate_into_queue"));
  }
  {
    // barriers closer than min_gap on every side from the first frame
    SceneBuilder b(straight);
    b.distant_ego();
    b.add(K::Vehicle, kCar, "boxed in", straight_drive({0.0, -2.0, 0.0}, constant(4.0)));
    b.edited(K::StaticObject, {0.6, 3.0}, "barrier ahead", parked({3.8, -2.0, 0.0}));
    b.edited(K::StaticObject, {0.6, 3.0}, "barrier behind", parked({-3.8, -2.0, 0.0}));
    b.edited(K::StaticObject, {6.0, 0.6}, "barrier left", parked({0.0, -0.2, 0.0}));
    b.edited(K::StaticObject, {6.0, 0.6}, "barrier right", parked({0.0, -3.8, 0.0}));
    suite.push_back(b.finish("box_canyon"));
  }
  return suite;
}

MotionReport run_motion_benchmark(const std::vector<MotionCase> & suite, const RefinementConfig & config)
{
  MotionReport report;
  report.outcomes.resize(suite.size());
  const auto n = static_cast<std::ptrdiff_t>(suite.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const MotionCase & c = suite[static_cast<std::size_t>(i)];
    MotionOutcome & o = report.outcomes[static_cast<std::size_t>(i)];
    o.name = c.name;
    RefinementConfig cfg = config;
    cfg.bypass = false;
    const auto refined = refine(c.scene, c.edited, cfg);
    cfg.bypass = true;
    const auto bypass = refine(c.scene, c.edited, cfg);
    o.refined = validate(refined, c.scene);
    o.bypass = validate(bypass, c.scene);
    o.planned_conflicts = bypass.conflicts.size();
    o.unresolved = static_cast<std::size_t>(std::count_if(
      refined.conflicts.begin(), refined.conflicts.end(),
      [](const Conflict & x) { return x.resolution == Resolution::Unresolved; }));
  }
  std::vector<RolloutFlags> r;
  std::vector<RolloutFlags> b;
  for (const auto & o : report.outcomes) {
    r.push_back(o.refined);
    b.push_back(o.bypass);
  }
  report.refined = aggregate(r);
  report.bypass = aggregate(b);
  return report;
}

// ---- report -----------------------------------------------------------------

namespace
{

constexpr int kReportDigits = 6;

void write_query(JsonWriter & w, const QueryMetrics & m)
{
  w.begin_object();
  w.key("vehicle").value(m.vehicle);
  w.key("pedestrian").value(m.pedestrian);
  w.key("total").value(m.total);
  w.key("vehicle_cases").value(static_cast<std::uint64_t>(m.vehicle_cases));
  w.key("pedestrian_cases").value(static_cast<std::uint64_t>(m.pedestrian_cases));
  w.end_object();
}

void write_motion(JsonWriter & w, const MotionMetrics & m)
{
  w.begin_object(true);
  w.key("collision_veh").value(m.collision_veh);
  w.key("collision_ped").value(m.collision_ped);
  w.key("offroad").value(m.offroad);
  w.key("failure").value(m.failure);
  w.key("count").value(static_cast<std::uint64_t>(m.count));
  w.end_object();
}

void write_flags(JsonWriter & w, const RolloutFlags & f)
{
  w.begin_object(true);
  w.key("collision_veh").value(f.collision_veh);
  w.key("collision_ped").value(f.collision_ped);
  w.key("offroad").value(f.offroad);
  w.key("failure").value(f.failure);
  w.end_object();
}

std::string pct(double rate)
{
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(1);
  os << 100.0 * rate;
  return os.str();
}

std::string pad(std::string s, std::size_t width)
{
  if (s.size() < width) {
    s.insert(0, width - s.size(), ' ');
  }
  return s;
}

std::string left(std::string s, std::size_t width)
{
  if (s.size() < width) {
    s.append(width - s.size(), ' ');
  }
  return s;
}

}  // namespace

std::string serialize_report(const BenchmarkReport & report)
{
  JsonWriter w(kReportDigits);
  w.begin_object();
  if (report.querying) {
    w.key("querying").begin_object();
    w.key("full");
    write_query(w, report.querying->full);
    w.key("ablation_no_temporal");
    write_query(w, report.querying->ablation);
    w.end_object();
  }
  if (report.tasks) {
    const auto & t = *report.tasks;
    w.key("tasks").begin_object();
    w.key("categories").begin_array();
    for (auto c : kTaskCategories) {
      const auto & s = t.per_category[static_cast<std::size_t>(c)];
      w.begin_object(true)
        .key("category")
        .value(to_string(c))
        .key("completed")
        .value(static_cast<std::uint64_t>(s.completed))
        .key("total")
        .value(static_cast<std::uint64_t>(s.total))
        .key("rate")
        .value(s.rate())
        .end_object();
    }
    w.end_array();
    w.key("total").begin_object(true);
    w.key("completed").value(static_cast<std::uint64_t>(t.total.completed));
    w.key("total").value(static_cast<std::uint64_t>(t.total.total));
    w.key("rate").value(t.total.rate());
    w.end_object();
    w.key("commands").begin_array();
    for (const auto & o : t.outcomes) {
      w.begin_object(true)
        .key("category")
        .value(to_string(o.category))
        .key("command")
        .value(o.command)
        .key("grammar_valid")
        .value(o.grammar_valid)
        .key("completed")
        .value(o.completed)
        .key("error")
        .value(o.error)
        .end_object();
    }
    w.end_array();
    w.end_object();
  }
  if (report.motion) {
    const auto & m = *report.motion;
    w.key("motion").begin_object();
    w.key("refined");
    write_motion(w, m.refined);
    w.key("bypass");
    write_motion(w, m.bypass);
    w.key("delta_failure").value(m.bypass.failure - m.refined.failure);
    w.key("scenarios").begin_array();
    for (const auto & o : m.outcomes) {
      w.begin_object();
      w.key("name").value(o.name);
      w.key("planned_conflicts").value(static_cast<std::uint64_t>(o.planned_conflicts));
      w.key("unresolved").value(static_cast<std::uint64_t>(o.unresolved));
      w.key("refined");
      write_flags(w, o.refined);
      w.key("bypass");
      write_flags(w, o.bypass);
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_object();
  return w.str();
}

std::string render_tables(const BenchmarkReport & report)
{
  std::ostringstream os;
  if (report.querying) {
    const auto & q = *report.querying;
    os << "Object querying accuracy (%)\n";
    os << left("Method", 24) << pad("Vehicle", 9) << pad("Ped.", 9) << pad("Total", 9) << "\n";
    os << left("appearance only", 24) << pad(pct(q.ablation.vehicle), 9) << pad(pct(q.ablation.pedestrian), 9)
       << pad(pct(q.ablation.total), 9) << "\n";
    os << left("appearance + temporal", 24) << pad(pct(q.full.vehicle), 9) << pad(pct(q.full.pedestrian), 9)
       << pad(pct(q.full.total), 9) << "\n";
    os << "cases: " << q.full.vehicle_cases << " vehicle, " << q.full.pedestrian_cases << " pedestrian\n\n";
  }
  if (report.tasks) {
    const auto & t = *report.tasks;
    os << "Task completion (%)\n";
    os << left("", 10) << pad("Add Veh.", 10) << pad("Add Obj.", 10) << pad("Add Ped.", 10) << pad("Mod Veh.", 10)
       << pad("Mod Ped.", 10) << pad("Remove", 10) << pad("Total", 10) << "\n";
    os << left("rate", 10);
    for (auto c : kTaskCategories) {
      os << pad(pct(t.per_category[static_cast<std::size_t>(c)].rate()), 10);
    }
    os << pad(pct(t.total.rate()), 10) << "\n";
    os << left("count", 10);
    for (auto c : kTaskCategories) {
      const auto & s = t.per_category[static_cast<std::size_t>(c)];
      os << pad(std::to_string(s.completed) + "/" + std::to_string(s.total), 10);
    }
    os << pad(std::to_string(t.total.completed) + "/" + std::to_string(t.total.total), 10) << "\n\n";
  }
  if (report.motion) {
    const auto & m = *report.motion;
    os << "Motion generation (%)\n";
    os << left("Mode", 20) << pad("Coll. Veh.", 12) << pad("Coll. Ped.", 12) << pad("Off-road", 12)
       << pad("Failure", 12) << "\n";
    auto row = [&](const char * name, const MotionMetrics & x) {
      os << left(name, 20) << pad(pct(x.collision_veh), 12) << pad(pct(x.collision_ped), 12)
         << pad(pct(x.offroad), 12) << pad(pct(x.failure), 12) << "\n";
    };
    row("without refinement", m.bypass);
    row("with refinement", m.refined);
    os << "scenarios: " << m.refined.count << "\n";
  }
  return os.str();
}

// ---- benchmark spec file ---------------------------------------------------

BenchSpec parse_bench_spec(std::string_view text)
{
  BenchSpec spec;
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_object()) {
      throw Error(ErrorCode::Format, "bench spec must be an object");
    }
    auto get = [&](const nlohmann::json & obj, const char * key, auto & out) {
      if (obj.contains(key)) {
        out = obj.at(key).get<std::remove_reference_t<decltype(out)>>();
      }
    };
    get(j, "query_seed", spec.query_seed);
    get(j, "ambiguity_cases", spec.ambiguity_cases);
    get(j, "include_malformed", spec.include_malformed);
    if (j.contains("training")) {
      const auto & t = j.at("training");
      get(t, "corpus_seed", spec.training.corpus_seed);
      get(t, "per_vehicle", spec.training.per_vehicle);
      get(t, "per_pedestrian", spec.training.per_pedestrian);
      get(t, "jitter", spec.training.jitter);
      get(t, "epochs", spec.training.training.epochs);
      get(t, "learning_rate", spec.training.training.learning_rate);
      get(t, "seed", spec.training.training.seed);
    }
    if (j.contains("query")) {
      const auto & q = j.at("query");
      get(q, "tau_app", spec.query_weights.tau_app);
      get(q, "w_motion", spec.query_weights.w_motion);
      get(q, "w_location", spec.query_weights.w_location);
    }
    if (j.contains("refinement")) {
      const auto & r = j.at("refinement");
      get(r, "horizon_steps", spec.refinement.horizon_steps);
      get(r, "history_steps", spec.refinement.history_steps);
      get(r, "min_gap", spec.refinement.min_gap);
      get(r, "yield_time_margin", spec.refinement.yield_time_margin);
      get(r, "max_decel", spec.refinement.max_decel);
      get(r, "max_accel", spec.refinement.max_accel);
      get(r, "max_passes", spec.refinement.max_passes);
    }
  } catch (const nlohmann::json::exception & e) {
    throw Error(ErrorCode::Format, std::string("bench spec: ") + e.what());
  }
  if (spec.ambiguity_cases < 0 || spec.training.per_vehicle < 0 || spec.training.per_pedestrian < 0) {
    throw Error(ErrorCode::Format, "bench spec: counts must be non-negative");
  }
  spec.edit.query = spec.query_weights;
  spec.refinement.validate();
  return spec;
}

std::string serialize_bench_spec(const BenchSpec & spec)
{
  JsonWriter w(kScenarioDigits);
  w.begin_object();
  w.key("query_seed").value(spec.query_seed);
  w.key("ambiguity_cases").value(spec.ambiguity_cases);
  w.key("include_malformed").value(spec.include_malformed);
  w.key("training").begin_object();
  w.key("corpus_seed").value(spec.training.corpus_seed);
  w.key("per_vehicle").value(spec.training.per_vehicle);
  w.key("per_pedestrian").value(spec.training.per_pedestrian);
  w.key("jitter").value(spec.training.jitter);
  w.key("epochs").value(spec.training.training.epochs);
  w.key("learning_rate").value(spec.training.training.learning_rate);
  w.key("seed").value(spec.training.training.seed);
  w.end_object();
  w.key("query").begin_object();
  w.key("tau_app").value(spec.query_weights.tau_app);
  w.key("w_motion").value(spec.query_weights.w_motion);
  w.key("w_location").value(spec.query_weights.w_location);
  w.end_object();
  w.key("refinement").begin_object();
  w.key("horizon_steps").value(spec.refinement.horizon_steps);
  w.key("history_steps").value(spec.refinement.history_steps);
  w.key("min_gap").value(spec.refinement.min_gap);
  w.key("yield_time_margin").value(spec.refinement.yield_time_margin);
  w.key("max_decel").value(spec.refinement.max_decel);
  w.key("max_accel").value(spec.refinement.max_accel);
  w.key("max_passes").value(spec.refinement.max_passes);
  w.end_object();
  w.end_object();
  return w.str();
}

namespace
{

struct TrainedModels
{
  HashingTextEncoder encoder;
  Codebooks books;
  AlignmentModel model;

  explicit TrainedModels(const TrainingSetup & setup)
  : books(default_codebooks(encoder)), model(train_default_model(setup, books))
  {
  }

  QueryModels query_models() const { return {encoder, books, model.projectors, model.config.temperature}; }
};

}  // namespace

BenchmarkReport run_querying(const BenchSpec & spec)
{
  const TrainedModels tm(spec.training);
  const auto cases = ambiguity_suite(spec.query_seed, spec.ambiguity_cases);
  QueryReport q;
  q.full = run_query_benchmark(cases, tm.query_models(), spec.query_weights);
  QueryWeights ablation = spec.query_weights;
  ablation.w_motion = 0.0;
  ablation.w_location = 0.0;
  q.ablation = run_query_benchmark(cases, tm.query_models(), ablation);
  BenchmarkReport r;
  r.querying = q;
  return r;
}

BenchmarkReport run_tasks(const BenchSpec & spec, const AssetBank & bank)
{
  const TrainedModels tm(spec.training);
  auto cases = task_suite();
  if (spec.include_malformed) {
    const auto bad = malformed_task_cases();
    cases.insert(cases.end(), bad.begin(), bad.end());
  }
  const EditModels models{tm.query_models(), bank};
  BenchmarkReport r;
  r.tasks = run_task_benchmark(cases, task_base_scene(), models, spec.edit, spec.refinement);
  return r;
}

BenchmarkReport run_motion(const BenchSpec & spec)
{
  BenchmarkReport r;
  r.motion = run_motion_benchmark(conflict_suite(), spec.refinement);
  return r;
}

}  // namespace scenesplat
