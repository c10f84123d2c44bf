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

#include "scenesplat/edit/edit_engine.hpp"

#include <algorithm>
#include <cmath>

#include "scenesplat/common/error.hpp"
#include "scenesplat/common/json_writer.hpp"

namespace scenesplat
{

namespace
{

std::string id_text(AgentId id) { return std::to_string(to_underlying(id)); }

/// Best-ranked agent for `text` that is not in `exclude`.
AgentId resolve(
  const Scenario & scene, const std::string & text, const std::string & role,
  const std::vector<AgentId> & exclude, const EditModels & models, const EditConfig & config,
  EditResult & out)
{
  QueryResult res;
  try {
    res = query(scene, QueryRequest{text, KindHint::Any, std::nullopt}, models.query, config.query);
  } catch (const Error & e) {
    if (e.code() == ErrorCode::NoCandidates || e.code() == ErrorCode::InvalidInput) {
      throw Error(ErrorCode::QueryResolution, role + " query \"" + text + "\": " + e.what());
    }
    throw;
  }
  for (const auto & r : res.ranked) {
    if (std::find(exclude.begin(), exclude.end(), r.id) == exclude.end()) {
      out.log.push_back(
        role + " \"" + text + "\" -> agent " + id_text(r.id) + " (score " + format_number(r.total, 4) +
        (res.filter_fallback ? ", appearance filter fell back" : "") + ")");
      out.queries.push_back({role, text, res});
      return r.id;
    }
  }
  throw Error(ErrorCode::QueryResolution, role + " query \"" + text + "\" matched no eligible agent");
}

void append_warnings(EditResult & out, const std::vector<std::string> & warnings)
{
  for (const auto & w : warnings) {
    out.warnings.push_back(w);
    out.log.push_back("warning: " + w);
  }
}

int start_frame_of(const EditCommand & cmd, const Scenario & scene)
{
  const int k = frame_of(cmd.start_time.value_or(0.0), scene.timestep);
  if (k < 0 || k >= scene.horizon) {
    throw Error(ErrorCode::OutOfRange, "start_time lies outside the scenario horizon");
  }
  return k;
}

/// Place `tmpl` (placement frame) at `pose`, starting at `first_frame`,
/// holding the last pose until the horizon.
Trajectory compose_template(const Trajectory & tmpl, const Pose2 & pose, int first_frame, const Scenario & scene)
{
  Trajectory traj;
  traj.timestep = scene.timestep;
  TrackPoint last;
  for (const auto & p : tmpl.points) {
    if (!p.valid) {
      continue;
    }
    last = {0.0, Pose2(pose.to_world(p.pose.position()), pose.heading() + p.pose.heading()), p.speed, true};
    const int k = first_frame + static_cast<int>(traj.points.size());
    if (k >= scene.horizon) {
      break;
    }
    last.t = k * scene.timestep;
    traj.points.push_back(last);
  }
  for (int k = first_frame + static_cast<int>(traj.points.size()); k < scene.horizon; ++k) {
    traj.points.push_back({k * scene.timestep, last.pose, 0.0, true});
  }
  return traj;
}

void remove_agents(Scenario & s, const std::vector<AgentId> & ids)
{
  s.agents.erase(
    std::remove_if(s.agents.begin(), s.agents.end(), [&](const AgentNode & a) {
      return std::find(ids.begin(), ids.end(), a.id) != ids.end();
    }),
    s.agents.end());
}

bool in_group(const AgentNode & a, GroupSelector g, double moving_speed)
{
  if (a.is_ego) {
    return false;
  }
  switch (g) {
    case GroupSelector::AllMovingVehicles:
      return is_vehicle_like(a.kind) && is_moving(a, moving_speed);
    case GroupSelector::AllMovingPedestrians:
      return a.kind == AgentKind::Pedestrian && is_moving(a, moving_speed);
    case GroupSelector::AllStaticObjects:
      return a.kind == AgentKind::StaticObject;
  }
  return false;
}

}  // namespace

std::vector<AgentId> EditResult::edited_ids() const
{
  std::vector<AgentId> ids;
  for (const auto & e : edited) {
    ids.push_back(e.id);
  }
  return ids;
}

bool is_moving(const AgentNode & agent, double threshold)
{
  double sum = 0.0;
  int n = 0;
  for (const auto & p : agent.trajectory.points) {
    if (p.valid) {
      sum += p.speed;
      ++n;
    }
  }
  return n > 0 && sum / n >= threshold;
}

EditResult apply_edit(
  const Scenario & scene, const EditCommand & cmd, const EditModels & models,
  const EditConfig & config)
{
  validate_command(cmd);
  EditResult out;
  out.scenario = scene;
  Scenario & s = out.scenario;
  out.log.push_back("command: " + format_command(cmd));
  const std::vector<AgentId> no_exclude;

  switch (cmd.task) {
    case EditTask::Remove: {
      if (cmd.group) {
        for (const auto & a : s.agents) {
          if (in_group(a, *cmd.group, config.moving_speed)) {
            out.removed.push_back(a.id);
          }
        }
        out.log.push_back(
          "group " + std::string(to_string(*cmd.group)) + " matched " + std::to_string(out.removed.size()) +
          " agents");
      } else {
        out.removed.push_back(resolve(s, *cmd.target_query, "target", no_exclude, models, config, out));
      }
      remove_agents(s, out.removed);
      break;
    }
    case EditTask::Replace: {
      const AgentId target = resolve(s, *cmd.target_query, "target", no_exclude, models, config, out);
      const auto match = retrieve_asset(models.bank, cmd.asset->query, std::nullopt, models.query.encoder);
      out.asset_id = match.asset->id;
      out.asset_score = match.score;
      out.log.push_back("asset \"" + cmd.asset->query + "\" -> " + match.asset->id);
      AgentNode & a = *s.find(target);
      const double k = cmd.asset->scale;
      a.kind = match.asset->kind;
      a.footprint = {match.asset->dims.length * k, match.asset->dims.width * k};
      a.height = match.asset->height * k;
      a.appearance_caption = match.asset->caption;
      out.edited.push_back({target, a.trajectory, frame_of(a.trajectory.start_time(), s.timestep)});
      break;
    }
    case EditTask::Modify: {
      const AgentId target = resolve(s, *cmd.target_query, "target", no_exclude, models, config, out);
      const int k0 = start_frame_of(cmd, s);
      AgentNode & a = *s.find(target);
      const auto here = sample_at(a.trajectory, k0 * s.timestep);
      if (!here) {
        throw Error(ErrorCode::OutOfRange, "target agent " + id_text(target) + " has no pose at start_time");
      }
      MotionStart start{here->pose, here->speed, k0};
      const Action act = cmd.action->action;
      if ((act == Action::GoStraight || act == Action::TurnLeft || act == Action::TurnRight) &&
          start.speed < config.moving_speed) {
        start.speed = config.motion.speed;
      }
      std::vector<Vec2> ahead;
      for (const auto & p : a.trajectory.points) {
        if (p.valid && frame_of(p.t, s.timestep) >= k0) {
          ahead.push_back(p.pose.position());
        }
      }
      const PolylinePath own(ahead, here->pose.heading());
      const Trajectory * leader = nullptr;
      if (act == Action::Follow) {
        const AgentId lead = resolve(s, *cmd.anchor_query, "anchor", {target}, models, config, out);
        leader = &s.find(lead)->trajectory;
      }
      auto motion = synthesize_trajectory(s, a.kind, start, *cmd.action, config.motion, &own, leader);
      append_warnings(out, motion.warnings);
      std::vector<TrackPoint> points;
      for (const auto & p : a.trajectory.points) {
        if (frame_of(p.t, s.timestep) < k0) {
          points.push_back(p);
        }
      }
      if (!points.empty() && !motion.trajectory.points.empty() &&
          frame_of(points.back().t, s.timestep) + 1 != frame_of(motion.trajectory.points.front().t, s.timestep)) {
        throw Error(ErrorCode::EditInvariant, "modified track would have a gap at start_time");
      }
      points.insert(points.end(), motion.trajectory.points.begin(), motion.trajectory.points.end());
      a.trajectory.points = std::move(points);
      out.edited.push_back({target, motion.trajectory, k0});
      out.log.push_back("agent " + id_text(target) + " -> " + std::string(to_string(act)) + " from frame " + std::to_string(k0));
      break;
    }
    case EditTask::Add: {
      const auto match = retrieve_asset(models.bank, cmd.asset->query, std::nullopt, models.query.encoder);
      const AssetRecord & asset = *match.asset;
      out.asset_id = asset.id;
      out.asset_score = match.score;
      out.log.push_back("asset \"" + cmd.asset->query + "\" -> " + asset.id);
      const int k0 = start_frame_of(cmd, s);
      const double rotation = deg2rad(cmd.asset->rotation_deg);
      Pose2 place;
      std::optional<AgentId> anchor;
      if (cmd.anchor_query) {
        anchor = resolve(s, *cmd.anchor_query, "anchor", no_exclude, models, config, out);
      }
      if (cmd.position) {
        double heading = 0.0;
        if (cmd.direction_deg) {
          heading = deg2rad(*cmd.direction_deg);
        } else if (auto lane = nearest_lane(*cmd.position, s.map); lane && lane->distance <= lane->lane->width) {
          heading = lane->heading;
        }
        place = Pose2(*cmd.position, heading + rotation);
      } else {
        place = resolve_anchor_position(s, *anchor, cmd.asset->offset, k0 * s.timestep, rotation);
      }

      AgentNode node;
      node.id = s.next_id();
      node.kind = asset.kind;
      const double k = cmd.asset->scale;
      node.footprint = {asset.dims.length * k, asset.dims.width * k};
      node.height = asset.height * k;
      node.appearance_caption = asset.caption;
      if (cmd.action) {
        MotionStart start{place, cmd.action->speed.value_or(config.motion.speed), k0};
        if (cmd.action->action == Action::StaticPlace) {
          start.speed = 0.0;
        }
        const Trajectory * leader = anchor ? &s.find(*anchor)->trajectory : nullptr;
        auto motion = synthesize_trajectory(s, asset.kind, start, *cmd.action, config.motion, nullptr, leader);
        append_warnings(out, motion.warnings);
        node.trajectory = std::move(motion.trajectory);
      } else if (asset.motion_template) {
        node.trajectory = compose_template(*asset.motion_template, place, k0, s);
      } else {
        node.trajectory = stationary_track(place, s.horizon - k0, s.timestep, k0);
      }
      out.edited.push_back({node.id, node.trajectory, k0});
      out.log.push_back("added agent " + id_text(node.id) + " (" + std::string(to_string(node.kind)) + ")");
      s.agents.push_back(std::move(node));
      break;
    }
  }

  try {
    validate_scenario(s);
  } catch (const Error & e) {
    throw Error(ErrorCode::EditInvariant, std::string("edit rejected: ") + e.what());
  }
  return out;
}

std::string serialize_edit_summary(const EditResult & r)
{
  JsonWriter w(9);
  w.begin_object();
  w.key("edited").begin_array(true);
  for (const auto & e : r.edited) {
    w.value(to_underlying(e.id));
  }
  w.end_array();
  w.key("removed").begin_array(true);
  for (const auto id : r.removed) {
    w.value(to_underlying(id));
  }
  w.end_array();
  w.key("queries").begin_array();
  for (const auto & q : r.queries) {
    w.begin_object();
    w.key("role").value(q.role);
    w.key("text").value(q.text);
    w.key("chosen").value(to_underlying(q.result.chosen));
    w.key("filter_fallback").value(q.result.filter_fallback);
    w.key("ranked").begin_array();
    for (const auto & s : q.result.ranked) {
      w.begin_object(true);
      w.key("id").value(to_underlying(s.id));
      w.key("total").value(s.total);
      w.key("appearance").value(s.appearance);
      w.key("motion").value(s.motion);
      w.key("location").value(s.location);
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  if (r.asset_id) {
    w.key("asset").begin_object(true).key("id").value(*r.asset_id).key("score").value(r.asset_score).end_object();
  }
  w.key("warnings").begin_array();
  for (const auto & s : r.warnings) {
    w.value(s);
  }
  w.end_array();
  w.key("log").begin_array();
  for (const auto & s : r.log) {
    w.value(s);
  }
  w.end_array();
  w.end_object();
  return w.str();
}

}  // namespace scenesplat
