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

#include "scenesplat/edit/motion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "scenesplat/common/error.hpp"

namespace scenesplat
{

namespace
{

constexpr double kPedestrianTurnRadius = 2.0;
constexpr double kHeadingTolerance = 20.0 * kPi / 180.0;

/// Constant speed v0 until t0, then a linear change toward v1 at `rate`.
struct Ramp
{
  double v0{0.0};
  double v1{0.0};
  double rate{1.0};
  double t0{0.0};

  double duration() const { return std::abs(v1 - v0) / rate; }
  double accel() const { return v1 >= v0 ? rate : -rate; }

  double speed(double t) const
  {
    if (t <= t0) {
      return v0;
    }
    const double tau = std::min(t - t0, duration());
    return v0 + accel() * tau;
  }

  double distance(double t) const
  {
    if (t <= t0) {
      return v0 * t;
    }
    const double tau = t - t0;
    const double T = duration();
    const double a = accel();
    if (tau <= T) {
      return v0 * t0 + v0 * tau + 0.5 * a * tau * tau;
    }
    return v0 * t0 + v0 * T + 0.5 * a * T * T + v1 * (tau - T);
  }
};

Trajectory sample(
  const std::function<Pose2(double)> & pose_at, const Ramp & ramp, int first_frame, int frames,
  double dt)
{
  Trajectory traj;
  traj.timestep = dt;
  traj.points.reserve(static_cast<std::size_t>(frames));
  for (int k = 0; k < frames; ++k) {
    const double t = k * dt;
    traj.points.push_back({(first_frame + k) * dt, pose_at(ramp.distance(t)), ramp.speed(t), true});
  }
  return traj;
}

bool supports(AgentKind kind, Action action)
{
  if (kind == AgentKind::StaticObject) {
    return action == Action::StaticPlace;
  }
  if (kind == AgentKind::Pedestrian) {
    return action != Action::Reverse;
  }
  return true;
}

}  // namespace

Pose2 resolve_anchor_position(
  const Scenario & scene, AgentId anchor, Vec2 offset, double t, double rotation)
{
  const AgentNode * a = scene.find(anchor);
  if (a == nullptr) {
    throw Error(ErrorCode::NotFound, "anchor agent " + std::to_string(to_underlying(anchor)) + " not found");
  }
  Pose2 pose;
  try {
    pose = interpolate_pose(a->trajectory, t);
  } catch (const Error &) {
    throw Error(
      ErrorCode::OutOfRange, "anchor agent " + std::to_string(to_underlying(anchor)) +
                               " has no valid pose at t=" + std::to_string(t));
  }
  return {pose.to_world(offset), pose.heading() + rotation};
}

std::optional<double> turn_entry_distance(
  const MapModel & map, const Pose2 & start, bool left, double radius)
{
  const Vec2 p = start.position();
  const Vec2 u = unit_vector(start.heading());
  const double want = left ? kPi / 2.0 : -kPi / 2.0;
  std::optional<double> best;
  for (const auto & lane : map.lanes) {
    for (std::size_t i = 0; i + 1 < lane.centerline.size(); ++i) {
      const Vec2 a = lane.centerline[i];
      const Vec2 d = lane.centerline[i + 1] - a;
      if (std::abs(angle_diff(std::atan2(d.y, d.x), start.heading()) - want) > kHeadingTolerance) {
        continue;
      }
      // p + t u = a + r d
      const double denom = u.cross(d);
      if (std::abs(denom) < 1e-12) {
        continue;
      }
      const Vec2 ap = a - p;
      const double t = ap.cross(d) / denom;
      const double r = ap.cross(u) / denom;
      if (r < 0.0 || r > 1.0 || t < radius - 1e-9) {
        continue;
      }
      if (!best || t - radius < *best) {
        best = t - radius;
      }
    }
  }
  return best;
}

SynthesizedMotion synthesize_trajectory(
  const Scenario & scene, AgentKind kind, const MotionStart & start, const ActionParams & params,
  const MotionDefaults & d, const PolylinePath * along, const Trajectory * leader)
{
  if (!supports(kind, params.action)) {
    throw Error(
      ErrorCode::UnsupportedAction, "a " + std::string(to_string(kind)) + " cannot " +
                                      std::string(to_string(params.action)));
  }
  const int frames = scene.horizon - start.frame;
  const bool dynamic = params.action != Action::StaticPlace;
  if (start.frame < 0 || frames < (dynamic ? 2 : 1)) {
    throw Error(ErrorCode::OutOfRange, "motion start frame is outside the scenario horizon");
  }
  const double dt = scene.timestep;
  SynthesizedMotion out;
  const double v = params.speed.value_or(start.speed);
  auto straight_from = [&](const Pose2 & p) {
    return [p](double s) { return Pose2(p.position() + s * unit_vector(p.heading()), p.heading()); };
  };
  std::function<Pose2(double)> own_path = straight_from(start.pose);
  if (along != nullptr) {
    own_path = [along](double s) { return along->pose_at(s); };
  }
  if (params.end_position && params.action != Action::Stop) {
    out.warnings.push_back("'to' only applies to stop and was ignored");
  }

  switch (params.action) {
    case Action::StaticPlace:
      out.trajectory = stationary_track(start.pose, frames, dt, start.frame);
      break;
    case Action::GoStraight:
      out.trajectory = sample(straight_from(start.pose), Ramp{v, v, 1.0, 0.0}, start.frame, frames, dt);
      break;
    case Action::TurnLeft:
    case Action::TurnRight: {
      const bool left = params.action == Action::TurnLeft;
      const bool ped = kind == AgentKind::Pedestrian;
      const double radius = ped ? kPedestrianTurnRadius : d.turn_radius;
      double entry = 0.0;
      if (!ped) {
        if (auto e = turn_entry_distance(scene.map, start.pose, left, radius)) {
          entry = *e;
        } else {
          out.warnings.push_back("no junction ahead; turning immediately");
        }
      }
      Path path(start.pose);
      path.straight(entry).arc(radius, left ? kPi / 2.0 : -kPi / 2.0);
      out.trajectory = sample(
        [&path](double s) { return path.pose_at(s); }, Ramp{v, v, 1.0, 0.0}, start.frame, frames, dt);
      break;
    }
    case Action::Stop: {
      std::optional<double> dist = params.relative_distance;
      if (!dist && params.end_position) {
        dist = (*params.end_position - start.pose.position()).norm();
      }
      double decel = d.decel;
      double t_brake = 0.0;
      if (dist && v > 0.0) {
        const double brake_len = v * v / (2.0 * decel);
        if (*dist < brake_len) {
          decel = v * v / (2.0 * std::max(*dist, 1e-6));
          out.warnings.push_back("deceleration raised to " + std::to_string(decel) + " m/s^2 to stop in time");
        } else {
          t_brake = (*dist - brake_len) / v;
        }
      }
      out.trajectory = sample(own_path, Ramp{v, 0.0, decel, t_brake}, start.frame, frames, dt);
      break;
    }
    case Action::Accelerate:
    case Action::Decelerate: {
      const bool up = params.action == Action::Accelerate;
      const double target = params.speed.value_or(
        up ? start.speed + d.speed_change : std::max(0.0, start.speed - d.speed_change));
      if (up ? target < start.speed : target > start.speed) {
        out.warnings.push_back("target speed is on the wrong side of the current speed");
      }
      const Ramp ramp{start.speed, target, up ? d.accel : d.decel, 0.0};
      out.trajectory = sample(own_path, ramp, start.frame, frames, dt);
      break;
    }
    case Action::Reverse: {
      const double rv = params.speed.value_or(d.reverse_speed);
      const Pose2 p = start.pose;
      out.trajectory = sample(
        [p](double s) { return Pose2(p.position() - s * unit_vector(p.heading()), p.heading()); },
        Ramp{rv, rv, 1.0, 0.0}, start.frame, frames, dt);
      break;
    }
    case Action::Follow: {
      if (leader == nullptr || leader->valid_count() < 2) {
        throw Error(ErrorCode::InvalidInput, "follow needs a leader with at least two valid samples");
      }
      const double gap = params.relative_distance.value_or(d.follow_gap);
      std::vector<Vec2> pts;
      std::vector<const TrackPoint *> samples;
      for (const auto & p : leader->points) {
        if (p.valid) {
          pts.push_back(p.pose.position());
          samples.push_back(&p);
        }
      }
      const PolylinePath lead_path(pts, samples.front()->pose.heading());
      Trajectory traj;
      traj.timestep = dt;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const int k = frame_of(samples[i]->t, dt);
        if (k < start.frame || k >= scene.horizon) {
          continue;
        }
        if (!traj.points.empty() && k != frame_of(traj.points.back().t, dt) + 1) {
          break;  // keep the follower contiguous
        }
        traj.points.push_back({k * dt, lead_path.pose_at(lead_path.vertex_s(i) - gap), samples[i]->speed, true});
      }
      if (traj.points.size() < 2) {
        throw Error(ErrorCode::OutOfRange, "leader has no samples after the start time");
      }
      if ((traj.points.front().pose.position() - start.pose.position()).norm() > 1.0) {
        out.warnings.push_back("follower placed on the leader's path");
      }
      out.trajectory = std::move(traj);
      break;
    }
  }

  if (is_vehicle_like(kind) && !scene.map.drivable_area.empty()) {
    for (const auto & p : out.trajectory.points) {
      if (!point_in_drivable(p.pose.position(), scene.map)) {
        out.warnings.push_back("trajectory leaves the drivable area at t=" + std::to_string(p.t));
        break;
      }
    }
  }
  return out;
}

}  // namespace scenesplat
