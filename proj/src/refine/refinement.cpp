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

#include "scenesplat/refine/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <utility>

#include "scenesplat/common/error.hpp"
#include "scenesplat/common/json_writer.hpp"
#include "scenesplat/kernels/conflict_sweep.hpp"
#include "scenesplat/scene/path.hpp"
#include "scenesplat/scene/scenario_io.hpp"

namespace scenesplat
{

void RefinementConfig::validate() const
{
  auto require = [](bool ok, const char * field) {
    if (!ok) {
      throw Error(ErrorCode::InvalidInput, std::string("refinement config: ") + field + " must be positive");
    }
  };
  require(horizon_steps > 0, "horizon_steps");
  require(history_steps > 0, "history_steps");
  require(timestep > 0.0, "timestep");
  require(min_gap > 0.0, "min_gap");
  require(yield_time_margin > 0.0, "yield_time_margin");
  require(max_decel > 0.0, "max_decel");
  require(max_accel > 0.0, "max_accel");
  require(max_passes > 0, "max_passes");
  if (history_steps < 2) {
    throw Error(ErrorCode::InvalidInput, "refinement config: history_steps must be at least 2");
  }
}

std::string_view to_string(ConflictType type)
{
  return type == ConflictType::VehPed ? "VehPed" : "VehVeh";
}

std::string_view to_string(Resolution resolution)
{
  switch (resolution) {
    case Resolution::Yield:
      return "Yield";
    case Resolution::Detour:
      return "Detour";
    case Resolution::Stop:
      return "Stop";
    case Resolution::Unresolved:
      return "Unresolved";
  }
  return "Unresolved";
}

bool is_static_agent(const AgentNode & agent)
{
  if (agent.kind == AgentKind::StaticObject) {
    return true;
  }
  const TrackPoint * first = nullptr;
  for (const auto & p : agent.trajectory.points) {
    if (!p.valid) {
      continue;
    }
    if (!first) {
      first = &p;
    } else if (!(p.pose == first->pose)) {
      return false;
    }
  }
  return first != nullptr;
}

int rollout_end_frame(const Scenario & scene, const RefinementConfig & config)
{
  return std::min(scene.horizon + 1, config.history_steps + config.horizon_steps);
}

namespace
{

constexpr double kScanStep = 0.25;    // m between scanned path samples
constexpr double kStopEps = 0.05;     // m kept in front of the last clear sample
constexpr double kCreepSpeed = 0.5;   // m/s floor of the desired speed off schedule
constexpr double kMinArrivalSpeed = 0.5;
constexpr double kDetourRamp = 10.0;  // m per lateral transition
constexpr double kDetourMaxOffset = 4.0;
constexpr double kDetourStep = 0.5;
constexpr double kDetourMinRamp = 2.0;
constexpr double kStoppedSpeed = 0.05;
constexpr double kMovingPlanSpeed = 0.5;

/// Agents sorted by id; all per-agent vectors below use this index.
std::vector<const AgentNode *> sorted_agents(const Scenario & scene)
{
  std::vector<const AgentNode *> out;
  out.reserve(scene.agents.size());
  for (const auto & a : scene.agents) {
    out.push_back(&a);
  }
  std::sort(out.begin(), out.end(), [](const AgentNode * x, const AgentNode * y) {
    return to_underlying(x->id) < to_underlying(y->id);
  });
  return out;
}

SweepTrack to_sweep(const AgentNode & node, const Trajectory & traj, double dt, bool is_static)
{
  AgentNode copy;
  copy.kind = node.kind;
  copy.footprint = node.footprint;
  copy.trajectory = traj;
  return make_sweep_track(copy, dt, is_static);
}

ConflictType pair_type(AgentKind a, AgentKind b)
{
  return (a == AgentKind::Pedestrian || b == AgentKind::Pedestrian) ? ConflictType::VehPed
                                                                    : ConflictType::VehVeh;
}

std::vector<Conflict> sweep_to_conflicts(
  const std::vector<const AgentNode *> & agents, const std::vector<SweepTrack> & tracks, int end,
  double margin, double dt, Execution exec)
{
  std::vector<Conflict> out;
  for (const auto & hit : sweep_conflicts(tracks, 0, end, margin, exec)) {
    Conflict c;
    c.a = agents[hit.a]->id;
    c.b = agents[hit.b]->id;
    c.t = hit.frame * dt;
    c.location = hit.location;
    c.type = pair_type(agents[hit.a]->kind, agents[hit.b]->kind);
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const Conflict & x, const Conflict & y) {
    if (x.t != y.t) {
      return x.t < y.t;
    }
    if (x.a != y.a) {
      return to_underlying(x.a) < to_underlying(y.a);
    }
    return to_underlying(x.b) < to_underlying(y.b);
  });
  return out;
}

double smoothstep(double x)
{
  x = std::clamp(x, 0.0, 1.0);
  return x * x * (3.0 - 2.0 * x);
}

double smoothstep_slope(double x)
{
  return (x <= 0.0 || x >= 1.0) ? 0.0 : 6.0 * x * (1.0 - x);
}

/// Lateral shift profile over arc length: ramp in, hold, ramp out.
struct Detour
{
  double offset{0.0};
  double in0{0.0};
  double in1{0.0};
  double out0{0.0};
  double out1{0.0};

  double lateral(double s) const
  {
    if (s <= in0 || s >= out1) {
      return 0.0;
    }
    if (s < in1) {
      return offset * smoothstep((s - in0) / (in1 - in0));
    }
    if (s <= out0) {
      return offset;
    }
    return offset * (1.0 - smoothstep((s - out0) / (out1 - out0)));
  }

  double slope(double s) const
  {
    if (s > in0 && s < in1) {
      return offset * smoothstep_slope((s - in0) / (in1 - in0)) / (in1 - in0);
    }
    if (s > out0 && s < out1) {
      return -offset * smoothstep_slope((s - out0) / (out1 - out0)) / (out1 - out0);
    }
    return 0.0;
  }
};

/// Planned motion of one agent from its lock frame on, indexed by progress.
struct Plan
{
  const AgentNode * node{nullptr};
  std::size_t index{0};
  bool is_static{false};
  bool edited{false};
  bool rolled{false};   // re-timed by the rollout; otherwise kept verbatim
  int first_frame{0};
  int lock{0};          // first frame that may change
  int end{0};           // exclusive end frame of the refined track
  std::vector<double> S;  // arc length at frames lock - 1 .. end - 1
  std::optional<PolylinePath> path;

  const TrackPoint & point(int frame) const
  {
    return node->trajectory.points[static_cast<std::size_t>(frame - first_frame)];
  }
  double s_at(int frame) const { return S[static_cast<std::size_t>(frame - lock + 1)]; }
  double s_end() const { return S.back(); }

  /// Planned speed where the plan first passes beyond `s`.
  double desired_speed(double s) const
  {
    const auto it = std::upper_bound(S.begin(), S.end(), s + 1e-9);
    if (it == S.end()) {
      return 0.0;
    }
    const int frame = lock - 1 + static_cast<int>(it - S.begin());
    return std::max(point(frame).speed, kCreepSpeed);
  }

  /// Planned heading at progress `s`, interpolated between frames.
  double heading_at(double s) const
  {
    auto it = std::lower_bound(S.begin(), S.end(), s);
    if (it == S.end()) {
      return point(end - 1).pose.heading();
    }
    const std::size_t j = static_cast<std::size_t>(it - S.begin());
    const double h1 = point(lock - 1 + static_cast<int>(j)).pose.heading();
    if (j == 0) {
      return h1;
    }
    const double h0 = point(lock - 2 + static_cast<int>(j)).pose.heading();
    const double span = S[j] - S[j - 1];
    if (span <= 0.0) {
      return h0;
    }
    const double w = (s - S[j - 1]) / span;
    return h0 + w * angle_diff(h1, h0);
  }
};

Pose2 pose_of(const Plan & plan, const std::optional<Detour> & detour, double s)
{
  if (!detour) {
    return {plan.path->pose_at(s).position(), plan.heading_at(s)};
  }
  const double lat = detour->lateral(s);
  const Vec2 p = plan.path->offset_pose_at(s, lat).position();
  return {p, plan.heading_at(s) + std::atan(detour->slope(s))};
}

struct Blocker
{
  double sigma{0.0};
  bool is_static{false};
};

struct Other
{
  const SweepTrack * track;
  bool is_static;
  double radius;  // of the inflated box
  Aabb reach;     // inflated cover of all centers in the scan frames
};

class Rollout
{
public:
  Rollout(
    const Scenario & scene, const RefinementConfig & cfg, std::vector<Plan> & plans, int end)
  : scene_(scene), cfg_(cfg), plans_(plans), end_(end)
  {
  }

  struct Outcome
  {
    std::vector<Trajectory> tracks;  // per agent (sorted index)
    std::vector<char> detoured;
  };

  Outcome run(const std::vector<std::size_t> & order) const
  {
    Outcome out;
    out.tracks.resize(plans_.size());
    out.detoured.assign(plans_.size(), 0);
    std::vector<SweepTrack> sweeps(plans_.size());
    std::vector<char> ready(plans_.size(), 0);
    for (std::size_t i = 0; i < plans_.size(); ++i) {
      if (!plans_[i].rolled) {
        out.tracks[i] = truncated(plans_[i]);
        sweeps[i] = sweep_of(plans_[i], out.tracks[i]);
        ready[i] = 1;
      }
    }
    for (std::size_t i : order) {
      bool detoured = false;
      out.tracks[i] = roll(plans_[i], sweeps, ready, detoured);
      out.detoured[i] = detoured ? 1 : 0;
      sweeps[i] = sweep_of(plans_[i], out.tracks[i]);
      ready[i] = 1;
    }
    return out;
  }

  Trajectory truncated(const Plan & plan) const
  {
    Trajectory t = plan.node->trajectory;
    if (plan.end - plan.first_frame < static_cast<int>(t.points.size()) && plan.end > plan.first_frame) {
      t.points.resize(static_cast<std::size_t>(plan.end - plan.first_frame));
    }
    return t;
  }

  SweepTrack sweep_of(const Plan & plan, const Trajectory & traj) const
  {
    return to_sweep(*plan.node, traj, scene_.timestep, plan.is_static);
  }

private:
  double half_gap() const { return 0.5 * cfg_.min_gap; }

  /// Circumradius of the box grown by half the gap on every side.
  double inflated_radius(BoxDims d) const
  {
    return 0.5 * std::hypot(d.length + cfg_.min_gap, d.width + cfg_.min_gap);
  }

  /// Highest next speed that can still stop within `gap` at max_decel.
  double safe_speed(double gap, double v) const
  {
    const double b = cfg_.max_decel;
    const double dt = cfg_.timestep;
    const double disc = 0.25 * dt * dt + 2.0 * (gap - 0.5 * v * dt) / b;
    if (disc <= 0.0) {
      return 0.0;
    }
    return std::max(0.0, b * (-0.5 * dt + std::sqrt(disc)));
  }

  bool collides_at(
    const OrientedBox & own, double own_radius, const Other & o, int lo, int hi) const
  {
    const SweepTrack & t = *o.track;
    for (int f = lo; f <= hi; ++f) {
      if (!t.has(f)) {
        continue;
      }
      const Pose2 & p = t.at(f);
      if ((p.position() - own.pose.position()).norm() <= own_radius + o.radius) {
        if (boxes_collide(own, OrientedBox{t.dims, p}.inflated(half_gap()))) {
          return true;
        }
      }
      if (o.is_static) {
        return false;  // same pose at every frame
      }
    }
    return false;
  }

  /// Other agents this one must respect, pre-filtered to those whose
  /// reachable area meets the scan corridor.
  std::vector<Other> candidates(
    const Plan & plan, const std::vector<SweepTrack> & sweeps, const std::vector<char> & ready, int k,
    const Aabb & corridor) const
  {
    std::vector<Other> out;
    for (std::size_t j = 0; j < plans_.size(); ++j) {
      if (!ready[j] || &plans_[j] == &plan) {
        continue;
      }
      if (plan.node->kind == AgentKind::Pedestrian && plans_[j].node->kind == AgentKind::Pedestrian) {
        continue;
      }
      const SweepTrack & t = sweeps[j];
      const double r = inflated_radius(t.dims);
      Aabb reach{{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()},
                 {std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()}};
      bool any = false;
      for (int f = k; f < end_; ++f) {
        if (!t.has(f)) {
          continue;
        }
        const Vec2 c = t.at(f).position();
        reach.min = {std::min(reach.min.x, c.x - r), std::min(reach.min.y, c.y - r)};
        reach.max = {std::max(reach.max.x, c.x + r), std::max(reach.max.y, c.y + r)};
        any = true;
        if (plans_[j].is_static) {
          break;
        }
      }
      if (any && reach.overlaps(corridor)) {
        out.push_back({&t, plans_[j].is_static, r, reach});
      }
    }
    return out;
  }

  int frame_window_lo(double arrival) const
  {
    return static_cast<int>(std::floor(arrival - cfg_.yield_time_margin / cfg_.timestep));
  }
  int frame_window_hi(double arrival) const
  {
    return static_cast<int>(std::ceil(arrival + cfg_.yield_time_margin / cfg_.timestep));
  }

  /// First blocked sample in (s, s + lookahead], or nothing. With
  /// `open_ended`, a sample counts as blocked if it is occupied at any frame
  /// from its earliest arrival window on, so the agent never comes to rest
  /// where a higher-priority agent will pass later.
  std::optional<Blocker> scan(
    const Plan & plan, const std::optional<Detour> & detour, const std::vector<Other> & others, double s,
    double speed, int k, double lookahead, bool statics_only = false, bool open_ended = false) const
  {
    const BoxDims own_dims = plan.node->footprint;
    const double own_radius = inflated_radius(own_dims);
    const double u = std::max(speed, kMinArrivalSpeed);
    const double stop = std::min(s + lookahead, plan.s_end());
    for (int i = 1;; ++i) {
      const double sigma = s + i * kScanStep;
      if (sigma > stop + 1e-9) {
        break;
      }
      const OrientedBox own = OrientedBox{own_dims, pose_of(plan, detour, sigma)}.inflated(half_gap());
      const double arrival = k + (sigma - s) / u / cfg_.timestep;
      const int lo = std::max(k, frame_window_lo(arrival));
      const int hi = open_ended ? end_ - 1 : std::min(end_ - 1, frame_window_hi(arrival));
      for (const auto & o : others) {
        if (statics_only && !o.is_static) {
          continue;
        }
        const Vec2 c = own.pose.position();
        if (c.x + own_radius < o.reach.min.x || c.x - own_radius > o.reach.max.x ||
            c.y + own_radius < o.reach.min.y || c.y - own_radius > o.reach.max.y) {
          continue;
        }
        if (collides_at(own, own_radius, o, o.is_static ? k : lo, o.is_static ? end_ - 1 : hi)) {
          return Blocker{sigma, o.is_static};
        }
      }
    }
    return std::nullopt;
  }

  Aabb corridor(const Plan & plan, const std::optional<Detour> & detour, double s0, double s1) const
  {
    const double r = inflated_radius(plan.node->footprint) + (detour ? kDetourMaxOffset : 0.0);
    Aabb box{{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()},
             {std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()}};
    for (double s = s0;; s += 1.0) {
      const double sc = std::min(s, s1);
      const Vec2 c = plan.path->pose_at(sc).position();
      box.min = {std::min(box.min.x, c.x - r), std::min(box.min.y, c.y - r)};
      box.max = {std::max(box.max.x, c.x + r), std::max(box.max.y, c.y + r)};
      if (sc >= s1) {
        break;
      }
    }
    return box;
  }

  /// Lateral shift around the static blocker at `sigma_b`, if one is
  /// drivable and clear.
  std::optional<Detour> find_detour(
    const Plan & plan, const std::vector<Other> & others, double s, double speed, int k,
    double sigma_b) const
  {
    // extent of the static obstruction along the path
    double sigma_e = sigma_b;
    const std::optional<Detour> none;
    for (double sigma = sigma_b; sigma <= std::min(sigma_b + 30.0, plan.s_end()); sigma += kScanStep) {
      if (sigma - sigma_e > 2.0) {
        break;
      }
      auto hit = scan(plan, none, others, sigma - kScanStep, speed, k, kScanStep, true);
      if (hit) {
        sigma_e = sigma;
      }
    }
    Detour d;
    d.in1 = sigma_b - kScanStep;
    d.in0 = std::max(s, d.in1 - kDetourRamp);
    if (d.in1 - d.in0 < kDetourMinRamp) {
      return std::nullopt;
    }
    d.out0 = sigma_e + kScanStep;
    d.out1 = d.out0 + kDetourRamp;
    const double span = std::min(d.out1, plan.s_end()) - s;
    for (int step = 1; step * kDetourStep <= kDetourMaxOffset + 1e-9; ++step) {
      for (double sign : {1.0, -1.0}) {
        d.offset = sign * step * kDetourStep;
        std::optional<Detour> cand = d;
        bool drivable = true;
        for (double sigma = d.in0; sigma <= std::min(d.out1, plan.s_end()); sigma += kDetourStep) {
          if (!point_in_drivable(pose_of(plan, cand, sigma).position(), scene_.map)) {
            drivable = false;
            break;
          }
        }
        if (drivable && !scan(plan, cand, others, s, speed, k, span)) {
          return cand;
        }
      }
    }
    return std::nullopt;
  }

  Trajectory roll(
    const Plan & plan, const std::vector<SweepTrack> & sweeps, const std::vector<char> & ready,
    bool & detoured) const
  {
    const double dt = cfg_.timestep;
    const double b = cfg_.max_decel;
    Trajectory out;
    out.timestep = plan.node->trajectory.timestep;
    for (int f = plan.first_frame; f < plan.lock; ++f) {
      out.points.push_back(plan.point(f));
    }
    double s = 0.0;
    double v = plan.point(plan.lock - 1).speed;
    bool on_schedule = true;
    std::optional<Detour> detour;
    const bool may_detour = is_vehicle_like(plan.node->kind);

    for (int k = plan.lock; k < plan.end; ++k) {
      const TrackPoint & planned = plan.point(k);
      if (detour && s >= detour->out1) {
        detour.reset();
      }
      const double vd = on_schedule ? planned.speed : plan.desired_speed(s);
      const double vv = std::max(v, vd);
      const double lookahead = std::max(5.0, vd * 3.0 + vv * vv / (2.0 * b) + 2.0 * cfg_.min_gap);
      const double arrival_speed = std::max(v, on_schedule ? planned.speed : 0.0);
      const auto others = candidates(
        plan, sweeps, ready, k, corridor(plan, detour, s, std::min(s + lookahead, plan.s_end())));
      auto blk = scan(plan, detour, others, s, arrival_speed, k, lookahead);
      if (blk && blk->is_static && may_detour && !detour) {
        if (auto d = find_detour(plan, others, s, arrival_speed, k, blk->sigma)) {
          detour = d;
          detoured = true;
          blk = scan(plan, detour, others, s, arrival_speed, k, lookahead);
        }
      }

      if (blk) {
        // rest short of anything that will still come through later
        if (auto rest = scan(plan, detour, others, s, arrival_speed, k, blk->sigma - s, false, true)) {
          if (rest->sigma < blk->sigma) {
            blk = rest;
          }
        }
      }

      if (on_schedule) {
        const double sk = plan.s_at(k);
        const bool safe =
          !blk || sk + planned.speed * planned.speed / (2.0 * b) <= blk->sigma - kScanStep - kStopEps;
        if (safe) {
          s = sk;
          v = planned.speed;
          if (detour && detour->lateral(s) != 0.0) {
            out.points.push_back({planned.t, pose_of(plan, detour, s), v, true});
          } else {
            out.points.push_back(planned);
          }
          continue;
        }
        on_schedule = false;
      }

      const double lo = std::max(0.0, v - b * dt);
      double hi = std::min(plan.desired_speed(s), v + cfg_.max_accel * dt);
      if (blk) {
        hi = std::min(hi, safe_speed(blk->sigma - kScanStep - s - kStopEps, v));
      }
      hi = std::min(hi, safe_speed(plan.s_end() - s, v));
      double v_new = std::max(lo, hi);
      double s_new = std::min(s + 0.5 * (v + v_new) * dt, plan.s_end());
      const double sk = plan.s_at(k);
      if (s_new >= sk - 1e-9) {
        s_new = sk;
        if (planned.speed >= lo && planned.speed <= v + cfg_.max_accel * dt) {
          v_new = planned.speed;
          on_schedule = true;
        } else {
          v_new = std::clamp(planned.speed, lo, v + cfg_.max_accel * dt);
        }
      }
      s = s_new;
      v = v_new;
      if (on_schedule && !(detour && detour->lateral(s) != 0.0)) {
        out.points.push_back(planned);
      } else {
        out.points.push_back({planned.t, pose_of(plan, detour, s), v, true});
      }
    }
    return out;
  }

  const Scenario & scene_;
  const RefinementConfig & cfg_;
  std::vector<Plan> & plans_;
  int end_;
};

std::vector<Plan> make_plans(
  const Scenario & scene, const std::vector<const AgentNode *> & agents,
  const std::vector<EditedAgent> & edited, const RefinementConfig & cfg, int end)
{
  std::vector<Plan> plans;
  plans.reserve(agents.size());
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const AgentNode & node = *agents[i];
    Plan p;
    p.node = &node;
    p.index = i;
    p.is_static = is_static_agent(node);
    const auto it = std::find_if(edited.begin(), edited.end(), [&](const EditedAgent & e) { return e.id == node.id; });
    p.edited = it != edited.end();
    const auto & pts = node.trajectory.points;
    if (pts.empty()) {
      plans.push_back(std::move(p));
      continue;
    }
    p.first_frame = frame_of(pts.front().t, scene.timestep);
    const int last = p.first_frame + static_cast<int>(pts.size());  // exclusive
    p.end = p.first_frame >= end ? last : std::min(last, end);
    p.lock = p.edited ? std::max(cfg.history_steps, it->start_frame) : std::max(cfg.history_steps, p.first_frame + 1);
    p.lock = std::max(p.lock, p.first_frame + 1);

    if (!p.is_static && !p.edited) {
      for (int f = p.first_frame; f < std::min(p.lock, last); ++f) {
        if (!p.point(f).valid) {
          throw Error(
            ErrorCode::MissingHistory,
            "agent " + std::to_string(to_underlying(node.id)) + " has no valid sample at t=" +
              format_number(p.point(f).t, 6) + " inside its history");
        }
      }
    }

    bool future_valid = p.lock < p.end;
    for (int f = p.lock - 1; future_valid && f < p.end; ++f) {
      future_valid = p.point(f).valid;
    }
    p.rolled = !p.is_static && future_valid && p.first_frame < end;
    if (p.rolled) {
      std::vector<Vec2> positions;
      for (int f = p.lock - 1; f < p.end; ++f) {
        positions.push_back(p.point(f).pose.position());
      }
      p.S.assign(positions.size(), 0.0);
      for (std::size_t j = 1; j < positions.size(); ++j) {
        p.S[j] = p.S[j - 1] + (positions[j] - positions[j - 1]).norm();
      }
      p.path.emplace(std::move(positions), p.point(p.lock - 1).pose.heading());
    }
    plans.push_back(std::move(p));
  }
  return plans;
}

/// Frame at which `traj` passes closest to `location`.
int closest_approach(const Trajectory & traj, Vec2 location, double dt)
{
  double best = std::numeric_limits<double>::max();
  int frame = std::numeric_limits<int>::max();
  for (const auto & p : traj.points) {
    if (!p.valid) {
      continue;
    }
    const double d = (p.pose.position() - location).norm();
    if (d < best) {
      best = d;
      frame = frame_of(p.t, dt);
    }
  }
  return frame;
}

std::vector<std::size_t> initial_order(
  const std::vector<Plan> & plans, const std::vector<Conflict> & planned, double dt)
{
  std::vector<std::size_t> edited;
  std::vector<std::pair<int, std::size_t>> others;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    if (!plans[i].rolled) {
      continue;
    }
    if (plans[i].edited) {
      edited.push_back(i);
      continue;
    }
    int arrival = std::numeric_limits<int>::max();
    for (const auto & c : planned) {
      if (c.a == plans[i].node->id || c.b == plans[i].node->id) {
        arrival = std::min(arrival, closest_approach(plans[i].node->trajectory, c.location, dt));
      }
    }
    others.emplace_back(arrival, i);
  }
  std::sort(others.begin(), others.end());
  for (const auto & [arrival, i] : others) {
    edited.push_back(i);
  }
  return edited;
}

std::size_t index_of(const std::vector<Plan> & plans, AgentId id)
{
  for (std::size_t i = 0; i < plans.size(); ++i) {
    if (plans[i].node->id == id) {
      return i;
    }
  }
  return plans.size();
}

std::vector<Conflict> conflicts_of(
  const std::vector<const AgentNode *> & agents, const std::vector<Plan> & plans,
  const std::vector<Trajectory> & tracks, const RefinementConfig & cfg, double dt, int end)
{
  std::vector<SweepTrack> sweeps;
  sweeps.reserve(plans.size());
  for (std::size_t i = 0; i < plans.size(); ++i) {
    sweeps.push_back(to_sweep(*plans[i].node, tracks[i], dt, plans[i].is_static));
  }
  return sweep_to_conflicts(agents, sweeps, end, 0.5 * cfg.min_gap, dt, Execution::Serial);
}

}  // namespace

std::vector<Conflict> predict_conflicts(
  const Scenario & scene, const RefinementConfig & config, Execution exec)
{
  const auto agents = sorted_agents(scene);
  std::vector<SweepTrack> tracks;
  tracks.reserve(agents.size());
  for (const AgentNode * a : agents) {
    tracks.push_back(make_sweep_track(*a, scene.timestep, is_static_agent(*a)));
  }
  return sweep_to_conflicts(
    agents, tracks, rollout_end_frame(scene, config), 0.5 * config.min_gap, scene.timestep, exec);
}

RolloutResult RulePredictor::predict(
  const Scenario & scene, const std::vector<EditedAgent> & edited, const RefinementConfig & config) const
{
  const double dt = scene.timestep;
  const int end = rollout_end_frame(scene, config);
  const auto agents = sorted_agents(scene);
  auto plans = make_plans(scene, agents, edited, config, end);
  const auto planned = predict_conflicts(scene, config, Execution::Serial);

  Rollout rollout(scene, config, plans, end);
  auto order = initial_order(plans, planned, dt);
  std::optional<Rollout::Outcome> best;
  std::vector<Conflict> best_conflicts;
  std::vector<std::size_t> best_order;
  int passes = 0;
  std::set<std::vector<std::size_t>> tried;
  for (int pass = 0; pass < config.max_passes; ++pass) {
    tried.insert(order);
    auto outcome = rollout.run(order);
    ++passes;
    auto conflicts = conflicts_of(agents, plans, outcome.tracks, config, dt, end);
    if (!best || conflicts.size() < best_conflicts.size()) {
      best = std::move(outcome);
      best_conflicts = conflicts;
      best_order = order;
    }
    if (conflicts.empty()) {
      break;
    }
    // demote the higher-priority side of each remaining dynamic pair
    auto next = order;
    for (const auto & c : conflicts) {
      const auto ia = std::find(next.begin(), next.end(), index_of(plans, c.a));
      const auto ib = std::find(next.begin(), next.end(), index_of(plans, c.b));
      if (ia == next.end() || ib == next.end()) {
        continue;
      }
      const std::size_t hi = ia < ib ? *ia : *ib;
      const std::size_t lo = ia < ib ? *ib : *ia;
      next.erase(std::find(next.begin(), next.end(), hi));
      next.insert(std::find(next.begin(), next.end(), lo) + 1, hi);
    }
    if (tried.count(next)) {
      break;
    }
    order = std::move(next);
  }

  RolloutResult result;
  result.passes = passes;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    result.refined.emplace(to_underlying(plans[i].node->id), best->tracks[i]);
  }

  auto rank = [&](std::size_t i) {
    const auto it = std::find(best_order.begin(), best_order.end(), i);
    return it == best_order.end() ? -1 : static_cast<int>(it - best_order.begin());
  };
  auto same_pair = [](const Conflict & x, const Conflict & y) { return x.a == y.a && x.b == y.b; };
  for (Conflict c : planned) {
    const bool persists = std::any_of(best_conflicts.begin(), best_conflicts.end(), [&](const Conflict & r) {
      return same_pair(r, c);
    });
    if (persists) {
      c.resolution = Resolution::Unresolved;
    } else {
      const std::size_t ia = index_of(plans, c.a);
      const std::size_t ib = index_of(plans, c.b);
      const std::size_t low = rank(ia) >= rank(ib) ? ia : ib;
      const Plan & p = plans[low];
      bool stopped = false;
      for (const auto & q : best->tracks[low].points) {
        const int f = frame_of(q.t, dt);
        if (f >= p.lock && q.speed < kStoppedSpeed && p.point(f).speed > kMovingPlanSpeed) {
          stopped = true;
          break;
        }
      }
      c.resolution = best->detoured[low] ? Resolution::Detour : stopped ? Resolution::Stop : Resolution::Yield;
    }
    result.conflicts.push_back(c);
  }
  for (Conflict c : best_conflicts) {
    const bool known = std::any_of(planned.begin(), planned.end(), [&](const Conflict & r) { return same_pair(r, c); });
    if (!known) {
      c.resolution = Resolution::Unresolved;
      result.conflicts.push_back(c);
    }
  }
  result.valid = std::none_of(result.conflicts.begin(), result.conflicts.end(), [](const Conflict & c) {
    return c.resolution == Resolution::Unresolved;
  });
  return result;
}

RolloutResult refine(
  const Scenario & scene, const std::vector<EditedAgent> & edited, const RefinementConfig & config,
  const Predictor & predictor)
{
  config.validate();
  if (std::abs(config.timestep - scene.timestep) > 1e-12) {
    throw Error(ErrorCode::InvalidInput, "refinement timestep differs from the scenario timestep");
  }
  for (const auto & e : edited) {
    if (!scene.find(e.id)) {
      throw Error(
        ErrorCode::InvalidInput, "edited agent " + std::to_string(to_underlying(e.id)) + " is not in the scenario");
    }
  }
  if (!config.bypass) {
    return predictor.predict(scene, edited, config);
  }
  RolloutResult result;
  for (const auto & a : scene.agents) {
    result.refined.emplace(to_underlying(a.id), a.trajectory);
  }
  result.conflicts = predict_conflicts(scene, config);
  result.valid = result.conflicts.empty();
  return result;
}

Scenario apply_rollout(const Scenario & scene, const RolloutResult & result)
{
  Scenario out = scene;
  for (auto & a : out.agents) {
    const auto it = result.refined.find(to_underlying(a.id));
    if (it != result.refined.end()) {
      a.trajectory = it->second;
    }
  }
  return out;
}

RolloutFlags validate(const RolloutResult & result, const Scenario & scene)
{
  const auto agents = sorted_agents(scene);
  std::vector<SweepTrack> tracks;
  int end = 0;
  RolloutFlags flags;
  for (const AgentNode * a : agents) {
    const auto it = result.refined.find(to_underlying(a->id));
    const Trajectory & traj = it != result.refined.end() ? it->second : a->trajectory;
    tracks.push_back(to_sweep(*a, traj, scene.timestep, is_static_agent(*a)));
    if (!traj.empty()) {
      end = std::max(end, frame_of(traj.end_time(), scene.timestep) + 1);
    }
    if (is_vehicle_like(a->kind)) {
      for (const auto & p : traj.points) {
        if (p.valid && !point_in_drivable(p.pose.position(), scene.map)) {
          flags.offroad = true;
          break;
        }
      }
    }
  }
  for (const auto & hit : sweep_conflicts(tracks, 0, end, 0.0, Execution::Serial)) {
    if (pair_type(agents[hit.a]->kind, agents[hit.b]->kind) == ConflictType::VehPed) {
      flags.collision_ped = true;
    } else {
      flags.collision_veh = true;
    }
  }
  flags.failure = flags.collision_veh || flags.collision_ped || flags.offroad || !result.valid;
  return flags;
}

MotionMetrics aggregate(const std::vector<RolloutFlags> & flags)
{
  MotionMetrics m;
  m.count = flags.size();
  if (flags.empty()) {
    return m;
  }
  for (const auto & f : flags) {
    m.collision_veh += f.collision_veh ? 1.0 : 0.0;
    m.collision_ped += f.collision_ped ? 1.0 : 0.0;
    m.offroad += f.offroad ? 1.0 : 0.0;
    m.failure += f.failure ? 1.0 : 0.0;
  }
  const double n = static_cast<double>(flags.size());
  m.collision_veh /= n;
  m.collision_ped /= n;
  m.offroad /= n;
  m.failure /= n;
  return m;
}

std::string serialize_rollout(const RolloutResult & result, double timestep)
{
  JsonWriter w(kScenarioDigits);
  w.begin_object();
  w.key("timestep").value(timestep);
  w.key("valid").value(result.valid);
  w.key("passes").value(result.passes);
  w.key("conflicts").begin_array();
  for (const auto & c : result.conflicts) {
    w.begin_object(true)
      .key("a")
      .value(to_underlying(c.a))
      .key("b")
      .value(to_underlying(c.b))
      .key("t")
      .value(c.t)
      .key("location");
    w.begin_array(true).value(c.location.x).value(c.location.y).end_array();
    w.key("type").value(to_string(c.type)).key("resolution").value(to_string(c.resolution)).end_object();
  }
  w.end_array();
  w.key("refined").begin_array();
  for (const auto & [id, traj] : result.refined) {
    w.begin_object();
    w.key("id").value(id);
    w.key("track");
    write_trajectory(w, traj);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

}  // namespace scenesplat
