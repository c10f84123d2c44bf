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

#include "scenesplat/alignment/features.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "scenesplat/common/error.hpp"

namespace scenesplat
{

std::array<double, kFeatureCount> KinematicFeatures::as_array() const
{
  return {net_heading_change, total_heading_variation, mean_speed, initial_speed, final_speed,
          path_length, straightness, displacement_bearing, mean_position_bearing,
          mean_position_range};
}

namespace
{

constexpr double kTimeEps = 1e-6;

std::optional<TimeWindow> valid_span(const Trajectory & traj)
{
  std::optional<TimeWindow> span;
  for (const auto & p : traj.points) {
    if (!p.valid) continue;
    if (!span) {
      span = TimeWindow{p.t, p.t};
    }
    span->second = p.t;
  }
  return span;
}

}  // namespace

KinematicFeatures extract_features(
  const Trajectory & traj, const Trajectory & ego_traj, std::optional<TimeWindow> window)
{
  const auto a = valid_span(traj);
  const auto e = valid_span(ego_traj);
  if (!a || !e) {
    throw Error(ErrorCode::Alignment, "trajectory has no valid samples");
  }
  double t0 = std::max(a->first, e->first);
  double t1 = std::min(a->second, e->second);
  if (window) {
    t0 = std::max(t0, window->first);
    t1 = std::min(t1, window->second);
  }
  if (t0 > t1 + kTimeEps) {
    throw Error(ErrorCode::Alignment, "trajectories do not overlap in time");
  }

  std::vector<const TrackPoint *> pts;
  for (const auto & p : traj.points) {
    if (p.valid && p.t >= t0 - kTimeEps && p.t <= t1 + kTimeEps) {
      pts.push_back(&p);
    }
  }
  if (pts.size() < 2) {
    throw Error(ErrorCode::Alignment, "fewer than two valid samples in the shared window");
  }

  Pose2 ego_pose;
  try {
    ego_pose = interpolate_pose(ego_traj, pts.front()->t);
  } catch (const Error &) {
    throw Error(ErrorCode::Alignment, "ego pose unavailable at the window start");
  }

  KinematicFeatures f;
  double speed_sum = 0.0;
  Vec2 pos_sum{};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    speed_sum += pts[i]->speed;
    pos_sum = pos_sum + pts[i]->pose.position();
    if (i > 0) {
      const double turn = angle_diff(pts[i]->pose.heading(), pts[i - 1]->pose.heading());
      f.net_heading_change += turn;
      f.total_heading_variation += std::abs(turn);
      f.path_length += (pts[i]->pose.position() - pts[i - 1]->pose.position()).norm();
    }
  }
  const double n = static_cast<double>(pts.size());
  f.mean_speed = speed_sum / n;
  f.initial_speed = pts.front()->speed;
  f.final_speed = pts.back()->speed;

  const Vec2 displacement = pts.back()->pose.position() - pts.front()->pose.position();
  if (f.path_length > 1e-9) {
    f.straightness = std::clamp(displacement.norm() / f.path_length, 0.0, 1.0);
  }
  const Vec2 disp_local = rotate(displacement, -ego_pose.heading());
  f.displacement_bearing = std::atan2(disp_local.y, disp_local.x);

  const Vec2 mean_local = ego_pose.to_local((1.0 / n) * pos_sum);
  f.mean_position_bearing = std::atan2(mean_local.y, mean_local.x);
  f.mean_position_range = mean_local.norm();
  return f;
}

namespace
{

// Piecewise-linear "tent" weights of v over sorted knots; values outside
// the range clamp to the end knots. Exactly two adjacent entries are
// non-zero and they sum to 1.
template <std::size_t N>
void tents(double v, const std::array<double, N> & knots, double * out)
{
  for (std::size_t i = 0; i < N; ++i) out[i] = 0.0;
  if (v <= knots.front()) { out[0] = 1.0; return; }
  if (v >= knots.back()) { out[N - 1] = 1.0; return; }
  for (std::size_t i = 0; i + 1 < N; ++i) {
    if (v <= knots[i + 1]) {
      const double a = (v - knots[i]) / (knots[i + 1] - knots[i]);
      out[i] = 1.0 - a;
      out[i + 1] = a;
      return;
    }
  }
}

constexpr std::array<double, kHeadingKnots> kHeadingKnotValues{
  -kPi, -0.75 * kPi, -0.5 * kPi, -0.25 * kPi, 0.0, 0.25 * kPi, 0.5 * kPi, 0.75 * kPi, kPi};
constexpr std::array<double, kSpeedKnots> kSpeedKnotValues{0.0, 1.0, 2.0, 4.0, 8.0, 12.0};

}  // namespace

std::array<double, kEncoderInputDim> encoder_input(const KinematicFeatures & f)
{
  constexpr double kSpeedScale = 5.0;
  constexpr double kPathScale = 50.0;
  constexpr double kRangeScale = 20.0;
  std::array<double, kEncoderInputDim> x{
    f.net_heading_change,
    f.total_heading_variation,
    f.mean_speed / kSpeedScale,
    f.initial_speed / kSpeedScale,
    f.final_speed / kSpeedScale,
    f.path_length / kPathScale,
    f.straightness,
    f.mean_position_range / kRangeScale};
  std::size_t i = 8;
  for (const double b : {f.displacement_bearing, f.mean_position_bearing}) {
    for (std::size_t k = 1; k <= kBearingHarmonics; ++k) {
      x[i++] = std::cos(static_cast<double>(k) * b);
      x[i++] = std::sin(static_cast<double>(k) * b);
    }
  }
  tents(f.net_heading_change, kHeadingKnotValues, &x[i]);
  i += kHeadingKnots;
  for (const double v : {f.mean_speed, f.initial_speed, f.final_speed}) {
    tents(v, kSpeedKnotValues, &x[i]);
    i += kSpeedKnots;
  }
  return x;
}

}  // namespace scenesplat
