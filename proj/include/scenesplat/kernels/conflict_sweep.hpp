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

#ifndef SCENESPLAT__KERNELS__CONFLICT_SWEEP_HPP_
#define SCENESPLAT__KERNELS__CONFLICT_SWEEP_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scenesplat/kernels/execution.hpp"
#include "scenesplat/scene/scenario.hpp"

namespace scenesplat
{

/// Per-frame footprint of one agent on a shared frame grid.
struct SweepTrack
{
  AgentKind kind{AgentKind::Vehicle};
  BoxDims dims;
  bool is_static{false};
  int first_frame{0};
  std::vector<Pose2> poses;   // frame first_frame + i
  std::vector<char> valid;    // same length as poses

  bool has(int frame) const
  {
    const int i = frame - first_frame;
    return i >= 0 && i < static_cast<int>(poses.size()) && valid[static_cast<std::size_t>(i)] != 0;
  }
  const Pose2 & at(int frame) const { return poses[static_cast<std::size_t>(frame - first_frame)]; }
};

/// Frames of `traj` (valid samples only) on the scenario grid.
SweepTrack make_sweep_track(const AgentNode & agent, double timestep, bool is_static);

struct PairHit
{
  std::size_t a{0};  // a < b, indices into the track list
  std::size_t b{0};
  int frame{0};
  Vec2 location;     // midpoint of the two centers at `frame`

  friend bool operator==(const PairHit &, const PairHit &) = default;
};

/// Earliest frame in [frame_begin, frame_end) at which each pair overlaps
/// with both boxes grown by `margin` per side. Pedestrian pairs are
/// skipped and pairs of static tracks are tested without the margin.
/// Hits come back ordered by (a, b); Serial and Parallel agree exactly.
std::vector<PairHit> sweep_conflicts(
  std::span<const SweepTrack> tracks, int frame_begin, int frame_end, double margin,
  Execution exec = Execution::Parallel);

/// Axis-aligned raster over the ground plane.
struct GridSpec
{
  Vec2 origin;         // lower-left corner
  double cell{1.0};    // m
  std::size_t cols{0};
  std::size_t rows{0};
};

/// Number of frames in [frame_begin, frame_end) during which some footprint
/// covers each cell center; row-major, rows along +y.
std::vector<std::uint32_t> occupancy_grid(
  std::span<const SweepTrack> tracks, const GridSpec & grid, int frame_begin, int frame_end,
  Execution exec = Execution::Parallel);

}  // namespace scenesplat

#endif  // SCENESPLAT__KERNELS__CONFLICT_SWEEP_HPP_
