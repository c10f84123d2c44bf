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

#include "scenesplat/kernels/conflict_sweep.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

namespace scenesplat
{

SweepTrack make_sweep_track(const AgentNode & agent, double timestep, bool is_static)
{
  SweepTrack t;
  t.kind = agent.kind;
  t.dims = agent.footprint;
  t.is_static = is_static;
  const auto & pts = agent.trajectory.points;
  if (pts.empty()) {
    return t;
  }
  t.first_frame = frame_of(pts.front().t, timestep);
  t.poses.reserve(pts.size());
  t.valid.reserve(pts.size());
  for (const auto & p : pts) {
    t.poses.push_back(p.pose);
    t.valid.push_back(p.valid ? 1 : 0);
  }
  return t;
}

namespace
{

std::optional<PairHit> sweep_pair(
  const SweepTrack & ta, const SweepTrack & tb, std::size_t a, std::size_t b, int begin, int end,
  double margin)
{
  if (ta.kind == AgentKind::Pedestrian && tb.kind == AgentKind::Pedestrian) {
    return std::nullopt;
  }
  const double m = (ta.is_static && tb.is_static) ? 0.0 : margin;
  const int lo = std::max({begin, ta.first_frame, tb.first_frame});
  const int hi = std::min(
    {end, ta.first_frame + static_cast<int>(ta.poses.size()), tb.first_frame + static_cast<int>(tb.poses.size())});
  for (int f = lo; f < hi; ++f) {
    if (!ta.has(f) || !tb.has(f)) {
      continue;
    }
    const OrientedBox ba = OrientedBox{ta.dims, ta.at(f)}.inflated(m);
    const OrientedBox bb = OrientedBox{tb.dims, tb.at(f)}.inflated(m);
    // bounding-circle rejection before the exact test
    const double ra = 0.5 * std::hypot(ba.dims.length, ba.dims.width);
    const double rb = 0.5 * std::hypot(bb.dims.length, bb.dims.width);
    if ((ba.pose.position() - bb.pose.position()).norm() > ra + rb) {
      continue;
    }
    if (boxes_collide(ba, bb)) {
      return PairHit{a, b, f, 0.5 * (ba.pose.position() + bb.pose.position())};
    }
  }
  return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> all_pairs(std::size_t n)
{
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      pairs.emplace_back(a, b);
    }
  }
  return pairs;
}

bool covers(const SweepTrack & t, int frame, Vec2 p)
{
  const Vec2 local = t.at(frame).to_local(p);
  return std::abs(local.x) <= 0.5 * t.dims.length && std::abs(local.y) <= 0.5 * t.dims.width;
}

// Marks cells covered at `frame` into `mark` (one byte per cell).
void rasterize_frame(
  std::span<const SweepTrack> tracks, const GridSpec & g, int frame, std::vector<char> & mark)
{
  std::fill(mark.begin(), mark.end(), 0);
  for (const auto & t : tracks) {
    if (!t.has(frame)) {
      continue;
    }
    const Aabb box = bounding_box(transform_footprint(t.dims, t.at(frame)));
    const auto clamp_index = [](double v, std::size_t n) {
      return static_cast<std::size_t>(std::clamp(v, 0.0, static_cast<double>(n)));
    };
    const std::size_t c0 = clamp_index(std::floor((box.min.x - g.origin.x) / g.cell), g.cols);
    const std::size_t c1 = clamp_index(std::ceil((box.max.x - g.origin.x) / g.cell), g.cols);
    const std::size_t r0 = clamp_index(std::floor((box.min.y - g.origin.y) / g.cell), g.rows);
    const std::size_t r1 = clamp_index(std::ceil((box.max.y - g.origin.y) / g.cell), g.rows);
    for (std::size_t r = r0; r < r1; ++r) {
      for (std::size_t c = c0; c < c1; ++c) {
        const Vec2 center{g.origin.x + (c + 0.5) * g.cell, g.origin.y + (r + 0.5) * g.cell};
        if (covers(t, frame, center)) {
          mark[r * g.cols + c] = 1;
        }
      }
    }
  }
}

}  // namespace

std::vector<PairHit> sweep_conflicts(
  std::span<const SweepTrack> tracks, int frame_begin, int frame_end, double margin, Execution exec)
{
  const auto pairs = all_pairs(tracks.size());
  std::vector<std::optional<PairHit>> slots(pairs.size());
  const auto n = static_cast<std::ptrdiff_t>(pairs.size());
  if (exec == Execution::Serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto [a, b] = pairs[i];
      slots[i] = sweep_pair(tracks[a], tracks[b], a, b, frame_begin, frame_end, margin);
    }
  } else {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto [a, b] = pairs[i];
      slots[i] = sweep_pair(tracks[a], tracks[b], a, b, frame_begin, frame_end, margin);
    }
  }
  std::vector<PairHit> hits;
  for (const auto & s : slots) {
    if (s) {
      hits.push_back(*s);
    }
  }
  return hits;
}

std::vector<std::uint32_t> occupancy_grid(
  std::span<const SweepTrack> tracks, const GridSpec & grid, int frame_begin, int frame_end,
  Execution exec)
{
  const std::size_t cells = grid.cols * grid.rows;
  std::vector<std::uint32_t> counts(cells, 0);
  if (frame_end <= frame_begin || cells == 0) {
    return counts;
  }
  if (exec == Execution::Serial) {
    std::vector<char> mark(cells);
    for (int f = frame_begin; f < frame_end; ++f) {
      rasterize_frame(tracks, grid, f, mark);
      for (std::size_t i = 0; i < cells; ++i) {
        counts[i] += static_cast<std::uint32_t>(mark[i]);
      }
    }
    return counts;
  }
  // frames split across threads; integer sums do not depend on the order
#pragma omp parallel
  {
    std::vector<char> mark(cells);
    std::vector<std::uint32_t> local(cells, 0);
#pragma omp for schedule(static) nowait
    for (int f = frame_begin; f < frame_end; ++f) {
      rasterize_frame(tracks, grid, f, mark);
      for (std::size_t i = 0; i < cells; ++i) {
        local[i] += static_cast<std::uint32_t>(mark[i]);
      }
    }
#pragma omp critical
    for (std::size_t i = 0; i < cells; ++i) {
      counts[i] += local[i];
    }
  }
  return counts;
}

}  // namespace scenesplat
