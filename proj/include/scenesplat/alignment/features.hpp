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

#ifndef SCENESPLAT__ALIGNMENT__FEATURES_HPP_
#define SCENESPLAT__ALIGNMENT__FEATURES_HPP_

#include <array>
#include <optional>
#include <utility>

#include "scenesplat/scene/scenario.hpp"

namespace scenesplat
{

inline constexpr std::size_t kFeatureCount = 10;
/// Angular harmonics per bearing in the encoder input.
inline constexpr std::size_t kBearingHarmonics = 4;
/// Knots of the piecewise-linear encodings of heading change and speeds.
inline constexpr std::size_t kHeadingKnots = 9;
inline constexpr std::size_t kSpeedKnots = 6;
/// 8 scalar features, (cos k*b, sin k*b) for k = 1..4 and both bearings,
/// then tent encodings of the net heading change and the three speeds.
inline constexpr std::size_t kEncoderInputDim =
  8 + 2 * 2 * kBearingHarmonics + kHeadingKnots + 3 * kSpeedKnots;

/// Motion and ego-relative location cues of one track.
struct KinematicFeatures
{
  double net_heading_change{0.0};       // rad, signed sum of per-step turns
  double total_heading_variation{0.0};  // rad
  double mean_speed{0.0};               // m/s
  double initial_speed{0.0};            // m/s
  double final_speed{0.0};              // m/s
  double path_length{0.0};              // m
  double straightness{0.0};             // net displacement / path length, 0 if static
  double displacement_bearing{0.0};     // rad, ego frame
  double mean_position_bearing{0.0};    // rad, ego frame
  double mean_position_range{0.0};      // m

  std::array<double, kFeatureCount> as_array() const;
  friend bool operator==(const KinematicFeatures &, const KinematicFeatures &) = default;
};

/// Time interval [start, end] in seconds.
using TimeWindow = std::pair<double, double>;

/// Features over the window where both tracks are valid (optionally
/// clipped to `window`). Ego-frame quantities use the ego pose at the
/// window's first frame. Throws Alignment when the tracks do not overlap
/// or fewer than two valid samples remain.
KinematicFeatures extract_features(
  const Trajectory & traj, const Trajectory & ego_traj,
  std::optional<TimeWindow> window = std::nullopt);

/// Fixed, non-trainable lift of the features into the projector input:
/// heading changes as-is, speeds / 5 m/s, lengths / 50 m and 20 m, each
/// bearing as its first four angular harmonics, then piecewise-linear tent
/// weights of the net heading change and of each speed over fixed knots.
/// The harmonics let an affine map carve the circle into sectors; the
/// tents let it threshold turn angle and speed.
std::array<double, kEncoderInputDim> encoder_input(const KinematicFeatures & f);

}  // namespace scenesplat

#endif  // SCENESPLAT__ALIGNMENT__FEATURES_HPP_
