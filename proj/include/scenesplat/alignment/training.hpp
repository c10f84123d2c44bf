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

#ifndef SCENESPLAT__ALIGNMENT__TRAINING_HPP_
#define SCENESPLAT__ALIGNMENT__TRAINING_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scenesplat/alignment/codebook.hpp"
#include "scenesplat/alignment/loss.hpp"
#include "scenesplat/alignment/projector.hpp"
#include "scenesplat/kernels/batch_gradient.hpp"

namespace scenesplat
{

struct TrainingConfig
{
  double learning_rate{0.05};
  int epochs{300};
  int batch_size{16};
  LossWeights loss;
  double temperature{0.1};  // used when aggregating, stored with the model
  std::uint64_t seed{7};
  double init_scale{0.05};
};

/// One projector per agent family: pedestrians, and everything else.
struct TrajectoryProjectors
{
  Projector vehicle;
  Projector pedestrian;

  const Projector & for_kind(AgentKind kind) const
  {
    return kind == AgentKind::Pedestrian ? pedestrian : vehicle;
  }
  Projector & for_kind(AgentKind kind)
  {
    return kind == AgentKind::Pedestrian ? pedestrian : vehicle;
  }

  friend bool operator==(const TrajectoryProjectors &, const TrajectoryProjectors &) = default;
};

struct LabeledTrajectory
{
  AgentKind kind{AgentKind::Vehicle};
  KinematicFeatures features;
  AlignmentLabel label;
};

struct TrainingResult
{
  TrajectoryProjectors projectors;
  /// Mean loss over the corpus before training, then after every epoch,
  /// vehicle and pedestrian examples pooled.
  std::vector<double> loss_curve;
};

/// Seeded random initialization for both projectors.
TrajectoryProjectors initial_projectors(const TrainingConfig & config);

/// Minibatch gradient descent on the temporal loss, one projector per
/// family, batches drawn from a seeded shuffle each epoch. Throws
/// InvalidInput on an empty corpus, UnknownLabel on a bad label, and
/// Divergence (naming the epoch and step) on a non-finite loss.
TrainingResult train_projectors(
  const std::vector<LabeledTrajectory> & corpus, const Codebooks & books,
  const TrainingConfig & config, std::optional<TrajectoryProjectors> init = std::nullopt,
  Execution exec = Execution::Parallel);

/// Trained model bundle persisted with 17 significant digits.
struct AlignmentModel
{
  TrajectoryProjectors projectors;
  TrainingConfig config;
};

std::string serialize_model(const AlignmentModel & model);
AlignmentModel parse_model(std::string_view text);

}  // namespace scenesplat

#endif  // SCENESPLAT__ALIGNMENT__TRAINING_HPP_
