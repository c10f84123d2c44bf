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

#ifndef SCENESPLAT__ALIGNMENT__LOSS_HPP_
#define SCENESPLAT__ALIGNMENT__LOSS_HPP_

#include <span>
#include <vector>

#include "scenesplat/alignment/codebook.hpp"
#include "scenesplat/alignment/projector.hpp"

namespace scenesplat
{

struct LossWeights
{
  double align{1.0};
  double commit{0.1};
};

/// Prototype indices into the motion and location codebooks.
struct AlignmentLabel
{
  std::size_t motion{0};
  std::size_t location{0};

  friend bool operator==(const AlignmentLabel &, const AlignmentLabel &) = default;
};

struct LossTerms
{
  double motion{0.0};    // 1 - cos(z_m, p_label)
  double location{0.0};  // 1 - cos(z_l, p_label)
  double commit{0.0};    // |z_m - p_sel|^2 + |z_l - p_sel|^2
  double total{0.0};
};

/// Loss value plus dL/dz for each embedding. The gradients are taken with z
/// treated as a free vector; callers chain them through the normalization.
struct EmbeddingLoss
{
  LossTerms terms;
  std::vector<double> grad_z_m;
  std::vector<double> grad_z_l;
};

/// total = align * (motion + location) + commit * commit_term, where the
/// commitment targets are the argmax prototypes held constant.
/// Throws UnknownLabel when a label index is out of range.
EmbeddingLoss temporal_loss(
  const TrajectoryEmbedding & z_m, const TrajectoryEmbedding & z_l, const AlignmentLabel & label,
  const Codebook & motion, const Codebook & location, const LossWeights & weights);

struct ProjectorLoss
{
  LossTerms terms;
  Projector gradient;  // same shape as the projector
};

/// Loss of one example under a shared projector (z_m = z_l = z) and its
/// gradient with respect to the projector's weights and bias.
ProjectorLoss projector_loss(
  const Projector & proj, std::span<const double> x, const AlignmentLabel & label,
  const Codebook & motion, const Codebook & location, const LossWeights & weights);

/// Loss only, evaluated without building gradients.
double projector_loss_value(
  const Projector & proj, std::span<const double> x, const AlignmentLabel & label,
  const Codebook & motion, const Codebook & location, const LossWeights & weights);

}  // namespace scenesplat

#endif  // SCENESPLAT__ALIGNMENT__LOSS_HPP_
