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

#ifndef SCENESPLAT__KERNELS__BATCH_GRADIENT_HPP_
#define SCENESPLAT__KERNELS__BATCH_GRADIENT_HPP_

#include <array>
#include <span>
#include <vector>

#include "scenesplat/alignment/loss.hpp"
#include "scenesplat/kernels/execution.hpp"

namespace scenesplat
{

struct AlignmentExample
{
  std::array<double, kEncoderInputDim> input{};
  AlignmentLabel label;
};

struct BatchGradient
{
  double loss_sum{0.0};
  Projector gradient_sum;
};

/// Summed loss and projector gradient over `batch` (indices into
/// `examples`). Per-example terms are reduced in batch order, so Serial and
/// Parallel agree bit for bit.
BatchGradient batch_loss_gradient(
  const Projector & proj, std::span<const AlignmentExample> examples,
  std::span<const std::size_t> batch, const Codebook & motion, const Codebook & location,
  const LossWeights & weights, Execution exec = Execution::Parallel);

/// Summed loss over every example, no gradients.
double total_loss(
  const Projector & proj, std::span<const AlignmentExample> examples, const Codebook & motion,
  const Codebook & location, const LossWeights & weights, Execution exec = Execution::Parallel);

}  // namespace scenesplat

#endif  // SCENESPLAT__KERNELS__BATCH_GRADIENT_HPP_
