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

#include "scenesplat/kernels/batch_gradient.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace scenesplat
{

int max_threads()
{
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace
{

void add_into(Projector & acc, const Projector & g)
{
  for (std::size_t i = 0; i < acc.weights.size(); ++i) {
    acc.weights[i] += g.weights[i];
  }
  for (std::size_t i = 0; i < acc.bias.size(); ++i) {
    acc.bias[i] += g.bias[i];
  }
}

void rethrow_first(const std::vector<std::exception_ptr> & errors)
{
  for (const auto & e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace

BatchGradient batch_loss_gradient(
  const Projector & proj, std::span<const AlignmentExample> examples,
  std::span<const std::size_t> batch, const Codebook & motion, const Codebook & location,
  const LossWeights & weights, Execution exec)
{
  BatchGradient out{0.0, Projector(proj.out_dim, proj.in_dim)};
  if (exec == Execution::Serial) {
    for (const std::size_t idx : batch) {
      const auto & ex = examples[idx];
      auto r = projector_loss(proj, ex.input, ex.label, motion, location, weights);
      out.loss_sum += r.terms.total;
      add_into(out.gradient_sum, r.gradient);
    }
    return out;
  }

  const auto n = static_cast<std::ptrdiff_t>(batch.size());
  std::vector<ProjectorLoss> parts(batch.size());
  std::vector<std::exception_ptr> errors(batch.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const auto & ex = examples[batch[i]];
      parts[i] = projector_loss(proj, ex.input, ex.label, motion, location, weights);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  rethrow_first(errors);
  for (const auto & r : parts) {
    out.loss_sum += r.terms.total;
    add_into(out.gradient_sum, r.gradient);
  }
  return out;
}

double total_loss(
  const Projector & proj, std::span<const AlignmentExample> examples, const Codebook & motion,
  const Codebook & location, const LossWeights & weights, Execution exec)
{
  const auto n = static_cast<std::ptrdiff_t>(examples.size());
  std::vector<double> losses(examples.size(), 0.0);
  std::vector<std::exception_ptr> errors(examples.size());
  auto eval = [&](std::ptrdiff_t i) {
    try {
      const auto & ex = examples[i];
      losses[i] = projector_loss_value(proj, ex.input, ex.label, motion, location, weights);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (exec == Execution::Serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) eval(i);
  } else {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) eval(i);
  }
  rethrow_first(errors);
  double sum = 0.0;
  for (double l : losses) {
    sum += l;
  }
  return sum;
}

}  // namespace scenesplat
