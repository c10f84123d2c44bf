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

// Finite-difference check of the alignment loss gradient with respect to
// the projector parameters.

#ifndef SCENESPLAT_TESTS__SUPPORT__GRADCHECK_HPP_
#define SCENESPLAT_TESTS__SUPPORT__GRADCHECK_HPP_

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "scenesplat/alignment/codebook.hpp"
#include "scenesplat/alignment/features.hpp"
#include "scenesplat/alignment/loss.hpp"
#include "scenesplat/alignment/projector.hpp"

namespace scenesplat::testing
{

inline constexpr double kGradFloor = 1e-5;

struct GradCheckResult
{
  double max_rel_error{0.0};
  std::size_t checked{0};
  bool skipped{false};  // selection near a tie, loss not differentiable
};

/// Smallest gap between the best and second-best prototype cosine.
inline double selection_margin(std::span<const double> z, const Codebook & book)
{
  std::vector<double> c;
  for (const auto & p : book.prototypes()) {
    double d = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) d += z[i] * p.embedding[i];
    c.push_back(d);
  }
  std::sort(c.rbegin(), c.rend());
  return c.size() < 2 ? 1.0 : c[0] - c[1];
}

/// Random projector, input and label from `seed`; every `stride`-th
/// parameter compared against a central difference with step `eps`.
/// Relative error is |a - n| / max(|a|, |n|, kGradFloor). The floor keeps
/// components far below the difference quotient's roundoff (about
/// 1e-16 * |L| / eps) from dominating the ratio.
inline GradCheckResult check_projector_gradient(
  std::uint64_t seed, const Codebooks & books, double eps = 1e-5, std::size_t stride = 1)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto & motion = books.vehicle_motion;
  Projector proj = random_projector(motion[0].embedding.size(), kEncoderInputDim, seed, 0.3);
  std::vector<double> x(kEncoderInputDim);
  for (auto & v : x) v = u(rng);
  const AlignmentLabel label{
    std::uniform_int_distribution<std::size_t>(0, motion.size() - 1)(rng),
    std::uniform_int_distribution<std::size_t>(0, books.location.size() - 1)(rng)};
  const LossWeights weights{std::uniform_real_distribution<double>(0.5, 2.0)(rng),
                            std::uniform_real_distribution<double>(0.05, 0.5)(rng)};

  GradCheckResult r;
  const auto z = project(proj, x);
  const TrajectoryEmbedding zn(z);
  if (selection_margin(zn.values(), motion) < 1e-3 || selection_margin(zn.values(), books.location) < 1e-3) {
    r.skipped = true;
    return r;
  }
  const auto analytic = projector_loss(proj, x, label, motion, books.location, weights);
  auto value = [&](Projector & p) {
    return projector_loss_value(p, x, label, motion, books.location, weights);
  };
  auto compare = [&](double a, double & param) {
    const double p0 = param;
    param = p0 + eps;
    const double fp = value(proj);
    param = p0 - eps;
    const double fm = value(proj);
    param = p0;
    const double n = (fp - fm) / (2.0 * eps);
    const double rel = std::abs(a - n) / std::max({std::abs(a), std::abs(n), kGradFloor});
    r.max_rel_error = std::max(r.max_rel_error, rel);
    ++r.checked;
  };
  for (std::size_t i = 0; i < proj.weights.size(); i += stride) {
    compare(analytic.gradient.weights[i], proj.weights[i]);
  }
  for (std::size_t i = 0; i < proj.bias.size(); i += stride) {
    compare(analytic.gradient.bias[i], proj.bias[i]);
  }
  return r;
}

}  // namespace scenesplat::testing

#endif  // SCENESPLAT_TESTS__SUPPORT__GRADCHECK_HPP_
