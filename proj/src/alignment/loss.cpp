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

#include "scenesplat/alignment/loss.hpp"

#include <string>

#include "scenesplat/common/error.hpp"

namespace scenesplat
{

namespace
{

void check_label(std::size_t index, const Codebook & book)
{
  if (index >= book.size()) {
    throw Error(
      ErrorCode::UnknownLabel, "label " + std::to_string(index) + " outside " +
                                 std::string(to_string(book.kind())) + " codebook of size " +
                                 std::to_string(book.size()));
  }
}

// Adds align * d(1 - z.p)/dz + commit * d|z - q|^2/dz into g and returns
// (cosine distance, commitment distance).
std::pair<double, double> accumulate_terms(
  std::span<const double> z, std::span<const double> p_label, std::span<const double> p_sel,
  const LossWeights & weights, std::vector<double> & g)
{
  double cos_term = 0.0;
  double commit_term = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    cos_term += z[i] * p_label[i];
    const double d = z[i] - p_sel[i];
    commit_term += d * d;
    g[i] += -weights.align * p_label[i] + 2.0 * weights.commit * d;
  }
  return {1.0 - cos_term, commit_term};
}

}  // namespace

EmbeddingLoss temporal_loss(
  const TrajectoryEmbedding & z_m, const TrajectoryEmbedding & z_l, const AlignmentLabel & label,
  const Codebook & motion, const Codebook & location, const LossWeights & weights)
{
  check_label(label.motion, motion);
  check_label(label.location, location);
  if (z_m.size() != motion[0].embedding.size() || z_l.size() != location[0].embedding.size()) {
    throw Error(ErrorCode::InvalidInput, "embedding and prototype dimensions differ");
  }

  EmbeddingLoss out;
  out.grad_z_m.assign(z_m.size(), 0.0);
  out.grad_z_l.assign(z_l.size(), 0.0);
  // z and prototypes are unit vectors, so cos(z, p) = z.p
  const auto sel_m = nearest_prototype(z_m.values(), motion);
  const auto sel_l = nearest_prototype(z_l.values(), location);
  const auto [lm, cm] = accumulate_terms(
    z_m.values(), motion[label.motion].embedding.values(), motion[sel_m].embedding.values(),
    weights, out.grad_z_m);
  const auto [ll, cl] = accumulate_terms(
    z_l.values(), location[label.location].embedding.values(), location[sel_l].embedding.values(),
    weights, out.grad_z_l);
  out.terms.motion = lm;
  out.terms.location = ll;
  out.terms.commit = cm + cl;
  out.terms.total = weights.align * (lm + ll) + weights.commit * (cm + cl);
  return out;
}

ProjectorLoss projector_loss(
  const Projector & proj, std::span<const double> x, const AlignmentLabel & label,
  const Codebook & motion, const Codebook & location, const LossWeights & weights)
{
  const auto u = project(proj, x);
  const TrajectoryEmbedding z(u);
  const double norm_u = l2_norm(u);
  const auto loss = temporal_loss(z, z, label, motion, location, weights);

  // z = u / |u|  =>  dL/du = (I - z z^T) dL/dz / |u|
  const std::size_t d = z.size();
  std::vector<double> g(d);
  double zg = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    g[i] = loss.grad_z_m[i] + loss.grad_z_l[i];
    zg += z[i] * g[i];
  }
  ProjectorLoss out{loss.terms, Projector(proj.out_dim, proj.in_dim)};
  for (std::size_t r = 0; r < d; ++r) {
    const double du = (g[r] - z[r] * zg) / norm_u;
    out.gradient.bias[r] = du;
    for (std::size_t c = 0; c < proj.in_dim; ++c) {
      out.gradient.w(r, c) = du * x[c];
    }
  }
  return out;
}

double projector_loss_value(
  const Projector & proj, std::span<const double> x, const AlignmentLabel & label,
  const Codebook & motion, const Codebook & location, const LossWeights & weights)
{
  const TrajectoryEmbedding z(project(proj, x));
  return temporal_loss(z, z, label, motion, location, weights).terms.total;
}

}  // namespace scenesplat
