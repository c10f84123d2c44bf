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

#ifndef SCENESPLAT__ALIGNMENT__PROJECTOR_HPP_
#define SCENESPLAT__ALIGNMENT__PROJECTOR_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "scenesplat/alignment/codebook.hpp"
#include "scenesplat/alignment/features.hpp"
#include "scenesplat/alignment/text_encoder.hpp"

namespace scenesplat
{

/// Affine map from encoder input (in_dim) to the embedding space (out_dim).
/// Weights are row-major, out_dim x in_dim.
struct Projector
{
  std::size_t out_dim{0};
  std::size_t in_dim{0};
  std::vector<double> weights;
  std::vector<double> bias;

  Projector() = default;
  Projector(std::size_t out, std::size_t in)
  : out_dim(out), in_dim(in), weights(out * in, 0.0), bias(out, 0.0)
  {
  }

  double & w(std::size_t row, std::size_t col) { return weights[row * in_dim + col]; }
  double w(std::size_t row, std::size_t col) const { return weights[row * in_dim + col]; }
  std::size_t parameter_count() const { return weights.size() + bias.size(); }
  bool is_finite() const;

  friend bool operator==(const Projector &, const Projector &) = default;
};

/// Weights and bias drawn uniformly from [-scale, scale].
Projector random_projector(std::size_t out, std::size_t in, std::uint64_t seed, double scale);

/// weights * x + bias, before normalization.
std::vector<double> project(const Projector & proj, std::span<const double> x);

/// normalize(weights * x + bias). Throws DegenerateEmbedding on a zero
/// pre-image and InvalidInput on a dimension mismatch.
TrajectoryEmbedding embed(const Projector & proj, std::span<const double> x);
TrajectoryEmbedding embed_trajectory(const KinematicFeatures & feat, const Projector & proj);

/// Softmax-weighted prototype mixture of one codebook.
struct CodebookMixture
{
  std::vector<double> feature;
  std::vector<double> weights;
};

/// w_k = softmax(cos(z, p_k) / temperature), f = sum_k w_k p_k.
/// Throws InvalidInput on an empty codebook or non-positive temperature.
CodebookMixture aggregate(const TrajectoryEmbedding & z, const Codebook & book, double temperature);

struct TemporalFeature
{
  std::vector<double> f_motion;
  std::vector<double> f_location;
  std::vector<double> motion_weights;
  std::vector<double> location_weights;
};

TemporalFeature temporal_feature(
  const TrajectoryEmbedding & z_m, const TrajectoryEmbedding & z_l, const Codebook & motion,
  const Codebook & location, double temperature);

/// Index of the prototype most similar to z; ties go to the lower index.
std::size_t nearest_prototype(std::span<const double> z, const Codebook & book);

}  // namespace scenesplat

#endif  // SCENESPLAT__ALIGNMENT__PROJECTOR_HPP_
