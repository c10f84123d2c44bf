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

#include "scenesplat/alignment/projector.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "scenesplat/common/error.hpp"
#include "scenesplat/common/random.hpp"

namespace scenesplat
{

bool Projector::is_finite() const
{
  auto finite = [](double v) { return std::isfinite(v); };
  return std::all_of(weights.begin(), weights.end(), finite) &&
         std::all_of(bias.begin(), bias.end(), finite);
}

Projector random_projector(std::size_t out, std::size_t in, std::uint64_t seed, double scale)
{
  Projector p(out, in);
  std::mt19937_64 rng(seed);
  for (auto & v : p.weights) {
    v = uniform(rng, -scale, scale);
  }
  for (auto & v : p.bias) {
    v = uniform(rng, -scale, scale);
  }
  return p;
}

std::vector<double> project(const Projector & proj, std::span<const double> x)
{
  if (x.size() != proj.in_dim) {
    throw Error(
      ErrorCode::InvalidInput, "projector expects " + std::to_string(proj.in_dim) +
                                 " inputs, got " + std::to_string(x.size()));
  }
  std::vector<double> u(proj.bias);
  for (std::size_t r = 0; r < proj.out_dim; ++r) {
    const double * row = proj.weights.data() + r * proj.in_dim;
    double s = 0.0;
    for (std::size_t c = 0; c < proj.in_dim; ++c) {
      s += row[c] * x[c];
    }
    u[r] += s;
  }
  return u;
}

TrajectoryEmbedding embed(const Projector & proj, std::span<const double> x)
{
  return TrajectoryEmbedding(project(proj, x));
}

TrajectoryEmbedding embed_trajectory(const KinematicFeatures & feat, const Projector & proj)
{
  const auto x = encoder_input(feat);
  return embed(proj, x);
}

CodebookMixture aggregate(const TrajectoryEmbedding & z, const Codebook & book, double temperature)
{
  if (book.empty()) {
    throw Error(ErrorCode::InvalidInput, "cannot aggregate over an empty codebook");
  }
  if (!(temperature > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "temperature must be positive");
  }
  const std::size_t k = book.size();
  std::vector<double> logits(k);
  for (std::size_t i = 0; i < k; ++i) {
    logits[i] = cosine(z.values(), book[i].embedding.values()) / temperature;
  }
  const double top = *std::max_element(logits.begin(), logits.end());
  CodebookMixture mix;
  mix.weights.resize(k);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    mix.weights[i] = std::exp(logits[i] - top);
    total += mix.weights[i];
  }
  for (auto & w : mix.weights) {
    w /= total;
  }
  mix.feature.assign(book[0].embedding.size(), 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const auto p = book[i].embedding.values();
    for (std::size_t j = 0; j < p.size(); ++j) {
      mix.feature[j] += mix.weights[i] * p[j];
    }
  }
  return mix;
}

TemporalFeature temporal_feature(
  const TrajectoryEmbedding & z_m, const TrajectoryEmbedding & z_l, const Codebook & motion,
  const Codebook & location, double temperature)
{
  auto m = aggregate(z_m, motion, temperature);
  auto l = aggregate(z_l, location, temperature);
  return {std::move(m.feature), std::move(l.feature), std::move(m.weights), std::move(l.weights)};
}

std::size_t nearest_prototype(std::span<const double> z, const Codebook & book)
{
  std::size_t best = 0;
  double best_sim = -2.0;
  for (std::size_t i = 0; i < book.size(); ++i) {
    const double s = cosine(z, book[i].embedding.values());
    if (s > best_sim) {
      best_sim = s;
      best = i;
    }
  }
  return best;
}

}  // namespace scenesplat
