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

#ifndef SCENESPLAT__ALIGNMENT__TEXT_ENCODER_HPP_
#define SCENESPLAT__ALIGNMENT__TEXT_ENCODER_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scenesplat
{

inline constexpr std::size_t kEmbeddingDim = 64;

/// L2-normalized real vector. Construction from a zero or non-finite
/// vector throws DegenerateEmbedding.
class UnitVector
{
public:
  UnitVector() = default;
  explicit UnitVector(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  friend bool operator==(const UnitVector &, const UnitVector &) = default;

private:
  std::vector<double> values_;
};

using TextEmbedding = UnitVector;
using TrajectoryEmbedding = UnitVector;

double dot(std::span<const double> a, std::span<const double> b);
double l2_norm(std::span<const double> a);
/// Cosine similarity; 0 when either vector is zero.
double cosine(std::span<const double> a, std::span<const double> b);

/// Lowercase and split on non-alphanumeric characters.
std::vector<std::string> tokenize(std::string_view text);

/// Producer of sentence embeddings in the shared text space.
class TextEncoder
{
public:
  virtual ~TextEncoder() = default;
  virtual std::size_t dim() const = 0;
  /// Embedding of `text`, or nullopt when the text carries no tokens.
  virtual std::optional<TextEmbedding> encode(std::string_view text) const = 0;
};

/// Deterministic signed feature hashing. Each token and each adjacent token
/// pair is hashed (FNV-1a) into one of `dim` buckets with a +-1 sign taken
/// from a second, independently seeded hash; the accumulated vector is
/// L2-normalized.
class HashingTextEncoder final : public TextEncoder
{
public:
  explicit HashingTextEncoder(std::size_t dim = kEmbeddingDim) : dim_(dim) {}

  std::size_t dim() const override { return dim_; }
  std::optional<TextEmbedding> encode(std::string_view text) const override;

  /// Unnormalized bucket counts, exposed for tests.
  std::vector<double> raw_counts(std::string_view text) const;

private:
  std::size_t dim_;
};

}  // namespace scenesplat

#endif  // SCENESPLAT__ALIGNMENT__TEXT_ENCODER_HPP_
