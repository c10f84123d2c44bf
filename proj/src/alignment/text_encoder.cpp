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

#include "scenesplat/alignment/text_encoder.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>

#include "scenesplat/common/error.hpp"

namespace scenesplat
{

UnitVector::UnitVector(std::vector<double> values) : values_(std::move(values))
{
  const double n = l2_norm(values_);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::DegenerateEmbedding, "cannot normalize a zero or non-finite vector");
  }
  for (auto & v : values_) {
    v /= n;
  }
}

double dot(std::span<const double> a, std::span<const double> b)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i] * b[i];
  }
  return s;
}

double l2_norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double cosine(std::span<const double> a, std::span<const double> b)
{
  const double na = l2_norm(a);
  const double nb = l2_norm(b);
  if (na == 0.0 || nb == 0.0) {
    return 0.0;
  }
  return dot(a, b) / (na * nb);
}

std::vector<std::string> tokenize(std::string_view text)
{
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc)) {
      current.push_back(static_cast<char>(std::tolower(uc)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) {
    tokens.push_back(std::move(current));
  }
  return tokens;
}

namespace
{

constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;
constexpr std::uint64_t kBucketBasis = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kSignBasis = 0x84222325cbf29ce4ULL;

std::uint64_t fnv1a(std::string_view s, std::uint64_t basis)
{
  std::uint64_t h = basis;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace

std::vector<double> HashingTextEncoder::raw_counts(std::string_view text) const
{
  std::vector<double> acc(dim_, 0.0);
  const auto tokens = tokenize(text);
  auto add = [&](std::string_view feature) {
    const std::uint64_t bucket = fnv1a(feature, kBucketBasis) % dim_;
    const double sign = (fnv1a(feature, kSignBasis) >> 33) & 1U ? -1.0 : 1.0;
    acc[bucket] += sign;
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    add(tokens[i]);
    if (i + 1 < tokens.size()) {
      add(tokens[i] + " " + tokens[i + 1]);
    }
  }
  return acc;
}

std::optional<TextEmbedding> HashingTextEncoder::encode(std::string_view text) const
{
  auto counts = raw_counts(text);
  if (l2_norm(counts) == 0.0) {
    // either no tokens or perfect sign cancellation
    return std::nullopt;
  }
  return TextEmbedding(std::move(counts));
}

}  // namespace scenesplat
