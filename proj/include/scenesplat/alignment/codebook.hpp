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

#ifndef SCENESPLAT__ALIGNMENT__CODEBOOK_HPP_
#define SCENESPLAT__ALIGNMENT__CODEBOOK_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scenesplat/alignment/text_encoder.hpp"
#include "scenesplat/scene/scenario.hpp"

namespace scenesplat
{

enum class CodebookKind { VehicleMotion, PedestrianMotion, Location };

std::string_view to_string(CodebookKind kind);
std::optional<CodebookKind> parse_codebook_kind(std::string_view text);

namespace proto
{
// vehicle motion
inline constexpr std::string_view kStationary = "stationary";
inline constexpr std::string_view kStraight = "straight";
inline constexpr std::string_view kTurnLeft = "turn-left";
inline constexpr std::string_view kTurnRight = "turn-right";
inline constexpr std::string_view kUTurn = "u-turn";
inline constexpr std::string_view kStopping = "stopping";
inline constexpr std::string_view kStarting = "starting";
// pedestrian motion
inline constexpr std::string_view kStanding = "standing";
inline constexpr std::string_view kWalkingStraight = "walking-straight";
inline constexpr std::string_view kCrossingLeftToRight = "crossing-left-to-right";
inline constexpr std::string_view kCrossingRightToLeft = "crossing-right-to-left";
// kStopping is shared by both motion books
// location sectors, listed in tie-break order
inline constexpr std::string_view kFront = "front";
inline constexpr std::string_view kFrontLeft = "front-left";
inline constexpr std::string_view kLeft = "left";
inline constexpr std::string_view kRearLeft = "rear-left";
inline constexpr std::string_view kBehind = "behind";
inline constexpr std::string_view kRearRight = "rear-right";
inline constexpr std::string_view kRight = "right";
inline constexpr std::string_view kFrontRight = "front-right";
}  // namespace proto

struct Prototype
{
  std::string name;
  std::string description;
  TextEmbedding embedding;
};

/// Named prototypes with canonical descriptions embedded in the text space.
class Codebook
{
public:
  using Entry = std::pair<std::string, std::string>;  // (name, description)

  Codebook() = default;
  /// Throws InvalidInput on duplicate names or descriptions without tokens.
  Codebook(CodebookKind kind, const std::vector<Entry> & entries, const TextEncoder & encoder);

  CodebookKind kind() const { return kind_; }
  std::size_t size() const { return prototypes_.size(); }
  bool empty() const { return prototypes_.empty(); }
  const Prototype & operator[](std::size_t i) const { return prototypes_[i]; }
  const std::vector<Prototype> & prototypes() const { return prototypes_; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Throws UnknownLabel.
  std::size_t require(std::string_view name) const;

private:
  CodebookKind kind_{CodebookKind::VehicleMotion};
  std::vector<Prototype> prototypes_;
};

struct Codebooks
{
  Codebook vehicle_motion;
  Codebook pedestrian_motion;
  Codebook location;

  const Codebook & motion_for(AgentKind kind) const
  {
    return kind == AgentKind::Pedestrian ? pedestrian_motion : vehicle_motion;
  }
};

std::vector<Codebook::Entry> default_entries(CodebookKind kind);
Codebooks default_codebooks(const TextEncoder & encoder);

/// Codebook document: {"codebooks": [{kind, prototypes: [{name, description}]}]}.
/// Embeddings are recomputed on load.
std::string serialize_codebooks(const Codebooks & books);
Codebooks parse_codebooks(std::string_view text, const TextEncoder & encoder);

}  // namespace scenesplat

#endif  // SCENESPLAT__ALIGNMENT__CODEBOOK_HPP_
