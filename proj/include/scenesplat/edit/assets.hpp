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

#ifndef SCENESPLAT__EDIT__ASSETS_HPP_
#define SCENESPLAT__EDIT__ASSETS_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scenesplat/alignment/text_encoder.hpp"
#include "scenesplat/scene/scenario.hpp"

namespace scenesplat
{

struct AssetRecord
{
  std::string id;
  AgentKind kind{AgentKind::StaticObject};
  BoxDims dims;
  double height{1.0};
  std::string caption;
  /// Track in the asset's own frame (starts at the origin facing +x),
  /// composed with the placement pose when the asset is inserted.
  std::optional<Trajectory> motion_template;

  friend bool operator==(const AssetRecord &, const AssetRecord &) = default;
};

using AssetBank = std::vector<AssetRecord>;

struct AssetMatch
{
  const AssetRecord * asset{nullptr};
  double score{0.0};
};

/// Argmax caption cosine against `query`, optionally restricted to one
/// kind; ties go to the lexicographically smallest id. Throws InvalidInput
/// on an empty bank or query and NotFound when the filter leaves nothing.
AssetMatch retrieve_asset(
  const AssetBank & bank, std::string_view query, std::optional<AgentKind> kind,
  const TextEncoder & encoder);

/// Document: {format: 1, assets: [{id, kind, dims: [l, w, h], caption,
/// motion_template?: [[t, x, y, heading, speed, valid]...]}]}.
std::string serialize_asset_bank(const AssetBank & bank);
AssetBank parse_asset_bank(std::string_view text);
AssetBank load_asset_bank(const std::filesystem::path & path);

/// Bank shipped with the library, identical to data/assets.json.
const AssetBank & default_asset_bank();

}  // namespace scenesplat

#endif  // SCENESPLAT__EDIT__ASSETS_HPP_
