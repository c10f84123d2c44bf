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

#ifndef SCENESPLAT__SERVICE__RUNTIME_HPP_
#define SCENESPLAT__SERVICE__RUNTIME_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "scenesplat/alignment/text_encoder.hpp"
#include "scenesplat/common/json_writer.hpp"
#include "scenesplat/edit/assets.hpp"
#include "scenesplat/edit/edit_engine.hpp"
#include "scenesplat/eval/benchmarks.hpp"
#include "scenesplat/refine/refinement.hpp"

namespace scenesplat
{

/// Name of the environment variable pointing at the defaults file.
inline constexpr const char * kConfigEnv = "SCENESPLAT_CONFIG";

/// Operator defaults. The file uses the bench spec layout (query weights,
/// training setup, refinement config) plus optional `model`, `assets` and
/// `bridge` entries; relative paths resolve against the file's directory.
struct ServiceConfig
{
  BenchSpec defaults;
  std::optional<std::filesystem::path> model_path;
  std::optional<std::filesystem::path> assets_path;
  std::string bridge_program;
};

ServiceConfig parse_service_config(std::string_view text, const std::filesystem::path & base_dir);

/// Reads the file named by SCENESPLAT_CONFIG, or returns built-in defaults
/// when the variable is unset or empty.
ServiceConfig load_service_config();

/// Encoder, codebooks, trajectory projectors and asset bank. Loads the model
/// file when configured, otherwise trains the default model.
class Models
{
public:
  explicit Models(const ServiceConfig & config);

  QueryModels query_models() const
  {
    return {encoder_, books_, model_.projectors, model_.config.temperature};
  }
  EditModels edit_models() const { return {query_models(), bank_}; }
  const AlignmentModel & model() const { return model_; }
  const AssetBank & bank() const { return bank_; }

private:
  HashingTextEncoder encoder_;
  Codebooks books_;
  AlignmentModel model_;
  AssetBank bank_;
};

/// Agents edited since the last refinement, keyed by id.
std::vector<EditedAgent> merge_edited(
  const std::vector<EditedAgent> & pending, const EditResult & result);

/// Request body of POST /query and the CLI query subcommand.
QueryRequest parse_query_request(std::string_view json_text);

std::string serialize_query_result(const QueryResult & result, std::uint32_t version);

/// Refinement config with overrides from a JSON object; `bypass` included.
RefinementConfig refinement_overrides(RefinementConfig base, const nlohmann::json & body);

void write_conflicts(JsonWriter & w, const std::vector<Conflict> & conflicts);
std::vector<Conflict> read_conflicts(const nlohmann::json & arr);

/// Bird's-eye snapshot at `frame`: map polygons, footprints of agents valid
/// at that frame and the full track polyline of every agent.
std::string export_frame(const Scenario & scene, int frame, std::uint32_t version);

/// Interpolated poses on the grid from, from + step, ... up to `to`.
std::string export_frames(
  const Scenario & scene, double from, double to, double step, std::uint32_t version);

}  // namespace scenesplat

#endif  // SCENESPLAT__SERVICE__RUNTIME_HPP_
