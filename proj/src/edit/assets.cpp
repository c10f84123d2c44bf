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

#include "scenesplat/edit/assets.hpp"

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "scenesplat/common/error.hpp"
#include "scenesplat/common/json_writer.hpp"
#include "scenesplat/scene/path.hpp"
#include "scenesplat/scene/scenario_io.hpp"

namespace scenesplat
{

AssetMatch retrieve_asset(
  const AssetBank & bank, std::string_view query, std::optional<AgentKind> kind,
  const TextEncoder & encoder)
{
  if (bank.empty()) {
    throw Error(ErrorCode::InvalidInput, "asset bank is empty");
  }
  const auto q = encoder.encode(query);
  if (!q) {
    throw Error(ErrorCode::InvalidInput, "asset query is empty");
  }
  AssetMatch best;
  for (const auto & asset : bank) {
    if (kind && asset.kind != *kind) {
      continue;
    }
    const auto cap = encoder.encode(asset.caption);
    const double score = cap ? dot(q->values(), cap->values()) : 0.0;
    if (best.asset == nullptr || score > best.score ||
        (score == best.score && asset.id < best.asset->id)) {
      best = {&asset, score};
    }
  }
  if (best.asset == nullptr) {
    throw Error(
      ErrorCode::NotFound, "no asset of kind '" + std::string(to_string(*kind)) + "' in the bank");
  }
  return best;
}

std::string serialize_asset_bank(const AssetBank & bank)
{
  JsonWriter w(kScenarioDigits);
  w.begin_object();
  w.key("format").value(1);
  w.key("assets").begin_array();
  for (const auto & a : bank) {
    w.begin_object();
    w.key("id").value(a.id);
    w.key("kind").value(to_string(a.kind));
    w.key("dims").begin_array(true).value(a.dims.length).value(a.dims.width).value(a.height).end_array();
    w.key("caption").value(a.caption);
    if (a.motion_template) {
      w.key("motion_template");
      write_trajectory(w, *a.motion_template);
    }
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

AssetBank parse_asset_bank(std::string_view text)
{
  AssetBank bank;
  std::set<std::string> ids;
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<int>() != 1) {
      throw Error(ErrorCode::Format, "unsupported asset bank format");
    }
    for (const auto & aj : j.at("assets")) {
      AssetRecord a;
      a.id = aj.at("id").get<std::string>();
      const auto kind = parse_agent_kind(aj.at("kind").get<std::string>());
      if (!kind) {
        throw Error(ErrorCode::Format, "asset '" + a.id + "' has an unknown kind");
      }
      a.kind = *kind;
      const auto & dims = aj.at("dims");
      if (dims.size() != 3) {
        throw Error(ErrorCode::Format, "asset dims must be [length, width, height]");
      }
      a.dims = {dims[0].get<double>(), dims[1].get<double>()};
      a.height = dims[2].get<double>();
      if (!(a.dims.length > 0.0) || !(a.dims.width > 0.0) || !(a.height > 0.0)) {
        throw Error(ErrorCode::Format, "asset '" + a.id + "' needs positive dims");
      }
      a.caption = aj.at("caption").get<std::string>();
      if (aj.contains("motion_template")) {
        a.motion_template = read_trajectory(aj.at("motion_template"), kDefaultTimestep);
        validate_trajectory(*a.motion_template, true);
      }
      if (!ids.insert(a.id).second) {
        throw Error(ErrorCode::Format, "duplicate asset id '" + a.id + "'");
      }
      bank.push_back(std::move(a));
    }
  } catch (const nlohmann::json::exception & e) {
    throw Error(ErrorCode::Format, std::string("asset bank: ") + e.what());
  }
  return bank;
}

AssetBank load_asset_bank(const std::filesystem::path & path)
{
  return parse_asset_bank(read_text_file(path));
}

namespace
{

// Walk at `speed` along `heading` (placement frame) for `frames` samples.
Trajectory walk(double heading, double speed, int frames)
{
  const std::vector<double> speeds(static_cast<std::size_t>(frames), speed);
  return follow_path(Path(Pose2(0.0, 0.0, heading)), speeds, kDefaultTimestep);
}

AssetBank build_default_bank()
{
  using K = AgentKind;
  auto rec = [](const char * id, K kind, double l, double w, double h, const char * caption) {
    return AssetRecord{id, kind, {l, w}, h, caption, std::nullopt};
  };
  AssetBank bank{
    rec("sedan_black", K::Vehicle, 4.6, 1.9, 1.5, "black sedan car"),
    rec("sedan_white", K::Vehicle, 4.6, 1.9, 1.5, "white sedan car"),
    rec("suv_red", K::Vehicle, 4.8, 2.0, 1.8, "red suv"),
    rec("taxi_yellow", K::Vehicle, 4.6, 1.9, 1.5, "yellow taxi cab"),
    rec("police_car", K::Vehicle, 4.9, 1.9, 1.6, "police car with light bar"),
    rec("box_truck", K::Vehicle, 7.5, 2.4, 3.2, "white box truck"),
    rec("school_bus", K::Vehicle, 11.0, 2.5, 3.0, "yellow school bus"),
    rec("ambulance", K::Vehicle, 6.0, 2.2, 2.6, "white ambulance van"),
    rec("bulldozer", K::Vehicle, 6.0, 3.0, 3.2, "yellow bulldozer construction vehicle"),
    rec("cyclist", K::Cyclist, 1.8, 0.6, 1.7, "cyclist riding a bicycle"),
    rec("cone", K::StaticObject, 0.4, 0.4, 0.7, "orange traffic cone"),
    rec("barrel", K::StaticObject, 0.6, 0.6, 1.0, "orange construction barrel"),
    rec("barrier", K::StaticObject, 2.0, 0.6, 0.8, "concrete barrier"),
    rec("stop_sign", K::StaticObject, 0.3, 0.3, 2.2, "stop sign traffic sign"),
    rec("warning_sign", K::StaticObject, 0.6, 0.6, 1.5, "roadwork warning traffic sign"),
    rec("trash_bin", K::StaticObject, 0.7, 0.7, 1.1, "green trash bin"),
    rec("debris_box", K::StaticObject, 0.6, 0.6, 0.5, "cardboard box debris"),
    rec("ped_red_backpack", K::Pedestrian, 0.5, 0.5, 1.7,
        "a pedestrian walking from left to right with a red backpack"),
    rec("ped_right_to_left", K::Pedestrian, 0.5, 0.5, 1.7,
        "a pedestrian in a blue coat walking from right to left"),
    rec("ped_umbrella", K::Pedestrian, 0.5, 0.5, 1.7, "a pedestrian with an umbrella standing still"),
    rec("ped_child", K::Pedestrian, 0.4, 0.4, 1.2, "a child walking forward"),
    rec("ped_jogger", K::Pedestrian, 0.5, 0.5, 1.8, "a jogger running forward"),
  };
  for (auto & a : bank) {
    if (a.id == "ped_red_backpack") {
      a.motion_template = walk(-kPi / 2.0, 1.4, 60);
    } else if (a.id == "ped_right_to_left") {
      a.motion_template = walk(kPi / 2.0, 1.4, 60);
    } else if (a.id == "ped_child") {
      a.motion_template = walk(0.0, 1.0, 80);
    } else if (a.id == "ped_jogger") {
      a.motion_template = walk(0.0, 2.5, 80);
    }
  }
  return bank;
}

}  // namespace

const AssetBank & default_asset_bank()
{
  // round-tripped once so the in-memory bank equals the shipped file
  static const AssetBank bank = parse_asset_bank(serialize_asset_bank(build_default_bank()));
  return bank;
}

}  // namespace scenesplat
