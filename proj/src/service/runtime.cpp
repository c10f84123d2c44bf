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

#include "scenesplat/service/runtime.hpp"

#include <cmath>
#include <cstdlib>
#include <map>

#include "scenesplat/common/error.hpp"
#include "scenesplat/scene/scenario_io.hpp"

namespace scenesplat
{

namespace
{

constexpr std::size_t kMaxFrames = 100000;

std::filesystem::path resolve(const std::filesystem::path & base, const std::string & p)
{
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::string get_string(const nlohmann::json & j, const char * key)
{
  const auto & v = j.at(key);
  if (!v.is_string()) {
    throw Error(ErrorCode::Format, std::string("config entry '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

}  // namespace

ServiceConfig parse_service_config(std::string_view text, const std::filesystem::path & base_dir)
{
  ServiceConfig cfg;
  cfg.defaults = parse_bench_spec(text);
  const auto j = nlohmann::json::parse(text);
  if (j.contains("model")) {
    cfg.model_path = resolve(base_dir, get_string(j, "model"));
  }
  if (j.contains("assets")) {
    cfg.assets_path = resolve(base_dir, get_string(j, "assets"));
  }
  if (j.contains("bridge")) {
    cfg.bridge_program = get_string(j, "bridge");
  }
  if (j.contains("temperature")) {
    cfg.defaults.training.training.temperature = j.at("temperature").get<double>();
    if (!(cfg.defaults.training.training.temperature > 0.0)) {
      throw Error(ErrorCode::Format, "config: temperature must be positive");
    }
  }
  return cfg;
}

ServiceConfig load_service_config()
{
  const char * env = std::getenv(kConfigEnv);
  if (env == nullptr || *env == '\0') {
    return {};
  }
  const std::filesystem::path path(env);
  return parse_service_config(read_text_file(path), path.parent_path());
}

Models::Models(const ServiceConfig & config)
: books_(default_codebooks(encoder_)),
  model_(
    config.model_path ? parse_model(read_text_file(*config.model_path))
                      : train_default_model(config.defaults.training, books_)),
  bank_(config.assets_path ? load_asset_bank(*config.assets_path) : default_asset_bank())
{
}

std::vector<EditedAgent> merge_edited(
  const std::vector<EditedAgent> & pending, const EditResult & result)
{
  std::map<std::uint32_t, EditedAgent> by_id;
  for (const auto & e : pending) {
    by_id.insert_or_assign(to_underlying(e.id), e);
  }
  for (const auto id : result.removed) {
    by_id.erase(to_underlying(id));
  }
  for (const auto & e : result.edited) {
    by_id.insert_or_assign(to_underlying(e.id), e);
  }
  std::vector<EditedAgent> out;
  for (auto & [id, e] : by_id) {
    if (result.scenario.find(e.id) != nullptr) {
      out.push_back(std::move(e));
    }
  }
  return out;
}

QueryRequest parse_query_request(std::string_view json_text)
{
  QueryRequest req;
  try {
    const auto j = nlohmann::json::parse(json_text);
    if (!j.is_object() || !j.contains("text") || !j.at("text").is_string()) {
      throw Error(ErrorCode::BadRequest, "query body needs a string 'text'");
    }
    req.text = j.at("text").get<std::string>();
    if (j.contains("kind")) {
      const auto hint = parse_kind_hint(j.at("kind").get<std::string>());
      if (!hint) {
        throw Error(ErrorCode::BadRequest, "unknown kind hint");
      }
      req.kind_hint = *hint;
    }
    if (j.contains("window")) {
      const auto & w = j.at("window");
      if (!w.is_array() || w.size() != 2) {
        throw Error(ErrorCode::BadRequest, "window must be [start, end]");
      }
      req.time_window = TimeWindow{w[0].get<double>(), w[1].get<double>()};
    }
  } catch (const nlohmann::json::exception & e) {
    throw Error(ErrorCode::BadRequest, std::string("malformed query body: ") + e.what());
  }
  return req;
}

std::string serialize_query_result(const QueryResult & r, std::uint32_t version)
{
  JsonWriter w(kScenarioDigits);
  w.begin_object();
  w.key("version").value(version);
  w.key("chosen").value(to_underlying(r.chosen));
  w.key("filter_fallback").value(r.filter_fallback);
  w.key("split").begin_object(true);
  w.key("appearance").value(r.split.appearance).key("temporal").value(r.split.temporal);
  w.end_object();
  w.key("ranked").begin_array();
  for (const auto & s : r.ranked) {
    w.begin_object(true);
    w.key("id").value(to_underlying(s.id));
    w.key("total").value(s.total);
    w.key("appearance").value(s.appearance);
    w.key("motion").value(s.motion);
    w.key("location").value(s.location);
    w.key("passed_filter").value(s.passed_filter);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

RefinementConfig refinement_overrides(RefinementConfig c, const nlohmann::json & body)
{
  try {
    auto get = [&](const char * key, auto & out) {
      if (body.contains(key)) {
        out = body.at(key).get<std::remove_reference_t<decltype(out)>>();
      }
    };
    get("bypass", c.bypass);
    get("horizon_steps", c.horizon_steps);
    get("history_steps", c.history_steps);
    get("min_gap", c.min_gap);
    get("yield_time_margin", c.yield_time_margin);
    get("max_decel", c.max_decel);
    get("max_accel", c.max_accel);
    get("max_passes", c.max_passes);
  } catch (const nlohmann::json::exception & e) {
    throw Error(ErrorCode::BadRequest, std::string("malformed refinement override: ") + e.what());
  }
  try {
    c.validate();
  } catch (const Error & e) {
    throw Error(ErrorCode::BadRequest, e.what());
  }
  return c;
}

void write_conflicts(JsonWriter & w, const std::vector<Conflict> & conflicts)
{
  w.begin_array();
  for (const auto & c : conflicts) {
    w.begin_object(true);
    w.key("a").value(to_underlying(c.a)).key("b").value(to_underlying(c.b)).key("t").value(c.t);
    w.key("location").begin_array(true).value(c.location.x).value(c.location.y).end_array();
    w.key("type").value(to_string(c.type)).key("resolution").value(to_string(c.resolution));
    w.end_object();
  }
  w.end_array();
}

std::vector<Conflict> read_conflicts(const nlohmann::json & arr)
{
  static const std::map<std::string, ConflictType> types{
    {std::string(to_string(ConflictType::VehVeh)), ConflictType::VehVeh},
    {std::string(to_string(ConflictType::VehPed)), ConflictType::VehPed}};
  static const std::map<std::string, Resolution> resolutions{
    {std::string(to_string(Resolution::Yield)), Resolution::Yield},
    {std::string(to_string(Resolution::Detour)), Resolution::Detour},
    {std::string(to_string(Resolution::Stop)), Resolution::Stop},
    {std::string(to_string(Resolution::Unresolved)), Resolution::Unresolved}};
  std::vector<Conflict> out;
  for (const auto & j : arr) {
    Conflict c;
    c.a = AgentId{j.at("a").get<std::uint32_t>()};
    c.b = AgentId{j.at("b").get<std::uint32_t>()};
    c.t = j.at("t").get<double>();
    c.location = {j.at("location").at(0).get<double>(), j.at("location").at(1).get<double>()};
    const auto t = types.find(j.at("type").get<std::string>());
    const auto r = resolutions.find(j.at("resolution").get<std::string>());
    if (t == types.end() || r == resolutions.end()) {
      throw Error(ErrorCode::Format, "unknown conflict type or resolution");
    }
    c.type = t->second;
    c.resolution = r->second;
    out.push_back(c);
  }
  return out;
}

std::string export_frame(const Scenario & scene, int frame, std::uint32_t version)
{
  if (frame < 0 || frame > scene.horizon) {
    throw Error(
      ErrorCode::OutOfRange, "frame " + std::to_string(frame) + " outside [0, " +
                               std::to_string(scene.horizon) + "]");
  }
  const double t = frame * scene.timestep;
  JsonWriter w(kScenarioDigits);
  w.begin_object();
  w.key("version").value(version);
  w.key("frame").value(frame);
  w.key("t").value(t);
  w.key("map");
  write_map(w, scene.map);
  w.key("agents").begin_array();
  for (const auto & a : scene.agents) {
    w.begin_object();
    w.key("id").value(to_underlying(a.id));
    w.key("kind").value(to_string(a.kind));
    w.key("caption").value(a.appearance_caption);
    w.key("ego").value(a.is_ego);
    const auto sample = sample_at(a.trajectory, t);
    if (sample && sample->valid) {
      const auto & p = sample->pose;
      w.key("pose").begin_array(true).value(p.x()).value(p.y()).value(p.heading()).end_array();
      w.key("footprint").begin_array(true);
      for (const auto & c : transform_footprint(a.footprint, p)) {
        w.begin_array(true).value(c.x).value(c.y).end_array();
      }
      w.end_array();
    }
    w.key("track").begin_array(true);
    for (const auto & pt : a.trajectory.points) {
      if (pt.valid) {
        w.begin_array(true).value(pt.pose.x()).value(pt.pose.y()).end_array();
      }
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string export_frames(
  const Scenario & scene, double from, double to, double step, std::uint32_t version)
{
  if (!std::isfinite(from) || !std::isfinite(to) || !(step > 0.0) || to < from) {
    throw Error(ErrorCode::BadRequest, "frames need finite from <= to and a positive step");
  }
  const double count = std::floor((to - from) / step + 1e-9) + 1.0;
  if (count > static_cast<double>(kMaxFrames)) {
    throw Error(ErrorCode::BadRequest, "too many frames requested");
  }
  JsonWriter w(kScenarioDigits);
  w.begin_object();
  w.key("version").value(version);
  w.key("timestep").value(scene.timestep);
  w.key("frames").begin_array();
  for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) {
    const double t = from + static_cast<double>(i) * step;
    w.begin_object();
    w.key("t").value(t);
    w.key("agents").begin_array();
    for (const auto & a : scene.agents) {
      if (a.trajectory.empty() || t < a.trajectory.start_time() || t > a.trajectory.end_time()) {
        continue;
      }
      TrackPoint p;
      try {
        p = interpolate(a.trajectory, t);
      } catch (const Error &) {
        continue;  // invalid bracketing sample
      }
      w.begin_object(true);
      w.key("id").value(to_underlying(a.id));
      w.key("pose").begin_array(true).value(p.pose.x()).value(p.pose.y()).value(p.pose.heading()).end_array();
      w.key("speed").value(p.speed);
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

}  // namespace scenesplat
