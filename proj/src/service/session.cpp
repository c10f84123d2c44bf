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

#include "scenesplat/service/session.hpp"

#include <chrono>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "scenesplat/common/error.hpp"
#include "scenesplat/common/json_writer.hpp"
#include "scenesplat/scene/scenario_io.hpp"
#include "scenesplat/service/runtime.hpp"

namespace scenesplat
{

namespace
{

constexpr int kSessionFormat = 1;
constexpr const char * kIndexFile = "session.json";

std::string version_file(std::uint32_t id) { return "v" + std::to_string(id) + ".json"; }

std::string utc_now()
{
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  const auto days = std::chrono::floor<std::chrono::days>(now);
  const std::chrono::year_month_day ymd(days);
  const std::chrono::hh_mm_ss hms(now - days);
  char buf[32];
  std::snprintf(
    buf, sizeof(buf), "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", static_cast<int>(ymd.year()),
    static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), hms.hours().count(),
    hms.minutes().count(), static_cast<long>(hms.seconds().count()));
  return buf;
}

/// Edited agent record rebuilt from the stored scenario.
EditedAgent edited_from(const Scenario & scene, AgentId id, int start_frame)
{
  EditedAgent e{id, {}, start_frame};
  if (const auto * a = scene.find(id)) {
    e.initial_trajectory.timestep = a->trajectory.timestep;
    const double t0 = start_frame * scene.timestep - 1e-9;
    for (const auto & p : a->trajectory.points) {
      if (p.t >= t0) {
        e.initial_trajectory.points.push_back(p);
      }
    }
  }
  return e;
}

std::shared_ptr<const Version> make_version(
  std::uint32_t id, std::optional<std::uint32_t> parent, const std::string & label, Scenario scenario,
  std::vector<EditedAgent> pending, std::optional<std::vector<Conflict>> conflicts)
{
  validate_scenario(scenario);
  auto v = std::make_shared<Version>();
  v->id = id;
  v->parent = parent;
  v->label = label;
  v->text = serialize_scenario(scenario);
  // canonical form: the version holds exactly what its text parses to
  v->scenario = parse_scenario(v->text);
  v->pending = std::move(pending);
  if (conflicts) {
    // same precision as the persisted form
    JsonWriter w(kScenarioDigits);
    write_conflicts(w, *conflicts);
    v->conflicts = read_conflicts(nlohmann::json::parse(w.str()));
  }
  return v;
}

}  // namespace

const Version & SessionState::current() const
{
  if (!loaded()) {
    throw Error(ErrorCode::NoScenario, "no scenario loaded");
  }
  return *versions[active];
}

const Version & SessionState::at(std::uint32_t id) const
{
  if (!loaded()) {
    throw Error(ErrorCode::NoScenario, "no scenario loaded");
  }
  if (id >= versions.size()) {
    throw Error(ErrorCode::NotFound, "no version " + std::to_string(id));
  }
  return *versions[id];
}

SessionState start_session(Scenario scenario, const std::string & label)
{
  SessionState s;
  s.versions.push_back(make_version(0, std::nullopt, label, std::move(scenario), {}, std::nullopt));
  return s;
}

std::uint32_t append_version(
  SessionState & state, Scenario scenario, const std::string & label,
  std::vector<EditedAgent> pending, std::optional<std::vector<Conflict>> conflicts)
{
  const auto parent = state.current().id;
  const auto id = static_cast<std::uint32_t>(state.versions.size());
  state.versions.push_back(
    make_version(id, parent, label, std::move(scenario), std::move(pending), std::move(conflicts)));
  state.active = id;
  return id;
}

std::uint32_t undo(SessionState & state)
{
  const auto & cur = state.current();
  if (!cur.parent) {
    throw Error(ErrorCode::NotFound, "nothing to undo");
  }
  state.active = *cur.parent;
  return *cur.parent;
}

void append_log(SessionState & state, const std::string & command, const std::string & summary)
{
  state.log.push_back({state.current().id, command, summary, utc_now()});
}

void require_base(const SessionState & state, std::uint32_t base)
{
  const auto active = state.current().id;
  if (base != active) {
    throw Error(
      ErrorCode::VersionConflict, "base version " + std::to_string(base) + " is stale; active is " +
                                    std::to_string(active));
  }
}

std::string serialize_versions(const SessionState & state)
{
  JsonWriter w(kScenarioDigits);
  w.begin_object();
  w.key("format").value(kSessionFormat);
  w.key("active").value(static_cast<std::int64_t>(state.active));
  w.key("versions").begin_array();
  for (const auto & v : state.versions) {
    w.begin_object();
    w.key("id").value(v->id);
    w.key("parent");
    if (v->parent) {
      w.value(*v->parent);
    } else {
      w.raw("null");
    }
    w.key("label").value(v->label);
    w.key("pending").begin_array(true);
    for (const auto & e : v->pending) {
      w.begin_object(true).key("id").value(to_underlying(e.id)).key("start_frame").value(e.start_frame).end_object();
    }
    w.end_array();
    w.key("conflicts");
    if (v->conflicts) {
      write_conflicts(w, *v->conflicts);
    } else {
      w.raw("null");
    }
    w.end_object();
  }
  w.end_array();
  w.key("log").begin_array();
  for (const auto & e : state.log) {
    w.begin_object();
    w.key("version").value(e.version);
    w.key("command").value(e.command);
    w.key("summary").value(e.summary);
    w.key("timestamp").value(e.timestamp);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

void save_session(const SessionState & state, const std::filesystem::path & dir)
{
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::Io, "cannot create session directory " + dir.string() + ": " + ec.message());
  }
  for (const auto & v : state.versions) {
    const auto path = dir / version_file(v->id);
    if (!std::filesystem::exists(path)) {  // versions never change once written
      write_text_file(path, v->text);
    }
  }
  // write-then-rename keeps the index consistent if interrupted
  const auto tmp = dir / (std::string(kIndexFile) + ".tmp");
  write_text_file(tmp, serialize_versions(state));
  std::filesystem::rename(tmp, dir / kIndexFile, ec);
  if (ec) {
    throw Error(ErrorCode::Io, "cannot update session index: " + ec.message());
  }
}

void clear_session(const std::filesystem::path & dir)
{
  if (!std::filesystem::is_directory(dir)) {
    return;
  }
  std::filesystem::remove(dir / kIndexFile);
  for (const auto & entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.size() > 6 && name[0] == 'v' && name.ends_with(".json") &&
        name.find_first_not_of("0123456789", 1) == name.size() - 5) {
      std::filesystem::remove(entry.path());
    }
  }
}

SessionState load_session(const std::filesystem::path & dir)
{
  SessionState s;
  if (!std::filesystem::exists(dir / kIndexFile)) {
    return s;
  }
  try {
    const auto j = nlohmann::json::parse(read_text_file(dir / kIndexFile));
    if (j.at("format").get<int>() != kSessionFormat) {
      throw Error(ErrorCode::Format, "unsupported session format");
    }
    for (const auto & jv : j.at("versions")) {
      auto v = std::make_shared<Version>();
      v->id = jv.at("id").get<std::uint32_t>();
      if (v->id != s.versions.size()) {
        throw Error(ErrorCode::Format, "session versions out of order");
      }
      if (!jv.at("parent").is_null()) {
        v->parent = jv.at("parent").get<std::uint32_t>();
        if (*v->parent >= v->id) {
          throw Error(ErrorCode::Format, "version parent must precede it");
        }
      }
      v->label = jv.at("label").get<std::string>();
      v->text = read_text_file(dir / version_file(v->id));
      v->scenario = parse_scenario(v->text);
      for (const auto & e : jv.at("pending")) {
        v->pending.push_back(
          edited_from(v->scenario, AgentId{e.at("id").get<std::uint32_t>()}, e.at("start_frame").get<int>()));
      }
      if (!jv.at("conflicts").is_null()) {
        v->conflicts = read_conflicts(jv.at("conflicts"));
      }
      s.versions.push_back(std::move(v));
    }
    s.active = j.at("active").get<std::size_t>();
    if (s.versions.empty() || s.active >= s.versions.size()) {
      throw Error(ErrorCode::Format, "session active index out of range");
    }
    for (const auto & e : j.at("log")) {
      s.log.push_back(
        {e.at("version").get<std::uint32_t>(), e.at("command").get<std::string>(),
         e.at("summary").get<std::string>(), e.at("timestamp").get<std::string>()});
    }
  } catch (const nlohmann::json::exception & e) {
    throw Error(ErrorCode::Format, std::string("session index: ") + e.what());
  }
  return s;
}

}  // namespace scenesplat
