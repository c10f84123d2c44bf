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

#ifndef SCENESPLAT__SERVICE__SESSION_HPP_
#define SCENESPLAT__SERVICE__SESSION_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scenesplat/edit/edit_engine.hpp"
#include "scenesplat/refine/refinement.hpp"
#include "scenesplat/scene/scenario.hpp"

namespace scenesplat
{

/// One immutable scenario version. `text` is the canonical serialization and
/// is what every export of the version returns.
struct Version
{
  std::uint32_t id{0};
  std::optional<std::uint32_t> parent;
  std::string label;
  Scenario scenario;
  std::string text;
  std::vector<EditedAgent> pending;  // edited since the last refinement
  std::optional<std::vector<Conflict>> conflicts;  // set by refinement
};

struct LogEntry
{
  std::uint32_t version{0};  // version the command produced or moved to
  std::string command;
  std::string summary;
  std::string timestamp;  // UTC, ISO 8601
};

/// Append-only version list with an active pointer. Copies are cheap since
/// versions are shared and never mutated.
struct SessionState
{
  std::vector<std::shared_ptr<const Version>> versions;
  std::size_t active{0};
  std::vector<LogEntry> log;

  bool loaded() const { return !versions.empty(); }
  /// Active version; throws NoScenario before a load.
  const Version & current() const;
  /// Version by id; throws NotFound.
  const Version & at(std::uint32_t id) const;
};

/// Fresh history whose v0 is `scenario`, validated and canonicalized.
SessionState start_session(Scenario scenario, const std::string & label);

/// Appends a child of the active version and makes it active. Returns its id.
std::uint32_t append_version(
  SessionState & state, Scenario scenario, const std::string & label,
  std::vector<EditedAgent> pending, std::optional<std::vector<Conflict>> conflicts);

/// Moves the active pointer to the parent of the active version. Throws
/// NotFound at the root.
std::uint32_t undo(SessionState & state);

void append_log(SessionState & state, const std::string & command, const std::string & summary);

/// Throws VersionConflict unless `base` is the active version id.
void require_base(const SessionState & state, std::uint32_t base);

/// Directory layout: session.json holds the version metadata, active index
/// and log; v<id>.json holds each scenario verbatim.
void save_session(const SessionState & state, const std::filesystem::path & dir);
/// Removes a session's index and version files from `dir`.
void clear_session(const std::filesystem::path & dir);
/// Empty state when the directory holds no session.
SessionState load_session(const std::filesystem::path & dir);

std::string serialize_versions(const SessionState & state);

}  // namespace scenesplat

#endif  // SCENESPLAT__SERVICE__SESSION_HPP_
