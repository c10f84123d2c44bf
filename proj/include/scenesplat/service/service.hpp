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

#ifndef SCENESPLAT__SERVICE__SERVICE_HPP_
#define SCENESPLAT__SERVICE__SERVICE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "scenesplat/common/error.hpp"
#include "scenesplat/service/runtime.hpp"
#include "scenesplat/service/session.hpp"

namespace httplib
{
class Server;
}

namespace scenesplat
{

// ---- operations shared by the CLI and the service ---------------------------

struct EditOutcome
{
  std::uint32_t version{0};
  std::string summary;  // edit summary document
};

/// Parses `command`, applies it to the active version and appends the
/// result as a new active version.
EditOutcome edit_active(
  SessionState & state, const Models & models, const ServiceConfig & config,
  const std::string & command);

/// Refines the active version's pending edits and appends the rollout as a
/// new active version carrying the conflict list.
RolloutResult refine_active(SessionState & state, const RefinementConfig & config);

/// Conflict document for a version: the stored refinement conflicts, or the
/// predicted overlaps of its current tracks when it was never refined.
std::string conflicts_document(const Version & version, const RefinementConfig & config);

// ---- request/response service ----------------------------------------------

/// Header carrying the version id every response reflects.
inline constexpr const char * kVersionHeader = "X-Scenesplat-Version";

struct Reply
{
  int status{200};
  std::string body;
  std::optional<std::uint32_t> version;
};

/// Reads copy an immutable state snapshot; mutations serialize through one
/// writer and compare the request's base version with the active one.
class Service
{
public:
  Service(
    SessionState initial, const Models & models, ServiceConfig config,
    std::optional<std::filesystem::path> persist_dir = std::nullopt);
  ~Service();

  Service(const Service &) = delete;
  Service & operator=(const Service &) = delete;

  /// Transport-free dispatch.
  Reply handle(
    const std::string & method, const std::string & path,
    const std::multimap<std::string, std::string> & params, const std::string & body);

  /// Binds to `host:port` (0 picks a free port) and returns the bound port.
  int bind(const std::string & host, int port);
  /// Blocks serving requests until stop().
  void listen();
  void stop();

  std::shared_ptr<const SessionState> snapshot() const;

private:
  Reply get_scenario(const std::multimap<std::string, std::string> & params) const;
  Reply post_query(const std::string & body) const;
  Reply get_frames(const std::multimap<std::string, std::string> & params) const;
  Reply get_conflicts() const;
  Reply get_versions() const;
  Reply post_edit(const std::string & body);
  Reply post_refine(const std::string & body);
  Reply post_undo(const std::string & body);

  template <class Fn>
  Reply mutate(const std::string & body, Fn && fn);
  void publish(SessionState next);

  const Models & models_;
  ServiceConfig config_;
  std::optional<std::filesystem::path> persist_dir_;
  mutable std::mutex snapshot_mu_;  // guards the pointer swap only
  std::shared_ptr<const SessionState> state_;
  std::mutex writer_mu_;
  std::unique_ptr<httplib::Server> server_;
};

/// HTTP status for an error class.
int http_status(ErrorCode code);

}  // namespace scenesplat

#endif  // SCENESPLAT__SERVICE__SERVICE_HPP_
