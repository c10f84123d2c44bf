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

#include "scenesplat/service/service.hpp"

#include <httplib.h>

#include <cmath>
#include <utility>

#include <nlohmann/json.hpp>

#include "scenesplat/edit/llm_bridge.hpp"
#include "scenesplat/scene/scenario_io.hpp"

namespace scenesplat
{

namespace
{

std::string trim_newline(std::string s)
{
  while (!s.empty() && s.back() == '\n') {
    s.pop_back();
  }
  return s;
}

std::string error_body(const Error & e)
{
  JsonWriter w(kScenarioDigits);
  w.begin_object();
  w.key("error").value(error_code_name(e.code()));
  w.key("code").value(static_cast<int>(e.code()));
  w.key("message").value(e.what());
  if (const auto * se = dynamic_cast<const SyntaxError *>(&e)) {
    w.key("column").value(static_cast<std::uint64_t>(se->column()));
  }
  w.end_object();
  return w.str();
}

nlohmann::json parse_body(const std::string & body)
{
  nlohmann::json j;
  try {
    j = body.empty() ? nlohmann::json::object() : nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception & e) {
    throw Error(ErrorCode::BadRequest, std::string("malformed body: ") + e.what());
  }
  if (!j.is_object()) {
    throw Error(ErrorCode::BadRequest, "body must be a JSON object");
  }
  return j;
}

std::uint32_t base_of(const nlohmann::json & j)
{
  if (!j.contains("base") || !j.at("base").is_number_unsigned()) {
    throw Error(ErrorCode::BadRequest, "mutating requests need a non-negative integer 'base' version");
  }
  return j.at("base").get<std::uint32_t>();
}

std::optional<std::string> param(
  const std::multimap<std::string, std::string> & params, const std::string & key)
{
  const auto it = params.find(key);
  if (it == params.end()) {
    return std::nullopt;
  }
  return it->second;
}

double number_param(const std::string & key, const std::string & text)
{
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::BadRequest, "parameter '" + key + "' must be a number");
  }
  return v;
}

}  // namespace

// ---- operations -------------------------------------------------------------

EditOutcome edit_active(
  SessionState & state, const Models & models, const ServiceConfig & config,
  const std::string & command)
{
  const auto & cur = state.current();
  const EditCommand cmd = parse_command(command);
  EditConfig ec = config.defaults.edit;
  auto result = apply_edit(cur.scenario, cmd, models.edit_models(), ec);
  auto pending = merge_edited(cur.pending, result);
  const auto summary = serialize_edit_summary(result);
  const auto id = append_version(state, std::move(result.scenario), command, std::move(pending), std::nullopt);
  append_log(state, command, trim_newline(summary));
  return {id, summary};
}

RolloutResult refine_active(SessionState & state, const RefinementConfig & config)
{
  const auto & cur = state.current();
  auto result = refine(cur.scenario, cur.pending, config);
  auto scene = apply_rollout(cur.scenario, result);
  const std::string label = config.bypass ? "refine --bypass" : "refine";
  append_version(state, std::move(scene), label, {}, result.conflicts);
  std::size_t unresolved = 0;
  for (const auto & c : result.conflicts) {
    unresolved += c.resolution == Resolution::Unresolved ? 1 : 0;
  }
  append_log(
    state, label,
    std::to_string(result.conflicts.size()) + " conflicts, " + std::to_string(unresolved) +
      " unresolved");
  return result;
}

std::string conflicts_document(const Version & v, const RefinementConfig & config)
{
  JsonWriter w(kScenarioDigits);
  w.begin_object();
  w.key("version").value(v.id);
  w.key("source").value(v.conflicts ? "refinement" : "prediction");
  w.key("conflicts");
  write_conflicts(w, v.conflicts ? *v.conflicts : predict_conflicts(v.scenario, config));
  w.end_object();
  return w.str();
}

int http_status(ErrorCode code)
{
  switch (code) {
    case ErrorCode::BadRequest:
    case ErrorCode::Syntax:
    case ErrorCode::Format:
    case ErrorCode::InvalidInput:
    case ErrorCode::OutOfRange:
      return 400;
    case ErrorCode::NoScenario:
    case ErrorCode::NotFound:
      return 404;
    case ErrorCode::VersionConflict:
      return 409;
    case ErrorCode::Io:
    case ErrorCode::Bridge:
      return 500;
    default:
      return 422;
  }
}

// ---- service ----------------------------------------------------------------

Service::Service(
  SessionState initial, const Models & models, ServiceConfig config,
  std::optional<std::filesystem::path> persist_dir)
: models_(models),
  config_(std::move(config)),
  persist_dir_(std::move(persist_dir)),
  state_(std::make_shared<const SessionState>(std::move(initial))),
  server_(std::make_unique<httplib::Server>())
{
  auto adapt = [this](const httplib::Request & req, httplib::Response & res) {
    std::multimap<std::string, std::string> params(req.params.begin(), req.params.end());
    const auto reply = handle(req.method, req.path, params, req.body);
    res.status = reply.status;
    if (reply.version) {
      res.set_header(kVersionHeader, std::to_string(*reply.version));
    }
    res.set_content(reply.body, "application/json");
  };
  for (const char * path : {"/scenario", "/frames", "/conflicts", "/versions"}) {
    server_->Get(path, adapt);
  }
  for (const char * path : {"/query", "/edit", "/refine", "/undo"}) {
    server_->Post(path, adapt);
  }
}

Service::~Service() { stop(); }

std::shared_ptr<const SessionState> Service::snapshot() const
{
  std::lock_guard lock(snapshot_mu_);
  return state_;
}

void Service::publish(SessionState next)
{
  if (persist_dir_) {
    save_session(next, *persist_dir_);
  }
  auto ptr = std::make_shared<const SessionState>(std::move(next));
  std::lock_guard lock(snapshot_mu_);
  state_ = std::move(ptr);
}

Reply Service::handle(
  const std::string & method, const std::string & path,
  const std::multimap<std::string, std::string> & params, const std::string & body)
{
  try {
    if (method == "GET") {
      if (path == "/scenario") return get_scenario(params);
      if (path == "/frames") return get_frames(params);
      if (path == "/conflicts") return get_conflicts();
      if (path == "/versions") return get_versions();
    } else if (method == "POST") {
      if (path == "/query") return post_query(body);
      if (path == "/edit") return post_edit(body);
      if (path == "/refine") return post_refine(body);
      if (path == "/undo") return post_undo(body);
    }
    throw Error(ErrorCode::NotFound, "no endpoint " + method + " " + path);
  } catch (const Error & e) {
    Reply r{http_status(e.code()), error_body(e), std::nullopt};
    const auto s = snapshot();
    if (s->loaded()) {
      r.version = s->current().id;
    }
    return r;
  } catch (const std::exception & e) {
    return {500, error_body(Error(ErrorCode::Io, e.what())), std::nullopt};
  }
}

Reply Service::get_scenario(const std::multimap<std::string, std::string> & params) const
{
  const auto s = snapshot();
  const auto req = param(params, "version");
  const Version & v = req ? s->at(static_cast<std::uint32_t>(number_param("version", *req))) : s->current();
  return {200, v.text, v.id};
}

Reply Service::post_query(const std::string & body) const
{
  const auto s = snapshot();
  const auto & v = s->current();
  const auto req = parse_query_request(body);
  const auto result = query(v.scenario, req, models_.query_models(), config_.defaults.query_weights);
  return {200, serialize_query_result(result, v.id), v.id};
}

Reply Service::get_frames(const std::multimap<std::string, std::string> & params) const
{
  const auto s = snapshot();
  const auto & v = s->current();
  const auto & sc = v.scenario;
  auto num = [&](const char * key, double fallback) {
    const auto p = param(params, key);
    return p ? number_param(key, *p) : fallback;
  };
  const double from = num("from", 0.0);
  const double to = num("to", sc.horizon * sc.timestep);
  const double step = num("step", sc.timestep);
  return {200, export_frames(sc, from, to, step, v.id), v.id};
}

Reply Service::get_conflicts() const
{
  const auto s = snapshot();
  const auto & v = s->current();
  return {200, conflicts_document(v, config_.defaults.refinement), v.id};
}

Reply Service::get_versions() const
{
  const auto s = snapshot();
  return {200, serialize_versions(*s), s->current().id};
}

template <class Fn>
Reply Service::mutate(const std::string & body, Fn && fn)
{
  const auto j = parse_body(body);
  const auto base = base_of(j);
  std::lock_guard lock(writer_mu_);
  SessionState next = *snapshot();
  require_base(next, base);
  std::string out = fn(next, j);
  const auto id = next.current().id;
  publish(std::move(next));
  return {200, std::move(out), id};
}

Reply Service::post_edit(const std::string & body)
{
  return mutate(body, [&](SessionState & st, const nlohmann::json & j) {
    std::string command;
    if (j.contains("command") && j.at("command").is_string()) {
      command = j.at("command").get<std::string>();
    } else if (j.contains("text") && j.at("text").is_string()) {
      command = LanguageBridge(config_.bridge_program).translate(j.at("text").get<std::string>());
    } else {
      throw Error(ErrorCode::BadRequest, "edit body needs a string 'command' or 'text'");
    }
    const auto parent = st.current().id;
    const auto outcome = edit_active(st, models_, config_, command);
    JsonWriter w(kScenarioDigits);
    w.begin_object();
    w.key("version").value(outcome.version);
    w.key("parent").value(parent);
    w.key("command").value(command);
    w.key("summary").raw(trim_newline(outcome.summary));
    w.end_object();
    return w.str();
  });
}

Reply Service::post_refine(const std::string & body)
{
  return mutate(body, [&](SessionState & st, const nlohmann::json & j) {
    const auto cfg = refinement_overrides(config_.defaults.refinement, j);
    const auto parent = st.current().id;
    const auto dt = st.current().scenario.timestep;
    const auto result = refine_active(st, cfg);
    JsonWriter w(kScenarioDigits);
    w.begin_object();
    w.key("version").value(st.current().id);
    w.key("parent").value(parent);
    w.key("rollout").raw(trim_newline(serialize_rollout(result, dt)));
    w.end_object();
    return w.str();
  });
}

Reply Service::post_undo(const std::string & body)
{
  return mutate(body, [&](SessionState & st, const nlohmann::json &) {
    const auto from = st.current().id;
    const auto to = undo(st);
    append_log(st, "undo", "active " + std::to_string(from) + " -> " + std::to_string(to));
    JsonWriter w(kScenarioDigits);
    w.begin_object();
    w.key("version").value(to);
    w.key("undone").value(from);
    w.end_object();
    return w.str();
  });
}

int Service::bind(const std::string & host, int port)
{
  if (port == 0) {
    return server_->bind_to_any_port(host);
  }
  if (!server_->bind_to_port(host, port)) {
    throw Error(ErrorCode::Io, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void Service::listen() { server_->listen_after_bind(); }

void Service::stop()
{
  if (server_) {
    server_->stop();
  }
}

}  // namespace scenesplat
