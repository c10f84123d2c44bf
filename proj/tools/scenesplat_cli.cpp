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

// Operator command line: session management, edits, refinement, benchmarks
// and the local request/response service.

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "scenesplat/common/error.hpp"
#include "scenesplat/edit/llm_bridge.hpp"
#include "scenesplat/scene/scenario_io.hpp"
#include "scenesplat/service/service.hpp"

namespace
{

using namespace scenesplat;

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

Service * g_service = nullptr;

void on_signal(int) {
  if (g_service != nullptr) {
    g_service->stop();
  }
}

std::filesystem::path default_session_dir()
{
  const char * env = std::getenv("SCENESPLAT_SESSION");
  return (env != nullptr && *env != '\0') ? std::filesystem::path(env) : std::filesystem::path(".scenesplat");
}

struct Options
{
  std::filesystem::path session = default_session_dir();
  std::string file;
  std::string text;
  std::string kind = "any";
  std::vector<double> window;
  bool natural = false;
  bool bypass = false;
  std::string bench_kind;
  std::string spec_file;
  bool tables = false;
  int frame = 0;
  std::optional<std::uint32_t> version;
  int port = 8750;
  std::string host = "127.0.0.1";
  std::string out;
};

void save(const SessionState & s, const Options & o) { save_session(s, o.session); }

SessionState open(const Options & o)
{
  auto s = load_session(o.session);
  s.current();  // throws "no scenario loaded"
  return s;
}

int run_load(const Options & o)
{
  auto s = start_session(load_scenario(o.file), std::filesystem::path(o.file).filename().string());
  append_log(s, "load " + o.file, std::to_string(s.current().scenario.agents.size()) + " agents");
  clear_session(o.session);
  save(s, o);
  std::cout << "version " << s.current().id << "\n";
  return 0;
}

int run_query(const Options & o, const ServiceConfig & cfg)
{
  const auto s = open(o);
  const auto hint = parse_kind_hint(o.kind);
  if (!hint) {
    throw Error(ErrorCode::InvalidInput, "unknown kind hint '" + o.kind + "'");
  }
  QueryRequest req{o.text, *hint, std::nullopt};
  if (!o.window.empty()) {
    req.time_window = TimeWindow{o.window.at(0), o.window.at(1)};
  }
  const Models models(cfg);
  const auto result = query(s.current().scenario, req, models.query_models(), cfg.defaults.query_weights);
  std::cout << serialize_query_result(result, s.current().id);
  return 0;
}

int run_edit(const Options & o, const ServiceConfig & cfg)
{
  auto s = open(o);
  const std::string command = o.natural ? LanguageBridge(cfg.bridge_program).translate(o.text) : o.text;
  const Models models(cfg);
  const auto outcome = edit_active(s, models, cfg, command);
  save(s, o);
  std::cout << outcome.summary;
  std::cerr << "version " << outcome.version << "\n";
  return 0;
}

int run_refine(const Options & o, const ServiceConfig & cfg)
{
  auto s = open(o);
  auto rc = cfg.defaults.refinement;
  rc.bypass = o.bypass;
  const auto result = refine_active(s, rc);
  save(s, o);
  std::cout << serialize_rollout(result, s.current().scenario.timestep);
  std::cerr << "version " << s.current().id << (result.valid ? "" : " (unresolved conflicts)") << "\n";
  return 0;
}

int run_undo(const Options & o)
{
  auto s = open(o);
  const auto from = s.current().id;
  const auto to = undo(s);
  append_log(s, "undo", "active " + std::to_string(from) + " -> " + std::to_string(to));
  save(s, o);
  std::cout << "version " << to << "\n";
  return 0;
}

int run_export(const Options & o)
{
  const auto s = open(o);
  const auto & v = o.version ? s.at(*o.version) : s.current();
  std::cout << export_frame(v.scenario, o.frame, v.id);
  return 0;
}

int run_status(const Options & o)
{
  std::cout << serialize_versions(open(o));
  return 0;
}

int run_bench(const Options & o, const ServiceConfig & cfg)
{
  const auto spec = parse_bench_spec(read_text_file(o.spec_file));
  BenchmarkReport report;
  if (o.bench_kind == "querying") {
    report = run_querying(spec);
  } else if (o.bench_kind == "tasks") {
    report = run_tasks(spec, cfg.assets_path ? load_asset_bank(*cfg.assets_path) : default_asset_bank());
  } else {
    report = run_motion(spec);
  }
  const auto text = o.tables ? render_tables(report) : serialize_report(report);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(o.out, text);
  }
  return 0;
}

int run_train(const Options & o, const ServiceConfig & cfg)
{
  HashingTextEncoder encoder;
  const auto books = default_codebooks(encoder);
  const auto text = serialize_model(train_default_model(cfg.defaults.training, books));
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(o.out, text);
  }
  return 0;
}

int run_serve(const Options & o, const ServiceConfig & cfg)
{
  auto s = load_session(o.session);
  const Models models(cfg);
  Service service(std::move(s), models, cfg, o.session);
  const int port = service.bind(o.host, o.port);
  g_service = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "serving on http://" << o.host << ":" << port << "\n";
  service.listen();
  g_service = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Language-driven traffic scenario editor"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--session", o.session, "Session directory (env SCENESPLAT_SESSION)");

  auto * load = app.add_subcommand("load", "Start a session from a scenario file");
  load->add_option("file", o.file, "Scenario file")->required();

  auto * q = app.add_subcommand("query", "Resolve a description to an agent");
  q->add_option("text", o.text, "Query text")->required();
  q->add_option("--kind", o.kind, "any, vehicle or pedestrian");
  q->add_option("--window", o.window, "Time window start,end in seconds")->expected(2)->delimiter(',');

  auto * e = app.add_subcommand("edit", "Apply an edit command");
  e->add_option("command", o.text, "Edit command")->required();
  e->add_flag("--natural", o.natural, "Translate free text through the configured bridge");

  auto * r = app.add_subcommand("refine", "Refine the pending edits");
  r->add_flag("--bypass", o.bypass, "Keep planned tracks and only report conflicts");

  auto * b = app.add_subcommand("bench", "Run a benchmark");
  b->add_option("kind", o.bench_kind, "querying, tasks or motion")
    ->required()
    ->check(CLI::IsMember({"querying", "tasks", "motion"}));
  b->add_option("--spec", o.spec_file, "Bench spec file")->required();
  b->add_flag("--tables", o.tables, "Print tables instead of the report document");
  b->add_option("--out", o.out, "Write the output to a file");

  auto * x = app.add_subcommand("export", "Bird's-eye snapshot of one frame");
  x->add_option("--frame", o.frame, "Frame index")->required();
  x->add_option("--version", o.version, "Version id (default: active)");

  auto * sv = app.add_subcommand("serve", "Run the local service");
  sv->add_option("--port", o.port, "Port (0 picks a free one)");
  sv->add_option("--host", o.host, "Bind address");

  auto * u = app.add_subcommand("undo", "Make the parent version active");
  auto * st = app.add_subcommand("status", "Print versions and the command log");

  auto * t = app.add_subcommand("train", "Train and write the alignment model");
  t->add_option("--out", o.out, "Model file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const auto cfg = load_service_config();
    if (load->parsed()) return run_load(o);
    if (q->parsed()) return run_query(o, cfg);
    if (e->parsed()) return run_edit(o, cfg);
    if (r->parsed()) return run_refine(o, cfg);
    if (b->parsed()) return run_bench(o, cfg);
    if (x->parsed()) return run_export(o);
    if (sv->parsed()) return run_serve(o, cfg);
    if (u->parsed()) return run_undo(o);
    if (st->parsed()) return run_status(o);
    if (t->parsed()) return run_train(o, cfg);
  } catch (const Error & err) {
    std::cerr << "error [" << error_code_name(err.code()) << "]: " << err.what() << "\n";
    return kExitDomain;
  } catch (const std::exception & err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
