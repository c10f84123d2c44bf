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

#include <gtest/gtest.h>
#include <httplib.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <sys/wait.h>
#include <unistd.h>
#include <latch>
#include <nlohmann/json.hpp>
#include <thread>

#include "scenesplat/common/error.hpp"
#include "scenesplat/scene/scenario_io.hpp"
#include "scenesplat/service/service.hpp"

namespace scenesplat
{
namespace
{

namespace fs = std::filesystem;
using Params = std::multimap<std::string, std::string>;

const fs::path kSample = fs::path(SCENESPLAT_DATA_DIR) / "sample_scenario.json";
const fs::path kGolden = fs::path(SCENESPLAT_TEST_DATA_DIR) / "golden_export_frame40.json";
constexpr const char * kBusCommand = R"(add asset="school bus" at=2,-40 direction=90 action=turn_right speed=5)";

const Models & models()
{
  static const Models m{ServiceConfig{}};
  return m;
}

SessionState sample_session() { return start_session(load_scenario(kSample), "sample_scenario.json"); }

fs::path scratch_dir(const std::string & name)
{
  const auto dir = fs::temp_directory_path() / ("scenesplat_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

std::optional<ErrorCode> code_of(const std::function<void()> & fn)
{
  try {
    fn();
  } catch (const Error & e) {
    return e.code();
  }
  return std::nullopt;
}

// ---- session state ----

TEST(Session, VersionsAreAppendOnlyAndUndoMovesToParent)
{
  auto s = sample_session();
  EXPECT_EQ(s.current().id, 0u);
  EXPECT_EQ(code_of([&] { undo(s); }), ErrorCode::NotFound);
  const auto v1 = edit_active(s, models(), ServiceConfig{}, R"(remove target="orange traffic cone")").version;
  EXPECT_EQ(v1, 1u);
  EXPECT_EQ(s.at(1).parent, 0u);
  EXPECT_EQ(s.current().scenario.agents.size(), s.at(0).scenario.agents.size() - 1);
  EXPECT_EQ(undo(s), 0u);
  EXPECT_EQ(s.versions.size(), 2u);  // nothing is discarded
  EXPECT_EQ(s.current().text, s.at(0).text);
  // editing after undo branches from the parent
  const auto v2 = edit_active(s, models(), ServiceConfig{}, R"(remove target="yellow taxi")").version;
  EXPECT_EQ(v2, 2u);
  EXPECT_EQ(s.at(2).parent, 0u);
}

TEST(Session, RequireBase)
{
  auto s = sample_session();
  EXPECT_NO_THROW(require_base(s, 0));
  EXPECT_EQ(code_of([&] { require_base(s, 3); }), ErrorCode::VersionConflict);
  EXPECT_EQ(code_of([] { SessionState{}.current(); }), ErrorCode::NoScenario);
  EXPECT_EQ(code_of([&] { s.at(9); }), ErrorCode::NotFound);
}

TEST(Session, SaveLoadRoundTrip)
{
  auto s = sample_session();
  append_log(s, "load", "9 agents");
  edit_active(s, models(), ServiceConfig{}, kBusCommand);
  refine_active(s, RefinementConfig{});
  undo(s);
  const auto dir = scratch_dir("roundtrip");
  save_session(s, dir);
  const auto back = load_session(dir);
  ASSERT_EQ(back.versions.size(), s.versions.size());
  EXPECT_EQ(back.active, s.active);
  for (std::size_t i = 0; i < s.versions.size(); ++i) {
    EXPECT_EQ(back.versions[i]->text, s.versions[i]->text);
    EXPECT_EQ(back.versions[i]->parent, s.versions[i]->parent);
    EXPECT_EQ(back.versions[i]->label, s.versions[i]->label);
    EXPECT_EQ(back.versions[i]->conflicts, s.versions[i]->conflicts);
    EXPECT_EQ(back.versions[i]->pending.size(), s.versions[i]->pending.size());
  }
  EXPECT_EQ(serialize_versions(back), serialize_versions(s));
  clear_session(dir);
  EXPECT_FALSE(load_session(dir).loaded());
  fs::remove_all(dir);
}

TEST(Session, EditThenUndoRestoresV0Bytes)
{
  auto s = sample_session();
  edit_active(s, models(), ServiceConfig{}, kBusCommand);
  undo(s);
  EXPECT_EQ(s.current().text, read_text_file(kSample));
}

TEST(Session, GoldenPipeline)
{
  auto s = sample_session();
  edit_active(s, models(), ServiceConfig{}, kBusCommand);
  const auto rollout = refine_active(s, RefinementConfig{});
  EXPECT_TRUE(rollout.valid);
  EXPECT_EQ(export_frame(s.current().scenario, 40, s.current().id), read_text_file(kGolden));
}

// ---- transport-free dispatch ----

TEST(ServiceHandle, ScenarioIsVerbatimWithVersion)
{
  Service svc(sample_session(), models(), ServiceConfig{});
  const auto r = svc.handle("GET", "/scenario", {}, "");
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body, read_text_file(kSample));
  EXPECT_EQ(r.version, 0u);
  EXPECT_EQ(svc.handle("GET", "/scenario", {{"version", "5"}}, "").status, 404);
  EXPECT_EQ(svc.handle("GET", "/nowhere", {}, "").status, 404);
}

TEST(ServiceHandle, NoScenarioIs404)
{
  Service svc(SessionState{}, models(), ServiceConfig{});
  EXPECT_EQ(svc.handle("GET", "/scenario", {}, "").status, 404);
  EXPECT_EQ(svc.handle("POST", "/edit", {}, R"({"base": 0, "command": "remove target=\"x\""})").status, 404);
}

TEST(ServiceHandle, MalformedBodiesAre400)
{
  Service svc(sample_session(), models(), ServiceConfig{});
  EXPECT_EQ(svc.handle("POST", "/edit", {}, "{not json").status, 400);
  EXPECT_EQ(svc.handle("POST", "/edit", {}, R"({"command": "remove target=\"yellow taxi\""})").status, 400);
  EXPECT_EQ(svc.handle("POST", "/edit", {}, R"({"base": 0})").status, 400);
  EXPECT_EQ(svc.handle("POST", "/edit", {}, R"({"base": 0, "command": "remove colour=1"})").status, 400);
  EXPECT_EQ(svc.handle("POST", "/query", {}, R"({"text": ""})").status, 400);
  EXPECT_EQ(svc.handle("GET", "/frames", {{"step", "0"}}, "").status, 400);
  EXPECT_EQ(svc.handle("GET", "/frames", {{"from", "abc"}}, "").status, 400);
  EXPECT_EQ(svc.snapshot()->versions.size(), 1u);  // failed requests change nothing
}

TEST(ServiceHandle, StaleBaseIs409)
{
  Service svc(sample_session(), models(), ServiceConfig{});
  const std::string body = R"({"base": 0, "command": "remove target=\"yellow taxi\""})";
  EXPECT_EQ(svc.handle("POST", "/edit", {}, body).status, 200);
  const auto stale = svc.handle("POST", "/edit", {}, body);
  EXPECT_EQ(stale.status, 409);
  EXPECT_EQ(stale.version, 1u);
}

TEST(ServiceHandle, QueryReturnsChosenAgent)
{
  Service svc(sample_session(), models(), ServiceConfig{});
  const auto r = svc.handle("POST", "/query", {}, R"({"text": "white pickup truck"})");
  ASSERT_EQ(r.status, 200);
  const auto j = nlohmann::json::parse(r.body);
  EXPECT_EQ(j.at("version"), 0);
  EXPECT_EQ(j.at("chosen"), 2);
}

TEST(ServiceHandle, BypassRefineKeepsPlannedTracks)
{
  Service svc(sample_session(), models(), ServiceConfig{});
  ASSERT_EQ(svc.handle("POST", "/edit", {}, nlohmann::json{{"base", 0}, {"command", kBusCommand}}.dump()).status, 200);
  const auto planned = svc.snapshot()->current().scenario;
  const auto r = svc.handle("POST", "/refine", {}, R"({"base": 1, "bypass": true})");
  ASSERT_EQ(r.status, 200) << r.body;
  const auto j = nlohmann::json::parse(r.body);
  EXPECT_EQ(j.at("version"), 2);
  EXPECT_EQ(j.at("parent"), 1);
  const auto & after = svc.snapshot()->current();
  EXPECT_EQ(after.label, "refine --bypass");
  EXPECT_EQ(after.scenario, planned);
  ASSERT_TRUE(after.conflicts.has_value());
  EXPECT_FALSE(after.conflicts->empty());

  const auto c = nlohmann::json::parse(svc.handle("GET", "/conflicts", {}, "").body);
  EXPECT_EQ(c.at("source"), "refinement");
  EXPECT_EQ(c.at("conflicts").size(), after.conflicts->size());
}

TEST(ServiceHandle, ConflictsPredictedBeforeRefinement)
{
  Service svc(sample_session(), models(), ServiceConfig{});
  const auto c = nlohmann::json::parse(svc.handle("GET", "/conflicts", {}, "").body);
  EXPECT_EQ(c.at("source"), "prediction");
  EXPECT_EQ(c.at("version"), 0);
}

TEST(ServiceHandle, FramesMatchTrackSamples)
{
  Service svc(sample_session(), models(), ServiceConfig{});
  const auto r = svc.handle("GET", "/frames", {{"from", "0"}, {"to", "1"}, {"step", "0.05"}}, "");
  ASSERT_EQ(r.status, 200);
  const auto j = nlohmann::json::parse(r.body);
  const auto & scene = svc.snapshot()->current().scenario;
  const auto & frames = j.at("frames");
  ASSERT_EQ(frames.size(), 21u);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    for (const auto & a : frames[i].at("agents")) {
      const auto & pts = scene.find(AgentId{a.at("id").get<std::uint32_t>()})->trajectory.points;
      const auto & pose = a.at("pose");
      if (i % 2 == 0) {
        const auto & p = pts.at(i / 2).pose;  // on a sample: the stored pose
        EXPECT_NEAR(pose[0].get<double>(), p.x(), 1e-8);
        EXPECT_NEAR(pose[1].get<double>(), p.y(), 1e-8);
      } else {
        const auto & p0 = pts.at(i / 2).pose;  // midway: the average position
        const auto & p1 = pts.at(i / 2 + 1).pose;
        EXPECT_NEAR(pose[0].get<double>(), 0.5 * (p0.x() + p1.x()), 1e-8);
        EXPECT_NEAR(pose[1].get<double>(), 0.5 * (p0.y() + p1.y()), 1e-8);
      }
    }
  }
}

TEST(ServiceHandle, UndoAndVersions)
{
  Service svc(sample_session(), models(), ServiceConfig{});
  ASSERT_EQ(svc.handle("POST", "/edit", {}, R"({"base": 0, "command": "remove target=\"yellow taxi\""})").status, 200);
  const auto u = svc.handle("POST", "/undo", {}, R"({"base": 1})");
  ASSERT_EQ(u.status, 200);
  EXPECT_EQ(nlohmann::json::parse(u.body).at("undone"), 1);
  EXPECT_EQ(u.version, 0u);
  EXPECT_EQ(svc.handle("GET", "/scenario", {}, "").body, read_text_file(kSample));
  EXPECT_EQ(svc.handle("GET", "/versions", {}, "").status, 200);
}

TEST(ServiceHandle, StatusMapping)
{
  EXPECT_EQ(http_status(ErrorCode::BadRequest), 400);
  EXPECT_EQ(http_status(ErrorCode::Syntax), 400);
  EXPECT_EQ(http_status(ErrorCode::NoScenario), 404);
  EXPECT_EQ(http_status(ErrorCode::VersionConflict), 409);
  EXPECT_EQ(http_status(ErrorCode::NoCandidates), 422);
  EXPECT_EQ(http_status(ErrorCode::Bridge), 500);
}

// ---- over a socket ----

class LiveService : public ::testing::Test
{
protected:
  void SetUp() override
  {
    svc_ = std::make_unique<Service>(sample_session(), models(), ServiceConfig{});
    port_ = svc_->bind("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { svc_->listen(); });
  }
  void TearDown() override
  {
    svc_->stop();
    thread_.join();
  }
  httplib::Client client() const
  {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(30, 0);
    return c;
  }

  std::unique_ptr<Service> svc_;
  int port_{0};
  std::thread thread_;
};

TEST_F(LiveService, ScenarioHeaderAndBody)
{
  auto c = client();
  const auto res = c.Get("/scenario");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value(kVersionHeader), "0");
  EXPECT_EQ(res->body, read_text_file(kSample));
}

TEST_F(LiveService, ConcurrentEditsOnSameBase)
{
  const std::array<std::string, 2> bodies{
    R"({"base": 0, "command": "remove target=\"yellow taxi\""})",
    R"({"base": 0, "command": "remove target=\"orange traffic cone\""})"};
  std::array<int, 2> status{};
  std::latch go(2);
  std::vector<std::thread> workers;
  for (int i = 0; i < 2; ++i) {
    workers.emplace_back([&, i] {
      auto c = client();
      go.arrive_and_wait();
      const auto res = c.Post("/edit", bodies[i], "application/json");
      status[i] = res ? res->status : -1;
    });
  }
  for (auto & w : workers) {
    w.join();
  }
  std::sort(status.begin(), status.end());
  EXPECT_EQ(status[0], 200);
  EXPECT_EQ(status[1], 409);
  EXPECT_EQ(svc_->snapshot()->versions.size(), 2u);
}

TEST_F(LiveService, MalformedBodyIs400)
{
  auto c = client();
  const auto res = c.Post("/refine", "[1, 2", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(res->get_header_value(kVersionHeader), "0");
}

// ---- command line ----

int run_cli(const std::string & args, const fs::path & out)
{
  const std::string cmd = std::string(SCENESPLAT_CLI) + " " + args + " > " + out.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

TEST(Cli, ExitCodesAndGoldenExport)
{
  const auto dir = scratch_dir("cli");
  const auto out = dir.string() + ".out";
  const std::string session = "--session " + dir.string() + " ";
  EXPECT_EQ(run_cli(session + "status", out), 1);
  EXPECT_NE(read_text_file(out).find("no scenario loaded"), std::string::npos);
  EXPECT_EQ(run_cli(session + "frobnicate", out), 2);
  EXPECT_EQ(run_cli(session + "export", out), 2);  // missing --frame
  EXPECT_EQ(run_cli(session + "load " + kSample.string(), out), 0);
  EXPECT_EQ(run_cli(session + "edit 'remove colour=1'", out), 1);
  EXPECT_EQ(run_cli(session + "edit '" + kBusCommand + "'", out), 0);
  EXPECT_EQ(run_cli(session + "refine", out), 0);
  EXPECT_EQ(run_cli(session + "export --frame 40", out), 0);
  EXPECT_EQ(read_text_file(out), read_text_file(kGolden));
  fs::remove_all(dir);
  fs::remove(out);
}

}  // namespace
}  // namespace scenesplat
