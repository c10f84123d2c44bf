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

#ifndef SCENESPLAT__EVAL__BENCHMARKS_HPP_
#define SCENESPLAT__EVAL__BENCHMARKS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scenesplat/alignment/training.hpp"
#include "scenesplat/edit/assets.hpp"
#include "scenesplat/edit/edit_engine.hpp"
#include "scenesplat/query/object_query.hpp"
#include "scenesplat/refine/refinement.hpp"

namespace scenesplat
{

// ---- alignment model used by the benchmarks -------------------------------

struct TrainingSetup
{
  std::uint64_t corpus_seed{7};
  int per_vehicle{20};   // 7 vehicle motions
  int per_pedestrian{12};  // 5 pedestrian motions
  double jitter{0.0};
  TrainingConfig training;
};

/// Trains both projectors on the balanced intersection corpus.
AlignmentModel train_default_model(const TrainingSetup & setup, const Codebooks & books);

// ---- querying ---------------------------------------------------------------

struct QueryCase
{
  Scenario scene;
  QueryRequest request;
  AgentId truth{};
  AgentKind kind{AgentKind::Vehicle};
};

/// Two agents per scene with the same caption around a stationary ego at
/// the origin; they differ in motion (same sector) or in location (same
/// motion). Ground truth alternates between the lower and the higher id.
std::vector<QueryCase> ambiguity_suite(std::uint64_t seed, int cases);

struct QueryMetrics
{
  double vehicle{0.0};
  double pedestrian{0.0};
  double total{0.0};
  std::size_t vehicle_cases{0};
  std::size_t pedestrian_cases{0};
};

QueryMetrics run_query_benchmark(
  const std::vector<QueryCase> & cases, const QueryModels & models, const QueryWeights & weights);

// ---- task completion ----------------------------------------------------------

enum class TaskCategory { AddVehicle, AddObject, AddPedestrian, ModifyVehicle, ModifyPedestrian, Remove };
inline constexpr std::array<TaskCategory, 6> kTaskCategories{
  TaskCategory::AddVehicle, TaskCategory::AddObject, TaskCategory::AddPedestrian,
  TaskCategory::ModifyVehicle, TaskCategory::ModifyPedestrian, TaskCategory::Remove};

std::string_view to_string(TaskCategory category);

struct TaskCase
{
  TaskCategory category{TaskCategory::AddVehicle};
  std::string command;
};

/// Intersection scene the task suite edits (ego plus eight captioned agents).
Scenario task_base_scene();

/// The 38-command suite: 6 / 9 / 7 / 5 / 5 / 6 commands per category.
std::vector<TaskCase> task_suite();

/// Commands that must fail without stopping the benchmark.
std::vector<TaskCase> malformed_task_cases();

struct TaskOutcome
{
  TaskCategory category{TaskCategory::AddVehicle};
  std::string command;
  bool grammar_valid{false};
  bool completed{false};
  std::string error;  // empty when completed
};

struct CategoryStats
{
  std::size_t total{0};
  std::size_t completed{0};
  double rate() const { return total == 0 ? 0.0 : static_cast<double>(completed) / static_cast<double>(total); }
};

struct TaskMetrics
{
  std::array<CategoryStats, 6> per_category{};
  CategoryStats total;
  std::vector<TaskOutcome> outcomes;
};

/// A command completes when it parses, apply_edit succeeds, and refinement
/// of the edited scene is valid. Every failure is recorded, never thrown.
TaskMetrics run_task_benchmark(
  const std::vector<TaskCase> & cases, const Scenario & base, const EditModels & models,
  const EditConfig & edit_config, const RefinementConfig & refine_config);

// ---- motion generation -----------------------------------------------------------

struct MotionCase
{
  std::string name;
  Scenario scene;
  std::vector<EditedAgent> edited;
};

/// Twenty scripted edits with planned conflicts of every kind, the last one
/// a box canyon with no feasible resolution.
std::vector<MotionCase> conflict_suite();

struct MotionOutcome
{
  std::string name;
  RolloutFlags refined;
  RolloutFlags bypass;
  std::size_t planned_conflicts{0};
  std::size_t unresolved{0};  // refined mode
};

struct MotionReport
{
  MotionMetrics refined;
  MotionMetrics bypass;
  std::vector<MotionOutcome> outcomes;
};

/// Refines each case in both modes and validates the rollouts. Cases run in
/// parallel; outcomes keep suite order.
MotionReport run_motion_benchmark(const std::vector<MotionCase> & suite, const RefinementConfig & config);

// ---- report -----------------------------------------------------------------

struct QueryReport
{
  QueryMetrics full;
  QueryMetrics ablation;  // temporal weights zeroed
};

struct BenchmarkReport
{
  std::optional<QueryReport> querying;
  std::optional<TaskMetrics> tasks;
  std::optional<MotionReport> motion;
};

std::string serialize_report(const BenchmarkReport & report);

/// Aligned plain-text tables.
std::string render_tables(const BenchmarkReport & report);

// ---- benchmark spec file ---------------------------------------------------

struct BenchSpec
{
  std::uint64_t query_seed{2024};
  int ambiguity_cases{40};
  TrainingSetup training;
  QueryWeights query_weights;
  EditConfig edit;
  RefinementConfig refinement;
  bool include_malformed{true};
};

/// Structured-text spec; every field optional. Throws Format.
BenchSpec parse_bench_spec(std::string_view text);
std::string serialize_bench_spec(const BenchSpec & spec);

BenchmarkReport run_querying(const BenchSpec & spec);
BenchmarkReport run_tasks(const BenchSpec & spec, const AssetBank & bank);
BenchmarkReport run_motion(const BenchSpec & spec);

}  // namespace scenesplat

#endif  // SCENESPLAT__EVAL__BENCHMARKS_HPP_
