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

#ifndef SCENESPLAT__QUERY__OBJECT_QUERY_HPP_
#define SCENESPLAT__QUERY__OBJECT_QUERY_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scenesplat/alignment/codebook.hpp"
#include "scenesplat/alignment/features.hpp"
#include "scenesplat/alignment/text_encoder.hpp"
#include "scenesplat/alignment/training.hpp"
#include "scenesplat/scene/scenario.hpp"

namespace scenesplat
{

enum class KindHint { Any, Vehicle, Pedestrian };

std::string_view to_string(KindHint hint);
std::optional<KindHint> parse_kind_hint(std::string_view text);

/// Vehicle keeps every non-pedestrian kind, matching the projector families.
bool matches_hint(AgentKind kind, KindHint hint);

struct QueryRequest
{
  std::string text;
  KindHint kind_hint{KindHint::Any};
  std::optional<TimeWindow> time_window;
};

struct QueryWeights
{
  double tau_app{0.15};
  double w_motion{0.5};
  double w_location{0.5};
};

/// Everything the cascade needs besides the scene. References must outlive
/// the query call.
struct QueryModels
{
  const TextEncoder & encoder;
  const Codebooks & books;
  const TrajectoryProjectors & projectors;
  double temperature{0.1};
};

struct SplitQuery
{
  std::string appearance;
  std::string temporal;
};

/// Token-level routing: motion and location vocabulary goes to the temporal
/// sub-query, filler words are dropped, everything else describes
/// appearance. Both parts may be empty.
SplitQuery split_query(std::string_view text);

/// True for tokens routed to the temporal sub-query.
bool is_temporal_token(std::string_view token);

struct ScoredAgent
{
  AgentId id{};
  double total{0.0};
  double appearance{0.0};
  double motion{0.0};
  double location{0.0};
  bool passed_filter{false};
};

struct QueryResult
{
  std::vector<ScoredAgent> ranked;  // candidates, best first
  AgentId chosen{};
  SplitQuery split;
  bool filter_fallback{false};  // no agent passed tau_app
};

/// Appearance filter, then argmax of appearance + w_m * motion +
/// w_l * location. Absent sub-queries score 0; ties go to the smallest id.
/// The ego is never a candidate. Throws InvalidInput on empty text and
/// NoCandidates when no agent matches the kind hint.
QueryResult query(
  const Scenario & scene, const QueryRequest & req, const QueryModels & models,
  const QueryWeights & weights = {});

}  // namespace scenesplat

#endif  // SCENESPLAT__QUERY__OBJECT_QUERY_HPP_
