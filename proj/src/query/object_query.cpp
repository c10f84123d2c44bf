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

#include "scenesplat/query/object_query.hpp"

#include <algorithm>
#include <array>

#include "scenesplat/alignment/projector.hpp"
#include "scenesplat/common/error.hpp"

namespace scenesplat
{

namespace
{

// Motion and ego-relative location vocabulary.
constexpr auto kTemporalLexicon = std::to_array<std::string_view>({
  "accelerating", "accelerates", "ahead", "along", "around", "back", "backing", "behind",
  "braking", "brakes", "cross", "crosses", "crossing", "crosswalk", "decelerating", "diagonal",
  "down", "drives", "driving", "ego", "from", "front", "go", "goes", "going", "halting",
  "idle", "intersection", "junction", "lane", "left", "leftward", "moving", "not", "parked",
  "passing", "rear", "reversing", "right", "rightward", "road", "side", "sidewalk", "slow",
  "slowing", "speeding", "standing", "starting", "stationary", "still", "stop", "stopped",
  "stopping", "straight", "street", "turn", "turning", "turns", "u", "uturn", "up", "waiting",
  "walking", "walks", "forward", "away", "toward", "towards",
});

// Dropped from both sub-queries.
constexpr auto kFiller = std::to_array<std::string_view>({
  "a", "an", "and", "at", "by", "in", "is", "it", "of", "on", "that", "the", "then", "to",
  "which", "who", "with",
});

template <std::size_t N>
bool contains(const std::array<std::string_view, N> & words, std::string_view token)
{
  return std::find(words.begin(), words.end(), token) != words.end();
}

void append(std::string & out, std::string_view token)
{
  if (!out.empty()) {
    out += ' ';
  }
  out += token;
}

}  // namespace

std::string_view to_string(KindHint hint)
{
  switch (hint) {
    case KindHint::Any:
      return "any";
    case KindHint::Vehicle:
      return "vehicle";
    case KindHint::Pedestrian:
      return "pedestrian";
  }
  return "any";
}

std::optional<KindHint> parse_kind_hint(std::string_view text)
{
  for (auto h : {KindHint::Any, KindHint::Vehicle, KindHint::Pedestrian}) {
    if (text == to_string(h)) {
      return h;
    }
  }
  return std::nullopt;
}

bool matches_hint(AgentKind kind, KindHint hint)
{
  switch (hint) {
    case KindHint::Any:
      return true;
    case KindHint::Vehicle:
      return kind != AgentKind::Pedestrian;
    case KindHint::Pedestrian:
      return kind == AgentKind::Pedestrian;
  }
  return true;
}

bool is_temporal_token(std::string_view token) { return contains(kTemporalLexicon, token); }

SplitQuery split_query(std::string_view text)
{
  SplitQuery out;
  for (const auto & token : tokenize(text)) {
    if (contains(kFiller, token)) {
      continue;
    }
    append(is_temporal_token(token) ? out.temporal : out.appearance, token);
  }
  return out;
}

QueryResult query(
  const Scenario & scene, const QueryRequest & req, const QueryModels & models,
  const QueryWeights & weights)
{
  if (tokenize(req.text).empty()) {
    throw Error(ErrorCode::InvalidInput, "query text is empty");
  }
  QueryResult result;
  result.split = split_query(req.text);
  const auto app_embed = models.encoder.encode(result.split.appearance);
  const auto temp_embed = models.encoder.encode(result.split.temporal);

  const AgentNode * ego = nullptr;
  for (const auto & a : scene.agents) {
    if (a.is_ego) {
      ego = &a;
    }
  }

  std::vector<ScoredAgent> scored;
  for (const auto & agent : scene.agents) {
    if (agent.is_ego || !matches_hint(agent.kind, req.kind_hint)) {
      continue;
    }
    ScoredAgent s;
    s.id = agent.id;
    if (app_embed) {
      if (auto cap = models.encoder.encode(agent.appearance_caption)) {
        s.appearance = dot(app_embed->values(), cap->values());
      }
      s.passed_filter = s.appearance >= weights.tau_app;
    } else {
      s.passed_filter = true;
    }
    if (temp_embed && ego != nullptr) {
      try {
        const auto feat = extract_features(agent.trajectory, ego->trajectory, req.time_window);
        const auto z = embed_trajectory(feat, models.projectors.for_kind(agent.kind));
        const auto tf = temporal_feature(
          z, z, models.books.motion_for(agent.kind), models.books.location, models.temperature);
        s.motion = cosine(temp_embed->values(), tf.f_motion);
        s.location = cosine(temp_embed->values(), tf.f_location);
      } catch (const Error & e) {
        // no usable overlap with the ego window: temporal cues stay 0
        if (e.code() != ErrorCode::Alignment && e.code() != ErrorCode::DegenerateEmbedding) {
          throw;
        }
      }
    }
    s.total = s.appearance + weights.w_motion * s.motion + weights.w_location * s.location;
    scored.push_back(s);
  }
  if (scored.empty()) {
    throw Error(ErrorCode::NoCandidates, "no agent matches the query's kind filter");
  }

  const bool any_passed =
    std::any_of(scored.begin(), scored.end(), [](const ScoredAgent & s) { return s.passed_filter; });
  result.filter_fallback = !any_passed;
  for (const auto & s : scored) {
    if (s.passed_filter || !any_passed) {
      result.ranked.push_back(s);
    }
  }
  std::sort(result.ranked.begin(), result.ranked.end(), [](const ScoredAgent & a, const ScoredAgent & b) {
    if (a.total != b.total) {
      return a.total > b.total;
    }
    return to_underlying(a.id) < to_underlying(b.id);
  });
  result.chosen = result.ranked.front().id;
  return result;
}

}  // namespace scenesplat
