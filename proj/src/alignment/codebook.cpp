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

#include "scenesplat/alignment/codebook.hpp"

#include <nlohmann/json.hpp>

#include "scenesplat/common/error.hpp"
#include "scenesplat/common/json_writer.hpp"

namespace scenesplat
{

std::string_view to_string(CodebookKind kind)
{
  switch (kind) {
    case CodebookKind::VehicleMotion:
      return "vehicle_motion";
    case CodebookKind::PedestrianMotion:
      return "pedestrian_motion";
    case CodebookKind::Location:
      return "location";
  }
  return "vehicle_motion";
}

std::optional<CodebookKind> parse_codebook_kind(std::string_view text)
{
  for (auto k : {CodebookKind::VehicleMotion, CodebookKind::PedestrianMotion, CodebookKind::Location}) {
    if (text == to_string(k)) {
      return k;
    }
  }
  return std::nullopt;
}

Codebook::Codebook(CodebookKind kind, const std::vector<Entry> & entries, const TextEncoder & encoder)
: kind_(kind)
{
  for (const auto & [name, description] : entries) {
    if (index_of(name)) {
      throw Error(ErrorCode::InvalidInput, "duplicate prototype name '" + name + "'");
    }
    auto embedding = encoder.encode(description);
    if (!embedding) {
      throw Error(ErrorCode::InvalidInput, "prototype '" + name + "' has an empty description");
    }
    prototypes_.push_back({name, description, std::move(*embedding)});
  }
}

std::optional<std::size_t> Codebook::index_of(std::string_view name) const
{
  for (std::size_t i = 0; i < prototypes_.size(); ++i) {
    if (prototypes_[i].name == name) {
      return i;
    }
  }
  return std::nullopt;
}

std::size_t Codebook::require(std::string_view name) const
{
  auto idx = index_of(name);
  if (!idx) {
    throw Error(ErrorCode::UnknownLabel, "unknown prototype '" + std::string(name) + "' in " +
                                           std::string(to_string(kind_)) + " codebook");
  }
  return *idx;
}

std::vector<Codebook::Entry> default_entries(CodebookKind kind)
{
  using namespace proto;
  auto e = [](std::string_view n, const char * d) { return Codebook::Entry{std::string(n), d}; };
  switch (kind) {
    case CodebookKind::VehicleMotion:
      return {
        e(kStationary, "stationary parked not moving"),
        e(kStraight, "going straight driving straight forward"),
        e(kTurnLeft, "turning left"),
        e(kTurnRight, "turning right"),
        e(kUTurn, "making a u turn turning around"),
        e(kStopping, "stopping braking slowing down"),
        e(kStarting, "starting accelerating speeding up"),
      };
    case CodebookKind::PedestrianMotion:
      return {
        e(kStanding, "standing still waiting not moving"),
        e(kWalkingStraight, "walking straight along the sidewalk"),
        e(kCrossingLeftToRight, "crossing rightward from left to right"),
        e(kCrossingRightToLeft, "crossing leftward from right to left"),
        e(kStopping, "stopping slowing down halting"),
      };
    case CodebookKind::Location:
      return {
        e(kFront, "in front ahead"),
        e(kFrontLeft, "front left diagonal"),
        e(kLeft, "left side"),
        e(kRearLeft, "rear left diagonal"),
        e(kBehind, "behind ego"),
        e(kRearRight, "rear right diagonal"),
        e(kRight, "right side"),
        e(kFrontRight, "front right diagonal"),
      };
  }
  return {};
}

Codebooks default_codebooks(const TextEncoder & encoder)
{
  return {
    Codebook(CodebookKind::VehicleMotion, default_entries(CodebookKind::VehicleMotion), encoder),
    Codebook(CodebookKind::PedestrianMotion, default_entries(CodebookKind::PedestrianMotion), encoder),
    Codebook(CodebookKind::Location, default_entries(CodebookKind::Location), encoder),
  };
}

std::string serialize_codebooks(const Codebooks & books)
{
  JsonWriter w(17);
  w.begin_object();
  w.key("codebooks").begin_array();
  for (const Codebook * book : {&books.vehicle_motion, &books.pedestrian_motion, &books.location}) {
    w.begin_object();
    w.key("kind").value(to_string(book->kind()));
    w.key("prototypes").begin_array();
    for (const auto & p : book->prototypes()) {
      w.begin_object(true).key("name").value(p.name).key("description").value(p.description).end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

Codebooks parse_codebooks(std::string_view text, const TextEncoder & encoder)
{
  Codebooks out;
  bool seen[3] = {false, false, false};
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto & bj : j.at("codebooks")) {
      const auto kind = parse_codebook_kind(bj.at("kind").get<std::string>());
      if (!kind) {
        throw Error(ErrorCode::Format, "unknown codebook kind");
      }
      std::vector<Codebook::Entry> entries;
      for (const auto & pj : bj.at("prototypes")) {
        entries.emplace_back(pj.at("name").get<std::string>(), pj.at("description").get<std::string>());
      }
      Codebook book(*kind, entries, encoder);
      if (book.empty()) {
        throw Error(ErrorCode::Format, "codebook '" + std::string(to_string(*kind)) + "' is empty");
      }
      switch (*kind) {
        case CodebookKind::VehicleMotion: out.vehicle_motion = std::move(book); seen[0] = true; break;
        case CodebookKind::PedestrianMotion: out.pedestrian_motion = std::move(book); seen[1] = true; break;
        case CodebookKind::Location: out.location = std::move(book); seen[2] = true; break;
      }
    }
  } catch (const nlohmann::json::exception & e) {
    throw Error(ErrorCode::Format, std::string("codebook document: ") + e.what());
  }
  if (!seen[0] || !seen[1] || !seen[2]) {
    throw Error(ErrorCode::Format, "codebook document must define all three codebooks");
  }
  return out;
}

}  // namespace scenesplat
