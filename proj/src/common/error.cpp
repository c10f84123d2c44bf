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

#include "scenesplat/common/error.hpp"

namespace scenesplat
{

std::string_view error_code_name(ErrorCode code)
{
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid_input";
    case ErrorCode::OutOfRange: return "out_of_range";
    case ErrorCode::Format: return "format";
    case ErrorCode::Io: return "io";
    case ErrorCode::Alignment: return "alignment";
    case ErrorCode::DegenerateEmbedding: return "degenerate_embedding";
    case ErrorCode::UnknownLabel: return "unknown_label";
    case ErrorCode::Divergence: return "divergence";
    case ErrorCode::NoCandidates: return "no_candidates";
    case ErrorCode::NotFound: return "not_found";
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::Constraint: return "constraint";
    case ErrorCode::QueryResolution: return "query_resolution";
    case ErrorCode::EditInvariant: return "edit_invariant";
    case ErrorCode::UnsupportedAction: return "unsupported_action";
    case ErrorCode::MissingHistory: return "missing_history";
    case ErrorCode::Incompatible: return "incompatible";
    case ErrorCode::NoScenario: return "no_scenario";
    case ErrorCode::VersionConflict: return "version_conflict";
    case ErrorCode::BadRequest: return "bad_request";
    case ErrorCode::Bridge: return "bridge";
  }
  return "unknown";
}

}  // namespace scenesplat
