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

#ifndef SCENESPLAT__COMMON__ERROR_HPP_
#define SCENESPLAT__COMMON__ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace scenesplat
{

// Stable error codes. The numeric values are part of the CLI/service contract
// and must not be renumbered.
enum class ErrorCode : int {
  InvalidInput = 10,
  OutOfRange = 11,
  Format = 12,
  Io = 13,
  Alignment = 20,
  DegenerateEmbedding = 21,
  UnknownLabel = 22,
  Divergence = 23,
  NoCandidates = 30,
  NotFound = 31,
  Syntax = 40,
  Constraint = 41,
  QueryResolution = 42,
  EditInvariant = 43,
  UnsupportedAction = 44,
  MissingHistory = 50,
  Incompatible = 60,
  NoScenario = 70,
  VersionConflict = 71,
  BadRequest = 72,
  Bridge = 73,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string & message)
  : std::runtime_error(message), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

// Parse failure carrying a 1-based column into the offending input line.
class SyntaxError : public Error
{
public:
  SyntaxError(std::size_t column, const std::string & message)
  : Error(ErrorCode::Syntax, "column " + std::to_string(column) + ": " + message),
    column_(column)
  {
  }

  std::size_t column() const noexcept { return column_; }

private:
  std::size_t column_;
};

}  // namespace scenesplat

#endif  // SCENESPLAT__COMMON__ERROR_HPP_
