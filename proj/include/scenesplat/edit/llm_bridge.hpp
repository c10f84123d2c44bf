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

#ifndef SCENESPLAT__EDIT__LLM_BRIDGE_HPP_
#define SCENESPLAT__EDIT__LLM_BRIDGE_HPP_

#include <string>
#include <string_view>

#include "scenesplat/edit/command.hpp"

namespace scenesplat
{

/// External translator from free text to one command line. The program
/// receives the text on stdin and must print a single command on stdout.
/// Disabled when `program` is empty.
class LanguageBridge
{
public:
  explicit LanguageBridge(std::string program = {}) : program_(std::move(program)) {}
  bool enabled() const { return !program_.empty(); }

  /// Raw command line from the external program. Any failure (disabled,
  /// spawn error, non-zero exit, empty output) throws SyntaxError at column 1.
  std::string translate(std::string_view text) const;

  /// translate() followed by parse_command().
  EditCommand to_command(std::string_view text) const { return parse_command(translate(text)); }

private:
  std::string program_;
};

}  // namespace scenesplat

#endif  // SCENESPLAT__EDIT__LLM_BRIDGE_HPP_
