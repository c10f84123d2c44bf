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

#ifndef SCENESPLAT__COMMON__JSON_WRITER_HPP_
#define SCENESPLAT__COMMON__JSON_WRITER_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scenesplat
{

/// Format `value` with `digits` significant digits ("%.*g"). Non-finite
/// values are rejected because JSON cannot carry them.
std::string format_number(double value, int digits);

/// Round `value` to what format_number(value, digits) would print.
double round_significant(double value, int digits);

std::string json_escape(std::string_view text);

/// Streaming emitter for the structured-text documents this project writes.
/// Objects and arrays may be marked `inline` to keep short rows on one line.
/// Output is a pure function of the call sequence.
class JsonWriter
{
public:
  explicit JsonWriter(int digits) : digits_(digits) {}

  JsonWriter & begin_object(bool inline_ = false);
  JsonWriter & end_object();
  JsonWriter & begin_array(bool inline_ = false);
  JsonWriter & end_array();

  JsonWriter & key(std::string_view k);

  JsonWriter & value(double v);
  JsonWriter & value(std::int64_t v);
  JsonWriter & value(int v) { return value(static_cast<std::int64_t>(v)); }
  JsonWriter & value(std::uint32_t v) { return value(static_cast<std::int64_t>(v)); }
  JsonWriter & value(std::uint64_t v);
  JsonWriter & value(bool v);
  JsonWriter & value(std::string_view v);
  JsonWriter & value(const char * v) { return value(std::string_view(v)); }
  JsonWriter & raw(std::string_view json);

  JsonWriter & numbers(std::span<const double> values);

  /// Finished document, newline-terminated.
  std::string str() const { return out_ + "\n"; }

private:
  struct Frame
  {
    bool is_object;
    bool is_inline;
    bool empty;
  };

  void before_value();
  void newline();

  int digits_;
  std::string out_;
  std::vector<Frame> stack_;
  bool after_key_{false};
};

}  // namespace scenesplat

#endif  // SCENESPLAT__COMMON__JSON_WRITER_HPP_
