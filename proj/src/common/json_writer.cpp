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

#include "scenesplat/common/json_writer.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "scenesplat/common/error.hpp"

namespace scenesplat
{

std::string format_number(double value, int digits)
{
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::Format, "cannot serialize a non-finite number");
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

double round_significant(double value, int digits)
{
  return std::strtod(format_number(value, digits).c_str(), nullptr);
}

std::string json_escape(std::string_view text)
{
  std::string out;
  out.reserve(text.size() + 2);
  out.push_back('"');
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", static_cast<unsigned>(c));
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
  return out;
}

void JsonWriter::newline()
{
  out_.push_back('\n');
  out_.append(2 * stack_.size(), ' ');
}

void JsonWriter::before_value()
{
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (stack_.empty()) {
    return;
  }
  Frame & f = stack_.back();
  if (!f.empty) {
    out_.push_back(',');
    if (f.is_inline) {
      out_.push_back(' ');
    }
  }
  if (!f.is_inline) {
    newline();
  }
  f.empty = false;
}

JsonWriter & JsonWriter::begin_object(bool inline_)
{
  before_value();
  out_.push_back('{');
  stack_.push_back({true, inline_ || (!stack_.empty() && stack_.back().is_inline), true});
  return *this;
}

JsonWriter & JsonWriter::end_object()
{
  const Frame f = stack_.back();
  stack_.pop_back();
  if (!f.empty && !f.is_inline) {
    newline();
  }
  out_.push_back('}');
  return *this;
}

JsonWriter & JsonWriter::begin_array(bool inline_)
{
  before_value();
  out_.push_back('[');
  stack_.push_back({false, inline_ || (!stack_.empty() && stack_.back().is_inline), true});
  return *this;
}

JsonWriter & JsonWriter::end_array()
{
  const Frame f = stack_.back();
  stack_.pop_back();
  if (!f.empty && !f.is_inline) {
    newline();
  }
  out_.push_back(']');
  return *this;
}

JsonWriter & JsonWriter::key(std::string_view k)
{
  before_value();
  out_ += json_escape(k);
  out_ += ": ";
  after_key_ = true;
  return *this;
}

JsonWriter & JsonWriter::value(double v)
{
  before_value();
  out_ += format_number(v, digits_);
  return *this;
}

JsonWriter & JsonWriter::value(std::int64_t v)
{
  before_value();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter & JsonWriter::value(std::uint64_t v)
{
  before_value();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter & JsonWriter::value(bool v)
{
  before_value();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter & JsonWriter::value(std::string_view v)
{
  before_value();
  out_ += json_escape(v);
  return *this;
}

JsonWriter & JsonWriter::raw(std::string_view json)
{
  before_value();
  out_ += json;
  return *this;
}

JsonWriter & JsonWriter::numbers(std::span<const double> values)
{
  begin_array(true);
  for (double v : values) {
    value(v);
  }
  return end_array();
}

}  // namespace scenesplat
